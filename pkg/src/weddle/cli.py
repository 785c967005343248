"""Command-line front end.

Subcommands: decompose | weddle | basepoints | singular | jinv | certify |
jacobsthal-sweep.  Inputs are file paths or fixture names; outputs are
human-readable text or (with --json) a machine-readable run report with a
certified flag.  All randomness flows from --seed (or WEDDLE_SEED), so a
fixed seed reproduces a report exactly, apart from the timing field.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
import time
from pathlib import Path
from typing import Optional

from . import cubic, fixtures, loci, solve, tensor
from .loci import LinearSystem
from .polycore import MultiPoly
from .tensor import Tensor3

_ENV_FLAGS = {
    "seed": ("WEDDLE_SEED", int),
    "track_tol": ("WEDDLE_TRACK_TOL", float),
    "residual_tol": ("WEDDLE_RESIDUAL_TOL", float),
    "cluster_radius": ("WEDDLE_CLUSTER_RADIUS", float),
    "json": ("WEDDLE_JSON", lambda s: s.strip().lower() in ("1", "true", "yes")),
}


class InputError(ValueError):
    """Bad command-line input (unknown fixture, malformed file)."""


# ---- input resolution ----

def _classify_json(data: dict) -> str:
    keys = set(data)
    if {"n", "quadrics"} <= keys:
        return "system"
    if {"dim", "faces"} <= keys:
        return "tensor"
    if "matrix" in keys:
        return "matrix"
    if {"n", "points"} <= keys:
        return "points"
    raise InputError("unrecognized JSON payload (expected system, tensor, matrix, or points)")


def _resolve_input(source: str):
    """Returns (descriptor, kind, object) for a path or fixture name."""
    path = Path(source)
    if path.exists():
        text = path.read_text(encoding="utf-8")
        digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
        if path.suffix == ".json":
            kind = _classify_json(json.loads(text))
        else:
            kind = "poly"
        try:
            obj = fixtures.parse_payload(kind, text)
        except (ValueError, KeyError) as exc:
            raise InputError(f"could not parse {source}: {exc}") from exc
        return {"source": str(path), "sha256": digest}, kind, obj
    if source in fixtures.REGISTRY:
        text = fixtures.read_text(source)
        digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
        kind = fixtures.kind(source)
        return {"source": f"fixture:{source}", "sha256": digest}, kind, fixtures.load(source)
    raise InputError(
        f"no such file or fixture {source!r}; fixtures: {', '.join(fixtures.names())}"
    )


def _as_system(kind: str, obj) -> LinearSystem:
    if kind == "system":
        return obj
    if kind == "tensor":
        return LinearSystem.from_tensor(obj)
    if kind == "matrix":
        return loci.rank5_canonical_system(obj)
    if kind == "points":
        n, points = obj
        return loci.system_through_points(points, n)
    raise InputError(f"a quadric system is required, got a {kind} input")


def _as_tensor(kind: str, obj) -> Tensor3:
    if kind == "tensor":
        return obj
    return _as_system(kind, obj).to_tensor()


def _as_poly(kind: str, obj) -> MultiPoly:
    if kind != "poly":
        raise InputError(f"a polynomial input is required, got a {kind} input")
    return obj


# ---- command implementations ----

def _config_from_args(args) -> solve.SolveConfig:
    return solve.SolveConfig(
        seed=args.seed,
        track_tol=args.track_tol,
        residual_tol=args.residual_tol,
        cluster_radius=args.cluster_radius,
    )


def _cmd_decompose(args):
    inputs, kind, obj = _resolve_input(args.input)
    t = _as_tensor(kind, obj)
    sym, n1, n2, skew = tensor.decompose(t)
    resum = (sym + n1 + n2 + skew) == t
    memberships = {
        "symmetric": tensor.in_class(sym, tensor.SymmetryClass.SYMMETRIC),
        "n1": tensor.in_class(n1, tensor.SymmetryClass.RESIDUAL1),
        "n2": tensor.in_class(n2, tensor.SymmetryClass.RESIDUAL2),
        "skew": tensor.in_class(skew, tensor.SymmetryClass.SKEW),
    }
    outputs = {
        "dim": t.dim,
        "symmetric": sym.to_json(),
        "n1": n1.to_json(),
        "n2": n2.to_json(),
        "skew": skew.to_json(),
        "memberships": memberships,
        "parts_resum_to_input": resum,
    }
    certified = resum and all(memberships.values())
    lines = [f"decomposition of a dim-{t.dim} tensor into S + N1 + N2 + A parts"]
    for label, part in (("S", sym), ("N1", n1), ("N2", n2), ("A", skew)):
        zero = " (zero)" if part.is_zero() else ""
        lines.append(f"  {label}: faces {part.to_json()['faces']}{zero}")
    lines.append(f"  parts re-sum to input: {resum}; class memberships: {memberships}")
    return inputs, outputs, certified, lines


def _cmd_weddle(args):
    inputs, kind, obj = _resolve_input(args.input)
    system = _as_system(kind, obj)
    data = loci.weddle_matrix(system)
    matrix_rows = [
        [str(data.matrix.entry(i, k)) for k in range(data.matrix.size)]
        for i in range(data.matrix.size)
    ]
    outputs = {
        "n": system.n,
        "matrix": matrix_rows,
        "polynomial": str(data.polynomial),
        "degenerate": data.degenerate,
    }
    lines = [f"Weddle matrix ({system.n + 1} x {system.n + 1}):"]
    lines += [f"  [{', '.join(row)}]" for row in matrix_rows]
    lines.append(f"polynomial: {data.polynomial}")
    lines.append(f"degenerate: {data.degenerate}")
    return inputs, outputs, True, lines


def _cmd_basepoints(args):
    inputs, kind, obj = _resolve_input(args.input)
    system = _as_system(kind, obj)
    result = solve.base_points(system, _config_from_args(args))
    expected = solve.jacobsthal(system.n + 1)
    outputs = {
        "count": result.count(),
        "jacobsthal_for_dim": expected,
        "solution_set": result.to_json(),
    }
    lines = [
        f"base points found: {result.count()} (certified: {result.certified}); "
        f"J_{system.n + 1} = {expected}"
    ]
    lines += _cluster_lines(result)
    return inputs, outputs, result.certified, lines


def _cmd_singular(args):
    inputs, kind, obj = _resolve_input(args.input)
    poly = _as_poly(kind, obj)
    result = solve.singular_points(poly, _config_from_args(args))
    outputs = {"count": result.count(), "solution_set": result.to_json()}
    lines = [f"singular points found: {result.count()} (certified: {result.certified})"]
    lines += _cluster_lines(result)
    return inputs, outputs, result.certified, lines


def _cmd_jinv(args):
    inputs, kind, obj = _resolve_input(args.input)
    poly = _as_poly(kind, obj)
    config = _config_from_args(args)
    reduction = cubic.weierstrass_reduce(poly, config=config)
    if reduction.exact:
        j_value = cubic.j_short(reduction.short())
        outputs = {
            "a": str(reduction.a),
            "b": str(reduction.b),
            "j": str(j_value),
            "exact": True,
            "flex": [str(c) for c in reduction.flex],
            "residual": 0.0,
        }
        lines = [
            f"short Weierstrass form: y^2 = x^3 + ({reduction.a})x + ({reduction.b})  [exact]",
            f"flex used: {list(reduction.flex)}",
            f"j-invariant: {j_value}",
        ]
        certified = True
    else:
        a, b = complex(reduction.a), complex(reduction.b)
        denom = 4 * a**3 + 27 * b**2
        if denom == 0:
            raise ValueError("numeric reduction hit a singular Weierstrass pair")
        value = 6912 * a**3 / denom
        outputs = {
            "a": [a.real, a.imag],
            "b": [b.real, b.imag],
            "j": [value.real, value.imag],
            "exact": False,
            "residual": reduction.residual,
        }
        lines = [
            f"numeric Weierstrass pair: a = {a}, b = {b}",
            f"j-invariant: {value} (flex residual {reduction.residual:.2e})",
        ]
        certified = reduction.residual <= config.residual_tol
    return inputs, outputs, certified, lines


def _cmd_certify(args):
    inputs, kind, obj = _resolve_input(args.input)
    system = _as_system(kind, obj)
    cert = loci.rank_lower_bound_certificate(system, _config_from_args(args))
    outputs = {
        "singular_count": cert.singular_count,
        "conclusion": cert.conclusion.value,
        "solution_set": cert.evidence.to_json(),
    }
    certified = cert.evidence.certified
    if cert.conclusion is loci.RankConclusion.RANK_AT_LEAST_6:
        lines = [f"singular points: {cert.singular_count} < 10 => rank >= 6"]
    else:
        lines = [
            f"singular points: {cert.singular_count} (certified: {certified}) => inconclusive"
        ]
    return inputs, outputs, certified, lines


def _parse_dims(text: str) -> list:
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        dims = list(range(int(lo), int(hi) + 1))
    else:
        dims = [int(p) for p in text.split(",") if p.strip()]
    if not dims or any(d < 2 or d > 5 for d in dims):
        raise InputError("dims must lie in 2..5")
    return dims


def _cmd_jacobsthal_sweep(args):
    dims = _parse_dims(args.dims)
    master = random.Random(args.seed)
    table = {}
    all_match = True
    lines = []
    for dim in dims:
        expected = solve.jacobsthal(dim)
        counts = []
        mismatches = []
        uncertified = 0
        for _ in range(args.trials):
            trial_seed = master.randrange(2**30)
            try:
                sampled, system, _ = loci.sample_general_cyclic(dim, rng=master)
                config = solve.SolveConfig(
                    seed=trial_seed,
                    track_tol=args.track_tol,
                    residual_tol=args.residual_tol,
                    cluster_radius=args.cluster_radius,
                )
                result = solve.base_points(system, config)
            except (ValueError, RuntimeError):
                uncertified += 1
                continue
            if not result.certified:
                uncertified += 1
                continue
            counts.append(result.count())
            if result.count() != expected:
                mismatches.append(
                    {"tensor": sampled.to_json(), "seed": trial_seed, "count": result.count()}
                )
        matching = sum(1 for c in counts if c == expected)
        fraction = matching / len(counts) if counts else 0.0
        table[str(dim)] = {
            "expected": expected,
            "trials": args.trials,
            "certified": len(counts),
            "matching": matching,
            "match_fraction": fraction,
            "uncertified": uncertified,
            "counts": counts,
            "mismatches": mismatches,
        }
        all_match = all_match and bool(counts) and not mismatches
        lines.append(
            f"dim {dim}: J = {expected}; {len(counts)}/{args.trials} trials certified, "
            f"{matching} matching, {uncertified} uncertified/excluded"
        )
        for m in mismatches:
            lines.append(f"  MISMATCH (count {m['count']}, seed {m['seed']}): {m['tensor']}")
    outputs = {"dims": table}
    return {"source": None, "sha256": None}, outputs, all_match, lines


_COMMANDS = {
    "decompose": (_cmd_decompose, "print the S/N1/N2/A parts of a tensor"),
    "weddle": (_cmd_weddle, "Weddle matrix, polynomial, and degeneracy flag"),
    "basepoints": (_cmd_basepoints, "certified base points of a quadric system"),
    "singular": (_cmd_singular, "certified singular points of a hypersurface"),
    "jinv": (_cmd_jinv, "Weierstrass form and j-invariant of a smooth cubic"),
    "certify": (_cmd_certify, "rank lower-bound certificate from singular counts"),
    "jacobsthal-sweep": (_cmd_jacobsthal_sweep, "tabulate base-point counts against J_n"),
}


def _build_parser() -> argparse.ArgumentParser:
    def env_default(name, cast, fallback):
        env_name, env_cast = _ENV_FLAGS[name]
        raw = os.environ.get(env_name)
        if raw is None:
            return fallback
        try:
            return env_cast(raw)
        except ValueError:
            return fallback

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=env_default("seed", int, 0))
    common.add_argument(
        "--json",
        action="store_true",
        default=env_default("json", bool, False),
        help="emit a machine-readable run report",
    )
    common.add_argument(
        "--track-tol", type=float, default=env_default("track_tol", float, 1e-10)
    )
    common.add_argument(
        "--residual-tol", type=float, default=env_default("residual_tol", float, 1e-8)
    )
    common.add_argument(
        "--cluster-radius", type=float, default=env_default("cluster_radius", float, 1e-6)
    )

    parser = argparse.ArgumentParser(
        prog="weddle",
        description="linear systems of quadrics, Weddle loci, and certified point counts",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in _COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name == "jacobsthal-sweep":
            p.add_argument("--dims", default="2..4", help="e.g. 2..5 or 2,3,4")
            p.add_argument("--trials", type=int, default=10)
        else:
            p.add_argument("input", help="file path or fixture name")
    return parser


def _cluster_lines(result: solve.SolutionSet) -> list:
    lines = []
    for c in result.clusters:
        coords = ", ".join(f"{z.real:+.6f}{z.imag:+.6f}j" for z in c.point.coordinates)
        rational = ""
        if c.rational is not None:
            rational = "  = [" + " : ".join(str(q) for q in c.rational) + "]"
        lines.append(f"  [{coords}]  mult {c.multiplicity}  res {c.residual:.2e}{rational}")
    for note in result.notes:
        lines.append(f"  note: {note}")
    return lines


def main(argv: Optional[list] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handler, _ = _COMMANDS[args.command]
    started = time.perf_counter()
    try:
        inputs, outputs, certified, lines = handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except solve.UncertifiedSolveError as exc:
        print(f"uncertified: {exc}", file=sys.stderr)
        return 1
    elapsed = time.perf_counter() - started
    report = {
        "command": args.command,
        "inputs": inputs,
        "seed": args.seed,
        "outputs": outputs,
        "certified": certified,
        "elapsed_s": round(elapsed, 6),
    }
    if args.json:
        print(json.dumps(report, indent=2, default=str))
    else:
        for line in lines:
            print(line)
        print(f"certified: {certified}")
    return 0 if certified else 1


if __name__ == "__main__":
    raise SystemExit(main())
