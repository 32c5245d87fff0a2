"""Command line surface: exact point arithmetic, NPC construction and
verification, inversion, the Kummer map, and batch searches.

All numeric I/O is exact "p/q" text (pass negative values as --x=-4/3).
Exit codes: 0 success, 1 domain error, 2 usage error, 3 resource exhaustion.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path

from .cuboids import (
    PARAMETRIZATIONS,
    Cuboid,
    build_npc,
    cuboid_from_json,
    cuboid_to_json,
    pc_condition,
    verify_npc,
)
from .curve import (
    CongruentCurve,
    SolutionPair,
    kummer_map,
    point_to_json,
    secant_y_intercept,
)
from .errors import NpcuboidError, ResourceExhausted
from .factoring import DEFAULT_RHO_BUDGET
from .inverse import (
    classify_labeling,
    recover_first,
    recover_invariant,
    recover_second,
    recovery_to_json,
)
from .rationals import format_rational, parse_rational, sqrt_exact
from .search import job_from_json, last_record_key, run_search, write_records

_FACTOR_BUDGET_ENV = "CUBOID_FACTOR_BUDGET"


def _rho_budget() -> int:
    raw = os.environ.get(_FACTOR_BUDGET_ENV)
    return int(raw) if raw else DEFAULT_RHO_BUDGET


def _decimal_str(value: Fraction) -> str:
    with localcontext() as ctx:
        ctx.prec = 12
        return str(Decimal(value.numerator) / Decimal(value.denominator))


def _approximate(payload):
    """Parallel structure with every exact entry rendered as a decimal."""
    if isinstance(payload, dict):
        out = {}
        for key, value in payload.items():
            approx = _approximate(value)
            if approx is not None:
                out[key] = approx
        return out or None
    if isinstance(payload, list):
        out = [_approximate(v) for v in payload]
        return [v for v in out if v is not None] or None
    if isinstance(payload, bool):
        return None
    if isinstance(payload, int):
        return _decimal_str(Fraction(payload))
    if isinstance(payload, str):
        try:
            return _decimal_str(parse_rational(payload))
        except ValueError:
            return None
    return None


def _pretty_lines(payload, indent=0):
    pad = "  " * indent
    if isinstance(payload, dict):
        for key, value in payload.items():
            if isinstance(value, (dict, list)):
                yield f"{pad}{key}:"
                yield from _pretty_lines(value, indent + 1)
            else:
                yield f"{pad}{key}: {value}"
    elif isinstance(payload, list):
        for value in payload:
            if isinstance(value, (dict, list)):
                yield f"{pad}-"
                yield from _pretty_lines(value, indent + 1)
            else:
                yield f"{pad}- {value}"
    else:
        yield f"{pad}{payload}"


def _emit(payload: dict, args) -> None:
    if getattr(args, "approx", False):
        approx = _approximate(payload)
        if approx:
            payload = {**payload, "approx": approx}
    if getattr(args, "pretty", False):
        print("\n".join(_pretty_lines(payload)))
    else:
        print(json.dumps(payload, separators=(",", ":")))


def _parse_point(args):
    curve = CongruentCurve(args.N)
    return curve.point(parse_rational(args.x), parse_rational(args.y))


def _cmd_point(args) -> tuple[dict, int]:
    point = _parse_point(args)
    if args.sub == "check":
        ok = point.on_curve()
        return {**point_to_json(point), "on_curve": ok}, 0 if ok else 1
    if not point.on_curve():
        raise NpcuboidError(f"({args.x}, {args.y}) is not on the curve N={args.N}")
    if args.sub == "add":
        other = point.curve.point(parse_rational(args.x2), parse_rational(args.y2))
        if not other.on_curve():
            raise NpcuboidError(f"({args.x2}, {args.y2}) is not on the curve N={args.N}")
        result = point.add(other)
    elif args.sub == "double":
        result = point.double()
    elif args.sub == "mul":
        result = point.mul(args.k)
    elif args.sub == "reflect1":
        result = point.reflect_first()
    elif args.sub == "reflect2":
        result = point.reflect_second()
    else:
        result = point.reflect_third()
    return point_to_json(result), 0


def _pair_from_abscissae(n: int, x: Fraction, z: Fraction) -> SolutionPair:
    curve = CongruentCurve(n)
    return SolutionPair(
        curve.point(x, sqrt_exact(curve.rhs(x))),
        curve.point(z, sqrt_exact(curve.rhs(z))),
    )


def _cmd_npc(args) -> tuple[dict, int]:
    if args.sub == "generate":
        pair = _pair_from_abscissae(args.N, parse_rational(args.X), parse_rational(args.Z))
        return cuboid_to_json(build_npc(pair, args.param)), 0
    cuboid = _cuboid_from_args(args)
    violations = verify_npc(cuboid)
    payload = {
        "violations": violations,
        "pc": pc_condition(cuboid),
        "cuboid": cuboid_to_json(cuboid),
    }
    return payload, 0 if not violations else 1


def _cuboid_from_args(args) -> Cuboid:
    if getattr(args, "infile", None):
        record = json.loads(Path(args.infile).read_text())
        return cuboid_from_json(record)
    required = ("a", "b", "c", "dac", "dbc", "ds")
    missing = [f"--{name}" for name in required if getattr(args, name) is None]
    if missing:
        raise _Usage(f"missing cuboid values: {' '.join(missing)} (or use --in FILE)")
    a = parse_rational(args.a)
    b = parse_rational(args.b)
    return Cuboid(
        a=a,
        b=b,
        c=parse_rational(args.c),
        d_bc=parse_rational(args.dbc),
        d_ac=parse_rational(args.dac),
        d_s=parse_rational(args.ds),
        d_ab_sq=parse_rational(args.dabsq) if getattr(args, "dabsq", None) else a * a + b * b,
    )


def _cmd_invert(args) -> tuple[dict, int]:
    if args.classify:
        sides = [parse_rational(v) for v in (args.a, args.b, args.c)]
        diagonals = [parse_rational(v) for v in (args.dac, args.dbc)]
        cuboid = classify_labeling(*sides, *diagonals, parse_rational(args.ds))
    else:
        cuboid = _cuboid_from_args(args)
    budget = _rho_budget()
    if args.family == "invariant":
        result = recover_invariant(cuboid, rho_budget=budget)
    elif args.family == "first":
        result = recover_first(cuboid, rho_budget=budget)
    else:
        result = recover_second(cuboid, rho_budget=budget)
    payload = recovery_to_json(result)
    if args.classify:
        payload["cuboid"] = cuboid_to_json(cuboid)
    return payload, 0


def _cmd_kummer(args) -> tuple[dict, int]:
    curve = CongruentCurve(args.N)
    p = curve.point(parse_rational(args.X), parse_rational(args.Y))
    q = curve.point(parse_rational(args.Z), parse_rational(args.W))
    for label, point in (("X,Y", p), ("Z,W", q)):
        if not point.on_curve():
            raise NpcuboidError(f"({label}) is not on the curve N={args.N}")
    xi, zeta, eta = kummer_map(SolutionPair(p, q))
    holds = eta * eta == xi * zeta * (xi * xi - 1) * (zeta * zeta - 1)
    payload = {
        "xi": format_rational(xi),
        "zeta": format_rational(zeta),
        "eta": format_rational(eta),
        "identity_holds": holds,
    }
    return payload, 0 if holds else 1


def _cmd_secant(args) -> tuple[dict, int]:
    point = _parse_point(args)
    other = point.curve.point(parse_rational(args.x2), parse_rational(args.y2))
    return {"d": format_rational(secant_y_intercept(point, other))}, 0


def _cmd_search(args) -> tuple[dict | None, int]:
    job_path = Path(args.job)
    if not job_path.is_file():
        raise _Usage(f"job file not found: {args.job}")
    try:
        record = json.loads(job_path.read_text())
    except json.JSONDecodeError as exc:
        raise _Usage(f"job file is not valid JSON: {exc}") from exc
    job = job_from_json(record, seed_path=args.seeds)

    skip_through = None
    if args.resume:
        if not args.out:
            raise _Usage("--resume requires --out")
        if Path(args.out).is_file():
            skip_through = last_record_key(args.out)
    records = run_search(job, workers=args.workers, skip_through=skip_through)
    if args.out:
        mode = "a" if args.resume else "w"
        with open(args.out, mode) as stream:
            count = write_records(records, stream)
        print(json.dumps({"records_written": count, "out": args.out}), file=sys.stderr)
    else:
        write_records(records, sys.stdout)
    return None, 0


class _Usage(Exception):
    pass


def _add_output_flags(parser):
    parser.add_argument("--pretty", action="store_true", help="human-readable output")
    parser.add_argument(
        "--approx", action="store_true", help="append decimal renderings of exact values"
    )


def _point_arguments(parser, second_point=False):
    parser.add_argument("--N", type=int, required=True)
    parser.add_argument("--x", required=True)
    parser.add_argument("--y", required=True)
    if second_point:
        parser.add_argument("--x2", required=True)
        parser.add_argument("--y2", required=True)


def _cuboid_arguments(parser):
    for name in ("a", "b", "c", "dac", "dbc", "ds"):
        parser.add_argument(f"--{name}")
    parser.add_argument("--dabsq", help="exact square of the a-b diagonal (default a^2+b^2)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="npcuboid", description=__doc__)
    commands = parser.add_subparsers(dest="command", required=True)

    point = commands.add_parser("point", help="exact curve point arithmetic")
    subs = point.add_subparsers(dest="sub", required=True)
    for name in ("add", "double", "mul", "reflect1", "reflect2", "reflect3", "check"):
        sub = subs.add_parser(name)
        _point_arguments(sub, second_point=(name == "add"))
        if name == "mul":
            sub.add_argument("-k", type=int, required=True)
        _add_output_flags(sub)
        sub.set_defaults(handler=_cmd_point)

    secant = commands.add_parser("secant", help="y-intercept of the secant through two points")
    _point_arguments(secant, second_point=True)
    _add_output_flags(secant)
    secant.set_defaults(handler=_cmd_secant)

    npc = commands.add_parser("npc", help="construct or verify nearly-perfect cuboids")
    subs = npc.add_subparsers(dest="sub", required=True)
    generate = subs.add_parser("generate")
    generate.add_argument("--N", type=int, required=True)
    generate.add_argument("--X", required=True)
    generate.add_argument("--Z", required=True)
    generate.add_argument("--param", choices=PARAMETRIZATIONS, default="invariant")
    _add_output_flags(generate)
    generate.set_defaults(handler=_cmd_npc)
    verify = subs.add_parser("verify")
    _cuboid_arguments(verify)
    verify.add_argument("--in", dest="infile", help="cuboid JSON file")
    _add_output_flags(verify)
    verify.set_defaults(handler=_cmd_npc)

    invert = commands.add_parser("invert", help="recover N and solution pairs from an NPC")
    _cuboid_arguments(invert)
    invert.add_argument("--family", choices=("invariant", "first", "second"), default="invariant")
    invert.add_argument(
        "--classify",
        action="store_true",
        help="try all labelings of sides/diagonals and use the one that verifies",
    )
    _add_output_flags(invert)
    invert.set_defaults(handler=_cmd_invert)

    kummer = commands.add_parser("kummer", help="Kummer-surface image of a solution pair")
    kummer.add_argument("--N", type=int, required=True)
    for name in ("X", "Y", "Z", "W"):
        kummer.add_argument(f"--{name}", required=True)
    _add_output_flags(kummer)
    kummer.set_defaults(handler=_cmd_kummer)

    search = commands.add_parser("search", help="run a sweep job, emitting JSONL records")
    search.add_argument("job", help="job description JSON file")
    search.add_argument("--workers", type=int, default=1)
    search.add_argument("--out", help="output JSONL path (default stdout)")
    search.add_argument("--resume", action="store_true", help="append after the last completed record")
    search.add_argument("--seeds", help="seed file for jobs without inline seeds")
    search.set_defaults(handler=_cmd_search)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        payload, code = args.handler(args)
    except _Usage as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (NpcuboidError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if payload is not None:
        _emit(payload, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
