"""Command-line front end.

Exit codes: 0 success, 1 malformed input, 2 for well-formed requests
that are mathematically infeasible, e.g. when the modulus lacks the roots.
JSON goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import bench
from .fft import NttPlan, PlanMismatch, StructureMissing
from .jsonio import encode_int
from .partial_ntt import CongruenceFailed, factor_xn_plus_1
from .poly import Poly
from .roots import (
    NotTwofold,
    ParameterSet,
    RootError,
    TooLarge,
    check_alpha_omega,
    check_invertible_differences,
    check_roots_of,
    enumerate_sets,
    make_twofold_set,
    normalize_twofold,
)
from .zm_arith import Modulus, ModulusError, NotInvertible

EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE = 0, 1, 2
SEED_ENV = "QNTT_SEED"
ALGORITHMS = ("schoolbook", "karatsuba", "fft", "partial", "crt")


class InputError(Exception):
    """Malformed command-line input or file contents."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError as exc:
        raise InputError(f"bad integer list {text!r}") from exc


def parse_factors(text: str) -> Modulus:
    """'p^e,q^f,...' (exponent optional) into a Modulus."""
    factors = []
    for item in text.replace(" ", "").split(","):
        base, _, exp = item.partition("^")
        try:
            factors.append((int(base), int(exp) if exp else 1))
        except ValueError as exc:
            raise InputError(f"bad factor {item!r}") from exc
    return Modulus.from_factors(factors)


def _modulus(args) -> Modulus:
    if getattr(args, "factors", None):
        mod = parse_factors(args.factors)
        if args.m is not None and args.m != mod.m:
            raise InputError(f"--m {args.m} disagrees with --factors product {mod.m}")
        return mod
    if args.m is None:
        raise InputError("one of --m or --factors is required")
    return Modulus.of(args.m)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError as exc:
        raise InputError(f"{SEED_ENV}={env!r} is not an integer") from exc


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_params(path: str) -> ParameterSet:
    try:
        return ParameterSet.from_json(_load_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed parameter file {path}: {exc}") from exc


def _load_poly(path: str, m: int, n: int) -> list[int]:
    """A Poly document or a bare coefficient list, padded to length n."""
    doc = _load_json(path)
    try:
        if isinstance(doc, dict):
            poly = Poly.from_json(doc)
            if poly.m != m:
                raise InputError(f"{path}: modulus {poly.m} does not match parameters' {m}")
        else:
            poly = Poly(m, tuple(int(c) % m for c in doc))
        return poly.padded(n)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed polynomial {path}: {exc}") from exc


def _emit(doc) -> None:
    json.dump(doc, sys.stdout)
    sys.stdout.write("\n")


def cmd_params(args) -> int:
    mod = _modulus(args)
    n = args.n
    d = n if args.d is None else args.d
    if d > n or n % d:
        raise InputError(f"--d {d} must divide --n {n}")
    ts = make_twofold_set(mod, d, args.a, _seed(args))
    _emit(ParameterSet.from_twofold_set(n, ts).to_json())
    return EXIT_OK


def cmd_mul(args) -> int:
    params = _load_params(args.params)
    m, n = params.m.m, params.n
    g = _load_poly(args.g, m, n)
    h = _load_poly(args.h, m, n)
    plan = NttPlan.from_params(params)
    product = bench.multiplier(args.algo, plan)(g, h)
    _emit(Poly(m, tuple(product)).to_json())
    return EXIT_OK


def cmd_check(args) -> int:
    mod = _modulus(args)
    points = [x % mod.m for x in _int_list(args.points)]
    if not points:
        raise InputError("--points is empty")
    d = len(points) if args.d is None else args.d
    witnesses = {}

    cond1, wit = check_invertible_differences(points, mod)
    if wit is not None:
        i, j, g = wit
        witnesses["cond1"] = {"i": i, "j": j, "gcd": encode_int(g)}
    cond2, wit = check_roots_of(points, mod, args.a, d)
    if wit is not None:
        witnesses["cond2"] = {"index": wit, "power": encode_int(pow(points[wit], d, mod.m))}
    try:
        order = normalize_twofold(points, mod)
        cond3 = True
        witnesses["cond3"] = {"ordering": [encode_int(x) for x in order]}
    except (NotTwofold, ValueError) as exc:
        cond3 = False
        witnesses["cond3"] = {"reason": str(exc)}
    try:
        structured, gens = check_alpha_omega(points, mod)
    except NotInvertible as exc:
        structured, gens = False, None
        witnesses["cond4"] = {"reason": str(exc)}
    cond4 = structured and pow(gens[0], d, mod.m) == args.a % mod.m
    if gens is not None:
        witnesses["cond4"] = {"alpha": encode_int(gens[0]), "omega": encode_int(gens[1])}
    _emit(
        {
            "cond1": cond1,
            "cond2": cond2,
            "cond3_some_ordering": cond3,
            "cond4": cond4,
            "witnesses": witnesses,
        }
    )
    return EXIT_OK


def cmd_factor(args) -> int:
    mod = _modulus(args)
    _emit(factor_xn_plus_1(mod, args.n, args.d, _seed(args)).to_json())
    return EXIT_OK


def cmd_bench(args) -> int:
    params = _load_params(args.params)
    sizes = _int_list(args.sizes)
    algos = args.algos.split(",")
    unknown = set(algos) - set(ALGORITHMS)
    if unknown:
        raise InputError(f"unknown algorithms {sorted(unknown)}")
    if args.trials < 1:
        raise InputError("--trials must be at least 1")
    d = None if params.d == params.n else params.d
    records = bench.run(params.m, params.a, sizes, algos, args.trials, d, _seed(args))
    if args.out:
        with open(args.out, "w", newline="") as fh:
            bench.write_csv(records, fh)
    else:
        bench.write_csv(records, sys.stdout)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    _emit(enumerate_sets(args.m, args.n, args.a))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qntt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("params", help="generate a certified evaluation-point set")
    p.add_argument("--m", type=int)
    p.add_argument("--factors", help='prime factorization, e.g. "17,97" or "5^3"')
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, default=-1)
    p.add_argument("--d", type=int, help="number of factors; defaults to n (full split)")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("mul", help="multiply two polynomials in Z_m[x]/<x^n - a>")
    p.add_argument("--params", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--h", required=True)
    p.add_argument("--algo", choices=ALGORITHMS, default="fft")
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("check", help="report which point-set conditions hold")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--points", required=True)
    p.add_argument("--a", type=int, default=-1)
    p.add_argument("--d", type=int, help="root degree; defaults to the number of points")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("factor", help="split x^n + 1 into d factors x^(n/d) - alpha")
    p.add_argument("--m", type=int)
    p.add_argument("--factors")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("bench", help="time the multipliers and write CSV")
    p.add_argument("--params", required=True)
    p.add_argument("--sizes", required=True)
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--algos", default="schoolbook,karatsuba,fft,crt")
    p.add_argument("--out")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("enumerate", help="count twofold and (alpha, omega) point sets")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, default=1)
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ModulusError, TooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (RootError, CongruenceFailed, PlanMismatch, StructureMissing, NotInvertible) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
