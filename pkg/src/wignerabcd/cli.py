"""Command-line front end.

Exit codes: 0 ok, 2 usage or parse error, 3 domain validation (determinant,
lossy boundary), 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

from . import cavity, multilayer, oracle
from .core import (
    DeterminantError,
    DomainError,
    Elliptic,
    Mat2,
    Tolerances,
    decompose,
    inverse,
    matrix_power,
)
from .formats import csv_text, dumps

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VERIFY = 0, 2, 3, 4

CAVITY_COLUMNS = (
    "a", "b", "stable", "theta_star", "eta", "delta", "N",
    "m11", "m12", "m21", "m22", "class",
)
STACK_COLUMNS = (
    "r", "alpha1", "alpha2", "trace", "class", "param", "sigma", "delta", "N",
    "m11", "m12", "m21", "m22",
)


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    start: float
    stop: float
    steps: int
    fixed: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.steps < 2:
            raise UsageError("a sweep needs at least 2 steps")
        if self.start == self.stop:
            raise UsageError("sweep start and stop must differ")

    def values(self) -> list[float]:
        # this form hits both endpoints exactly
        last = self.steps - 1
        return [self.start * ((last - i) / last) + self.stop * (i / last) for i in range(self.steps)]

    def points(self):
        for v in self.values():
            yield {**self.fixed, self.parameter: v}

    @classmethod
    def parse(cls, text: str, fixed: dict, allowed) -> "SweepSpec":
        parts = text.split(":")
        if len(parts) != 4:
            raise UsageError(f"sweep must look like name:start:stop:steps, got {text!r}")
        name = parts[0]
        if name not in allowed:
            raise UsageError(f"cannot sweep {name!r}; choose from {', '.join(allowed)}")
        try:
            start, stop, steps = float(parts[1]), float(parts[2]), int(parts[3])
        except ValueError:
            raise UsageError(f"bad sweep range {text!r}") from None
        return cls(name, start, stop, steps, dict(fixed))


def _angle(x: float, degrees: bool) -> float:
    return math.degrees(x) if degrees else x


def _read_json(text: str) -> dict:
    if text == "-":
        text = sys.stdin.read()
    elif text.startswith("@"):
        text = Path(text[1:]).read_text(encoding="utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise UsageError("expected a JSON object")
    return obj


def _read_matrix(text: str, tol: Tolerances) -> Mat2:
    obj = _read_json(text)
    try:
        vals = [float(obj[k]) for k in ("a", "b", "c", "d")]
    except KeyError as exc:
        raise UsageError(f"matrix JSON is missing {exc.args[0]!r}") from None
    except (TypeError, ValueError):
        raise UsageError("matrix entries must be numbers") from None
    if not all(math.isfinite(v) for v in vals):
        raise UsageError("matrix entries must be finite")
    return Mat2.from_dict(dict(zip("abcd", vals)), tol)


def _decomposition_json(m: Mat2, tol: Tolerances, degrees: bool) -> dict:
    d = decompose(m, tol).to_dict()
    d["delta"] = _angle(d["delta"], degrees)
    if d["class"] == "elliptic":
        d["param"] = _angle(d["param"], degrees)
    return d


# -- subcommands ----------------------------------------------------------


def cmd_classify(args, tol: Tolerances) -> tuple[int, str]:
    m = _read_matrix(args.matrix, tol)
    return EXIT_OK, dumps(_decomposition_json(m, tol, args.degrees)) + "\n"


def cmd_power(args, tol: Tolerances) -> tuple[int, str]:
    m = _read_matrix(args.matrix, tol)
    n = args.n
    result = matrix_power(m, n, tol)
    if not args.verify:
        return EXIT_OK, dumps(result.to_dict()) + "\n"
    if abs(n) > oracle.MAX_BRUTE_N:
        raise UsageError(f"--verify is limited to |n| <= {oracle.MAX_BRUTE_N}")
    base = m if n >= 0 else inverse(m, tol)
    brute = oracle.brute_power(base, abs(n))
    atol = 1e-6 if brute.max_abs() > 1e6 else 1e-9
    report = oracle.compare(result, brute, 1e-8, atol, {"n": n, "matrix": m.to_dict()})
    out = dumps({"matrix": result.to_dict(), "report": report.to_dict()}) + "\n"
    return (EXIT_OK if report.passed else EXIT_VERIFY), out


def _cavity_point(params: dict):
    if any(k in params for k in ("R", "s", "d")):
        try:
            return cavity.CavitySpec(params["R"], params["s"], params.get("d", 0.0)).normalized()
        except KeyError as exc:
            raise UsageError(f"physical cavity needs --{exc.args[0]}") from None
    if "b" not in params:
        raise UsageError("give either --R/--s[/--d] or --b[/--a]")
    return cavity.NormalizedCavity(params.get("a", 0.0), params["b"])


def cavity_row(nc: cavity.NormalizedCavity, N: int, tol: Tolerances, degrees: bool = False) -> list:
    dec = cavity.cavity_decompose(nc, tol)
    m = cavity.n_cycles(nc, N, tol)
    w = dec.wigner
    theta = _angle(w.param, degrees) if isinstance(w, Elliptic) else w.param
    return [
        nc.a, nc.b, cavity.stability(nc), theta, dec.eta, _angle(dec.delta, degrees),
        N, m.a, m.b, m.c, m.d, w.name,
    ]


def cmd_cavity(args, tol: Tolerances) -> tuple[int, str]:
    fixed = {k: getattr(args, k) for k in ("R", "s", "d", "a", "b") if getattr(args, k) is not None}
    if args.sweep:
        points = SweepSpec.parse(args.sweep, fixed, ("R", "s", "d", "a", "b")).points()
    else:
        points = [fixed]
    try:
        cavities = [_cavity_point(p) for p in points]
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    rows = [cavity_row(nc, args.n_cycles, tol, args.degrees) for nc in cavities]
    return EXIT_OK, csv_text(CAVITY_COLUMNS, rows)


def stack_row(c: multilayer.LayerCycle, N: int, tol: Tolerances, degrees: bool = False) -> list:
    p = multilayer.core_compress(c)
    delta, e = multilayer.stack_equi_diag(p)
    sc = multilayer.stack_classify(e, tol)
    m = multilayer.stack_power(c, N, tol)
    w = sc.wigner
    param = _angle(w.param, degrees) if isinstance(w, Elliptic) else w.param
    return [
        c.boundary.r, _angle(c.alpha1, degrees), _angle(c.alpha2, degrees),
        multilayer.cycle_matrix(c).trace, w.name, param, sc.sigma, _angle(delta, degrees),
        N, m.a, m.b, m.c, m.d,
    ]


def cmd_stack(args, tol: Tolerances) -> tuple[int, str]:
    fixed = {"r": args.r, "alpha1": args.alpha1, "alpha2": args.alpha2}
    if args.t is not None:
        fixed["t"] = args.t
    if args.sweep:
        points = list(SweepSpec.parse(args.sweep, fixed, ("r", "alpha1", "alpha2")).points())
    else:
        points = [fixed]
    cycles = [multilayer.LayerCycle.from_params(**p) for p in points]
    rows = [stack_row(c, args.n_cycles, tol, args.degrees) for c in cycles]
    return EXIT_OK, csv_text(STACK_COLUMNS, rows)


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not vals or any(v < 0 for v in vals):
        raise argparse.ArgumentTypeError("powers must be nonnegative integers")
    return vals


def cmd_verify(args, tol: Tolerances) -> tuple[int, str]:
    if args.trials <= 0:
        raise UsageError("--trials must be positive")
    if not args.eta_max > 0:
        raise UsageError("--eta-max must be positive")
    report = oracle.run_suite(args.trials, args.seed, args.eta_max, args.n_list, tol=tol)
    return (EXIT_OK if report.passed else EXIT_VERIFY), dumps(report.to_dict()) + "\n"


# -- parser ---------------------------------------------------------------


def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    p.add_argument("--det-tol", type=float, default=default if suppress else 1e-9)
    p.add_argument("--class-tol", type=float, default=default if suppress else 1e-9)
    p.add_argument("--output", "-o", default=default, help="write output to this file")
    p.add_argument(
        "--degrees",
        action="store_true",
        default=default if suppress else False,
        help="print angles in degrees (input stays in radians)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wignerabcd",
        allow_abbrev=False,
        description="Wigner decomposition and closed-form powers of ABCD matrices.",
    )
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help, allow_abbrev=False)
        _global_flags(p, suppress=True)
        p.set_defaults(func=func)
        return p

    p = add("classify", cmd_classify, "decompose one matrix")
    p.add_argument("matrix", help='JSON {"a":..,"b":..,"c":..,"d":..}, "-" for stdin, @file')

    p = add("power", cmd_power, "closed-form matrix power")
    p.add_argument("matrix")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="compare against brute force")

    p = add("cavity", cmd_cavity, "laser cavity rows (CSV)")
    for k in ("R", "s", "d", "a", "b"):
        p.add_argument(f"--{k}", type=float)
    p.add_argument("--n-cycles", type=int, default=1)
    p.add_argument("--sweep", help="name:start:stop:steps")

    p = add("stack", cmd_stack, "two-medium multilayer rows (CSV)")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--t", type=float)
    p.add_argument("--alpha1", type=float, default=0.0)
    p.add_argument("--alpha2", type=float, default=0.0)
    p.add_argument("--n-cycles", type=int, default=1)
    p.add_argument("--sweep", help="name:start:stop:steps")

    p = add("verify", cmd_verify, "closed form against brute force on random matrices")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eta-max", type=float, default=5.0)
    p.add_argument("--n-list", type=_int_list, default=[3, 17, 256])
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    tol = Tolerances(det_tol=args.det_tol, class_tol=args.class_tol)
    if getattr(args, "n_cycles", 0) < 0:
        print("error: --n-cycles must be nonnegative", file=sys.stderr)
        return EXIT_USAGE
    try:
        code, text = args.func(args, tol)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DeterminantError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OverflowError as exc:
        print(f"error: overflow: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
