"""``conelab`` command-line interface.

Exit codes: 0 on success, 1 on validation errors, 2 when a verification
check fails.
"""
from __future__ import annotations

import argparse
import sys
from typing import Callable, Sequence

from . import io
from .conehopf import (
    birkhoff_of_sum,
    coproduct,
    cone_antipode,
    euler_maclaurin_verify,
    exp_integral,
    exp_integral_polyhedral,
    exp_sum,
    exp_sum_polyhedral,
    renormalized_mu,
)
from .cones import ConeElement, ConeError, are_orthogonal, make_cone, smooth_subdivision, triangulate
from .germs import MeromorphicGerm, PoleError, canonical, evaluate_numeric, pretty, truncation_estimate
from .linalg import STANDARD, InnerProductForm
from .oracle import OracleError, oracle_sum

EXIT_OK, EXIT_INVALID, EXIT_FAILED = 0, 1, 2


class UsageError(ValueError):
    pass


def _gram(args: argparse.Namespace) -> InnerProductForm:
    return io.gram_from_json(io.load_json(args.gram)) if args.gram else STANDARD


def _load_cone(path: str):
    return io.cone_from_json(io.load_json(path), path)


def _point(args: argparse.Namespace) -> list:
    if not args.point:
        raise UsageError(f"{args.verb} requires --point FILE")
    return io.point_from_json(io.load_json(args.point), args.point)


def _fmt_float(x) -> str:
    if isinstance(x, complex):
        return f"{x.real:.12g}{x.imag:+.12g}j"
    return f"{x:.12g}"


def _emit_germ(args: argparse.Namespace, f: MeromorphicGerm) -> str:
    f = canonical(f, _gram(args))
    return io.dumps(io.germ_to_json(f)) if args.format == "json" else pretty(f)


def _simplicial_or_none(path: str):
    """The cone in ``path``, or ``None`` with raw data when its generators are dependent."""
    data = io.load_json(path)
    try:
        return io.cone_from_json(data, path), data
    except io.FormatError as exc:
        if "non-simplicial" not in str(exc):
            raise
        return None, data


def cmd_sum(args: argparse.Namespace) -> tuple[int, str]:
    C, data = _simplicial_or_none(args.input[0])
    if C is None:
        _, gens, lattice = io.raw_generators(data, args.input[0])
        return EXIT_OK, _emit_germ(args, exp_sum_polyhedral(gens, args.order, lattice))
    return EXIT_OK, _emit_germ(args, exp_sum(C, args.order))


def cmd_integral(args: argparse.Namespace) -> tuple[int, str]:
    C, data = _simplicial_or_none(args.input[0])
    if C is None:
        _, gens, lattice = io.raw_generators(data, args.input[0])
        return EXIT_OK, _emit_germ(args, exp_integral_polyhedral(gens, lattice))
    return EXIT_OK, _emit_germ(args, exp_integral(C))


def cmd_mu(args: argparse.Namespace) -> tuple[int, str]:
    return EXIT_OK, _emit_germ(args, renormalized_mu(_load_cone(args.input[0]), args.order, _gram(args)))


def cmd_birkhoff(args: argparse.Namespace) -> tuple[int, str]:
    C = _load_cone(args.input[0])
    Q = _gram(args)
    inv, phi2 = birkhoff_of_sum(C, args.order, Q)
    inv, phi2 = canonical(inv, Q), canonical(phi2, Q)
    if args.format == "json":
        return EXIT_OK, io.dumps({"phi1_inv": io.germ_to_json(inv), "phi2": io.germ_to_json(phi2)})
    return EXIT_OK, f"phi1^-1: {pretty(inv)}\nphi2: {pretty(phi2)}"


def cmd_coproduct(args: argparse.Namespace) -> tuple[int, str]:
    C = _load_cone(args.input[0])
    pairs = coproduct(C, _gram(args))
    if args.format == "json":
        return EXIT_OK, io.dumps(
            {"terms": [{"coeff": str(c), "left": io.cone_to_json(a), "right": io.cone_to_json(b)} for c, a, b in pairs]}
        )
    return EXIT_OK, "\n".join(f"{a!r} (x) {b!r}" for _, a, b in pairs)


def cmd_subdivide(args: argparse.Namespace) -> tuple[int, str]:
    C, data = _simplicial_or_none(args.input[0])
    if C is None:
        _, gens, lattice = io.raw_generators(data, args.input[0])
        simplicial = list(triangulate(gens, lattice).terms)
    else:
        simplicial = [C]
    pieces = ConeElement([(p, 1) for S in simplicial for p in smooth_subdivision(S)])
    if args.format == "json":
        return EXIT_OK, io.dumps(io.cone_element_to_json(pieces))
    return EXIT_OK, "\n".join(repr(p) for p, _ in pieces)


def cmd_check_orthogonal(args: argparse.Namespace) -> tuple[int, str]:
    if len(args.input) != 2:
        raise UsageError("check-orthogonal takes exactly two cone files")
    a, b = (_load_cone(p) for p in args.input)
    return EXIT_OK, f"orthogonal: {'true' if are_orthogonal(_gram(args), a, b) else 'false'}"


def cmd_eval(args: argparse.Namespace) -> tuple[int, str]:
    f = io.germ_from_json(io.load_json(args.input[0]), args.input[0])
    z = _point(args)
    value = evaluate_numeric(f, z)
    est = truncation_estimate(f, z)
    if args.format == "json":
        return EXIT_OK, io.dumps({"value": _fmt_float(value), "truncation_estimate": f"{est:.3g}"})
    return EXIT_OK, f"{_fmt_float(value)}\ntruncation estimate: {est:.3g}"


def cmd_oracle_sum(args: argparse.Namespace) -> tuple[int, str]:
    C = _load_cone(args.input[0])
    z = _point(args)
    if any(isinstance(x, complex) for x in z):
        raise UsageError("oracle-sum needs a real point")
    res = oracle_sum(C, [float(x) for x in z], args.radius)
    if args.format == "json":
        return EXIT_OK, io.dumps(
            {"value": _fmt_float(res.value), "radius": res.radius, "last_shell": res.last_shell, "tail_bound": res.tail_bound}
        )
    return EXIT_OK, f"{_fmt_float(res.value)}\nlast shell: {res.last_shell:.3g}\ntail bound: {res.tail_bound:.3g}"


def verification_checks(C, order: int, Q: InnerProductForm) -> list[tuple[str, bool, str]]:
    """``(name, passed, witness)`` for the identities checked by ``verify``."""
    checks = []
    ok, diff = euler_maclaurin_verify(C, order, Q)
    checks.append(("euler-maclaurin", ok, "" if ok else pretty(diff)))
    a, b = exp_sum(C, order, "shortest"), exp_sum(C, order, "interior-first")
    checks.append(("subdivision-invariance", a == b, "" if a == b else pretty(a - b)))
    inv1, phi2 = birkhoff_of_sum(C, order, Q)
    inv2, phi2b = birkhoff_of_sum(C, order, Q, via_projection=True)
    same = inv1 == inv2 and phi2 == phi2b
    checks.append(("birkhoff-consistency", same, ""))
    checks.append(("birkhoff-polar-factor", phi2 == exp_integral(C), ""))
    defect = ConeElement()
    for c, left, right in coproduct(C, Q):
        defect = defect + c * cone_antipode(left, Q).multiply(ConeElement.basis(right), Q)
    unit = ConeElement.basis(make_cone([])) if C.is_zero_cone else ConeElement()
    checks.append(("antipode", defect == unit, "" if defect == unit else repr(defect - unit)))
    return checks


def cmd_verify(args: argparse.Namespace) -> tuple[int, str]:
    C = _load_cone(args.input[0])
    checks = verification_checks(C, args.order, _gram(args))
    lines = [f"CHECK {name} {'PASS' if ok else 'FAIL'}" + (f" {w}" if w and not ok else "") for name, ok, w in checks]
    return (EXIT_OK if all(ok for _, ok, _ in checks) else EXIT_FAILED), "\n".join(lines)


COMMANDS: dict[str, tuple[Callable[[argparse.Namespace], tuple[int, str]], str]] = {
    "sum": (cmd_sum, "exponential sum over the open cone"),
    "integral": (cmd_integral, "exponential integral over the cone"),
    "mu": (cmd_mu, "renormalised interpolation factor mu = pi_+ S"),
    "birkhoff": (cmd_birkhoff, "Birkhoff factors of S"),
    "coproduct": (cmd_coproduct, "transverse coproduct"),
    "subdivide": (cmd_subdivide, "smooth subdivision"),
    "check-orthogonal": (cmd_check_orthogonal, "Q-orthogonality of two cones"),
    "eval": (cmd_eval, "evaluate a germ numerically"),
    "oracle-sum": (cmd_oracle_sum, "floating-point lattice sum"),
    "verify": (cmd_verify, "run identity checks on a cone"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="conelab", description="Exact Birkhoff factorisation over lattice cones.")
    sub = parser.add_subparsers(dest="verb", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", nargs="+", help="input JSON file(s)")
        p.add_argument("--order", type=int, default=4, help="truncation degree (default 4)")
        p.add_argument("--gram", help="Gram family JSON file")
        p.add_argument("--point", help="evaluation point JSON file")
        p.add_argument("--radius", type=int, default=None, help="oracle radius (default adaptive)")
        p.add_argument("--format", choices=("json", "pretty"), default="pretty")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.order < 0:
        print("error: --order must be non-negative", file=sys.stderr)
        return EXIT_INVALID
    if args.verb != "check-orthogonal" and len(args.input) != 1:
        print(f"error: {args.verb} takes exactly one input file", file=sys.stderr)
        return EXIT_INVALID
    handler = COMMANDS[args.verb][0]
    try:
        code, out = handler(args)
    except PoleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (io.FormatError, UsageError, ConeError, OracleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
