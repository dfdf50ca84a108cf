"""Command line entry point: ``protodirac <command> [--input FILE | --builtin NAME] ...``.

Exit status is 0 when every requested check passes, 1 when a check fails and
2 for bad input (unreadable document, unknown builtin, malformed argument).
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import re
import sys

from . import catalog, document
from .courant import SplitSection, basis_sections, check_courant, derived_bracket_check, dorfman, metric
from .dirac import (
    PIECE_AXIOM,
    characteristic_report,
    is_generating,
    rescale_invariance,
    spinor_matrix,
    square_decomposition,
)
from .proto import AxiomReport, ProtoData, check_axioms, identity_suite, probes
from .ring import Poly, parse_poly
from .spinor import SpinorMatrix

SCHEMA_VERSION = 1
EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    """Anything wrong with what the user supplied."""


# sections written as text, e.g. "e1 + 1/2*q1*e^2"


_TERM = re.compile(r"([+-])([^+-]+)")
_BASIS = re.compile(r"e(\^?)(\d+)")


def parse_section(text: str, P: ProtoData) -> SplitSection:
    """Parse a sum of terms c*p*e_i (vector, written ``e3``) or c*p*e^i (form, written ``e^3``)."""
    src = text.replace(" ", "")
    if not src:
        raise InputError("empty section")
    if src[0] not in "+-":
        src = "+" + src
    total = SplitSection.zero(P.n, P.m)
    pos = 0
    while pos < len(src):
        m = _TERM.match(src, pos)
        if not m:
            raise InputError(f"cannot parse section {text!r}")
        sign, body = m.groups()
        coeff, basis = Poly.one(P.m), None
        for factor in body.split("*"):
            bm = _BASIS.fullmatch(factor)
            if bm:
                if basis is not None:
                    raise InputError(f"term {body!r} has two basis elements")
                i = int(bm.group(2))
                if not 1 <= i <= P.n:
                    raise InputError(f"basis index {i} out of range 1..{P.n}")
                basis = P.form(i) if bm.group(1) else P.vec(i)
            else:
                try:
                    coeff = coeff * parse_poly(factor, P.m)
                except ValueError as exc:
                    raise InputError(f"bad factor {factor!r} in {text!r}: {exc}") from exc
        if basis is None:
            raise InputError(f"term {body!r} needs a basis element e<i> or e^<i>")
        term = SplitSection.of(basis) * (coeff if sign == "+" else -coeff)
        total = total + term
        pos = m.end()
    return total


def _poly_arg(text: str, P: ProtoData) -> Poly:
    try:
        return parse_poly(text, P.m)
    except ValueError as exc:
        raise InputError(f"bad polynomial {text!r}: {exc}") from exc


# command implementations; each returns (passed, checks, values)


def _invariant_values(P: ProtoData) -> tuple:
    rep = characteristic_report(P)
    md = P.modular
    values = {"X0": str(md.X0), "xi0": str(md.xi0), **rep.to_dict()}
    return rep.consistent, values


def cmd_check(P, args):
    axioms = check_axioms(P)
    gen = is_generating(P, args.probe_degree)
    consistent, values = _invariant_values(P)
    values["proto_axioms_pass"] = axioms.passed
    values["generating_pass"] = gen.passed
    values["agree"] = axioms.passed == gen.passed
    checks = [axioms, gen]
    if P.n == 3 and P.m == 0:
        # the nine bilinear constraints of a rank-3 point-base structure
        constraints = AxiomReport("rank-3 constraint system")
        for idx, value in enumerate(catalog.rank3_constraints(P), start=1):
            constraints.add(f"constraint-{idx}").record((), value)
        checks.append(constraints)
    return all(c.passed for c in checks) and consistent, checks, values


def cmd_invariant(P, args):
    consistent, values = _invariant_values(P)
    return consistent, [], values


def cmd_dirac_square(P, args):
    report = AxiomReport("graded pieces of the square of the Dirac operator")
    rows = {label: report.add(label, f"suggests {ax} when nonzero") for label, ax in PIECE_AXIOM.items()}
    total = report.add("square-minus-f", "D^2 v - f v")
    for v in probes(P, "A", args.probe_degree):
        dec = square_decomposition(P, v)
        for label, r in rows.items():
            r.record((v,), dec.pieces[label])
        total.record((v,), dec.total() - dec.pieces["deg0-scalar"])
    consistent, values = _invariant_values(P)
    return report.passed and consistent, [report], values


def cmd_dorfman(P, args):
    left, right = parse_section(args.left, P), parse_section(args.right, P)
    out = dorfman(P, left, right)
    values = {
        "left": str(left),
        "right": str(right),
        "bracket": str(out),
        "bracket_terms": out.to_json(),
        "metric": str(metric(left, right)),
    }
    return True, [], values


def cmd_courant(P, args):
    return _all([check_courant(P), derived_bracket_check(P, args.probe_degree)])


def cmd_identities(P, args):
    return _all([identity_suite(P, args.probe_degree)])


def cmd_rescale(P, args):
    res = rescale_invariance(P, _poly_arg(args.u, P), _poly_arg(args.w, P))
    return res.difference.is_zero(), [], {"u": args.u, "w": args.w, **res.to_dict()}


def cmd_oracle(P, args):
    if P.m:
        raise InputError("oracle needs a point base (base_dim 0)")
    report = AxiomReport("spinor matrix oracle")
    D, Do = spinor_matrix(P, "dirac"), spinor_matrix(P, "dirac-oracle")
    report.add("dirac-matrix", "library D equals the matrix built from creation/annihilation").record(
        ("D",), (D - Do).nonzero_entries())
    sq = Do @ Do
    scalar = sq.is_scalar()
    f = characteristic_report(P, with_matrix=False).closed_form.constant_value()
    report.add("square-scalar", "D^2 = f * identity").record(
        ("D^2",), (sq - SpinorMatrix.identity(P.n) * f).nonzero_entries())
    r = report.add("clifford", "c(a)c(b) + c(b)c(a) = 2<a, b> identity")
    secs = basis_sections(P, with_multiples=False)
    mats = [spinor_matrix(P, s) for s in secs]
    for (a, ma), (b, mb) in itertools.product(zip(secs, mats), repeat=2):
        target = SpinorMatrix.identity(P.n) * (metric(a, b).constant_value() * 2)
        r.record((a, b), (ma @ mb + mb @ ma - target).nonzero_entries())
    values = {"square_scalar": None if scalar is None else str(scalar), "f": str(f), "pairs": len(secs) ** 2}
    return report.passed, [report], values


def cmd_export(P, args):
    return True, [], {"document": document.InputDocument.from_proto(P).to_data()}


def _all(reports):
    return all(r.passed for r in reports), reports, {}


COMMANDS = {
    "check": (cmd_check, "proto-bialgebroid axioms plus the generating-operator conditions"),
    "invariant": (cmd_invariant, "characteristic function with both Lie-derivative cross-checks"),
    "dirac-square": (cmd_dirac_square, "graded residual table of the square of the Dirac operator"),
    "dorfman": (cmd_dorfman, "Dorfman bracket of two sections, e.g. 'e1 + q1*e^2'"),
    "courant": (cmd_courant, "Courant axioms and the derived-bracket checks"),
    "rescale": (cmd_rescale, "characteristic function after rescaling the half densities by exp(u), exp(w)"),
    "oracle": (cmd_oracle, "exact spinor matrices (point base only)"),
    "identities": (cmd_identities, "structural identity suite"),
    "export": (cmd_export, "print the input as a YAML document"),
}


# argument handling and output


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="protodirac", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        if name == "dorfman":
            p.add_argument("left")
            p.add_argument("right")
        if name == "rescale":
            p.add_argument("u")
            p.add_argument("w")
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--input", metavar="FILE", help="YAML or JSON document")
        src.add_argument("--builtin", metavar="NAME",
                         help=f"one of {', '.join(sorted(catalog.BUILTINS))}, random-3d, 3d-family:k=v,...")
        p.add_argument("--probe-degree", type=int, choices=(0, 1, 2), default=2)
        p.add_argument("--report", choices=("text", "structured"), default="text")
        p.add_argument("--seed", type=int, default=0, help="seed for random-3d")
    return parser


def resolve_input(args) -> ProtoData:
    if args.input:
        return document.load(args.input).to_proto()
    if args.builtin == "random-3d":
        return catalog.random_3d_solution(random.Random(args.seed))
    try:
        return catalog.builtin(args.builtin)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def structured(args, P, passed, checks, values, code) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "command": args.command,
        "input": {"name": P.name, "rank": P.n, "base_dim": P.m},
        "probe_degree": args.probe_degree,
        "passed": passed,
        "exit_code": code,
        "checks": [c.to_dict() for c in checks],
        "values": values,
    }


def render_text(args, P, passed, checks, values) -> str:
    if args.command == "export":
        return document.dumps(document.InputDocument.from_proto(P)).rstrip()
    lines = [f"{args.command} on {P.name or 'input'} (rank {P.n}, base_dim {P.m}): {'PASS' if passed else 'FAIL'}"]
    for c in checks:
        lines.append(c.render_text())
    for key, value in values.items():
        if not key.endswith("_terms"):
            lines.append(f"  {key}: {value}")
    return "\n".join(lines)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        P = resolve_input(args)
        run, _ = COMMANDS[args.command]
        passed, checks, values = run(P, args)
    except (InputError, document.DocumentError) as exc:
        if args.report == "structured":
            print(json.dumps({"schema": SCHEMA_VERSION, "command": args.command, "error": str(exc),
                              "exit_code": EXIT_INPUT}, indent=2))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    code = EXIT_PASS if passed else EXIT_FAIL
    if args.report == "structured":
        print(json.dumps(structured(args, P, passed, checks, values, code), indent=2))
    else:
        print(render_text(args, P, passed, checks, values))
    return code


if __name__ == "__main__":
    sys.exit(main())
