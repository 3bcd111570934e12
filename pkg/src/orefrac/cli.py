"""Command line front end.

    orefrac [--json] [--input FILE] [--output FILE] VERB OPERAND...

Operands are expressions in the syntax of :mod:`orefrac.expr`.  Operands from
``--input`` (one per line, ``#`` comments allowed, ``-`` for stdin) are
appended after the inline ones.  Exit status: 0 on success, 1 on a domain
error, 2 on a syntax or usage error.
"""

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import dirac, matfrac, matops, ore, ratfrac
from .errors import OreFracError, ParseError
from .expr import (format_value, parse_expr, parse_fraction, parse_matrix, parse_operator,
                   parse_vector, to_json)
from .matops import OpMatrix

PROG = "orefrac"


@dataclass
class Command:
    verb: str
    inputs: list = field(default_factory=list)
    options: dict = field(default_factory=dict)


class UsageError(Exception):
    pass


def _arity(cmd, *allowed):
    if len(cmd.inputs) not in allowed:
        want = " or ".join(str(a) for a in allowed)
        raise UsageError(f"{cmd.verb} takes {want} operands, got {len(cmd.inputs)}")


def _pair_fraction(num, den):
    return matfrac.MatFraction(parse_matrix(num), parse_matrix(den))


def _is_matrix_text(text):
    return isinstance(parse_expr(text), OpMatrix)


# -- verbs -------------------------------------------------------------------
# each returns the value to print

def _parse(cmd):
    _arity(cmd, 1)
    return parse_expr(cmd.inputs[0])


def _simplify(cmd):
    _arity(cmd, 1, 2)
    if len(cmd.inputs) == 1:
        return parse_fraction(cmd.inputs[0])
    if _is_matrix_text(cmd.inputs[0]):
        return matfrac.minimal_decomposition(_pair_fraction(*cmd.inputs))
    return ratfrac.ScalarFraction(parse_operator(cmd.inputs[0]), parse_operator(cmd.inputs[1]))


def _det(cmd):
    _arity(cmd, 1)
    return matops.dieudonne_det(parse_matrix(cmd.inputs[0]))


def _gcrd(cmd):
    _arity(cmd, 2)
    a, b = (parse_expr(t) for t in cmd.inputs)
    if isinstance(a, OpMatrix) or isinstance(b, OpMatrix):
        return matops.mat_gcrd(parse_matrix(cmd.inputs[0]), parse_matrix(cmd.inputs[1]), check=False).D
    return ore.gcrd(parse_operator(cmd.inputs[0]), parse_operator(cmd.inputs[1]))


def _lclm(cmd):
    _arity(cmd, 2)
    return ore.lclm(parse_operator(cmd.inputs[0]), parse_operator(cmd.inputs[1]))


def _adjoint(cmd):
    _arity(cmd, 1)
    v = parse_expr(cmd.inputs[0])
    if isinstance(v, OpMatrix):
        return matops.adjoint_mat(v)
    return ore.adjoint(parse_operator(cmd.inputs[0]))


def _minimal(cmd):
    _arity(cmd, 2)
    return matfrac.minimal_decomposition(_pair_fraction(*cmd.inputs))


def _divide_out(cmd):
    _arity(cmd, 4)
    F = _pair_fraction(cmd.inputs[0], cmd.inputs[1])
    F0 = _pair_fraction(cmd.inputs[2], cmd.inputs[3])
    return matfrac.divide_out(F, F0)


def _binary_fraction(cmd, scalar_op, matrix_op):
    _arity(cmd, 2, 4)
    if len(cmd.inputs) == 2:
        return scalar_op(parse_fraction(cmd.inputs[0]), parse_fraction(cmd.inputs[1]))
    F = _pair_fraction(cmd.inputs[0], cmd.inputs[1])
    G = _pair_fraction(cmd.inputs[2], cmd.inputs[3])
    return matrix_op(F, G)


def _equal(cmd):
    return _binary_fraction(cmd, ratfrac.frac_equal, matfrac.frac_equal_mat)


def _mul(cmd):
    return _binary_fraction(cmd, ratfrac.frac_mul, matfrac.frac_mul)


def _add(cmd):
    return _binary_fraction(cmd, ratfrac.frac_add, matfrac.frac_add)


def _dirac(cmd):
    sub = cmd.options.get("sub")
    if sub == "skewadjoint":
        _arity(cmd, 2)
        return dirac.is_skewadjoint_pair(_isotropy_pair(cmd))
    if sub == "witness":
        _arity(cmd, 3)
        G, H = dirac.membership_witness(_isotropy_pair(cmd), parse_vector(cmd.inputs[2]))
        return {"G": G, "H": H}
    if sub == "orthogonal":
        _arity(cmd, 4)
        return dirac.orthogonality_check(_isotropy_pair(cmd), parse_vector(cmd.inputs[2]),
                                         parse_vector(cmd.inputs[3]))
    if sub == "solve":
        _arity(cmd, 4)
        den = parse_operator(cmd.options.get("den") or "1")
        if not den.is_scalar():
            raise ParseError("--den must be a rational function", cmd.options.get("den"), 0)
        return dirac.solve_preimage(_isotropy_pair(cmd), parse_vector(cmd.inputs[2]),
                                    parse_vector(cmd.inputs[3]), cmd.options.get("deg", 2),
                                    den.scalar())
    raise UsageError(f"unknown dirac subcommand {sub!r}")


def _isotropy_pair(cmd):
    return dirac.IsotropyPair(parse_matrix(cmd.inputs[0]), parse_matrix(cmd.inputs[1]))


VERBS = {
    "parse": _parse,
    "simplify": _simplify,
    "det": _det,
    "gcrd": _gcrd,
    "lclm": _lclm,
    "adjoint": _adjoint,
    "minimal": _minimal,
    "divide-out": _divide_out,
    "equal": _equal,
    "mul": _mul,
    "add": _add,
    "dirac": _dirac,
}


# -- output ------------------------------------------------------------------

def _text(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, dict):
        return " ".join(f"{k}={format_value(v)}" for k, v in value.items())
    return format_value(value)


def _json(cmd, value):
    if isinstance(value, dict):
        result = {k: to_json(v) for k, v in value.items()}
    else:
        result = to_json(value)
    doc = {"verb": cmd.verb, "result": result}
    if cmd.options.get("sub"):
        doc["subcommand"] = cmd.options["sub"]
    return json.dumps(doc, sort_keys=True)


def run(cmd):
    """Execute ``cmd``; returns ``(exit_code, stdout_text, stderr_text)``."""
    handler = VERBS.get(cmd.verb)
    if handler is None:
        return 2, "", f"{PROG}: unknown verb {cmd.verb!r}\n"
    try:
        value = handler(cmd)
    except UsageError as exc:
        return 2, "", f"{PROG}: {exc}\n"
    except ParseError as exc:
        return 2, "", f"{PROG}: syntax error [{exc.module}]: {exc}\n"
    except OreFracError as exc:
        return 1, "", f"{PROG}: error [{exc.module}]: {exc}\n"
    except (ArithmeticError, ValueError) as exc:
        return 1, "", f"{PROG}: error [{handler.__module__.rsplit('.', 1)[-1]}]: {exc}\n"
    out = _json(cmd, value) if cmd.options.get("json") else _text(value)
    return 0, out + "\n", ""


# -- argument parsing ----------------------------------------------------------

def _read_operands(path):
    stream = sys.stdin if path == "-" else open(path, encoding="utf-8")
    try:
        lines = [ln.strip() for ln in stream]
    finally:
        if stream is not sys.stdin:
            stream.close()
    return [ln for ln in lines if ln and not ln.startswith("#")]


def _common_flags(suppress):
    # flags may appear before or after the verb; sub-level copies must not reset them
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text", **kw)
    common.add_argument("--input", metavar="FILE", help="read further operands from FILE, one per line", **kw)
    common.add_argument("--output", metavar="FILE", help="write the result to FILE", **kw)
    return common


def build_parser():
    common = _common_flags(suppress=True)
    parser = argparse.ArgumentParser(prog=PROG, parents=[_common_flags(suppress=False)],
                                     description="Exact arithmetic with rational matrix differential operators.")
    verbs = parser.add_subparsers(dest="verb", metavar="VERB", required=True)
    usage = {
        "parse": "print the canonical form of an expression",
        "simplify": "minimal form of a fraction: EXPR, or NUM DEN",
        "det": "Dieudonne determinant of a square matrix",
        "gcrd": "greatest common right divisor of two operators or matrices",
        "lclm": "least common left multiple of two operators",
        "adjoint": "formal adjoint of an operator or matrix",
        "minimal": "canonical minimal fraction NUM DEN",
        "divide-out": "D with NUM = NUM0 D and DEN = DEN0 D: NUM DEN NUM0 DEN0",
        "equal": "equality of two fractions: H1 H2, or NUM1 DEN1 NUM2 DEN2",
        "mul": "product of two fractions: H1 H2, or NUM1 DEN1 NUM2 DEN2",
        "add": "sum of two fractions: H1 H2, or NUM1 DEN1 NUM2 DEN2",
    }
    for name, text in usage.items():
        p = verbs.add_parser(name, parents=[common], help=text, description=text)
        p.add_argument("operands", nargs="*", metavar="EXPR")
    p = verbs.add_parser("dirac", parents=[common], help="isotropy checks for a pair A B")
    subs = p.add_subparsers(dest="sub", metavar="SUBCOMMAND", required=True)
    for name, text in (("skewadjoint", "test A* B + B* A = 0: A B"),
                       ("witness", "G = A F, H = B F: A B F"),
                       ("orthogonal", "test A* H + B* G = 0: A B G H")):
        s = subs.add_parser(name, parents=[common], help=text, description=text)
        s.add_argument("operands", nargs="*", metavar="EXPR")
    s = subs.add_parser("solve", parents=[common], help="F with A F = G, B F = H: A B G H",
                        description="bounded search for F with A F = G and B F = H")
    s.add_argument("operands", nargs="*", metavar="EXPR")
    s.add_argument("--deg", type=int, default=2, metavar="N", help="numerator degree bound (default 2)")
    s.add_argument("--den", default="1", metavar="POLY", help="denominator ansatz (default 1)")
    return parser


def main(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    inputs = list(ns.operands)
    if ns.input:
        try:
            inputs += _read_operands(ns.input)
        except OSError as exc:
            print(f"{PROG}: cannot read {ns.input}: {exc.strerror}", file=sys.stderr)
            return 1
    options = {"json": ns.json}
    if ns.verb == "dirac":
        options["sub"] = ns.sub
        if ns.sub == "solve":
            options["deg"] = ns.deg
            options["den"] = ns.den
    code, out, err = run(Command(ns.verb, inputs, options))
    if err:
        sys.stderr.write(err)
    if out:
        if ns.output:
            with open(ns.output, "w", encoding="utf-8") as fh:
                fh.write(out)
        else:
            sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
