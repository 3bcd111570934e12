"""Text syntax for operators, fractions and matrices.

Grammar (``D`` is the derivation, ``x`` the field generator)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := atom ('^' ['-'] uint)?
    atom   := uint | 'x' | 'D' | '(' expr ')' | matrix | vector
    matrix := '[' row ((';' | ',') row)* ']'      row := '[' expr (',' expr)* ']'
    vector := '[' expr (',' expr)* ']'

Products are noncommutative and associate to the left.  ``a / b`` is
``a * b^-1``; a quotient by a non-scalar operator yields a fraction.
Everything the printer emits parses back to the same value.
"""

import re

from .errors import InvalidValue, ParseError, UndefinedSymbol
from .field import FieldElem
from .matops import OpMatrix, mat_mul
from .ore import ONE_OP, OrePoly, D
from .ratfrac import ScalarFraction

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()\[\],;]))")
_X = OrePoly(FieldElem.gen())


def _tokenize(text):
    pos = 0
    out = []
    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            rest = text[pos:]
            if rest.strip() == "":
                break
            bad = pos + len(rest) - len(rest.lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", text, bad)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


# -- value arithmetic -----------------------------------------------------------

def _demote(v):
    if isinstance(v, ScalarFraction) and v.den == ONE_OP:
        return v.num
    return v


def _frac(v):
    return v if isinstance(v, ScalarFraction) else ScalarFraction._raw(v, ONE_OP)


def _kind(v):
    if isinstance(v, OpMatrix):
        return "matrix"
    if isinstance(v, list):
        return "vector"
    return "scalar"


def _check_kinds(a, b, what):
    ka, kb = _kind(a), _kind(b)
    if "vector" in (ka, kb):
        raise InvalidValue(f"cannot {what} vectors")
    return ka, kb


def _add(a, b):
    ka, kb = _check_kinds(a, b, "add")
    if ka != kb:
        raise InvalidValue(f"cannot add a {ka} and a {kb}")
    if ka == "matrix":
        return a + b
    if isinstance(a, OrePoly) and isinstance(b, OrePoly):
        return a + b
    return _demote(_frac(a) + _frac(b))


def _neg(a):
    if isinstance(a, list):
        return [_neg(e) for e in a]
    return -a


def _mul(a, b):
    ka, kb = _check_kinds(a, b, "multiply")
    if ka == "matrix" and kb == "matrix":
        return mat_mul(a, b)
    if ka == "matrix" or kb == "matrix":
        s, m = (a, b) if kb == "matrix" else (b, a)
        if not isinstance(s, OrePoly):
            raise InvalidValue("matrices can only be scaled by differential operators")
        return s * m if kb == "matrix" else m * s
    if isinstance(a, OrePoly) and isinstance(b, OrePoly):
        return a * b
    return _demote(_frac(a) * _frac(b))


def _inverse(a):
    if isinstance(a, OrePoly) and a.is_scalar():
        return OrePoly(a.scalar().inverse())
    if _kind(a) != "scalar":
        raise InvalidValue(f"cannot invert a {_kind(a)}")
    return _demote(_frac(a).inverse())


def _div(a, b):
    if _kind(b) != "scalar":
        raise InvalidValue(f"cannot divide by a {_kind(b)}")
    return _mul(a, _inverse(b))


def _pow(a, k):
    if _kind(a) == "vector":
        raise InvalidValue("cannot raise a vector to a power")
    if k < 0:
        a, k = _inverse(a), -k
    if isinstance(a, OpMatrix):
        if not a.is_square():
            raise InvalidValue("power of a non-square matrix")
        out = OpMatrix.identity(a.rows)
        for _ in range(k):
            out = mat_mul(out, a)
        return out
    if isinstance(a, OrePoly):
        return a ** k
    out = _frac(ONE_OP)
    for _ in range(k):
        out = out * a
    return _demote(out)


# -- recursive descent ---------------------------------------------------------

class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.take()
        if val != value or kind == "end":
            found = "end of input" if kind == "end" else repr(val)
            raise ParseError(f"expected {value!r}, found {found}", self.text, pos)

    def error(self, message):
        raise ParseError(message, self.text, self.peek()[2])

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        v = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return v

    def expr(self):
        neg = False
        if self.peek()[1] == "-" and self.peek()[0] == "op":
            self.take()
            neg = True
        v = self.term()
        if neg:
            v = _neg(v)
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            w = self.term()
            v = _add(v, w if op == "+" else _neg(w))
        return v

    def term(self):
        v = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            w = self.factor()
            v = _mul(v, w) if op == "*" else _div(v, w)
        return v

    def factor(self):
        v = self.atom()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            self.take()
            sign = 1
            if self.peek()[1] == "-" and self.peek()[0] == "op":
                self.take()
                sign = -1
            kind, val, pos = self.take()
            if kind != "num":
                raise ParseError("exponent must be an integer", self.text, pos)
            v = _pow(v, sign * int(val))
        return v

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            return OrePoly(int(val))
        if kind == "name":
            if val == "x":
                return _X
            if val == "D":
                return D
            raise UndefinedSymbol(f"undefined symbol {val!r}", self.text, pos)
        if val == "(" and kind == "op":
            v = self.expr()
            self.expect(")")
            return v
        if val == "[" and kind == "op":
            return self.bracket()
        found = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"unexpected {found}", self.text, pos)

    def bracket(self):
        if self.peek()[1] == "[" and self.peek()[0] == "op":
            rows = []
            while True:
                self.expect("[")
                rows.append(self.items())
                self.expect("]")
                if self.peek()[1] in (",", ";") and self.peek()[0] == "op":
                    self.take()
                    continue
                break
            self.expect("]")
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                self.error("matrix rows have different lengths")
            return OpMatrix([[_entry(e) for e in r] for r in rows])
        items = self.items()
        self.expect("]")
        return items

    def items(self):
        out = [self.expr()]
        while self.peek()[1] == "," and self.peek()[0] == "op":
            self.take()
            out.append(self.expr())
        return out


def _entry(v):
    if isinstance(v, OrePoly):
        return v
    raise InvalidValue(f"matrix entries must be differential operators, got {format_value(v)}")


def parse_expr(text):
    """Parse ``text`` into an OrePoly, ScalarFraction, OpMatrix or list (vector)."""
    return _Parser(text).parse()


def parse_operator(text):
    v = parse_expr(text)
    if not isinstance(v, OrePoly):
        raise InvalidValue(f"expected a differential operator, got {format_value(v)}")
    return v


def parse_fraction(text):
    v = parse_expr(text)
    if isinstance(v, OrePoly):
        return ScalarFraction._raw(v, ONE_OP)
    if isinstance(v, ScalarFraction):
        return v
    raise InvalidValue(f"expected a scalar operator or fraction, got {format_value(v)}")


def parse_matrix(text):
    """A square matrix; a scalar operator is read as a 1x1 matrix."""
    v = parse_expr(text)
    if isinstance(v, OrePoly):
        return OpMatrix([[v]])
    if not isinstance(v, OpMatrix):
        raise InvalidValue(f"expected a matrix, got {format_value(v)}")
    return v


def parse_vector(text):
    """A vector over K; a single scalar is read as a vector of length 1."""
    v = parse_expr(text)
    items = v if isinstance(v, list) else [v]
    out = []
    for e in items:
        if isinstance(e, OrePoly) and e.is_scalar():
            out.append(e.scalar())
        else:
            raise InvalidValue(f"vector entries must be rational functions, got {format_value(e)}")
    return out


def format_value(v):
    if isinstance(v, list):
        return "[" + ",".join(format_value(e) for e in v) + "]"
    return str(v)


def to_json(v):
    if isinstance(v, list):
        return [format_value(e) for e in v]
    if isinstance(v, (FieldElem, OrePoly, bool)) or v is None:
        return v if isinstance(v, bool) or v is None else str(v)
    if hasattr(v, "to_json"):
        return v.to_json()
    raise TypeError(f"no JSON form for {type(v).__name__}")


__all__ = ["parse_expr", "parse_operator", "parse_fraction", "parse_matrix", "parse_vector",
           "format_value", "to_json"]
