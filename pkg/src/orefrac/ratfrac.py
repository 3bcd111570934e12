"""Rational pseudodifferential operators ``a * b^-1`` with a, b in K[D].

Fractions are kept in minimal form: ``gcrd(num, den) = 1`` and ``den`` monic.
The minimal form is unique, so equality is structural.
"""

from .errors import InverseOfZero, ZeroDenominator
from .field import FieldElem
from .ore import (ONE_OP, ZERO_OP, OrePoly, exact_right_quotient, gcrd,
                  lcrm_cofactors, monic_right)


def _as_op(value):
    return value if isinstance(value, OrePoly) else OrePoly(value)


class ScalarFraction:
    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE_OP):
        num, den = _as_op(num), _as_op(den)
        if den.is_zero():
            raise ZeroDenominator("fraction with zero denominator")
        self.num, self.den = _minimal_pair(num, den)

    @classmethod
    def _raw(cls, num, den):
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self):
        return self.den == ONE_OP

    def __add__(self, other):
        other = _as_fraction(other)
        if other is None:
            return NotImplemented
        return frac_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return ScalarFraction._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _as_fraction(other)
        if other is None:
            return NotImplemented
        return frac_add(self, -other)

    def __rsub__(self, other):
        other = _as_fraction(other)
        if other is None:
            return NotImplemented
        return frac_add(other, -self)

    def __mul__(self, other):
        other = _as_fraction(other)
        if other is None:
            return NotImplemented
        return frac_mul(self, other)

    def __rmul__(self, other):
        other = _as_fraction(other)
        if other is None:
            return NotImplemented
        return frac_mul(other, self)

    def inverse(self):
        return frac_inv(self)

    def __truediv__(self, other):
        other = _as_fraction(other)
        if other is None:
            return NotImplemented
        return frac_mul(self, frac_inv(other))

    def __eq__(self, other):
        other = _as_fraction(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        return f"({self.num}) * ({self.den})^-1"

    def __repr__(self):
        return f"ScalarFraction({str(self)!r})"

    def to_json(self):
        return {"num": str(self.num), "den": str(self.den)}


def _as_fraction(value):
    if isinstance(value, ScalarFraction):
        return value
    if isinstance(value, (OrePoly, FieldElem, int)) and not isinstance(value, bool):
        return ScalarFraction._raw(_as_op(value), ONE_OP)
    return None


def _minimal_pair(a, b):
    if a.is_zero():
        return ZERO_OP, ONE_OP
    d = gcrd(a, b)
    if not d.is_scalar():
        a = exact_right_quotient(a, d)
        b = exact_right_quotient(b, d)
    if not b.is_monic():
        c = OrePoly._raw((b.lc.inverse(),))
        a = a * c
        b = monic_right(b)
    return a, b


def simplify(a, b):
    """Minimal form of ``a * b^-1``."""
    return ScalarFraction(a, b)


def frac_add(h1, h2):
    if h1.den == h2.den:
        return ScalarFraction(h1.num + h2.num, h1.den)
    # b1 * c1 = b2 * c2 = m
    m, c1, c2 = lcrm_cofactors(h1.den, h2.den)
    return ScalarFraction(h1.num * c1 + h2.num * c2, m)


def frac_mul(h1, h2):
    if h1.is_zero() or h2.is_zero():
        return ScalarFraction._raw(ZERO_OP, ONE_OP)
    if h1.den == ONE_OP:
        return ScalarFraction(h1.num * h2.num, h2.den)
    # rewrite b1^-1 a2 = a3 b3^-1, i.e. b1 a3 = a2 b3
    _, a3, b3 = lcrm_cofactors(h1.den, h2.num)
    return ScalarFraction(h1.num * a3, h2.den * b3)


def frac_inv(h):
    if h.num.is_zero():
        raise InverseOfZero("inverse of the zero fraction")
    return ScalarFraction(h.den, h.num)


def frac_arith(op, h1, h2=None):
    """Dispatch ``op`` in {'add', 'sub', 'mul', 'div', 'inv'}."""
    if op == "add":
        return frac_add(h1, h2)
    if op == "sub":
        return frac_add(h1, -h2)
    if op == "mul":
        return frac_mul(h1, h2)
    if op == "div":
        return frac_mul(h1, frac_inv(h2))
    if op == "inv":
        return frac_inv(h1)
    raise ValueError(f"unknown fraction operation {op!r}")


def frac_equal(h1, h2):
    """Equality as elements of K(D); inputs need not be in minimal form."""
    h1 = ScalarFraction(h1.num, h1.den)
    h2 = ScalarFraction(h2.num, h2.den)
    return h1.num == h2.num and h1.den == h2.den
