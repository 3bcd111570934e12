"""The differential field Q(x) with derivation d/dx.

Elements are stored as a pair of integer polynomials ``num/den`` kept in
canonical form after every operation: ``gcd(num, den) = 1`` in Z[x] (content
included), the leading coefficient of ``den`` is positive, and zero is
``0/1``.  With a canonical form, equality is a structural comparison.

The rest of the package only relies on the ring operations, ``deriv``,
``is_zero`` and equality of these objects, so a different differential field
can be substituted by providing the same surface.
"""

from fractions import Fraction

import flint

from .errors import DivisionByZero

_fmpz_poly = flint.fmpz_poly
_fmpq_poly = flint.fmpq_poly

_ZERO_POLY = _fmpz_poly([])
_ONE_POLY = _fmpz_poly([1])


def _canonical(num, den):
    if den.is_zero():
        raise DivisionByZero("zero denominator in Q(x)")
    if num.is_zero():
        return _ZERO_POLY, _ONE_POLY
    if not den.is_one():
        g = num.gcd(den)
        if not g.is_one():
            num = num // g
            den = den // g
        if den.leading_coefficient() < 0:
            num = -num
            den = -den
    return num, den


def _poly_from(value):
    """Convert ``value`` to a pair of integer polynomials (num, den)."""
    if isinstance(value, FieldElem):
        return value.num, value.den
    if isinstance(value, bool):
        raise TypeError("bool is not a field element")
    if isinstance(value, int):
        return _fmpz_poly([value]), _ONE_POLY
    if isinstance(value, Fraction):
        return _fmpz_poly([value.numerator]), _fmpz_poly([value.denominator])
    if isinstance(value, _fmpz_poly):
        return value, _ONE_POLY
    if isinstance(value, _fmpq_poly):
        return _fmpz_poly(value.numer()), _fmpz_poly([int(value.denom())])
    if isinstance(value, flint.fmpq):
        return _fmpz_poly([int(value.p)]), _fmpz_poly([int(value.q)])
    if isinstance(value, flint.fmpz):
        return _fmpz_poly([int(value)]), _ONE_POLY
    raise TypeError(f"cannot convert {type(value).__name__} to a field element")


class FieldElem:
    """An element of Q(x)."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        n1, d1 = _poly_from(num)
        if isinstance(den, int) and den == 1:
            n, d = n1, d1
        else:
            n2, d2 = _poly_from(den)
            if n2.is_zero():
                raise DivisionByZero("zero denominator in Q(x)")
            n, d = n1 * d2, d1 * n2
        self.num, self.den = _canonical(n, d)

    @classmethod
    def _raw(cls, num, den):
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def gen(cls):
        """The generator ``x``."""
        return cls._raw(_fmpz_poly([0, 1]), _ONE_POLY)

    @classmethod
    def from_coeffs(cls, num_coeffs, den_coeffs=(1,)):
        return cls._raw(*_canonical(_fmpz_poly(list(num_coeffs)), _fmpz_poly(list(den_coeffs))))

    # predicates

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self):
        return self.den.is_one()

    def is_constant(self):
        return self.num.degree() <= 0 and self.den.degree() == 0

    def size(self):
        """Total degree of the representation, used as a pivot tie-break."""
        return max(self.num.degree(), 0) + self.den.degree()

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            return other
        try:
            return FieldElem(other)
        except TypeError:
            return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return FieldElem._raw(*_canonical(self.num + other.num, self.den))
        return FieldElem._raw(*_canonical(self.num * other.den + other.num * self.den,
                                          self.den * other.den))

    __radd__ = __add__

    def __neg__(self):
        return FieldElem._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den.is_one() and other.den.is_one():
            return FieldElem._raw(self.num * other.num, _ONE_POLY)
        # cross-cancel before multiplying to keep the gcd small
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        num = (self.num // g1) * (other.num // g2)
        den = (self.den // g2) * (other.den // g1)
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return FieldElem._raw(num, den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero in Q(x)")
        num, den = self.den, self.num
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return FieldElem._raw(num, den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return FieldElem._raw(self.num ** k, self.den ** k)

    def deriv(self):
        """Derivative with respect to x."""
        if self.den.is_one():
            return FieldElem._raw(self.num.derivative(), _ONE_POLY)
        num = self.num.derivative() * self.den - self.num * self.den.derivative()
        return FieldElem._raw(*_canonical(num, self.den * self.den))

    def __call__(self, point):
        """Evaluate at a rational point (exact)."""
        point = Fraction(point)
        n = _fmpq_poly(self.num)(flint.fmpq(point.numerator, point.denominator))
        d = _fmpq_poly(self.den)(flint.fmpq(point.numerator, point.denominator))
        if d == 0:
            raise DivisionByZero("evaluation at a pole")
        q = n / d
        return Fraction(int(q.p), int(q.q))

    def constant_value(self):
        """Return the value as a Fraction; only valid for constants."""
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return Fraction(int(self.num.coeffs()[0]) if not self.num.is_zero() else 0,
                        int(self.den.coeffs()[0]))

    def to_fmpq_pair(self):
        return _fmpq_poly(self.num), _fmpq_poly(self.den)

    # comparison and hashing

    def __eq__(self, other):
        if not isinstance(other, FieldElem):
            other = self._coerce(other)
            if other is None:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((tuple(int(c) for c in self.num.coeffs()),
                     tuple(int(c) for c in self.den.coeffs())))

    def __str__(self):
        if self.den.is_one():
            return poly_str(self.num)
        ns = poly_str(self.num)
        if _nterms(self.num) > 1:
            ns = f"({ns})"
        ds = poly_str(self.den)
        if _nterms(self.den) > 1 or (self.den.degree() > 0 and abs(int(self.den.leading_coefficient())) != 1):
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"FieldElem({str(self)!r})"


def _nterms(p):
    return sum(1 for c in p.coeffs() if c != 0)


def poly_str(p):
    """Render an integer polynomial in x, highest degree first."""
    coeffs = [int(c) for c in p.coeffs()]
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = "x" if k == 1 else f"x^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("-" if c < 0 else "+") + body)
    return "".join(parts) if parts else "0"


ZERO = FieldElem._raw(_ZERO_POLY, _ONE_POLY)
ONE = FieldElem._raw(_ONE_POLY, _ONE_POLY)
X = FieldElem.gen()


def as_field(value):
    return value if isinstance(value, FieldElem) else FieldElem(value)


def arith(op, f, g):
    """Apply ``op`` in {'add', 'sub', 'mul', 'div'} to two field elements."""
    f, g = as_field(f), as_field(g)
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "div":
        return f / g
    raise ValueError(f"unknown field operation {op!r}")


def deriv(f):
    return as_field(f).deriv()
