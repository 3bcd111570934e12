"""Differential operators K[D] with K = Q(x).

An operator is ``sum(c_k * D^k)``; multiplication is twisted by the rule
``D * f = f * D + f'``.  The ring is left and right Euclidean, which gives
greatest common right/left divisors, least common left/right multiples and
Bezout cofactors through the usual remainder sequences.

Naming convention (the divisor side is what the name says):

* ``gcrd(a, b)`` is a right divisor: ``a = a1 * g``, ``b = b1 * g``;
  it generates the left ideal ``K[D] a + K[D] b``.
* ``lclm(a, b)`` is a left multiple: ``m = p * a = q * b``.
* ``gcld`` / ``lcrm`` are the mirror images.
"""

from math import comb

from .errors import BothZero, DivisionByZero, ZeroArgument
from .field import ONE, ZERO, FieldElem, as_field

NEG_INF = float("-inf")


def _strip(coeffs):
    n = len(coeffs)
    while n and coeffs[n - 1].is_zero():
        n -= 1
    return tuple(coeffs[:n])


class OrePoly:
    """An element of K[D], immutable.

    ``coeffs[k]`` is the coefficient of ``D^k``; the zero operator has no
    coefficients and order ``-inf``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, OrePoly):
            self.coeffs = coeffs.coeffs
            return
        if isinstance(coeffs, (FieldElem, int)):
            coeffs = [coeffs]
        self.coeffs = _strip([as_field(c) for c in coeffs])

    @classmethod
    def _raw(cls, coeffs):
        obj = object.__new__(cls)
        obj.coeffs = coeffs
        return obj

    @property
    def order(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self):
        if not self.coeffs:
            raise ValueError("the zero operator has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_scalar(self):
        """True for operators of order <= 0 (elements of K)."""
        return len(self.coeffs) <= 1

    def scalar(self):
        if len(self.coeffs) > 1:
            raise ValueError(f"{self} is not an element of K")
        return self.coeffs[0] if self.coeffs else ZERO

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1].is_one()

    def has_constant_coeffs(self):
        return all(c.is_constant() for c in self.coeffs)

    def size(self):
        return sum(c.size() for c in self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    # arithmetic

    @staticmethod
    def _coerce(other):
        if isinstance(other, OrePoly):
            return other
        if isinstance(other, (FieldElem, int)) and not isinstance(other, bool):
            return OrePoly(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return OrePoly._raw(_strip(out))

    __radd__ = __add__

    def __neg__(self):
        return OrePoly._raw(tuple(-c for c in self.coeffs))

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
        if isinstance(other, OrePoly):
            return ore_mul(self, other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ore_mul(self, other)

    def __rmul__(self, other):
        # f * p with f in K: plain scaling of the coefficients
        if isinstance(other, (FieldElem, int)) and not isinstance(other, bool):
            f = as_field(other)
            if f.is_zero():
                return ZERO_OP
            return OrePoly._raw(tuple(f * c for c in self.coeffs))
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = ONE_OP
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, f):
        """Apply the operator to an element of K."""
        f = as_field(f)
        total = ZERO
        for c in self.coeffs:
            if not c.is_zero():
                total = total + c * f
            f = f.deriv()
        return total

    def __eq__(self, other):
        if not isinstance(other, OrePoly):
            other = self._coerce(other)
            if other is None:
                return NotImplemented
        return self.coeffs == other.coeffs

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            if k == 0:
                term = str(c)
            else:
                mono = "D" if k == 1 else f"D^{k}"
                if c.is_one():
                    term = mono
                elif (-c).is_one():
                    term = "-" + mono
                elif c.is_polynomial() and sum(1 for t in c.num.coeffs() if t != 0) == 1:
                    term = f"{c}*{mono}"
                else:
                    term = f"({c})*{mono}"
            if parts and not term.startswith("-"):
                term = "+" + term
            parts.append(term)
        return "".join(parts) if parts else "0"

    def __repr__(self):
        return f"OrePoly({str(self)!r})"


ZERO_OP = OrePoly._raw(())
ONE_OP = OrePoly._raw((ONE,))
D = OrePoly._raw((ZERO, ONE))


def ore_mul(p, q):
    """Product ``p * q`` in K[D]."""
    P, Q = p.coeffs, q.coeffs
    if not P or not Q:
        return ZERO_OP
    if len(P) == 1:
        f = P[0]
        return OrePoly._raw(_strip([f * c for c in Q]))
    m = len(P) - 1
    derivs = [Q]
    for _ in range(m):
        prev = derivs[-1]
        nxt = [c.deriv() for c in prev]
        derivs.append(nxt)
        if all(c.is_zero() for c in nxt):
            break
    out = [ZERO] * (len(P) + len(Q) - 1)
    for i, pi in enumerate(P):
        if pi.is_zero():
            continue
        for k in range(min(i, len(derivs) - 1) + 1):
            coef = pi * comb(i, k) if k else pi
            for j, qkj in enumerate(derivs[k]):
                if not qkj.is_zero():
                    out[i + j - k] = out[i + j - k] + coef * qkj
    return OrePoly._raw(_strip(out))


def _d_compose(coeffs):
    """Coefficients of ``D * p`` given those of ``p``."""
    out = [c.deriv() for c in coeffs] + [ZERO]
    for t, c in enumerate(coeffs):
        out[t + 1] = out[t + 1] + c
    return out


def right_divmod(a, b):
    """Return ``(q, r)`` with ``a = q * b + r`` and ``order(r) < order(b)``."""
    if b.is_zero():
        raise DivisionByZero("right division by the zero operator", module="ore")
    n = b.order
    r = list(a.coeffs)
    if len(r) - 1 < n:
        return ZERO_OP, a
    inv_lc = b.lc.inverse()
    q = [ZERO] * (len(r) - n)
    shifts = [list(b.coeffs)]
    while len(r) - 1 >= n:
        m = len(r) - 1 - n
        while len(shifts) <= m:
            shifts.append(_d_compose(shifts[-1]))
        c = r[-1] * inv_lc
        q[m] = c
        for t, s in enumerate(shifts[m][:-1]):
            if not s.is_zero():
                r[t] = r[t] - c * s
        r.pop()
        r = list(_strip(r))
    return OrePoly._raw(_strip(q)), OrePoly._raw(tuple(r))


def left_divmod(a, b):
    """Return ``(q, r)`` with ``a = b * q + r`` and ``order(r) < order(b)``."""
    if b.is_zero():
        raise DivisionByZero("left division by the zero operator", module="ore")
    n = b.order
    r = list(a.coeffs)
    if len(r) - 1 < n:
        return ZERO_OP, a
    inv_lc = b.lc.inverse()
    q = [ZERO] * (len(r) - n)
    while len(r) - 1 >= n:
        m = len(r) - 1 - n
        c = r[-1] * inv_lc
        q[m] = c
        bc = ore_mul(b, OrePoly._raw((c,))).coeffs
        for t, s in enumerate(bc[:-1]):
            if not s.is_zero():
                r[t + m] = r[t + m] - s
        r.pop()
        r = list(_strip(r))
    return OrePoly._raw(_strip(q)), OrePoly._raw(tuple(r))


def _scale_left(c, p):
    return OrePoly._raw(tuple(c * t for t in p.coeffs))


def monic(p):
    """``p`` scaled on the left by ``1/lc(p)``."""
    return _scale_left(p.lc.inverse(), p)


def monic_right(p):
    """``p * (1/lc(p))``; stays inside the right ideal ``p K[D]``."""
    return ore_mul(p, OrePoly._raw((p.lc.inverse(),)))


def _right_euclid(a, b):
    # invariant: r_i = u_i * a + v_i * b
    if a.is_zero() and b.is_zero():
        raise BothZero("gcrd of two zero operators")
    r0, r1 = a, b
    u0, v0, u1, v1 = ONE_OP, ZERO_OP, ZERO_OP, ONE_OP
    while r1:
        q, r = right_divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    c = r0.lc.inverse()
    return _scale_left(c, r0), _scale_left(c, u0), _scale_left(c, v0), u1, v1


def _left_euclid(a, b):
    # invariant: r_i = a * u_i + b * v_i
    if a.is_zero() and b.is_zero():
        raise BothZero("gcld of two zero operators")
    r0, r1 = a, b
    u0, v0, u1, v1 = ONE_OP, ZERO_OP, ZERO_OP, ONE_OP
    while r1:
        q, r = left_divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - u1 * q
        v0, v1 = v1, v0 - v1 * q
    c = OrePoly._raw((r0.lc.inverse(),))
    return r0 * c, u0 * c, v0 * c, u1, v1


def gcrd(a, b):
    """Monic greatest common right divisor."""
    return _right_euclid(a, b)[0]


def gcrd_extended(a, b):
    """Return ``(g, u, v)`` with ``u * a + v * b = g = gcrd(a, b)``."""
    g, u, v, _, _ = _right_euclid(a, b)
    return g, u, v


def lclm(a, b):
    """Monic least common left multiple: ``lclm = p * a = q * b``."""
    if a.is_zero() or b.is_zero():
        raise ZeroArgument("lclm needs two non-zero operators")
    _, _, _, s, _ = _right_euclid(a, b)
    return monic(s * a)


def lclm_cofactors(a, b):
    """Return ``(m, p, q)`` with ``m = p * a = q * b`` the monic lclm."""
    if a.is_zero() or b.is_zero():
        raise ZeroArgument("lclm needs two non-zero operators")
    _, _, _, s, t = _right_euclid(a, b)
    m = s * a
    c = m.lc.inverse()
    return _scale_left(c, m), _scale_left(c, s), _scale_left(-c, t)


def gcld(a, b):
    """Monic greatest common left divisor: ``a = g * a1``, ``b = g * b1``."""
    return _left_euclid(a, b)[0]


def gcld_extended(a, b):
    """Return ``(g, u, v)`` with ``a * u + b * v = g = gcld(a, b)``."""
    g, u, v, _, _ = _left_euclid(a, b)
    return g, u, v


def lcrm(a, b):
    """Monic least common right multiple: ``lcrm = a * p = b * q``."""
    return lcrm_cofactors(a, b)[0]


def lcrm_cofactors(a, b):
    """Return ``(m, p, q)`` with ``m = a * p = b * q`` the monic lcrm."""
    if a.is_zero() or b.is_zero():
        raise ZeroArgument("lcrm needs two non-zero operators")
    _, _, _, s, t = _left_euclid(a, b)
    m = a * s
    c = OrePoly._raw((m.lc.inverse(),))
    return m * c, s * c, -(t * c)


def exact_right_quotient(a, b):
    """``q`` with ``a = q * b``; raises ArithmeticError if ``b`` does not divide ``a``."""
    q, r = right_divmod(a, b)
    if r:
        raise ArithmeticError(f"{b} is not a right divisor of {a}")
    return q


def exact_left_quotient(a, b):
    """``q`` with ``a = b * q``; raises ArithmeticError if ``b`` does not divide ``a``."""
    q, r = left_divmod(a, b)
    if r:
        raise ArithmeticError(f"{b} is not a left divisor of {a}")
    return q


def adjoint(p):
    """Formal adjoint: ``D* = -D``, ``f* = f``, ``(pq)* = q* p*``."""
    out = [ZERO] * len(p.coeffs)
    for k, c in enumerate(p.coeffs):
        if c.is_zero():
            continue
        sign = -1 if k % 2 else 1
        # D^k * c = sum_j C(k, j) c^(j) D^(k-j)
        dj = c
        for j in range(k + 1):
            if dj.is_zero():
                break
            out[k - j] = out[k - j] + dj * (sign * comb(k, j))
            dj = dj.deriv()
    return OrePoly._raw(_strip(out))
