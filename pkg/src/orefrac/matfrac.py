"""Rational matrix pseudodifferential operators ``H = A B^-1``.

A fraction is minimal when numerator and denominator are right coprime,
which is decided by the matrix gcrd: the gcrd is unimodular exactly when a
Bezout identity ``C A + E B = I`` exists.  Minimal fractions are brought to a
canonical representative of their right-unimodular orbit (denominator upper
triangular, monic diagonal, off-diagonal entries of smaller order than the
diagonal entry of their row), so equality of fractions is structural.
"""

from .errors import DegenerateMatrix, NonExactDivision, NotSameFraction, ShapeMismatch
from .field import ZERO, as_field
from .matops import (OpMatrix, _mutable, _row_echelon, _Tracker, adjoint_mat,
                     clear_right_denominators, common_right_multiple, dieudonne_det,
                     inverse_unimodular, is_unimodular, mat_gcrd, mat_mul, solve_left_fraction)
from .ore import (ONE_OP, ZERO_OP, OrePoly, exact_left_quotient, exact_right_quotient,
                  lcrm_cofactors, left_divmod)


class MatFraction:
    """``num * den^-1`` with ``den`` non-degenerate."""

    __slots__ = ("num", "den", "minimal")

    def __init__(self, num, den=None, minimal=False, check=True):
        if not isinstance(num, OpMatrix):
            num = OpMatrix(num)
        if den is None:
            den = OpMatrix.identity(num.rows)
        elif not isinstance(den, OpMatrix):
            den = OpMatrix(den)
        if not num.is_square() or num.shape != den.shape:
            raise ShapeMismatch(f"fraction of {num.shape} by {den.shape}", module="matfrac")
        if check and dieudonne_det(den).is_zero:
            raise DegenerateMatrix("fraction denominator is degenerate", module="matfrac")
        self.num = num
        self.den = den
        self.minimal = minimal

    @property
    def n(self):
        return self.num.rows

    def __eq__(self, other):
        if not isinstance(other, MatFraction):
            return NotImplemented
        return frac_equal_mat(self, other)

    __hash__ = None

    def __neg__(self):
        return MatFraction(-self.num, self.den, self.minimal, check=False)

    def __add__(self, other):
        return frac_add(self, other)

    def __sub__(self, other):
        return frac_add(self, -other)

    def __mul__(self, other):
        return frac_mul(self, other)

    def __str__(self):
        return f"num={self.num} den={self.den}"

    def __repr__(self):
        return f"MatFraction({str(self)!r})"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json(), "minimal": self.minimal}


def identity_fraction(n):
    I = OpMatrix.identity(n)
    return MatFraction(I, I, minimal=True, check=False)


def zero_fraction(n):
    return MatFraction(OpMatrix.zeros(n), OpMatrix.identity(n), minimal=True, check=False)


def from_rational_entries(h):
    """Common-denominator fraction ``A1 (b I)^-1`` for a square array of ScalarFractions.

    ``b`` is the least right common multiple of the entry denominators and
    ``(A1)_ij = a_ij c_ij`` where ``b_ij c_ij = b``.
    """
    n = len(h)
    if any(len(row) != n for row in h):
        raise ShapeMismatch("rational entries must form a square array", module="matfrac")
    b = ONE_OP
    for row in h:
        for e in row:
            if e.den != ONE_OP and e.den != b:
                b, _, _ = lcrm_cofactors(b, e.den)
    A1 = [[e.num * exact_left_quotient(b, e.den) for e in row] for row in h]
    return MatFraction(OpMatrix._raw(A1), OpMatrix.diagonal([b] * n), check=False)


def entries_as_fractions(F):
    """Entries of ``F.num * F.den^-1`` as ScalarFractions."""
    from .ratfrac import ScalarFraction

    n = F.n
    X = solve_left_fraction(F.den, OpMatrix.identity(n))
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = ScalarFraction._raw(ZERO_OP, ONE_OP)
            for k in range(n):
                a = F.num[i, k]
                if a and X[k][j]:
                    acc = acc + ScalarFraction._raw(a, ONE_OP) * X[k][j]
            row.append(acc)
        out.append(row)
    return out


def _flip_adjoint(rows):
    """``(J M J)*`` for the reversal permutation ``J``; triangularity is preserved."""
    return [list(r) for r in adjoint_mat(OpMatrix._raw([row[::-1] for row in rows[::-1]])).entries]


def _canonical_pair(A, B):
    """Right-unimodular normal form of the pair ``(A, B)`` driven by ``B``."""
    n = B.rows
    # W (J B* J) = U upper  <=>  B (J W J)* = (J U J)* upper
    M = _flip_adjoint(_mutable(B))
    tr = _Tracker(n, inverse=False)
    _row_echelon(M, tr, primitive=True)
    M = _flip_adjoint(M)
    tr.W = _flip_adjoint(tr.W)
    for i in range(n):
        e = M[i][i]
        if not e:
            raise DegenerateMatrix("denominator is degenerate", module="matfrac")
        if not e.is_monic():
            c = e.lc.inverse()
            cop = OrePoly((c,))
            for row in M:
                if row[i]:
                    row[i] = row[i] * cop
            tr.col_scale(i, c)
    for j in range(1, n):
        for i in range(j - 1, -1, -1):
            if M[i][j] and M[i][j].order >= M[i][i].order:
                q, _ = left_divmod(M[i][j], M[i][i])
                for row in M:
                    if row[i]:
                        row[j] = row[j] - row[i] * q
                tr.col_addmul(j, i, q)
    W, _ = tr.matrices()
    return mat_mul(A, W), OpMatrix._raw(M)


def minimal_decomposition(F):
    """Canonical minimal fraction equal to ``F``.

    ``F.num = A0 D`` and ``F.den = B0 D`` for the matrix gcrd ``D`` (up to a
    right-unimodular factor, which the canonical form absorbs).
    """
    g = mat_gcrd(F.num, F.den, check=False, bezout=False)
    A0, B0 = _canonical_pair(g.A1, g.B1)
    return MatFraction(A0, B0, minimal=True, check=False)


def is_minimal(F):
    """Return ``(True, (C, E))`` with ``C num + E den = I``, or ``(False, D)``.

    ``D`` is a non-unimodular common right divisor of numerator and denominator.
    """
    g = mat_gcrd(F.num, F.den, check=False)
    if not is_unimodular(g.D):
        return False, g.D
    Dinv = inverse_unimodular(g.D)
    return True, (mat_mul(Dinv, g.C), mat_mul(Dinv, g.E))


def divide_out(F, F0):
    """``D`` with ``F.num = F0.num D`` and ``F.den = F0.den D``.

    ``F0`` must be a minimal fraction of the same operator.
    """
    if F.num.shape != F0.num.shape:
        raise ShapeMismatch("fractions of different sizes", module="matfrac")
    n = F.n
    M = _mutable(F0.den)
    tr = _Tracker(n, inverse=False)
    _row_echelon(M, tr, primitive=True)
    W, _ = tr.matrices()
    R = mat_mul(W, F.den).tolist()
    Dm = [[ZERO_OP] * n for _ in range(n)]
    for j in range(n):
        for i in range(n - 1, -1, -1):
            rhs = R[i][j]
            for k in range(i + 1, n):
                if M[i][k] and Dm[k][j]:
                    rhs = rhs - M[i][k] * Dm[k][j]
            try:
                Dm[i][j] = exact_left_quotient(rhs, M[i][i])
            except ArithmeticError:
                raise NonExactDivision(
                    "denominator is not a right multiple of the given minimal denominator") from None
    Dm = OpMatrix._raw(Dm)
    if mat_mul(F0.num, Dm) != F.num:
        raise NotSameFraction("the two fractions represent different operators")
    return Dm


def frac_equal_mat(F, G):
    """Equality as rational matrix operators."""
    if F.num.shape != G.num.shape:
        return False
    F0 = F if F.minimal else minimal_decomposition(F)
    G0 = G if G.minimal else minimal_decomposition(G)
    return F0.num == G0.num and F0.den == G0.den


def frac_mul(F, G):
    # F.den^-1 G.num = Y (b I)^-1
    Y, b = clear_right_denominators(solve_left_fraction(F.den, G.num))
    num = mat_mul(F.num, Y)
    den = G.den * b
    return minimal_decomposition(MatFraction(num, den, check=False))


def frac_add(F, G):
    if F.den == G.den:
        return minimal_decomposition(MatFraction(F.num + G.num, F.den, check=False))
    C, Dm = common_right_multiple(F.den, G.den)
    num = mat_mul(F.num, C) + mat_mul(G.num, Dm)
    return minimal_decomposition(MatFraction(num, mat_mul(F.den, C), check=False))


def frac_inv(F):
    """Inverse fraction ``B A^-1``; requires a non-degenerate numerator."""
    return minimal_decomposition(MatFraction(F.den, F.num))


def apply_matrix(A, v):
    """Action of a matrix differential operator on a vector in K^n."""
    v = [as_field(f) for f in v]
    if A.cols != len(v):
        raise ShapeMismatch(f"cannot apply a {A.rows}x{A.cols} operator to a vector of length {len(v)}",
                            module="matfrac")
    out = []
    for row in A.entries:
        acc = ZERO
        for a, f in zip(row, v):
            if a and f:
                acc = acc + a(f)
        out.append(acc)
    return out


def factor_out_kernel_vector(A, B, F):
    """Split off the common kernel vector ``F`` of ``A`` and ``B``.

    Returns ``(A1, B1, D)`` with ``A = A1 D``, ``B = B1 D`` and ``d(D) = 1``;
    ``D`` is the identity with its k-th column replaced by
    ``(-f_1/f_k, ..., -f_{k-1}/f_k, D - f_k'/f_k, 0, ...)`` where ``k`` is the
    last non-zero position of ``F``.
    """
    F = [as_field(f) for f in F]
    n = A.rows
    if len(F) != n or A.shape != B.shape:
        raise ShapeMismatch("kernel vector and matrices disagree in size", module="matfrac")
    if all(f.is_zero() for f in F):
        raise ValueError("kernel vector must be non-zero")
    if any(apply_matrix(A, F)) or any(apply_matrix(B, F)):
        raise ValueError("F is not in the common kernel of A and B")
    k = max(i for i, f in enumerate(F) if f)
    fk = F[k]
    ratios = [OrePoly((F[j] / fk,)) for j in range(k + 1)]
    L = OrePoly((-(fk.deriv() / fk), 1))

    def split(M):
        rows = M.tolist()
        for i, row in enumerate(rows):
            s = ZERO_OP
            for j in range(k + 1):
                if row[j]:
                    s = s + row[j] * ratios[j]
            row[k] = exact_right_quotient(s, L)
        return OpMatrix._raw(rows)

    Dm = OpMatrix.identity(n).tolist()
    for j in range(k):
        Dm[j][k] = -ratios[j]
    Dm[k][k] = L
    return split(A), split(B), OpMatrix._raw(Dm)
