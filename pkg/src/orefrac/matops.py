"""Matrices over K[D].

Reductions work on mutable row lists and record every elementary operation
twice, once on a transform ``W`` and once (inverted, on the other side) on
``W^-1``, so unimodular factors come out together with their exact inverses.

The Dieudonne determinant of a non-degenerate matrix over K[D] is reported as
the pair ``(det1, d)``: the leading coefficient in K and the order.  It is
read off an upper triangular form: row swaps flip the sign, adding a left
multiple of one row to another changes nothing.
"""

from dataclasses import dataclass

from .errors import (DegenerateB, DegenerateInput, DegenerateMatrix,
                     NotInvertible, NotSquare, ShapeMismatch)
from .field import _ONE_POLY, ONE, FieldElem, as_field
from .ore import (ONE_OP, ZERO_OP, OrePoly, adjoint, exact_left_quotient,
                  left_divmod, right_divmod)


def _op(value):
    return value if isinstance(value, OrePoly) else OrePoly(value)


class OpMatrix:
    """An immutable m x n matrix with entries in K[D]."""

    __slots__ = ("entries", "rows", "cols")

    def __init__(self, entries):
        rows = tuple(tuple(_op(e) for e in row) for row in entries)
        if not rows:
            raise ShapeMismatch("a matrix needs at least one row")
        width = len(rows[0])
        if width == 0 or any(len(r) != width for r in rows):
            raise ShapeMismatch("rows of unequal length")
        self.entries = rows
        self.rows = len(rows)
        self.cols = width

    @classmethod
    def _raw(cls, rows):
        obj = object.__new__(cls)
        obj.entries = tuple(tuple(r) for r in rows)
        obj.rows = len(obj.entries)
        obj.cols = len(obj.entries[0])
        return obj

    @classmethod
    def identity(cls, n):
        return cls._raw([[ONE_OP if i == j else ZERO_OP for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, m, n=None):
        n = m if n is None else n
        return cls._raw([[ZERO_OP] * n for _ in range(m)])

    @classmethod
    def diagonal(cls, diag):
        diag = [_op(d) for d in diag]
        n = len(diag)
        return cls._raw([[diag[i] if i == j else ZERO_OP for j in range(n)] for i in range(n)])

    @classmethod
    def column(cls, values):
        return cls([[v] for v in values])

    @property
    def shape(self):
        return self.rows, self.cols

    def is_square(self):
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def tolist(self):
        return [list(r) for r in self.entries]

    def submatrix(self, rows, cols):
        return OpMatrix._raw([[self.entries[i][j] for j in cols] for i in rows])

    def transpose(self):
        return OpMatrix._raw(list(zip(*self.entries)))

    def is_zero(self):
        return all(e.is_zero() for row in self.entries for e in row)

    def is_upper_triangular(self):
        return all(self.entries[i][j].is_zero()
                   for i in range(self.rows) for j in range(min(i, self.cols)))

    def is_diagonal(self):
        return all(self.entries[i][j].is_zero()
                   for i in range(self.rows) for j in range(self.cols) if i != j)

    def max_order(self):
        return max(e.order for row in self.entries for e in row)

    def __add__(self, other):
        if not isinstance(other, OpMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        return OpMatrix._raw([[a + b for a, b in zip(r, s)]
                              for r, s in zip(self.entries, other.entries)])

    def __neg__(self):
        return OpMatrix._raw([[-a for a in r] for r in self.entries])

    def __sub__(self, other):
        if not isinstance(other, OpMatrix):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, OpMatrix):
            return mat_mul(self, other)
        if isinstance(other, (OrePoly, FieldElem, int)) and not isinstance(other, bool):
            c = _op(other)
            return OpMatrix._raw([[a * c for a in r] for r in self.entries])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (OrePoly, FieldElem, int)) and not isinstance(other, bool):
            c = _op(other)
            return OpMatrix._raw([[c * a for a in r] for r in self.entries])
        return NotImplemented

    __matmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, OpMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __str__(self):
        return "[" + ",".join("[" + ",".join(str(e) for e in row) + "]" for row in self.entries) + "]"

    def __repr__(self):
        return f"OpMatrix({str(self)!r})"

    def to_json(self):
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[str(e) for e in row] for row in self.entries]}


def mat_mul(A, B):
    if A.cols != B.rows:
        raise ShapeMismatch(f"cannot multiply {A.shape} by {B.shape}")
    Bt = list(zip(*B.entries))
    out = []
    for row in A.entries:
        out_row = []
        for col in Bt:
            acc = ZERO_OP
            for a, b in zip(row, col):
                if a and b:
                    acc = acc + a * b
            out_row.append(acc)
        out.append(out_row)
    return OpMatrix._raw(out)


# ---------------------------------------------------------------------------
# determinant values


@dataclass(frozen=True)
class DetValue:
    """Dieudonne determinant ``det1 * lambda^d``; ``det1 is None`` encodes zero."""

    det1: FieldElem = None
    d: int = None

    @property
    def is_zero(self):
        return self.det1 is None

    def __mul__(self, other):
        if self.is_zero or other.is_zero:
            return DET_ZERO
        return DetValue(self.det1 * other.det1, self.d + other.d)

    def __str__(self):
        return "det=0" if self.is_zero else f"det1={self.det1} d={self.d}"

    def to_json(self):
        if self.is_zero:
            return {"zero": True}
        return {"det1": str(self.det1), "d": self.d}


DET_ZERO = DetValue()


@dataclass(frozen=True)
class UnimodularWitness:
    """An invertible matrix together with its exact inverse."""

    U: OpMatrix
    Uinv: OpMatrix


# ---------------------------------------------------------------------------
# tracked elementary operations


def _eye(n):
    return [[ONE_OP if i == j else ZERO_OP for j in range(n)] for i in range(n)]


class _Tracker:
    """Records ``W`` and/or ``W^-1`` for a sequence of elementary operations.

    For row operations ``W`` accumulates on the left (``W A = T``); for column
    operations on the right (``A W = T``).  Either side can be switched off
    when the caller does not need it.
    """

    def __init__(self, n, forward=True, inverse=True):
        self.W = _eye(n) if forward else None
        self.Winv = _eye(n) if inverse else None

    # row side: W <- E W, Winv <- Winv E^-1
    def row_swap(self, i, j):
        if self.W is not None:
            self.W[i], self.W[j] = self.W[j], self.W[i]
        if self.Winv is not None:
            for row in self.Winv:
                row[i], row[j] = row[j], row[i]

    def row_addmul(self, i, p, q):
        """row_i -= q * row_p."""
        if self.W is not None:
            Wi, Wp = self.W[i], self.W[p]
            self.W[i] = [a - q * b if b else a for a, b in zip(Wi, Wp)]
        if self.Winv is not None:
            for row in self.Winv:
                if row[i]:
                    row[p] = row[p] + row[i] * q

    def row_scale(self, i, c):
        """row_i <- c * row_i for a unit c in K."""
        if self.W is not None:
            self.W[i] = [c * a for a in self.W[i]]
        if self.Winv is not None:
            cinv = _op(c.inverse())
            for row in self.Winv:
                row[i] = row[i] * cinv

    # column side: W <- W E, Winv <- E^-1 Winv
    def col_swap(self, i, j):
        if self.W is not None:
            for row in self.W:
                row[i], row[j] = row[j], row[i]
        if self.Winv is not None:
            self.Winv[i], self.Winv[j] = self.Winv[j], self.Winv[i]

    def col_addmul(self, k, c, q):
        """col_k -= col_c * q."""
        if self.W is not None:
            for row in self.W:
                if row[c]:
                    row[k] = row[k] - row[c] * q
        if self.Winv is not None:
            Wc, Wk = self.Winv[c], self.Winv[k]
            self.Winv[c] = [a + q * b if b else a for a, b in zip(Wc, Wk)]

    def col_scale(self, k, c):
        """col_k <- col_k * c for a unit c in K."""
        if self.W is not None:
            cop = _op(c)
            for row in self.W:
                row[k] = row[k] * cop
        if self.Winv is not None:
            cinv = as_field(c).inverse()
            self.Winv[k] = [cinv * a for a in self.Winv[k]]

    def matrices(self):
        W = OpMatrix._raw(self.W) if self.W is not None else None
        Winv = OpMatrix._raw(self.Winv) if self.Winv is not None else None
        return W, Winv


def _pivot_key(entry, index):
    return (entry.order, entry.size(), index)


def _primitive_scale(row):
    """Unit ``f`` in K such that ``f * row`` has coprime integer-polynomial coefficients."""
    L = _ONE_POLY
    for e in row:
        for c in e.coeffs:
            if not c.den.is_one():
                L = L * c.den // L.gcd(c.den)
    G = None
    for e in row:
        for c in e.coeffs:
            if c:
                t = c.num * (L // c.den) if not c.den.is_one() else c.num * L
                G = t if G is None else G.gcd(t)
                if G.is_one():
                    break
    if G is None:
        return None
    if L.is_one() and G.is_one():
        return None
    return FieldElem._raw(L, _ONE_POLY) / FieldElem._raw(G, _ONE_POLY)


def _scale_row(row, f):
    return [f * e if e else e for e in row]


def _row_echelon(M, tracker, primitive=False):
    """Row-reduce the mutable matrix ``M`` to upper triangular (echelon) form.

    Returns ``(swaps, scale)``: the number of row swaps and the product of the
    unit row scalings applied (always 1 unless ``primitive``).  With
    ``primitive`` every touched row is rescaled by a unit of K to have coprime
    polynomial coefficients, which keeps the coefficients from growing.
    """
    m, n = len(M), len(M[0])
    swaps = 0
    scale = ONE

    def normalize(i):
        nonlocal scale
        f = _primitive_scale(M[i])
        if f is not None:
            M[i] = _scale_row(M[i], f)
            tracker.row_scale(i, f)
            scale = scale * f

    if primitive:
        for i in range(m):
            normalize(i)
    r = 0
    for j in range(n):
        if r == m:
            break
        while True:
            cand = [i for i in range(r, m) if M[i][j]]
            if not cand:
                break
            p = min(cand, key=lambda i: _pivot_key(M[i][j], i))
            if p != r:
                M[p], M[r] = M[r], M[p]
                tracker.row_swap(p, r)
                swaps += 1
            if len(cand) == 1:
                r += 1
                break
            piv = M[r][j]
            for i in range(r + 1, m):
                if not M[i][j]:
                    continue
                q, _ = right_divmod(M[i][j], piv)
                Mr = M[r]
                M[i] = [a - q * b if b else a for a, b in zip(M[i], Mr)]
                tracker.row_addmul(i, r, q)
                if primitive:
                    normalize(i)
    return swaps, scale


def _col_echelon(M, tracker):
    """Column-reduce ``M`` so that ``M`` becomes upper triangular.

    Rows are processed bottom-up; each row's pivot is moved to the rightmost
    free column.  Returns the number of column swaps.
    """
    m, n = len(M), len(M[0])
    swaps = 0
    c = n - 1
    for i in range(m - 1, -1, -1):
        if c < 0:
            break
        while True:
            cand = [k for k in range(c + 1) if M[i][k]]
            if not cand:
                break
            p = min(cand, key=lambda k: (M[i][k].order, M[i][k].size(), -k))
            if p != c:
                for row in M:
                    row[p], row[c] = row[c], row[p]
                tracker.col_swap(p, c)
                swaps += 1
            if len(cand) == 1:
                c -= 1
                break
            piv = M[i][c]
            for k in range(c):
                if not M[i][k]:
                    continue
                q, _ = left_divmod(M[i][k], piv)
                for row in M:
                    if row[c]:
                        row[k] = row[k] - row[c] * q
                tracker.col_addmul(k, c, q)
    return swaps


def _mutable(A):
    return [list(r) for r in A.entries]


def row_reduce_upper(A):
    """Return ``(U, T)`` with ``A = U.U * T`` and ``T`` upper triangular.

    ``U.Uinv * A = T``.  Only row swaps and "add a left multiple of another
    row" are used, pivoting on the entry of minimal order.
    """
    M = _mutable(A)
    tr = _Tracker(A.rows)
    _row_echelon(M, tr)
    W, Winv = tr.matrices()
    return UnimodularWitness(U=Winv, Uinv=W), OpMatrix._raw(M)


def col_reduce_upper(A):
    """Return ``(T, U)`` with ``A = T * U.U`` and ``T`` upper triangular."""
    M = _mutable(A)
    tr = _Tracker(A.cols)
    _col_echelon(M, tr)
    W, Winv = tr.matrices()
    return OpMatrix._raw(M), UnimodularWitness(U=Winv, Uinv=W)


def _det_from_triangular(M, swaps):
    n = len(M)
    det1 = ONE
    d = 0
    for i in range(n):
        e = M[i][i]
        if not e:
            return DET_ZERO
        det1 = det1 * e.lc
        d += e.order
    if swaps % 2:
        det1 = -det1
    return DetValue(det1, d)


def dieudonne_det(A):
    """Dieudonne determinant ``(det1, d)`` of a square matrix, or ``DET_ZERO``."""
    if not A.is_square():
        raise NotSquare(f"determinant of a {A.rows}x{A.cols} matrix")
    M = _mutable(A)
    swaps, scale = _row_echelon(M, _Tracker(A.rows, False, False), primitive=True)
    det = _det_from_triangular(M, swaps)
    if det.is_zero or scale.is_one():
        return det
    return DetValue(det.det1 / scale, det.d)


def dieudonne_det_by_columns(A):
    """Same value as :func:`dieudonne_det`, computed by column reduction."""
    if not A.is_square():
        raise NotSquare(f"determinant of a {A.rows}x{A.cols} matrix")
    M = _mutable(A)
    swaps = _col_echelon(M, _Tracker(A.cols, False, False))
    return _det_from_triangular(M, swaps)


def is_nondegenerate(A):
    return not dieudonne_det(A).is_zero


def diag_form(A):
    """Return ``(U1, D, U2)`` with ``A = U1.U * D * U2.U`` and ``D`` diagonal.

    At every stage the pivot is an entry of minimal order in the remaining
    block; elimination in its row and column either clears them or leaves a
    remainder of strictly smaller order, which becomes the next pivot.
    """
    if not A.is_square():
        raise NotSquare("diagonal form needs a square matrix")
    n = A.rows
    if A.is_diagonal():
        if any(not A[i, i] for i in range(n)):
            raise DegenerateMatrix("diagonal matrix with a zero entry")
        I = OpMatrix.identity(n)
        return UnimodularWitness(I, I), A, UnimodularWitness(I, I)
    M = _mutable(A)
    rows, cols = _Tracker(n), _Tracker(n)
    for k in range(n):
        while True:
            cand = [(i, j) for i in range(k, n) for j in range(k, n) if M[i][j]]
            if not cand:
                raise DegenerateMatrix("matrix is degenerate (zero Dieudonne determinant)")
            pi, pj = min(cand, key=lambda ij: (M[ij[0]][ij[1]].order, M[ij[0]][ij[1]].size(), ij))
            if pi != k:
                M[pi], M[k] = M[k], M[pi]
                rows.row_swap(pi, k)
            if pj != k:
                for row in M:
                    row[pj], row[k] = row[k], row[pj]
                cols.col_swap(pj, k)
            piv = M[k][k]
            for i in range(k + 1, n):
                if M[i][k]:
                    q, _ = right_divmod(M[i][k], piv)
                    Mk = M[k]
                    M[i] = [a - q * b if b else a for a, b in zip(M[i], Mk)]
                    rows.row_addmul(i, k, q)
            for j in range(k + 1, n):
                if M[k][j]:
                    q, _ = left_divmod(M[k][j], piv)
                    for row in M:
                        if row[k]:
                            row[j] = row[j] - row[k] * q
                    cols.col_addmul(j, k, q)
            if all(not M[i][k] for i in range(k + 1, n)) and all(not M[k][j] for j in range(k + 1, n)):
                break
    W1, W1inv = rows.matrices()
    W2, W2inv = cols.matrices()
    return UnimodularWitness(U=W1inv, Uinv=W1), OpMatrix._raw(M), UnimodularWitness(U=W2inv, Uinv=W2)


def is_unimodular(A):
    """Invertible in M_n(K[D]), i.e. non-degenerate with ``d = 0``."""
    det = dieudonne_det(A)
    return not det.is_zero and det.d == 0


def _upper_inverse(T):
    # T upper triangular with diagonal in K^*
    n = len(T)
    inv_diag = [_op(T[i][i].scalar().inverse()) for i in range(n)]
    X = [[ZERO_OP] * n for _ in range(n)]
    for j in range(n):
        X[j][j] = inv_diag[j]
        for i in range(j - 1, -1, -1):
            acc = ZERO_OP
            for k in range(i + 1, j + 1):
                if T[i][k] and X[k][j]:
                    acc = acc + T[i][k] * X[k][j]
            X[i][j] = -(inv_diag[i] * acc)
    return X


def inverse_unimodular(A):
    """Exact inverse of a unimodular matrix."""
    if not A.is_square():
        raise NotSquare("inverse of a non-square matrix")
    M = _mutable(A)
    tr = _Tracker(A.rows, inverse=False)
    _row_echelon(M, tr, primitive=True)
    for i in range(A.rows):
        if not M[i][i] or M[i][i].order != 0:
            raise NotInvertible("matrix is not unimodular (d(A) != 0 or det(A) = 0)")
    W, _ = tr.matrices()
    return mat_mul(OpMatrix._raw(_upper_inverse(M)), W)


def adjoint_mat(A):
    """Adjoint: transpose of the entrywise formal adjoints."""
    return OpMatrix._raw([[adjoint(A.entries[i][j]) for i in range(A.rows)]
                          for j in range(A.cols)])


@dataclass(frozen=True)
class GcrdResult:
    """``A = A1 D``, ``B = B1 D`` and ``C A + E B = D``."""

    D: OpMatrix
    A1: OpMatrix
    B1: OpMatrix
    C: OpMatrix
    E: OpMatrix

    def __iter__(self):
        return iter((self.D, self.A1, self.B1, self.C, self.E))


def _right_solve_upper(Y, T):
    """``X`` with ``X T = Y`` for upper triangular non-degenerate ``T``, exactly."""
    n = len(T)
    X = [[ZERO_OP] * n for _ in range(len(Y))]
    for i, row in enumerate(Y):
        for j in range(n):
            rhs = row[j]
            for k in range(j):
                if X[i][k] and T[k][j]:
                    rhs = rhs - X[i][k] * T[k][j]
            q, r = right_divmod(rhs, T[j][j])
            if r:
                raise ArithmeticError("matrix is not a right multiple of the triangular factor")
            X[i][j] = q
    return X


def mat_gcrd(A, B, check=True, bezout=True):
    """Greatest common right divisor of two square matrices.

    The stacked matrix ``[A; B]`` is row-reduced to ``[D; 0]`` by a tracked
    unimodular transform ``W`` and ``D`` is put in row Hermite form (monic
    diagonal, entries above the diagonal reduced modulo the diagonal entry of
    their column).  The top block row of ``W`` gives the Bezout coefficients
    ``C A + E B = D``; the cofactors ``A1 = A D^-1`` and ``B1 = B D^-1`` are
    recovered by exact back-substitution.
    """
    if not (A.is_square() and B.is_square()) or A.shape != B.shape:
        raise ShapeMismatch(f"gcrd of {A.shape} and {B.shape}")
    n = A.rows
    if check and not is_nondegenerate(B):
        raise DegenerateB("denominator matrix is degenerate")
    M = _mutable(A) + _mutable(B)
    tr = _Tracker(2 * n, forward=bezout, inverse=False)
    _row_echelon(M, tr, primitive=True)
    for i in range(n):
        if not M[i][i]:
            raise DegenerateB("stacked matrix has rank < n; denominator is degenerate")
        if not M[i][i].is_monic():
            c = M[i][i].lc.inverse()
            M[i] = [c * e for e in M[i]]
            tr.row_scale(i, c)
    for j in range(1, n):
        piv = M[j][j]
        for i in range(j):
            if M[i][j] and M[i][j].order >= piv.order:
                q, _ = right_divmod(M[i][j], piv)
                Mj = M[j]
                M[i] = [a - q * b if b else a for a, b in zip(M[i], Mj)]
                tr.row_addmul(i, j, q)
    Dm = M[:n]
    A1 = _right_solve_upper(A.entries, Dm)
    B1 = _right_solve_upper(B.entries, Dm)
    C = E = None
    if bezout:
        W, _ = tr.matrices()
        C = W.submatrix(range(n), range(n))
        E = W.submatrix(range(n), range(n, 2 * n))
    return GcrdResult(D=OpMatrix._raw(Dm), A1=OpMatrix._raw(A1), B1=OpMatrix._raw(B1), C=C, E=E)


def solve_left_fraction(B, A):
    """Solve ``B X = A`` over the skewfield K(D); ``X`` has ScalarFraction entries."""
    from .ratfrac import ScalarFraction, frac_inv

    n = B.rows
    if not B.is_square() or A.rows != n:
        raise ShapeMismatch(f"cannot solve with {B.shape} and {A.shape}")
    k = A.cols
    M = [[ScalarFraction._raw(e, ONE_OP) for e in row_b + row_a]
         for row_b, row_a in zip(B.entries, A.entries)]
    for j in range(n):
        cand = [i for i in range(j, n) if M[i][j]]
        if not cand:
            raise DegenerateInput("matrix is degenerate over K(D)")
        p = min(cand, key=lambda i: (M[i][j].den.order + M[i][j].num.order, i))
        M[p], M[j] = M[j], M[p]
        inv = frac_inv(M[j][j])
        M[j] = [inv * e if e else e for e in M[j]]
        for i in range(n):
            if i != j and M[i][j]:
                f = M[i][j]
                M[i] = [a - f * b if b else a for a, b in zip(M[i], M[j])]
    return [row[n:n + k] for row in M]


def clear_right_denominators(X):
    """Write a fraction matrix ``X`` as ``Y * (b I)^-1`` with Y over K[D].

    ``b`` is the monic least right common multiple of the entry denominators.
    """
    from .ore import lcrm

    b = ONE_OP
    for row in X:
        for e in row:
            if e.den != ONE_OP:
                b = lcrm(b, e.den)
    Y = [[e.num * exact_left_quotient(b, e.den) for e in row] for row in X]
    return OpMatrix._raw(Y), b


def common_right_multiple(A, B):
    """Non-degenerate ``(C, D)`` with ``A C = B D``.

    The stacked adjoint ``[A*; B*]`` is row-reduced by a tracked unimodular
    ``W``; the bottom block rows ``[X | Y]`` of ``W`` annihilate it, so
    ``X A* + Y B* = 0`` and ``A X* = B (-Y)*``.
    """
    if A.shape != B.shape or not A.is_square():
        raise ShapeMismatch(f"common right multiple of {A.shape} and {B.shape}")
    if not is_nondegenerate(A) or not is_nondegenerate(B):
        raise DegenerateInput("common_right_multiple needs non-degenerate inputs")
    n = A.rows
    if A == B:
        I = OpMatrix.identity(n)
        return I, I
    M = _mutable(adjoint_mat(A)) + _mutable(adjoint_mat(B))
    tr = _Tracker(2 * n, inverse=False)
    _row_echelon(M, tr, primitive=True)
    kernel = []
    for row in tr.W[n:]:
        f = _primitive_scale(row)
        kernel.append(_scale_row(row, f) if f is not None else row)
    X = OpMatrix._raw([r[:n] for r in kernel])
    Y = OpMatrix._raw([r[n:] for r in kernel])
    return adjoint_mat(X), -adjoint_mat(Y)


def common_right_multiple_skewfield(A, B):
    """``(b I, Y)`` with ``A (b I) = B Y``, from ``B^-1 A = Y (b I)^-1`` over K(D).

    Slower than :func:`common_right_multiple` on larger inputs; kept as an
    independent route.
    """
    if A.shape != B.shape or not A.is_square():
        raise ShapeMismatch(f"common right multiple of {A.shape} and {B.shape}")
    if not is_nondegenerate(A) or not is_nondegenerate(B):
        raise DegenerateInput("common_right_multiple needs non-degenerate inputs")
    Y, b = clear_right_denominators(solve_left_fraction(B, A))
    return OpMatrix.diagonal([b] * A.rows), Y
