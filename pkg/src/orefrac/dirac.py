"""Isotropy checks for pairs ``(A, B)`` of matrix differential operators.

The pair describes the subspace ``{B P + A P}`` of ``K^n + K^n`` under the
pairing ``(P1 + Q1 | P2 + Q2) = int (P1.Q2 + P2.Q1)``.  Integrals are taken
modulo total derivatives, so a pairing vanishes when its integrand is the
derivative of a rational function.
"""

from dataclasses import dataclass

import flint

from .errors import BoundExhausted, ShapeMismatch
from .field import ZERO, FieldElem, as_field
from .matfrac import apply_matrix
from .matops import OpMatrix, adjoint_mat, is_nondegenerate, mat_mul

_Q = flint.fmpq_poly


@dataclass(frozen=True)
class IsotropyPair:
    A: OpMatrix
    B: OpMatrix

    def __post_init__(self):
        if not self.A.is_square() or self.A.shape != self.B.shape:
            raise ShapeMismatch(f"pair of {self.A.shape} and {self.B.shape}", module="dirac")

    @property
    def n(self):
        return self.A.rows

    def is_valid(self):
        return is_nondegenerate(self.B)


def _vec(v, n, what):
    v = [as_field(f) for f in v]
    if len(v) != n:
        raise ShapeMismatch(f"{what} has length {len(v)}, expected {n}", module="dirac")
    return v


def _dot(u, v):
    acc = ZERO
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc


# -- total derivatives in Q(x) ------------------------------------------------

def _solve_bezout(a, b, c):
    """``(s, t)`` with ``s a + t b = c`` and ``deg s < deg b``; a, b coprime."""
    g, s0, _ = a.xgcd(b)
    s = (c * s0 / g) % b
    t = (c - s * a) / b
    return s, t


def hermite_reduce(f):
    """Split ``f = g' + p + a/d`` with ``p`` polynomial and ``d`` squarefree.

    Returns ``(g, p, a, d)`` as fmpq_poly data (``g`` as a num/den pair) with
    ``deg a < deg d``.  ``a/d`` is a derivative in Q(x) only when ``a = 0``.
    """
    f = as_field(f)
    num, den = f.to_fmpq_pair()
    p, a = divmod(num, den)
    g_num, g_den = _Q([0]), _Q([1])
    d = den
    dm = d.gcd(d.derivative())
    ds = d / dm
    while dm.degree() > 0:
        dm2 = dm.gcd(dm.derivative())
        dms = dm / dm2
        s, t = _solve_bezout(-ds * dm.derivative() / dm, dms, a)
        a = t - s.derivative() * ds / dms
        # g += s / dm
        g_num, g_den = g_num * dm + s * g_den, g_den * dm
        dm = dm2
    q, a = divmod(a, ds)
    return (g_num, g_den), p + q, a, ds


def antiderivative(f):
    """A rational ``g`` with ``g' = f``, or ``None`` if ``f`` has residues."""
    (gn, gd), p, a, _ = hermite_reduce(f)
    if not a.is_zero():
        return None
    return FieldElem(gn, gd) + FieldElem(p.integral())


def is_total_derivative(f):
    """Whether ``f`` is the derivative of an element of Q(x)."""
    f = as_field(f)
    if f.is_zero() or f.is_polynomial():
        return True
    return hermite_reduce(f)[2].is_zero()


@dataclass(frozen=True)
class PairingValue:
    integrand: FieldElem

    @property
    def is_total_derivative(self):
        return is_total_derivative(self.integrand)

    def __bool__(self):
        return not self.is_total_derivative


def pairing(P1, Q1, P2, Q2):
    """Integrand ``P1.Q2 + P2.Q1``; integrals are compared modulo total derivatives."""
    n = len(P1)
    P1, Q1, P2, Q2 = (_vec(v, n, name) for v, name in ((P1, "P1"), (Q1, "Q1"), (P2, "P2"), (Q2, "Q2")))
    return PairingValue(_dot(P1, Q2) + _dot(P2, Q1))


# -- the pair (A, B) ----------------------------------------------------------

def is_skewadjoint_pair(p):
    return (mat_mul(adjoint_mat(p.A), p.B) + mat_mul(adjoint_mat(p.B), p.A)).is_zero()


def membership_witness(p, F):
    """``(G, H) = (A F, B F)``."""
    F = _vec(F, p.n, "F")
    return apply_matrix(p.A, F), apply_matrix(p.B, F)


def member(p, F):
    """The element ``B F + A F`` of the subspace, as a ``(P, Q)`` pair."""
    G, H = membership_witness(p, F)
    return H, G


def orthogonality_check(p, G, H):
    """Whether ``A* H + B* G = 0``."""
    G = _vec(G, p.n, "G")
    H = _vec(H, p.n, "H")
    lhs = [a + b for a, b in zip(apply_matrix(adjoint_mat(p.A), H), apply_matrix(adjoint_mat(p.B), G))]
    return all(e.is_zero() for e in lhs)


def _poly_lcm(a, b):
    return a * b / a.gcd(b)


def solve_preimage(p, G, H, num_degree_bound, den_ansatz=1):
    """Find ``F`` with ``A F = G`` and ``B F = H`` among ``F_j = poly_j / den``.

    ``poly_j`` ranges over polynomials of degree at most ``num_degree_bound``.
    Raises BoundExhausted when the ansatz space has no solution; that is not a
    proof that no rational solution exists.
    """
    n = p.n
    G = _vec(G, n, "G")
    H = _vec(H, n, "H")
    den = as_field(den_ansatz)
    if den.is_zero():
        raise ValueError("denominator ansatz must be non-zero")
    N = int(num_degree_bound)
    if N < 0:
        raise ValueError("degree bound must be non-negative")
    targets = G + H
    if all(t.is_zero() for t in targets):
        return [ZERO] * n
    # image of each basis vector x^k/den e_j under (A; B)
    x = FieldElem.gen()
    basis = [x ** k / den for k in range(N + 1)]
    images = []
    for j in range(n):
        colA = [row[j] for row in p.A.entries]
        colB = [row[j] for row in p.B.entries]
        for b in basis:
            images.append([op(b) if op else ZERO for op in colA + colB])
    nvars = len(images)
    rows = []
    for i in range(2 * n):
        L = targets[i].to_fmpq_pair()[1]
        for img in images:
            L = _poly_lcm(L, img[i].to_fmpq_pair()[1])
        cols = []
        for img in images:
            a, b = img[i].to_fmpq_pair()
            cols.append(a * (L / b))
        a, b = targets[i].to_fmpq_pair()
        rhs = a * (L / b)
        width = max([c.degree() for c in cols] + [rhs.degree(), 0]) + 1
        for k in range(width):
            rows.append([c[k] for c in cols] + [rhs[k]])
    M = flint.fmpq_mat(len(rows), nvars + 1, [e for r in rows for e in r])
    R, rank = M.rref()
    pivots = []
    for r in range(rank):
        c = next(c for c in range(nvars + 1) if R[r, c] != 0)
        if c == nvars:
            raise BoundExhausted(
                f"no solution with numerator degree <= {N} over denominator {den}")
        pivots.append((r, c))
    coeffs = [flint.fmpq(0)] * nvars
    for r, c in pivots:
        coeffs[c] = R[r, nvars]
    F = []
    for j in range(n):
        c = coeffs[j * (N + 1):(j + 1) * (N + 1)]
        F.append(FieldElem(_Q(c)) / den)
    return F


__all__ = [
    "IsotropyPair", "PairingValue", "pairing", "is_total_derivative", "antiderivative",
    "hermite_reduce", "is_skewadjoint_pair", "membership_witness", "member",
    "orthogonality_check", "solve_preimage",
]
