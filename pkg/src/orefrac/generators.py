"""Random instances for property tests and self-checks.

``OREFRAC_MAX_ORDER`` caps the operator order of every generated entry.
"""

import os
import random

from .field import FieldElem
from .matops import OpMatrix, dieudonne_det, mat_mul
from .ore import ONE_OP, ZERO_OP, OrePoly, adjoint


def max_order_cap(default=None):
    value = os.environ.get("OREFRAC_MAX_ORDER")
    if value is None:
        return default
    return int(value)


def _cap(order):
    cap = max_order_cap()
    return order if cap is None else min(order, cap)


def rand_poly_coeff(rng, deg=2, bound=3, allow_zero=True):
    while True:
        d = rng.randint(0, deg)
        coeffs = [rng.randint(-bound, bound) for _ in range(d + 1)]
        f = FieldElem.from_coeffs(coeffs)
        if allow_zero or f:
            return f


def rand_field(rng, deg=2, bound=3, rational=False, allow_zero=True):
    f = rand_poly_coeff(rng, deg, bound, allow_zero)
    if rational and f and rng.random() < 0.5:
        den = rand_poly_coeff(rng, 1, bound, allow_zero=False)
        f = f / den
    return f


def rand_op(rng, max_order=2, coeff_deg=2, bound=3, rational=False, nonzero=False, constant=False):
    max_order = _cap(max_order)
    while True:
        order = rng.randint(0, max_order)
        if constant:
            coeffs = [FieldElem(rng.randint(-bound, bound)) for _ in range(order + 1)]
        else:
            coeffs = [rand_field(rng, coeff_deg, bound, rational) for _ in range(order + 1)]
        p = OrePoly(coeffs)
        if p or not nonzero:
            return p


def rand_matrix(rng, n, max_order=2, coeff_deg=2, bound=3, density=0.8, **kw):
    rows = []
    for _ in range(n):
        rows.append([rand_op(rng, max_order, coeff_deg, bound, **kw) if rng.random() < density else ZERO_OP
                     for _ in range(n)])
    return OpMatrix(rows)


def rand_nondegenerate(rng, n, max_order=2, coeff_deg=2, bound=3, **kw):
    while True:
        A = rand_matrix(rng, n, max_order, coeff_deg, bound, **kw)
        if not dieudonne_det(A).is_zero:
            return A


def rand_elementary(rng, n, max_order=1, coeff_deg=1, bound=2, constant=False):
    """An elementary matrix: a swap, or identity plus one off-diagonal operator."""
    rows = OpMatrix.identity(n).tolist()
    if n == 1:
        c = rand_field(rng, 0, bound, allow_zero=False)
        rows[0][0] = OrePoly(c)
        return OpMatrix(rows)
    i, j = rng.sample(range(n), 2)
    if rng.random() < 0.2:
        rows[i], rows[j] = rows[j], rows[i]
    else:
        rows[i][j] = rand_op(rng, max_order, coeff_deg, bound, constant=constant)
    return OpMatrix(rows)


def rand_unimodular(rng, n, steps=3, **kw):
    U = OpMatrix.identity(n)
    for _ in range(steps):
        U = mat_mul(U, rand_elementary(rng, n, **kw))
    return U


def rand_with_degree(rng, n, degree, steps=2, **kw):
    """A non-degenerate matrix ``U1 diag U2`` with ``d = degree`` exactly."""
    orders = [0] * n
    for _ in range(degree):
        orders[rng.randrange(n)] += 1
    diag = []
    for k in orders:
        lead = rand_field(rng, 1, 2, allow_zero=False)
        p = OrePoly([rand_field(rng, 1, 2) for _ in range(k)] + [lead])
        diag.append(p)
    U1 = rand_unimodular(rng, n, steps, **kw)
    U2 = rand_unimodular(rng, n, steps, **kw)
    return mat_mul(mat_mul(U1, OpMatrix.diagonal(diag)), U2)


def rand_skew(rng, n, max_order=1, coeff_deg=1, bound=2):
    """A skewadjoint matrix ``R - R*``."""
    from .matops import adjoint_mat

    R = rand_matrix(rng, n, max_order, coeff_deg, bound)
    S = R - adjoint_mat(R)
    return S


def rng_for(seed):
    return random.Random(seed)


__all__ = [
    "rand_field", "rand_op", "rand_matrix", "rand_nondegenerate", "rand_elementary",
    "rand_unimodular", "rand_with_degree", "rand_skew", "rng_for", "max_order_cap",
    "ONE_OP", "adjoint",
]
