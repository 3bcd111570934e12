import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from orefrac.dirac import (IsotropyPair, antiderivative, hermite_reduce, is_skewadjoint_pair,
                           is_total_derivative, member, membership_witness, orthogonality_check,
                           pairing, solve_preimage)
from orefrac.errors import BoundExhausted, ShapeMismatch
from orefrac.field import ONE, ZERO, X, FieldElem
from orefrac.generators import rand_field, rand_matrix, rand_nondegenerate, rand_skew, rng_for
from orefrac.matfrac import MatFraction, is_minimal
from orefrac.matops import OpMatrix, mat_mul
from orefrac.ore import ONE_OP, D, OrePoly
from strategies import field_elems

sx = sympy.Symbol("x")
I1 = OpMatrix.identity(1)


def to_sympy(f):
    num = sum(int(c) * sx ** k for k, c in enumerate(f.num.coeffs()))
    den = sum(int(c) * sx ** k for k, c in enumerate(f.den.coeffs()))
    return num / den


def pair(A, B):
    return IsotropyPair(OpMatrix(A), OpMatrix(B))


class TestExamples:
    def test_pairing(self):
        v = pairing([X], [ZERO], [ZERO], [ONE])
        assert v.integrand == X and v.is_total_derivative
        assert pairing([0], [0], [0], [0]).integrand == ZERO
        v = pairing([X], [ONE], [X], [ONE])
        assert v.integrand == 2 * X and v.is_total_derivative
        assert not is_total_derivative(1 / X)
        with pytest.raises(ShapeMismatch):
            pairing([X], [X, X], [X], [X])

    def test_skewadjoint(self):
        assert is_skewadjoint_pair(pair([[D]], [[ONE_OP]]))
        S = [[D, OrePoly(X)], [OrePoly(-X), D]]
        assert is_skewadjoint_pair(pair(S, OpMatrix.identity(2).tolist()))
        assert not is_skewadjoint_pair(pair([[D ** 2]], [[ONE_OP]]))

    def test_witness(self):
        p = pair([[D]], [[ONE_OP]])
        assert membership_witness(p, [ZERO]) == ([ZERO], [ZERO])
        assert membership_witness(p, [X]) == ([ONE], [X])
        assert member(p, [X]) == ([X], [ONE])

    def test_orthogonality(self):
        p = pair([[D]], [[ONE_OP]])
        assert orthogonality_check(p, [ZERO], [ZERO])
        assert not orthogonality_check(p, [ONE], [ONE])
        G, H = membership_witness(p, [X ** 2 / (X + 1)])
        assert orthogonality_check(p, G, H)

    def test_solve(self):
        p = pair([[D]], [[ONE_OP]])
        assert solve_preimage(p, [ZERO], [ZERO], 0) == [ZERO]
        assert solve_preimage(p, [ONE], [X], 1) == [X]
        assert solve_preimage(p, [ONE], [X], 4) == [X]
        with pytest.raises(BoundExhausted):
            solve_preimage(p, [ONE], [X], 0)
        # F = 1/x lies outside every polynomial ansatz but inside den = x
        G, H = membership_witness(p, [1 / X])
        with pytest.raises(BoundExhausted):
            solve_preimage(p, G, H, 3)
        assert solve_preimage(p, G, H, 0, den_ansatz=X) == [1 / X]

    def test_shape_errors(self):
        with pytest.raises(ShapeMismatch):
            pair([[D]], [[ONE_OP, ONE_OP], [ONE_OP, ONE_OP]])
        with pytest.raises(ShapeMismatch):
            membership_witness(pair([[D]], [[ONE_OP]]), [X, X])


def test_hermite_examples():
    assert is_total_derivative(-1 / X ** 2)
    assert not is_total_derivative(1 / (X ** 2 + 1))
    assert not is_total_derivative(1 / X ** 2 + 1 / (X - 1))
    assert antiderivative(2 * X) == X ** 2
    assert antiderivative(1 / X) is None


@settings(max_examples=40)
@given(field_elems(max_deg=3))
def test_total_derivative_matches_sympy(f):
    expr = to_sympy(f)
    rational = sympy.integrate(expr, sx).is_rational_function(sx)
    assert is_total_derivative(f) == rational


@given(field_elems(max_deg=3))
def test_antiderivative_of_derivative(g):
    h = antiderivative(g.deriv())
    assert h is not None and (h - g).is_constant()


@given(field_elems(max_deg=3), st.integers(-3, 3), st.integers(1, 4))
def test_simple_pole_is_not_derivative(g, a, c):
    assert not is_total_derivative(g.deriv() + c / (X - a))


@given(field_elems(max_deg=3, rational=True))
def test_hermite_reconstructs(f):
    (gn, gd), p, a, d = hermite_reduce(f)
    g = FieldElem(gn, gd)
    assert g.deriv() + FieldElem(p) + FieldElem(a, d) == f
    assert a.degree() < d.degree()
    assert d.gcd(d.derivative()).degree() == 0


def _skew_pair(rng, n):
    B = rand_nondegenerate(rng, n, 1, 1)
    S = rand_skew(rng, n)
    return IsotropyPair(mat_mul(S, B), B)


@pytest.mark.parametrize("seed", range(10))
def test_isotropy_of_members(seed):
    rng = rng_for(400 + seed)
    n = 1 + seed % 2
    p = _skew_pair(rng, n)
    assert is_skewadjoint_pair(p)
    F1 = [rand_field(rng, 2, 2, rational=True) for _ in range(n)]
    F2 = [rand_field(rng, 2, 2, rational=True) for _ in range(n)]
    P1, Q1 = member(p, F1)
    P2, Q2 = member(p, F2)
    v = pairing(P1, Q1, P2, Q2)
    assert v.is_total_derivative
    assert sympy.integrate(to_sympy(v.integrand), sx).is_rational_function(sx)
    G, H = membership_witness(p, F1)
    assert orthogonality_check(p, G, H)


def test_non_skew_pair_breaks_isotropy():
    p = pair([[D ** 2]], [[ONE_OP]])
    P1, Q1 = member(p, [X ** 2])
    P2, Q2 = member(p, [1 / X])
    # x^2 (2/x^3) + (1/x) 2 = 4/x
    v = pairing(P1, Q1, P2, Q2)
    assert v.integrand == 4 / X and not v.is_total_derivative


@pytest.mark.parametrize("seed", range(8))
def test_solve_recovers_polynomial(seed):
    rng = rng_for(500 + seed)
    n = 1 + seed % 2
    S = rand_skew(rng, n)
    p = IsotropyPair(S, OpMatrix.identity(n))
    F0 = [FieldElem.from_coeffs([rng.randint(-3, 3) for _ in range(4)]) for _ in range(n)]
    G, H = membership_witness(p, F0)
    assert solve_preimage(p, G, H, 3) == F0


@pytest.mark.parametrize("seed", range(8))
def test_solve_on_minimal_pairs(seed):
    rng = rng_for(600 + seed)
    n = 1 + seed % 2
    while True:
        A = rand_matrix(rng, n, 1, 1, rational=False)
        B = rand_nondegenerate(rng, n, 1, 1, rational=False)
        if is_minimal(MatFraction(A, B))[0]:
            break
    p = IsotropyPair(A, B)
    F0 = [FieldElem.from_coeffs([rng.randint(-3, 3) for _ in range(3)]) for _ in range(n)]
    G, H = membership_witness(p, F0)
    F = solve_preimage(p, G, H, 3)
    assert membership_witness(p, F) == (G, H)
    assert F == F0


def test_solve_with_denominator_ansatz():
    p = IsotropyPair(OpMatrix([[D]]), I1)
    F0 = [(X ** 2 - 1) / (X + 3)]
    G, H = membership_witness(p, F0)
    assert solve_preimage(p, G, H, 2, den_ansatz=X + 3) == F0
    with pytest.raises(ValueError):
        solve_preimage(p, G, H, 2, den_ansatz=0)
    with pytest.raises(ValueError):
        solve_preimage(p, G, H, -1)


@settings(max_examples=20)
@given(st.integers(0, 10 ** 6))
def test_witness_passes_orthogonality(seed):
    rng = rng_for(seed)
    p = _skew_pair(rng, rng.choice([1, 2]))
    F = [rand_field(rng, 2, 2, rational=True) for _ in range(p.n)]
    assert orthogonality_check(p, *membership_witness(p, F))
