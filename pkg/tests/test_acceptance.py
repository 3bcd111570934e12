"""Acceptance suite: one test per primary criterion, each printing a PASS/FAIL line.

All comparisons are exact.  Random workloads use fixed seeds; runtime limits
are asserted alongside correctness.
"""

import io
import json
import time
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction
from pathlib import Path

import sympy

from orefrac import cli
from orefrac.dirac import (IsotropyPair, is_skewadjoint_pair, membership_witness,
                           orthogonality_check, pairing, solve_preimage)
from orefrac.field import FieldElem
from orefrac.generators import (rand_field, rand_matrix, rand_nondegenerate, rand_op, rand_skew,
                                rand_unimodular, rand_with_degree, rng_for)
from orefrac.matfrac import MatFraction, divide_out, frac_add, frac_mul, is_minimal, minimal_decomposition
from orefrac.matops import (OpMatrix, adjoint_mat, common_right_multiple, dieudonne_det,
                            inverse_unimodular, is_nondegenerate, is_unimodular, mat_mul)
from orefrac.ore import ONE_OP, D
from orefrac import ratfrac

GOLDEN = Path(__file__).parent / "golden"


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def test_c01_worked_example(report):
    A = OpMatrix([[D * D - D]])
    B = OpMatrix([[D - ONE_OP]])

    def work():
        F = MatFraction(A, B)
        F0 = minimal_decomposition(F)
        return F0, divide_out(F, F0)

    (F0, Dm), elapsed = _timed(work)
    ok = (F0.num == OpMatrix([[D]]) and F0.den == OpMatrix([[ONE_OP]])
          and Dm == OpMatrix([[D - ONE_OP]]) and elapsed < 0.1)
    report("criterion 1: minimal([[D^2-D]],[[D-1]]) = ([[D]],[[1]]), divide-out = [[D-1]]", ok,
           f"{elapsed * 1000:.1f} ms")
    assert ok


def test_c02_det_multiplicative(report):
    rng = rng_for(2002)

    def work():
        bad = 0
        for _ in range(500):
            n = rng.choice([1, 2, 3])
            A = rand_nondegenerate(rng, n, max_order=2, coeff_deg=2)
            B = rand_nondegenerate(rng, n, max_order=2, coeff_deg=2)
            dA, dB, dAB = dieudonne_det(A), dieudonne_det(B), dieudonne_det(mat_mul(A, B))
            if not (dAB.det1 == dA.det1 * dB.det1 and dAB.d == dA.d + dB.d):
                bad += 1
        return bad

    bad, elapsed = _timed(work)
    ok = bad == 0 and elapsed < 60
    report("criterion 2: det(AB) = det(A) det(B) on 500 pairs", ok, f"{bad} failures, {elapsed:.1f} s")
    assert ok


def _sympy_det(A, lam):
    def conv(p):
        return sum(sympy.Rational(*_frac_parts(c.constant_value())) * lam ** k
                   for k, c in enumerate(p.coeffs))

    M = sympy.Matrix([[conv(e) for e in row] for row in A.entries])
    return sympy.Poly(M.det(method="berkowitz"), lam)


def _frac_parts(q):
    q = Fraction(q)
    return q.numerator, q.denominator


def test_c03_commutative_specialization(report):
    rng = rng_for(2003)
    lam = sympy.Symbol("lam")

    def work():
        bad = 0
        for _ in range(200):
            n = rng.choice([1, 2, 3])
            A = rand_matrix(rng, n, max_order=2, bound=3, constant=True)
            ours = dieudonne_det(A)
            P = _sympy_det(A, lam)
            if P.is_zero:
                bad += not ours.is_zero
                continue
            lc = Fraction(*_frac_parts_sympy(P.LC()))
            bad += ours.is_zero or not (ours.det1 == FieldElem(lc) and ours.d == P.degree())
        return bad

    bad, elapsed = _timed(work)
    ok = bad == 0 and elapsed < 30
    report("criterion 3: constant coefficients match (lc, deg) of det in Q[lam]", ok,
           f"{bad} failures, {elapsed:.1f} s")
    assert ok


def _frac_parts_sympy(r):
    r = sympy.Rational(r)
    return int(r.p), int(r.q)


def test_c04_unimodular_iff_degree_zero(report):
    rng = rng_for(2004)

    def work():
        bad = 0
        for _ in range(200):
            n = rng.choice([1, 2, 3])
            U = rand_unimodular(rng, n, steps=rng.randint(1, 4))
            if not is_unimodular(U):
                bad += 1
                continue
            Uinv = inverse_unimodular(U)
            I = OpMatrix.identity(n)
            bad += not (mat_mul(U, Uinv) == I and mat_mul(Uinv, U) == I)
        for _ in range(200):
            n = rng.choice([1, 2, 3])
            A = rand_with_degree(rng, n, rng.randint(1, 3))
            bad += is_unimodular(A)
        return bad

    bad, elapsed = _timed(work)
    ok = bad == 0 and elapsed < 60
    report("criterion 4: unimodular exactly when d = 0 (200 + 200 cases)", ok,
           f"{bad} failures, {elapsed:.1f} s")
    assert ok


def test_c05_adjoint_determinant(report):
    rng = rng_for(2005)

    def work():
        bad = 0
        for _ in range(200):
            n = rng.choice([1, 2, 3])
            A = rand_nondegenerate(rng, n)
            dA, dS = dieudonne_det(A), dieudonne_det(adjoint_mat(A))
            sign = -1 if dA.d % 2 else 1
            bad += not (dS.d == dA.d and dS.det1 == dA.det1 * sign)
        return bad

    bad, elapsed = _timed(work)
    ok = bad == 0 and elapsed < 30
    report("criterion 5: det(A*) = (-1)^d det(A) on 200 matrices", ok, f"{bad} failures, {elapsed:.1f} s")
    assert ok


def _coprime_pair(rng, n):
    while True:
        A0 = rand_matrix(rng, n, max_order=1, coeff_deg=1)
        B0 = rand_nondegenerate(rng, n, max_order=1, coeff_deg=1)
        minimal, cert = is_minimal(MatFraction(A0, B0, check=False))
        if minimal:
            C, E = cert
            assert mat_mul(C, A0) + mat_mul(E, B0) == OpMatrix.identity(n)
            return A0, B0


def test_c06_construct_then_recover(report):
    rng = rng_for(2006)

    def work():
        bad = 0
        for _ in range(200):
            n = rng.choice([1, 2, 3])
            A0, B0 = _coprime_pair(rng, n)
            Dm = rand_with_degree(rng, n, rng.randint(0, 3))
            F = MatFraction(mat_mul(A0, Dm), mat_mul(B0, Dm))
            F0 = minimal_decomposition(F)
            same_degree = dieudonne_det(F0.den).d == dieudonne_det(B0).d
            recovered = divide_out(F, MatFraction(A0, B0)) == Dm
            bad += not (same_degree and recovered)
        return bad

    bad, elapsed = _timed(work)
    ok = bad == 0 and elapsed < 120
    report("criterion 6: 200 coprime pairs times D: d(B0) and D recovered", ok,
           f"{bad} failures, {elapsed:.1f} s")
    assert ok


def test_c07_common_right_multiple(report):
    rng = rng_for(2007)

    def work():
        bad = 0
        for _ in range(200):
            n = rng.choice([1, 2])
            A = rand_nondegenerate(rng, n)
            B = rand_nondegenerate(rng, n)
            C, Dm = common_right_multiple(A, B)
            bad += not (mat_mul(A, C) == mat_mul(B, Dm) and is_nondegenerate(C) and is_nondegenerate(Dm))
        return bad

    bad, elapsed = _timed(work)
    ok = bad == 0 and elapsed < 120
    report("criterion 7: A C = B D with C, D non-degenerate on 200 pairs", ok,
           f"{bad} failures, {elapsed:.1f} s")
    assert ok


def _skew_pair(rng, case):
    """A minimal pair (A0, B0) with A0 B0^-1 skewadjoint."""
    n = rng.choice([1, 2])
    S = rand_skew(rng, n)
    while not is_nondegenerate(S):
        S = rand_skew(rng, n)
    if case % 2 == 0:
        B = rand_nondegenerate(rng, n, max_order=1, coeff_deg=1)
        F = MatFraction(mat_mul(S, B), B)
    else:
        # (Q*)^-1 S Q^-1 is skewadjoint whenever S is
        Q = rand_nondegenerate(rng, n, max_order=1, coeff_deg=1)
        F = frac_mul(MatFraction(OpMatrix.identity(n), adjoint_mat(Q)), MatFraction(S, Q))
    return minimal_decomposition(F)


def test_c08_witness_suite(report):
    rng = rng_for(2008)
    x = FieldElem.gen()

    def work():
        bad = 0
        for case in range(100):
            F0 = _skew_pair(rng, case)
            p = IsotropyPair(F0.num, F0.den)
            if not is_skewadjoint_pair(p):
                bad += 1
                continue
            n = p.n
            F = [sum((FieldElem(rng.randint(-3, 3)) * x ** k for k in range(rng.randint(0, 3) + 1)),
                     FieldElem(0)) for _ in range(n)]
            G, H = membership_witness(p, F)
            ok = orthogonality_check(p, G, H)
            ok = ok and solve_preimage(p, G, H, 3, 1) == F
            # isotropy against a second member
            F2 = [rand_field(rng, 2, 2) for _ in range(n)]
            G2, H2 = membership_witness(p, F2)
            ok = ok and pairing(H, G, H2, G2).is_total_derivative
            bad += not ok
        return bad

    bad, elapsed = _timed(work)
    ok = bad == 0 and elapsed < 120
    report("criterion 8: witnesses of 100 skewadjoint minimal pairs are orthogonal and solvable", ok,
           f"{bad} failures, {elapsed:.1f} s")
    assert ok


def test_c09_scalar_matrix_coherence(report):
    rng = rng_for(2009)

    def frac(rng):
        return rand_op(rng, 2, 1, rational=True), rand_op(rng, 2, 1, rational=True, nonzero=True)

    def same(M, h):
        return M.num == OpMatrix([[h.num]]) and M.den == OpMatrix([[h.den]])

    def work():
        bad = 0
        for _ in range(300):
            a, b = frac(rng)
            c, e = frac(rng)
            F, G = MatFraction([[a]], [[b]]), MatFraction([[c]], [[e]])
            h, k = ratfrac.ScalarFraction(a, b), ratfrac.ScalarFraction(c, e)
            bad += not (same(minimal_decomposition(F), h)
                        and same(frac_mul(F, G), ratfrac.frac_mul(h, k))
                        and same(frac_add(F, G), ratfrac.frac_add(h, k)))
        return bad

    bad, elapsed = _timed(work)
    ok = bad == 0 and elapsed < 30
    report("criterion 9: 1x1 matrix fractions agree with scalar fractions on 300 cases", ok,
           f"{bad} failures, {elapsed:.1f} s")
    assert ok


def _run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        try:
            code = cli.main(argv)
        except SystemExit as exc:
            code = exc.code
    return code, out.getvalue(), err.getvalue()


def test_c10_cli_golden(report):
    cases = json.loads((GOLDEN / "cases.json").read_text())

    def work():
        failures = []
        for case in cases:
            code, out, err = _run_cli(case["argv"])
            expected = (GOLDEN / case["expect"]).read_text()
            got = out if case["exit"] == 0 else err
            if code != case["exit"] or got != expected:
                failures.append(case["expect"])
        return failures

    failures, elapsed = _timed(work)
    ok = len(cases) == 20 and not failures and elapsed < 5
    report("criterion 10: 20 CLI golden files match byte for byte", ok,
           f"{len(failures)} mismatches {failures}, {elapsed:.2f} s")
    assert ok
