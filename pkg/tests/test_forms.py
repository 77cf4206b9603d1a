from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hfe_alias import linalg
from hfe_alias.alias import recover_alias
from hfe_alias.errors import NotAlternating
from hfe_alias.forms import (canonicalize, decompose, degree_bound, diagonalize, hyperbolic_form, reconstruct,
                             reconstruct_decomposition, reduce_alias, reduce_linear_tail, solve_via_reduction)
from hfe_alias.gfext import GF, Basis, FieldParams
from hfe_alias.hfe import AffineMap, HfeParams, PrivateKey, derive_public, keygen
from hfe_alias.rootfind import roots_bruteforce
from hfe_alias.sparsepoly import SparsePoly, digits
from hfe_alias.toy import printed_alias, toy_field


def make(n, d, seed, p=2):
    return keygen(HfeParams(FieldParams.default(p, n), d, seed))


def rand_invertible(F, rng, n):
    while True:
        P = [[F.random(rng) for _ in range(n)] for _ in range(n)]
        if linalg.rank(F, P) == n:
            return P


def random_pseudoquadratic(F, rng, density=0.6):
    n = F.n
    terms = {0: F.random(rng)}
    for i in range(n):
        if rng.random() < density:
            terms[2 ** i] = F.random(rng)
        for j in range(i + 1, n):
            if rng.random() < density:
                terms[2 ** i + 2 ** j] = F.random(rng)
    return SparsePoly(F, terms)


def form_value(F, c, lam, B, X):
    """c + sum lam_i X_i + sum_{i<j} B_ij X_i X_j, the multivariate view."""
    acc = c
    n = len(X)
    for i in range(n):
        acc = F.add(acc, F.mul(lam[i], X[i]))
        for j in range(i + 1, n):
            acc = F.add(acc, F.mul(B[i][j], F.mul(X[i], X[j])))
    return acc


def test_decompose_single_product():
    F = GF.default(2, 4)
    dec = decompose(SparsePoly.monomial(F, 3))
    assert dec.constant == 0 and not any(dec.linear)
    nz = [(i, j) for i in range(4) for j in range(4) if dec.B[i][j]]
    assert nz == [(0, 1), (1, 0)]


def test_decompose_toy_alias():
    F = toy_field()
    dec = decompose(printed_alias(F))
    assert dec.constant == 1
    assert dec.linear == [0, F.parse("t^2+t"), F.parse("t^2+t+1")]
    assert dec.B[0][1] == F.parse("t^2+1")   # x^3
    assert dec.B[0][2] == F.parse("t^2+1")   # x^5
    assert dec.B[1][2] == F.parse("t^2")     # x^6
    assert linalg.is_symmetric(dec.B)


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2 ** 32), n=st.integers(2, 8))
def test_decompose_reconstruct_round_trip(seed, n):
    F = GF.default(2, n)
    A = random_pseudoquadratic(F, np.random.default_rng(seed))
    dec = decompose(A)
    assert all(dec.B[i][i] == 0 for i in range(n))
    assert reconstruct_decomposition(dec) == A


def test_decompose_round_trip_odd():
    F = GF.default(3, 3)
    rng = np.random.default_rng(0)
    A = SparsePoly(F, {0: 4, 1: 2, 2: 7, 4: 1, 6: 11, 10: 5, 12: 3, 18: 9})
    assert reconstruct_decomposition(decompose(A)) == A
    for _ in range(5):
        x = F.random(rng)
        assert SparsePoly(F, A.terms).evaluate(x) == A.evaluate(x)


def test_canonicalize_trivial_cases():
    F = GF.default(2, 5)
    P, r = canonicalize(F, linalg.zeros(5, 5))
    assert r == 0 and P == linalg.identity(5)
    B = linalg.zeros(2, 2)
    B[0][1] = B[1][0] = 13
    P, r = canonicalize(F, B)
    assert r == 1 and linalg.congruence(F, P, B) == hyperbolic_form(2, 1)


def test_canonicalize_rejects_non_alternating():
    F = GF.default(2, 3)
    with pytest.raises(NotAlternating):
        canonicalize(F, [[1, 0], [0, 0]])


@pytest.mark.parametrize("n", range(2, 9))
def test_canonicalize_recovers_constructed_rank(n):
    F = GF.default(2, 6)
    rng = np.random.default_rng(n)
    for r in range(n // 2 + 1):
        G = rand_invertible(F, rng, n)
        B = linalg.congruence(F, G, hyperbolic_form(n, r))
        P, got = canonicalize(F, B)
        assert got == r
        C = linalg.congruence(F, P, B)
        assert C == hyperbolic_form(n, r)
        assert linalg.rank(F, P) == n
        # idempotence
        assert canonicalize(F, C)[1] == r


def test_diagonalize_odd():
    F = GF.default(3, 3)
    rng = np.random.default_rng(1)
    for _ in range(20):
        n = 4
        B = linalg.zeros(n, n)
        for i in range(n):
            for j in range(i, n):
                B[i][j] = B[j][i] = F.random(rng) if rng.random() < 0.5 else 0
        P, k = diagonalize(F, B)
        C = linalg.congruence(F, P, B)
        assert all(C[i][j] == 0 for i in range(n) for j in range(n) if i != j)
        assert all(C[i][i] for i in range(k)) and not any(C[i][i] for i in range(k, n))
        assert k == linalg.rank(F, B)


def test_linear_tail_cases():
    F = GF.default(2, 6)
    lam = [3, 5, 0, 0, 0, 0]
    assert reduce_linear_tail(F, lam, 2) == linalg.identity(6)
    lam = [3, 5, 9, 0, 0, 0]
    Q = reduce_linear_tail(F, lam, 2)
    assert Q[2][2] == F.inv(9)
    assert linalg.matvec(F, linalg.transpose(Q), lam) == [3, 5, 1, 0, 0, 0]
    rng = np.random.default_rng(3)
    H = hyperbolic_form(6, 1)
    for _ in range(50):
        lam = [F.random(rng) for _ in range(6)]
        Q = reduce_linear_tail(F, lam, 2)
        out = linalg.matvec(F, linalg.transpose(Q), lam)
        assert out[:2] == lam[:2]
        assert not any(out[3:])
        assert linalg.congruence(F, Q, H) == H
        assert linalg.rank(F, Q) == 6


def test_reduce_simple_key():
    F = GF.default(2, 5)
    I = AffineMap.identity(5)
    f = SparsePoly(F, {3: 1, 1: 1})
    sk = PrivateKey(HfeParams(F.params, 3, 0), Basis.power(F), f, I, I)
    rk = reduce_alias(recover_alias(derive_public(sk)))
    assert rk.r == 1
    assert rk.degree <= F.q ** 2 + F.q
    assert rk.F_prime.constant_term == 0


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_reduce_invariants_on_keys(n):
    for seed in range(6):
        sk, pk = make(n, min(2 ** n - 1, 8), seed)
        A = recover_alias(pk).A
        rk = reduce_alias(A)
        dec = decompose(A)
        C = linalg.congruence(A.field, rk.P_total, dec.B)
        assert linalg.rank(A.field, C) == linalg.rank(A.field, dec.B) == 2 * rk.r
        assert C == hyperbolic_form(n, rk.r)
        assert rk.F_prime.constant_term == A.constant_term
        assert rk.degree <= degree_bound(2, rk.r)


@pytest.mark.parametrize("n", [4, 6, 8])
def test_substitution_identity_with_square_terms(n):
    """A(P X') = F'(X') + sum_k delta_k X'_k^2 on arbitrary X' in K^n."""
    F = GF.default(2, n)
    rng = np.random.default_rng(n)
    for seed in range(3):
        _, pk = make(n, 8, seed)
        A = recover_alias(pk).A
        rk = reduce_alias(A)
        dec = decompose(A)
        dec2 = decompose(rk.F_prime)
        for _ in range(20):
            Xp = [F.random(rng) for _ in range(n)]
            X = linalg.matvec(F, rk.P_total, Xp)
            left = form_value(F, dec.constant, dec.linear, dec.B, X)
            right = form_value(F, dec2.constant, dec2.linear, dec2.B, Xp)
            for dk, xk in zip(rk.square_terms, Xp):
                right = F.add(right, F.mul(dk, F.mul(xk, xk)))
            assert left == right


def test_frobenius_point_recovers_f_prime_value():
    # on X = Frob(x) the form view equals A(x): the bridge used by solve_via_reduction
    F = GF.default(2, 6)
    A = random_pseudoquadratic(F, np.random.default_rng(4))
    dec = decompose(A)
    for x in range(64):
        X = [F.frobenius(x, i) for i in range(6)]
        assert form_value(F, dec.constant, dec.linear, dec.B, X) == A.evaluate(x)


@pytest.mark.parametrize("n", [4, 5])
def test_solve_via_reduction_is_sound_and_empty_off_image(n):
    for seed in range(4):
        _, pk = make(n, 8, seed)
        A = recover_alias(pk).A
        rk = reduce_alias(A)
        image = {A.evaluate(x) for x in range(2 ** n)}
        for y in range(2 ** n):
            got = solve_via_reduction(rk, A, y)
            assert got <= roots_bruteforce(A, y)
            if y not in image:
                assert got == set()


def test_quadratic_rank_bounded_by_frobenius_indices():
    for n in range(3, 9):
        for seed in range(5):
            sk, _ = make(n, min(2 ** n - 1, 24), seed)
            F = sk.field
            idx = {i for e in sk.f.terms if bin(e).count("1") == 2
                   for i, d in enumerate(digits(e, 2)) if d}
            assert linalg.rank(F, decompose(sk.f).B) <= 2 * len(idx)


def test_reconstruct_matches_slots():
    F = GF.default(2, 4)
    B = hyperbolic_form(4, 2)
    P = reconstruct(F, 7, [0, 0, 0, 1], B)
    assert P == SparsePoly(F, {0: 7, 8: 1, 3: 1, 12: 1})
