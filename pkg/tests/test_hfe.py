from __future__ import annotations

from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hfe_alias.alias import convention_bases, recover_alias
from hfe_alias.gfext import GF, Basis, FieldParams
from hfe_alias.hfe import (AffineMap, HfeParams, PrivateKey, PublicKey, coordinate_map, decrypt,
                           derive_public, encrypt, keygen, preimage_counts, private_eval, split_affine,
                           symbolic_alias, translation_normalized)
from hfe_alias.sparsepoly import SparsePoly, poly_weight
from hfe_alias.toy import toy_field, toy_public_key


def make(n, d, seed, p=2, **kw):
    return keygen(HfeParams(FieldParams.default(p, n), d, seed), **kw)


def all_vectors(p, n):
    return np.array(list(product(range(p), repeat=n)), dtype=np.int64)


def plain_key(F, f):
    n = F.n
    I = AffineMap.identity(n, F.p)
    return PrivateKey(HfeParams(F.params, max(f.degree(), F.q + 1), 0), Basis.power(F), f, I, I)


def test_params_bounds():
    with pytest.raises(ValueError):
        HfeParams(FieldParams.default(2, 3), 2)
    with pytest.raises(ValueError):
        HfeParams(FieldParams.default(2, 3), 8)


def test_keygen_is_deterministic():
    sk1, pk1 = make(6, 20, 11)
    sk2, pk2 = make(6, 20, 11)
    assert pk1 == pk2
    assert sk1.f == sk2.f and sk1.S == sk2.S and sk1.T == sk2.T
    _, pk3 = make(6, 20, 12)
    assert pk3 != pk1


@pytest.mark.parametrize("seed", range(10))
def test_public_matches_private_everywhere_n3(seed):
    sk, pk = make(3, 6, seed)
    assert poly_weight(sk.f) <= 2 and sk.f.degree() <= 6
    B = sk.basis
    V = all_vectors(2, 3)
    for v, y in zip(V, pk.evaluate_many(V)):
        assert np.array_equal(y, B.decode(private_eval(sk, B.encode(v))))


@pytest.mark.parametrize("p,n,d", [(2, 4, 12), (3, 3, 18), (5, 2, 10)])
def test_public_matches_private_exhaustive(p, n, d):
    sk, pk = make(n, d, 4, p=p)
    V = all_vectors(p, n)
    for v, y in zip(V, pk.evaluate_many(V)):
        assert np.array_equal(y, coordinate_map(sk, v))


@pytest.mark.parametrize("seed", range(4))
def test_private_eval_matches_symbolic_alias_on_f32(seed):
    sk, _ = make(5, 24, seed)
    A = symbolic_alias(sk)
    for x in range(32):
        assert A.evaluate(x) == private_eval(sk, x)


def test_identity_maps_reduce_to_f():
    F = GF.default(2, 5)
    sk = plain_key(F, SparsePoly.monomial(F, 3))
    for x in F.elements():
        assert private_eval(sk, x) == F.pow(x, 3)
    # gcd(3, 31) = 1, so x^3 is a permutation and 0 is the only preimage of 0
    assert decrypt(sk, np.zeros(5, dtype=np.int64)) == {(0, 0, 0, 0, 0)}


def test_linear_f_gives_zero_quadratic_part():
    F = GF.default(2, 4)
    sk = plain_key(F, SparsePoly(F, {1: 3, 2: 5, 8: 1}))
    pk = derive_public(sk)
    assert not pk.quad.any()


def test_toy_public_key_constant():
    pk = toy_public_key()
    assert encrypt(pk, [0, 0, 0]).tolist() == [0, 0, 1]
    zero = PublicKey(2, 3, np.zeros(3), np.zeros((3, 3)), np.zeros((3, 3, 3)))
    assert encrypt(zero, [1, 1, 0]).tolist() == [0, 0, 0]


@pytest.mark.parametrize("conv", ["asc/asc", "desc/desc"])
def test_toy_public_key_rebuilt_from_a_private_key(conv):
    F = toy_field()
    al = recover_alias(toy_public_key(), F, convention=conv)
    basis, _ = convention_bases(F, conv)
    I = AffineMap.identity(3)
    sk = PrivateKey(HfeParams(F.params, 6, 0), basis, al.A, I, I)
    assert derive_public(sk) == toy_public_key()


def test_encrypt_length_checked():
    _, pk = make(4, 12, 0)
    with pytest.raises(ValueError):
        encrypt(pk, [1, 0, 1])


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2 ** 32), n=st.integers(3, 8), data=st.data())
def test_round_trip(seed, n, data):
    d = data.draw(st.integers(3, min(2 ** n - 1, 2 ** 3 + 2 ** 2)))
    sk, pk = make(n, d, seed)
    msg = np.array(data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n)))
    ct = encrypt(pk, msg)
    assert tuple(msg.tolist()) in decrypt(sk, ct)
    assert np.array_equal(encrypt(pk, msg), pk.evaluate(msg))


@pytest.mark.parametrize("n,seed", [(3, 0), (4, 1), (5, 2)])
def test_decrypt_counts_equal_preimage_counts(n, seed):
    sk, pk = make(n, min(12, 2 ** n - 1), seed)
    counts = preimage_counts(pk)
    for ct in all_vectors(2, n):
        got = decrypt(sk, ct)
        assert len(got) == counts.get(tuple(ct.tolist()), 0)
        for v in got:
            assert np.array_equal(encrypt(pk, v), ct)


def test_decrypt_odd_characteristic():
    sk, pk = make(3, 12, 5, p=3)
    counts = preimage_counts(pk)
    for ct in all_vectors(3, 3):
        assert len(decrypt(sk, ct)) == counts.get(tuple(ct.tolist()), 0)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_split_affine_recomposes(n):
    F = GF.default(2, n)
    B = Basis.power(F)
    sk, _ = make(n, 6, 1)
    for M in (sk.S, sk.T):
        lin, shift = split_affine(M, "right", B)
        for x in F.elements():
            v = B.decode(x)
            assert B.encode(M.apply(v)) == F.add(B.encode(lin.apply(v)), shift)
        lin, root = split_affine(M, "left", B)
        assert not M.apply(B.decode(root)).any()
        for x in F.elements():
            v = B.decode(x)
            assert B.encode(M.apply(v)) == B.encode(lin.apply(B.decode(F.sub(x, root))))
    zero_t = AffineMap(sk.S.matrix, np.zeros(n, dtype=np.int64), 2)
    lin, shift = split_affine(zero_t, "right", B)
    assert shift == 0 and lin == zero_t


@pytest.mark.parametrize("n,seed", [(3, 0), (4, 3), (6, 7), (8, 2)])
def test_translations_can_be_absorbed(n, seed):
    sk, pk = make(n, min(12, 2 ** n - 1), seed)
    norm = translation_normalized(sk)
    assert norm.S.is_linear() and norm.T.is_linear()
    assert derive_public(norm) == pk


def test_affine_json_round_trip():
    sk, pk = make(5, 12, 3)
    assert AffineMap.from_json(sk.S.to_json(), 2) == sk.S
    assert PublicKey.from_json(pk.to_json()) == pk
