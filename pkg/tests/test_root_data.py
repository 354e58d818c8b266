import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bsdh_toric import fuzz, root_data
from bsdh_toric.errors import InvalidInputError
from bsdh_toric.root_data import (GeneralizedCartanMatrix, builtin_cartan, gamma_data, height, pairing,
                                  reflect_coroot, reflect_root)

A4 = builtin_cartan("A", 4)
B2 = builtin_cartan("B", 2)
G2 = builtin_cartan("G2", 2)


def test_builtin_a4_is_tridiagonal():
    for p, q in itertools.product(range(1, 5), repeat=2):
        expected = 2 if p == q else (-1 if abs(p - q) == 1 else 0)
        assert pairing(A4, p, q) == expected


def test_builtin_non_simply_laced_conventions():
    assert pairing(B2, 2, 1) == -2 and pairing(B2, 1, 2) == -1
    assert pairing(G2, 2, 1) == -1 and pairing(G2, 1, 2) == -3
    C3 = builtin_cartan("C", 3)
    assert [list(r) for r in C3.entries] == [list(r) for r in zip(*builtin_cartan("B", 3).entries)]


def test_builtin_d4_branches():
    D4 = builtin_cartan("D", 4)
    assert [pairing(D4, 2, q) for q in (1, 3, 4)] == [-1, -1, -1]
    assert pairing(D4, 3, 4) == 0


@pytest.mark.parametrize("family,rank", [("G2", 3), ("B", 1), ("D", 3), ("E", 6), ("A", 0)])
def test_builtin_rejects_bad_rank(family, rank):
    with pytest.raises(InvalidInputError):
        builtin_cartan(family, rank)


@pytest.mark.parametrize("mat", [
    [[2, 1], [-1, 2]],
    [[2, 0], [-1, 2]],
    [[1, -1], [-1, 2]],
    [[2, -1, 0], [-1, 2]],
])
def test_gcm_validation(mat):
    with pytest.raises(InvalidInputError):
        GeneralizedCartanMatrix(mat)


def test_pairing_examples():
    assert pairing(A4, 2, 1) == -1
    assert all(pairing(A4, p, p) == 2 for p in range(1, 5))
    assert pairing(B2, 2, 1) == -2
    with pytest.raises(InvalidInputError):
        pairing(A4, 5, 1)


def _matrix_reflection(gcm, p):
    # s_p acting on root coordinates: identity minus e_p times row p of A
    A = np.array(gcm.entries)
    S = np.eye(gcm.n, dtype=int)
    S[p - 1, :] -= A[p - 1, :]
    return S


def test_reflect_root_examples():
    assert reflect_root(A4, 2, (1, 0, 0, 0)) == (1, 1, 0, 0)
    assert reflect_root(B2, 2, (1, 0)) == (1, 2)
    for p in range(1, 5):
        e = root_data.simple(A4, p)
        assert reflect_root(A4, p, e) == tuple(-x for x in e)
    assert tuple(_matrix_reflection(A4, 2) @ np.array([1, 0, 0, 0])) == (1, 1, 0, 0)


def test_reflect_coroot_examples():
    assert reflect_coroot(A4, 2, (1, 0, 0, 0)) == (1, 1, 0, 0)
    assert reflect_coroot(B2, 2, (1, 0)) == (1, 1)
    assert reflect_coroot(B2, 1, (1, 0)) == (-1, 0)


def test_height():
    assert height((1, 0)) == 1
    assert height((1, 1)) == 2
    assert height((-1, 0)) == -1


@st.composite
def gcm_and_vector(draw):
    seed = draw(st.integers(0, 10 ** 6))
    gcm = fuzz.random_gcm(random.Random(seed))
    p = draw(st.integers(1, gcm.n))
    v = tuple(draw(st.lists(st.integers(-20, 20), min_size=gcm.n, max_size=gcm.n)))
    return gcm, p, v


@given(gcm_and_vector())
def test_reflections_are_involutions_and_match_matrix_action(data):
    gcm, p, v = data
    assert reflect_root(gcm, p, reflect_root(gcm, p, v)) == v
    assert reflect_coroot(gcm, p, reflect_coroot(gcm, p, v)) == v
    assert tuple(_matrix_reflection(gcm, p) @ np.array(v)) == reflect_root(gcm, p, v)
    # coroot action is the transpose matrix
    A = np.array(gcm.entries)
    S = np.eye(gcm.n, dtype=int)
    S[p - 1, :] -= A[:, p - 1]
    assert tuple(S @ np.array(v)) == reflect_coroot(gcm, p, v)


@given(st.integers(0, 10 ** 6))
def test_zero_pattern_symmetric_for_fuzzed(seed):
    gcm = fuzz.random_gcm(random.Random(seed))
    for p, q in itertools.product(range(1, gcm.n + 1), repeat=2):
        assert (pairing(gcm, p, q) == 0) == (pairing(gcm, q, p) == 0)


def test_zero_pattern_symmetric_for_builtins():
    for fam, rank in [("A", 5), ("B", 4), ("C", 4), ("D", 5), ("G2", 2)]:
        g = builtin_cartan(fam, rank)
        for p, q in itertools.product(range(1, rank + 1), repeat=2):
            assert (pairing(g, p, q) == 0) == (pairing(g, q, p) == 0)


def test_gamma_data_examples():
    A3 = builtin_cartan("A", 3)
    (g1, _, b1), (g2, _, b2) = gamma_data(A3, (1, 2))
    assert (g1, b1, g2, b2) == ((1, 1, 0), 2, (0, 1, 0), 1)
    for p in (1, 2, 3):
        assert gamma_data(A3, (p,)) == [(root_data.simple(A3, p), root_data.simple(A3, p), 1)]
    (_, cor1, b1), _ = gamma_data(B2, (1, 2))
    assert cor1 == (1, 1) and b1 == 2


def test_gamma_data_coroot_height_differs_from_root_height_in_b2():
    (root, coroot, b), _ = gamma_data(B2, (1, 2))
    assert root == (1, 2) and height(root) == 3
    assert b == height(coroot) == 2


@settings(max_examples=60)
@given(st.integers(0, 10 ** 6))
def test_simply_laced_root_and_coroot_heights_agree(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    a = [[2 if p == q else 0 for q in range(n)] for p in range(n)]
    for p in range(n):
        for q in range(p + 1, n):
            if rng.random() < 0.5:
                a[p][q] = a[q][p] = rng.randint(-4, -1)
    gcm = GeneralizedCartanMatrix(a)
    word = fuzz.random_word(rng, gcm, 8)
    for root, coroot, b in gamma_data(gcm, word):
        assert root == coroot and height(root) == b


def _perm_length(perm):
    return sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])


def _type_a_gamma_oracle(n, word):
    """gamma_i in type A_n via the permutation action on e_1..e_{n+1}."""
    out = []
    for i, letter in enumerate(word):
        vec = [0] * (n + 1)
        vec[letter - 1], vec[letter] = 1, -1
        for p in word[i + 1:]:
            vec[p - 1], vec[p] = vec[p], vec[p - 1]
        # e_a - e_b in simple-root coordinates: partial sums
        coords = tuple(sum(vec[:k + 1]) for k in range(n))
        out.append(coords)
    return out


def test_reduced_words_give_positive_gammas_in_type_a():
    rng = random.Random(11)
    seen = 0
    for _ in range(400):
        n = rng.randint(2, 5)
        word = tuple(rng.randint(1, n) for _ in range(rng.randint(1, 6)))
        perm = list(range(n + 1))
        for p in word:
            perm[p - 1], perm[p] = perm[p], perm[p - 1]
        gcm = builtin_cartan("A", n)
        data = gamma_data(gcm, word)
        assert [d.root for d in data] == _type_a_gamma_oracle(n, word)
        if _perm_length(perm) == len(word):
            seen += 1
            assert all(d.b >= 1 for d in data)
            assert all(min(d.root) >= 0 for d in data)
    assert seen > 50


def test_validate_word():
    with pytest.raises(InvalidInputError):
        root_data.validate_word(A4, ())
    with pytest.raises(InvalidInputError):
        root_data.validate_word(A4, (1, 5))
    with pytest.raises(InvalidInputError):
        root_data.validate_word(A4, (1,) * 63)
    assert root_data.validate_word(A4, [1, 1, 2]) == (1, 1, 2)
