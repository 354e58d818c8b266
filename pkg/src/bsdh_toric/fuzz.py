"""Seeded random Cartan matrices and words, plus the self-test driver."""

import random
from fractions import Fraction

from . import bott_fan, classify, curves, oracles
from .bott_fan import PLUS, RayId
from .root_data import GeneralizedCartanMatrix


def random_gcm(rng: random.Random, n: int = None, min_entry: int = -4) -> GeneralizedCartanMatrix:
    n = rng.randint(1, 5) if n is None else n
    a = [[2 if p == q else 0 for q in range(n)] for p in range(n)]
    for p in range(n):
        for q in range(p + 1, n):
            if rng.random() < 0.6:
                a[p][q] = rng.randint(min_entry, -1)
                a[q][p] = rng.randint(min_entry, -1)
    return GeneralizedCartanMatrix(a)


def random_word(rng: random.Random, gcm: GeneralizedCartanMatrix, max_len: int = 10, min_len: int = 1):
    length = rng.randint(min_len, max_len)
    return tuple(rng.randint(1, gcm.n) for _ in range(length))


def random_case(rng: random.Random, max_len: int = 10, min_len: int = 1):
    gcm = random_gcm(rng)
    word = random_word(rng, gcm, max_len, min_len)
    return gcm, word, bott_fan.bott_matrix(gcm, word)


def random_divisor(rng: random.Random, M, lo: int = -5, hi: int = 5):
    return {ray: rng.randint(lo, hi) for ray in bott_fan.all_rays(M)}


def check_case(M) -> list:
    """Run the cross-checks on one Bott matrix; return a list of failure strings."""
    failures = []
    r = M.r
    for i in range(1, r + 1):
        rel = curves.primitive_relation(M, i)
        if rel != curves.primitive_relation(M, i, oracle=True):
            failures.append(f"locate vs exhaustive at position {i}")
        mis = curves.mori_index_set(M, i)
        minus = {ray.pos for ray, _ in rel.gamma_rays if ray.sign != PLUS}
        if minus != set(mis.indices[1:]):
            failures.append(f"index set {mis.indices} vs minus-support {sorted(minus)} at {i}")
    if oracles.mori_basis_from_walls(M) != curves.mori_cone_basis(M):
        failures.append("Mori basis: walls vs primitive relations")
    if oracles.h_table(M) != classify.h_table(M):
        failures.append("h-table vs linear-relation oracle")
    for j in range(1, r + 1):
        if curves.schubert_line(M, j)[1].canonical_degree() != curves.schubert_canonical_degree(M, j):
            failures.append(f"K.L_{j} closed form")
    return failures


def self_test(seed: int = 0, cases: int = 50, max_len: int = 8) -> dict:
    rng = random.Random(seed)
    failures = []
    for n in range(cases):
        gcm, word, M = random_case(rng, max_len=max_len)
        for msg in check_case(M):
            failures.append({"case": n, "cartan": [list(row) for row in gcm.entries], "word": list(word), "failure": msg})
        D = random_divisor(rng, M)
        g = classify.g_values(M, D)
        Dg = {RayId(i, PLUS): Fraction(x) for i, x in enumerate(g, 1)}
        for c in curves.mori_cone_basis(M):
            if c.dot(D) != c.dot(Dg):
                failures.append({"case": n, "word": list(word), "failure": "divisor conversion"})
                break
    return {"seed": seed, "cases": cases, "max_length": max_len, "failures": failures, "passed": not failures}
