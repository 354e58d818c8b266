"""Fano-type classification of the toric limit.

Two families of tests live here. The syntactic conditions I and II are
literal transcriptions of the published combinatorial predicates on the Bott
matrix. The semantic tests evaluate the anticanonical divisor on the Mori
cone generators through the numbers d_i. The semantic side is the source of
truth; ``consistency_report`` lists every place where the two disagree.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from . import claims, curves, root_data
from .bott_fan import MINUS, PLUS, BottMatrix, RayId, all_rays, bott_matrix
from .errors import ConsistencyError, InvalidInputError

Divisor = Mapping[RayId, object]

READINGS = (
    "condition II case 1 with a single negative index reads the entry beta_{i,l} (row i)",
    "condition II case 3(i) requires the hypotheses of case 2 to hold, not just its conclusion",
    "condition II case 3(iii) is evaluated verbatim, including the mixed s/k expression",
    "positions with two or more positive entries in a row satisfy neither case of condition II",
)


def _etas(M: BottMatrix, i: int):
    later = range(i + 1, M.r + 1)
    plus = [j for j in later if M.beta(i, j) > 0]
    minus = [j for j in later if M.beta(i, j) < 0]
    return plus, minus


def _tail_zero(M: BottMatrix, m: int) -> bool:
    return all(M.beta(m, k) == 0 for k in range(m + 1, M.r + 1))


def n1_clause(M: BottMatrix, i: int) -> Optional[str]:
    """None if N^1 holds at position i, else a short reason."""
    plus, minus = _etas(M, i)
    if not plus:
        if len(minus) > 1:
            return "(i): more than one negative entry"
        if minus and M.beta(i, minus[0]) != -1:
            return f"(i): beta[{i}][{minus[0]}] = {M.beta(i, minus[0])} != -1"
        return None
    if minus:
        return "mixed signs: positive and negative entries in the row"
    if len(plus) > 1:
        return "(ii): more than one positive entry"
    m = plus[0]
    if M.beta(i, m) != 1:
        return f"(ii): beta[{i}][{m}] = {M.beta(i, m)} != 1"
    if not _tail_zero(M, m):
        return f"(ii): row {m} has a nonzero entry after column {m}"
    return None


def _case2(M: BottMatrix, i: int, plus, minus) -> bool:
    if len(plus) != 1 or len(minus) != 1:
        return False
    (m,), (l,) = plus, minus
    return l < m and M.beta(i, l) == -1 and M.beta(i, m) == 1 and _tail_zero(M, m)


def _case3_iii(M: BottMatrix, i: int, m: int) -> bool:
    r = M.r
    b = M.beta
    hits = 0
    for s in range(m + 1, r + 1):
        first = b(m, s) - b(i, s) == 1 and all(b(m, k) - b(i, k) == 0 for k in range(s + 1, r + 1))
        second = b(m, s) - b(i, s) == -1 and all(b(i, s) - b(m, s) - b(s, k) == 0 for k in range(s + 1, r + 1))
        if first or second:
            hits += 1
    return hits == 1


def n2_clause(M: BottMatrix, i: int) -> Optional[str]:
    """None if N^2 holds at position i, else a short reason."""
    plus, minus = _etas(M, i)
    if not plus:
        if len(minus) > 2:
            return "case 1: more than two negative entries"
        if len(minus) == 1 and M.beta(i, minus[0]) not in (-1, -2):
            return f"case 1: beta[{i}][{minus[0]}] = {M.beta(i, minus[0])} not in {{-1, -2}}"
        if len(minus) == 2 and not all(M.beta(i, l) == -1 for l in minus):
            return f"case 1: entries at {minus} are not both -1"
        return None
    if len(plus) > 1:
        return "more than one positive entry"
    m = plus[0]
    if M.beta(i, m) != 1:
        return f"case 3: beta[{i}][{m}] = {M.beta(i, m)} != 1"
    if _case2(M, i, plus, minus):
        return None
    if not minus and _tail_zero(M, m):
        return None
    if _case3_iii(M, i, m):
        return None
    return "case 3: none of (i), (ii), (iii) holds"


def _condition(M: BottMatrix, clause):
    reasons = [clause(M, i) for i in range(1, M.r + 1)]
    first = next(({"position": i, "clause": why} for i, why in enumerate(reasons, 1) if why), None)
    return first is None, {"per_position": [why is None for why in reasons], "first_failure": first}


def condition_I(M: BottMatrix):
    return _condition(M, n1_clause)


def condition_II(M: BottMatrix):
    return _condition(M, n2_clause)


def anticanonical(M: BottMatrix) -> Dict[RayId, int]:
    return {ray: 1 for ray in all_rays(M)}


def d_values(M: BottMatrix, D: Divisor, relations=None) -> List:
    """d_i = a_{i+} + a_{i-} - sum_rho c_rho a_rho, i.e. D . r(P_i)."""
    if relations is None:
        relations = [curves.primitive_relation(M, i) for i in range(1, M.r + 1)]
    out = []
    for rel in relations:
        i = rel.i
        d = D.get(RayId(i, PLUS), 0) + D.get(RayId(i, MINUS), 0)
        d -= sum(c * D.get(ray, 0) for ray, c in rel.gamma_rays)
        out.append(d)
    return out


def is_ample(M: BottMatrix, D: Divisor) -> bool:
    return all(d > 0 for d in d_values(M, D))


def is_nef(M: BottMatrix, D: Divisor) -> bool:
    return all(d >= 0 for d in d_values(M, D))


def is_fano(M: BottMatrix) -> bool:
    return is_ample(M, anticanonical(M))


def is_weak_fano(M: BottMatrix) -> bool:
    # -K is always big on a toric variety (the torus is affine), so nef suffices
    return is_nef(M, anticanonical(M))


def is_mori_ray(M: BottMatrix, i: int) -> bool:
    rel = curves.primitive_relation(M, i)
    coeffs = [c for _, c in rel.gamma_rays]
    literal = len(coeffs) == 0 or (len(coeffs) == 1 and coeffs[0] == 1)
    if literal != (rel.curve_class().canonical_degree() < 0):
        raise ConsistencyError(f"Mori-ray criterion and K-degree disagree at position {i}")
    return literal


def h_table(M: BottMatrix) -> List[List[int]]:
    """``H[j-1][i-1] = h_j^i``: coefficient of D_{i+} in the class of D_{j-}.

    Lower triangular with unit diagonal.
    """
    r = M.r
    H = [[0] * r for _ in range(r)]
    for j in range(1, r + 1):
        H[j - 1][j - 1] = 1
        for i in range(1, j):
            H[j - 1][i - 1] = -sum(M.beta(k, j) * H[k - 1][i - 1] for k in range(i, j))
    return H


def g_values(M: BottMatrix, D: Divisor, H=None) -> List:
    """Coefficients g_i with D linearly equivalent to sum g_i D_{i+}."""
    H = h_table(M) if H is None else H
    r = M.r
    return [
        D.get(RayId(i, PLUS), 0) + sum(D.get(RayId(j, MINUS), 0) * H[j - 1][i - 1] for j in range(i, r + 1))
        for i in range(1, r + 1)
    ]


def _rational(x) -> Fraction:
    try:
        return Fraction(x)
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"{x!r} is not a rational number") from exc


def log_fano_f(M: BottMatrix, b: Sequence[int], a: Sequence = None) -> List[Fraction]:
    """f_i for the boundary divisor with coefficients ``a`` (each in [0, 1))."""
    r = M.r
    a = [Fraction(0)] * r if a is None else [_rational(x) for x in a]
    if len(a) != r or len(b) != r:
        raise InvalidInputError(f"need {r} boundary coefficients and {r} b-values")
    for i, x in enumerate(a, 1):
        if not 0 <= x < 1:
            raise InvalidInputError(f"boundary coefficient a_{i} = {x} must lie in [0, 1)")
    weight = [b[k] + 1 + a[k] for k in range(r)]
    out = []
    for i in range(1, r + 1):
        rel = curves.primitive_relation(M, i)
        f = weight[i - 1] - sum(c * weight[ray.pos - 1] for ray, c in rel.gamma_rays if ray.sign == PLUS)
        out.append(f)
    return out


def is_log_fano(M: BottMatrix, gcm, word, a: Sequence = None, b: Sequence[int] = None):
    """Return ``(verdict, f_values)``; ``b`` defaults to the coroot heights."""
    if b is None:
        b = root_data.b_values(gcm, word)
    f = log_fano_f(M, b, a)
    return all(x > 0 for x in f), f


@dataclass(frozen=True)
class ClassificationReport:
    condition_I: bool
    condition_I_witnesses: dict
    condition_II: bool
    condition_II_witnesses: dict
    fano_semantic: bool
    weak_fano_semantic: bool
    d_values: Tuple[int, ...]
    mori_rays: Tuple[bool, ...]
    discrepancies: Tuple[dict, ...]
    readings: Tuple[str, ...] = field(default=READINGS)

    def to_dict(self) -> dict:
        return {
            "condition_I": {"holds": self.condition_I, **self.condition_I_witnesses},
            "condition_II": {"holds": self.condition_II, **self.condition_II_witnesses},
            "fano": self.fano_semantic,
            "weak_fano": self.weak_fano_semantic,
            "d_values": list(self.d_values),
            "mori_rays": list(self.mori_rays),
            "discrepancies": [dict(d) for d in self.discrepancies],
            "readings": list(self.readings),
        }


def report_for_matrix(M: BottMatrix) -> ClassificationReport:
    c1, w1 = condition_I(M)
    c2, w2 = condition_II(M)
    d = tuple(d_values(M, anticanonical(M)))
    fano = all(x > 0 for x in d)
    weak = all(x >= 0 for x in d)
    mori = tuple(is_mori_ray(M, i) for i in range(1, M.r + 1))
    if fano != all(mori):
        raise ConsistencyError("Fano verdict disagrees with the Mori-ray test")
    if c1 and not c2:
        raise ConsistencyError("condition I holds but condition II fails")

    found = []
    if c1 != fano:
        found.append({"claim": "condition I holds exactly when -K is ample", "source": "syntactic condition I",
                      "syntactic": c1, "semantic": fano})
    if c2 != weak:
        found.append({"claim": "condition II holds exactly when -K is nef", "source": "syntactic condition II",
                      "syntactic": c2, "semantic": weak})
    observed = {"condition_I": c1, "condition_II": c2, "fano": fano, "weak_fano": weak}
    for desc, props in claims.lookup(M):
        for prop, expected in sorted(props.items()):
            if observed[prop] != expected:
                found.append({"claim": f"{desc}: {prop} = {str(expected).lower()}",
                              "source": "published classification", "expected": expected,
                              "observed": observed[prop]})
    return ClassificationReport(c1, w1, c2, w2, fano, weak, d, mori, tuple(found))


def consistency_report(gcm, word) -> ClassificationReport:
    return report_for_matrix(bott_matrix(gcm, word))
