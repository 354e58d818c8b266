"""Bott matrix and fan of the toric limit.

The lattice is Z^r with standard basis e_1^+, ..., e_r^+. Each position i
carries a second ray

    e_i^- = -e_i^+ - sum_{j > i} B[i][j] e_j^+

and the maximal cones are exactly the sign vectors in {+, -}^r. Every cone
matrix is lower triangular with diagonal entries +-1, which is what makes the
back-substitution point location below work.
"""

from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterator, NamedTuple, Sequence, Tuple

import numpy as np

from . import root_data
from ._linalg import det_bareiss, solve
from .errors import ConsistencyError, InvalidInputError

PLUS = 1
MINUS = -1

LatticePoint = Tuple[int, ...]
SignVector = Tuple[int, ...]


class RayId(NamedTuple):
    pos: int
    sign: int

    @property
    def label(self) -> str:
        return f"{self.pos}{'+' if self.sign == PLUS else '-'}"

    @classmethod
    def parse(cls, label: str) -> "RayId":
        text = str(label).strip()
        if len(text) < 2 or text[-1] not in "+-" or not text[:-1].isdigit():
            raise InvalidInputError(f"bad ray label {label!r}; expected e.g. '3+' or '3-'")
        return cls(int(text[:-1]), PLUS if text[-1] == "+" else MINUS)

    def opposite(self) -> "RayId":
        return RayId(self.pos, -self.sign)

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class BottMatrix:
    """Full pairing matrix ``B[i][j] = <beta_j, beta_i^vee>`` for a word.

    Only the strict upper triangle enters the fan; the whole matrix is kept
    because some recursions read both index orders.
    """

    entries: Tuple[Tuple[int, ...], ...]
    word: Tuple[int, ...] = ()

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        r = len(rows)
        if r == 0 or any(len(row) != r for row in rows):
            raise InvalidInputError("Bott matrix must be a non-empty square matrix")
        if any(rows[i][i] != 2 for i in range(r)):
            raise InvalidInputError("Bott matrix must have 2 on the diagonal")

    @property
    def r(self) -> int:
        return len(self.entries)

    def beta(self, i: int, j: int) -> int:
        """1-based entry ``beta_ij``."""
        return self.entries[i - 1][j - 1]

    def upper(self):
        """The unipotent upper-triangular matrix of the Bott tower."""
        r = self.r
        return [[1 if i == j else (self.entries[i][j] if j > i else 0) for j in range(r)] for i in range(r)]

    @classmethod
    def from_upper(cls, upper: Sequence[Sequence[int]]) -> "BottMatrix":
        """Build from strict upper-triangular data only (lower part set to 0)."""
        r = len(upper)
        return cls(tuple(tuple(2 if i == j else (int(upper[i][j]) if j > i else 0) for j in range(r)) for i in range(r)))


def bott_matrix(gcm: root_data.GeneralizedCartanMatrix, word: Sequence[int]) -> BottMatrix:
    word = root_data.validate_word(gcm, word)
    a = gcm.entries
    return BottMatrix(tuple(tuple(a[p - 1][q - 1] for q in word) for p in word), word)


def _check_ray(M: BottMatrix, ray: RayId) -> None:
    if not 1 <= ray.pos <= M.r or ray.sign not in (PLUS, MINUS):
        raise InvalidInputError(f"ray {ray!r} out of range for r = {M.r}")


def ray_vector(M: BottMatrix, ray: RayId) -> LatticePoint:
    _check_ray(M, ray)
    i = ray.pos
    v = [0] * M.r
    if ray.sign == PLUS:
        v[i - 1] = 1
        return tuple(v)
    v[i - 1] = -1
    for j in range(i + 1, M.r + 1):
        v[j - 1] = -M.beta(i, j)
    return tuple(v)


def all_rays(M: BottMatrix) -> Iterator[RayId]:
    for i in range(1, M.r + 1):
        yield RayId(i, PLUS)
        yield RayId(i, MINUS)


def cone_rays(eps: SignVector):
    return [RayId(i, s) for i, s in enumerate(eps, 1)]


def sign_vectors(r: int) -> Iterator[SignVector]:
    """All maximal cones, lazily, all-plus first."""
    return product((PLUS, MINUS), repeat=r)


def _cone_matrix(M: BottMatrix, eps: SignVector):
    cols = [ray_vector(M, ray) for ray in cone_rays(eps)]
    return [[cols[c][row] for c in range(M.r)] for row in range(M.r)]


def cone_determinant(M: BottMatrix, eps: SignVector) -> int:
    if len(eps) != M.r or any(s not in (PLUS, MINUS) for s in eps):
        raise InvalidInputError(f"sign vector must have length {M.r} with entries +-1")
    return det_bareiss(_cone_matrix(M, eps))


def locate_point(M: BottMatrix, v: Sequence[int], oracle: bool = False) -> Dict[RayId, int]:
    """Express ``v`` with positive coefficients on the rays of its minimal cone.

    Returns ``{ray: coefficient}``; the keys are the support. With
    ``oracle=True`` every maximal cone is tried instead of the O(r^2)
    back-substitution.
    """
    v = tuple(int(x) for x in v)
    if len(v) != M.r:
        raise InvalidInputError(f"lattice point must have {M.r} coordinates, got {len(v)}")
    if oracle:
        return locate_point_exhaustive(M, v)
    res = list(v)
    out = {}
    for i in range(1, M.r + 1):
        x = res[i - 1]
        if x == 0:
            continue
        if x > 0:
            out[RayId(i, PLUS)] = x
            res[i - 1] = 0
        else:
            c = -x
            out[RayId(i, MINUS)] = c
            res[i - 1] = 0
            for j in range(i + 1, M.r + 1):
                res[j - 1] += c * M.beta(i, j)
    return out


def _cone_stack(M: BottMatrix, start: int, count: int):
    """Integer matrices of ``count`` consecutive maximal cones and their sign vectors."""
    r = M.r
    plus = np.eye(r, dtype=np.int64)
    minus = np.array([ray_vector(M, RayId(i, MINUS)) for i in range(1, r + 1)], dtype=np.int64).T
    codes = np.arange(start, start + count, dtype=np.int64)
    bits = (codes[:, None] >> np.arange(r - 1, -1, -1)) & 1
    mats = np.where(bits[:, None, :] == 1, minus[None, :, :], plus[None, :, :])
    signs = np.where(bits == 1, MINUS, PLUS)
    return mats, signs


def locate_point_exhaustive(M: BottMatrix, v: Sequence[int]) -> Dict[RayId, int]:
    """Brute force over all 2^r maximal cones.

    Coordinates in each cone basis are found with a batched float solve and
    then confirmed exactly in integer arithmetic; cones whose rounded
    solution fails the exact check are re-solved with rationals.
    """
    r = M.r
    v = [int(x) for x in v]
    found = None
    # int64 products stay exact while |entries| * |coords| * r is small; otherwise check in Python ints
    big = max((abs(x) for row in M.entries for x in row), default=0) > 1000 or max(map(abs, v), default=0) > 10**6
    total = 1 << r
    for start in range(0, total, 4096):
        count = min(4096, total - start)
        mats, signs = _cone_stack(M, start, count)
        sols = np.linalg.solve(mats.astype(float), np.broadcast_to(np.array(v, dtype=float), (count, r))[..., None])[..., 0]
        rounded = np.rint(sols).astype(np.int64)
        if big:
            ok = np.array([[sum(int(a) * int(b) for a, b in zip(row, x)) for row in mat] == v
                           for mat, x in zip(mats.tolist(), rounded.tolist())])
        else:
            ok = (np.einsum("kij,kj->ki", mats, rounded) == np.array(v, dtype=np.int64)).all(axis=1)
        candidates = np.flatnonzero(~ok | (rounded >= 0).all(axis=1))
        for k in candidates.tolist():
            if ok[k]:
                x = rounded[k].tolist()
                if min(x) < 0:
                    continue
            else:
                exact = solve(mats[k].tolist(), v)
                if any(c.denominator != 1 for c in exact):
                    eps = tuple(signs[k].tolist())
                    raise ConsistencyError(f"non-integral cone coordinates in cone {eps}: fan is not smooth")
                x = [int(c) for c in exact]
                if min(x) < 0:
                    continue
            eps = signs[k].tolist()
            support = {RayId(i, s): c for i, (s, c) in enumerate(zip(eps, x), 1) if c != 0}
            if found is None:
                found = support
            elif found != support:
                raise ConsistencyError(f"point {v} has two different positive expressions")
    if found is None:
        raise ConsistencyError(f"point {v} lies in no maximal cone: fan is not complete")
    return found


def lattice_sum(M: BottMatrix, coeffs: Dict[RayId, object]):
    """sum of coeff * u_ray over the given rays."""
    out = [0] * M.r
    for ray, c in coeffs.items():
        for k, x in enumerate(ray_vector(M, ray)):
            out[k] += c * x
    return tuple(out)


def smoothness_certificate(M: BottMatrix, exhaustive: bool = False) -> dict:
    """Certify that every maximal cone is unimodular.

    By default the certificate is structural: the ray matrix of every cone is
    lower triangular with +-1 on the diagonal. ``exhaustive=True`` computes
    all 2^r determinants.
    """
    for i in range(1, M.r + 1):
        for s in (PLUS, MINUS):
            u = ray_vector(M, RayId(i, s))
            if any(u[k] != 0 for k in range(i - 1)) or abs(u[i - 1]) != 1:
                raise ConsistencyError(f"ray {i}{'+' if s > 0 else '-'} breaks the triangular structure")
    cert = {"smooth": True, "method": "triangular", "cones_checked": 0}
    if exhaustive:
        count = 0
        for eps in sign_vectors(M.r):
            d = cone_determinant(M, eps)
            if abs(d) != 1:
                raise ConsistencyError(f"cone {eps} has determinant {d}")
            count += 1
        cert.update(method="exhaustive", cones_checked=count)
    return cert
