"""Primitive relations, walls, invariant curves and the Mori cone."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple

from . import bott_fan
from ._linalg import SingularMatrixError, solve, transpose
from .bott_fan import MINUS, PLUS, BottMatrix, RayId
from .errors import ConsistencyError, InvalidInputError


def _check_pos(M: BottMatrix, i: int) -> None:
    if not 1 <= i <= M.r:
        raise InvalidInputError(f"position {i} out of range 1..{M.r}")


@dataclass(frozen=True)
class CurveClass:
    """A curve class, stored as the functional ``D_rho -> D_rho . C``.

    Only nonzero intersection numbers are kept.
    """

    items: Tuple[Tuple[RayId, int], ...]

    @classmethod
    def from_dict(cls, d: Mapping[RayId, int]) -> "CurveClass":
        return cls(tuple(sorted((RayId(*k), int(v)) for k, v in d.items() if v != 0)))

    def __getitem__(self, ray: RayId) -> int:
        return dict(self.items).get(ray, 0)

    def as_dict(self) -> Dict[RayId, int]:
        return dict(self.items)

    def dot(self, divisor: Mapping[RayId, object]):
        """Intersection number ``D . C`` for a divisor given by ray coefficients."""
        return sum(divisor.get(ray, 0) * v for ray, v in self.items)

    def canonical_degree(self) -> int:
        """K . C, using K = -(sum of all invariant divisors)."""
        return -sum(v for _, v in self.items)

    def labels(self) -> Dict[str, int]:
        return {ray.label: v for ray, v in self.items}


@dataclass(frozen=True)
class PrimitiveRelation:
    i: int
    gamma_rays: Tuple[Tuple[RayId, int], ...]

    @property
    def coefficients(self) -> Dict[RayId, int]:
        return dict(self.gamma_rays)

    def curve_class(self) -> CurveClass:
        d = {RayId(self.i, PLUS): 1, RayId(self.i, MINUS): 1}
        for ray, c in self.gamma_rays:
            d[ray] = -c
        return CurveClass.from_dict(d)

    @property
    def degree_sum(self) -> int:
        return sum(c for _, c in self.gamma_rays)


@dataclass(frozen=True)
class Wall:
    """An (r-1)-cone shared by two maximal cones.

    ``rays`` spans the wall; the two completing rays always sit at the one
    position the wall omits, with opposite signs.
    """

    rays: frozenset
    completing: Tuple[RayId, RayId]

    @classmethod
    def from_signs(cls, eps: Sequence[int], pos: int) -> "Wall":
        rays = frozenset(RayId(i, s) for i, s in enumerate(eps, 1) if i != pos)
        return cls(rays, (RayId(pos, PLUS), RayId(pos, MINUS)))

    @classmethod
    def from_labels(cls, labels: Sequence[str], r: int) -> "Wall":
        rays = [RayId.parse(x) for x in labels]
        positions = sorted(ray.pos for ray in rays)
        if len(rays) != r - 1 or len(set(positions)) != r - 1 or any(not 1 <= p <= r for p in positions):
            raise InvalidInputError(f"a wall needs {r - 1} rays at distinct positions in 1..{r}, got {list(labels)}")
        (pos,) = set(range(1, r + 1)) - set(positions)
        return cls(frozenset(rays), (RayId(pos, PLUS), RayId(pos, MINUS)))

    @property
    def position(self) -> int:
        return self.completing[0].pos

    def key(self) -> Tuple[RayId, ...]:
        return tuple(sorted(self.rays))

    def labels(self) -> List[str]:
        return [ray.label for ray in self.key()]


@dataclass(frozen=True)
class MoriIndexSet:
    i: int
    indices: Tuple[int, ...]
    trace: Mapping[Tuple[int, int], int] = field(default_factory=dict)

    def a(self, k: int, j: int) -> int:
        return self.trace[(k, j)]


def primitive_relation(M: BottMatrix, i: int, oracle: bool = False) -> PrimitiveRelation:
    _check_pos(M, i)
    v = bott_fan.lattice_sum(M, {RayId(i, PLUS): 1, RayId(i, MINUS): 1})
    coeffs = bott_fan.locate_point(M, v, oracle=oracle)
    if any(ray.pos <= i for ray in coeffs):
        raise ConsistencyError(f"primitive relation for position {i} uses a ray at or before it: {coeffs}")
    return PrimitiveRelation(i, tuple(sorted(coeffs.items())))


def mori_index_set(M: BottMatrix, i: int) -> MoriIndexSet:
    """Run the a_{k,j} recursion starting at position ``i``.

    The first jump looks for a positive a_{1,j}; every later jump looks for a
    negative a_{k-1,j}.
    """
    _check_pos(M, i)
    r = M.r
    b = M.beta
    trace = {}
    a = {j: b(i, j) for j in range(i + 1, r + 1)}
    trace.update({(1, j): x for j, x in a.items()})
    indices = [i]
    k = 1
    while True:
        cur = indices[-1]
        want_positive = k == 1
        nxt = next((j for j in range(cur + 1, r + 1) if (a[j] > 0 if want_positive else a[j] < 0)), None)
        if nxt is None:
            break
        indices.append(nxt)
        k += 1
        if k == 2:
            a = {j: b(i, nxt) * b(nxt, j) - b(i, j) for j in range(nxt + 1, r + 1)}
        else:
            a = {j: -a[nxt] * b(nxt, j) + a[j] for j in range(nxt + 1, r + 1)}
        trace.update({(k, j): x for j, x in a.items()})
    return MoriIndexSet(i, tuple(indices), trace)


def wall_relation(M: BottMatrix, wall: Wall) -> CurveClass:
    """Intersection numbers of the invariant curve of ``wall``.

    Solves ``u_a + sum b_k u_k + u_b = 0`` exactly; the completing rays get 1
    and each wall ray its coefficient.
    """
    ray_a, ray_b = wall.completing
    basis = list(wall.key()) + [ray_a]
    if len(basis) != M.r:
        raise InvalidInputError(f"wall must have {M.r - 1} rays")
    for ray in basis:
        bott_fan._check_ray(M, ray)
    cols = [bott_fan.ray_vector(M, ray) for ray in basis]
    rhs = [-x for x in bott_fan.ray_vector(M, ray_b)]
    try:
        x = solve(transpose(cols), rhs)
    except SingularMatrixError as exc:
        raise ConsistencyError(f"degenerate wall {wall.labels()}") from exc
    if x[-1] != 1 or any(c.denominator != 1 for c in x):
        raise ConsistencyError(f"wall {wall.labels()} has a non-unimodular relation {x}")
    d = {ray_a: 1, ray_b: 1}
    for ray, c in zip(basis[:-1], x[:-1]):
        d[ray] = int(c)
    return CurveClass.from_dict(d)


def schubert_wall(M: BottMatrix, j: int) -> Wall:
    _check_pos(M, j)
    return Wall.from_signs((PLUS,) * M.r, j)


def schubert_line(M: BottMatrix, j: int) -> Tuple[Wall, CurveClass]:
    wall = schubert_wall(M, j)
    return wall, wall_relation(M, wall)


def schubert_canonical_degree(M: BottMatrix, j: int) -> int:
    """Closed form K . L_j = -2 - sum_{k>j} B[j][k]."""
    _check_pos(M, j)
    return -2 - sum(M.beta(j, k) for k in range(j + 1, M.r + 1))


def index_set_wall(M: BottMatrix, mis: MoriIndexSet) -> Wall:
    """Wall whose curve represents r(P_i): minus signs on the later indices of the set."""
    tail = set(mis.indices[1:])
    eps = tuple(MINUS if l in tail else PLUS for l in range(1, M.r + 1))
    return Wall.from_signs(eps, mis.i)


def mori_cone_basis(M: BottMatrix, oracle: bool = False) -> List[CurveClass]:
    return [primitive_relation(M, i, oracle=oracle).curve_class() for i in range(1, M.r + 1)]


def pairing_matrix(M: BottMatrix, basis: Sequence[CurveClass] = None):
    """``P[i][j] = D_{i+} . r(P_j)``; unitriangular for Bott fans."""
    basis = mori_cone_basis(M) if basis is None else basis
    return [[c[RayId(i, PLUS)] for c in basis] for i in range(1, M.r + 1)]


def curve_in_basis(M: BottMatrix, curve, basis: Sequence[CurveClass] = None) -> Tuple[int, ...]:
    """Coordinates of a curve class (or of the curve of a wall) in the basis r(P_i)."""
    if isinstance(curve, Wall):
        curve = wall_relation(M, curve)
    P = pairing_matrix(M, basis)
    target = [curve[RayId(i, PLUS)] for i in range(1, M.r + 1)]
    x = solve(P, target)
    if any(c.denominator != 1 for c in x):
        raise ConsistencyError(f"curve {curve.labels()} has non-integral Mori coordinates {x}")
    return tuple(int(c) for c in x)


def enumerate_walls(M: BottMatrix) -> Iterator[Wall]:
    """Every wall, found by dropping one ray from each maximal cone."""
    seen = set()
    for eps in bott_fan.sign_vectors(M.r):
        for pos in range(1, M.r + 1):
            wall = Wall.from_signs(eps, pos)
            if wall.key() not in seen:
                seen.add(wall.key())
                yield wall


def class_relation_residual(M: BottMatrix, curve: CurveClass) -> Tuple[Fraction, ...]:
    """sum_rho (D_rho . C) u_rho; zero for every genuine curve class."""
    return bott_fan.lattice_sum(M, curve.as_dict())
