"""Slow, independent routes to the quantities computed in the fast modules.

Nothing here shares code paths with the formulas it checks beyond the ray
vectors themselves.
"""

from fractions import Fraction

from . import bott_fan, curves
from ._linalg import solve
from .bott_fan import MINUS, PLUS, BottMatrix, RayId
from .errors import ConsistencyError

ORACLE_MAX_LENGTH = 16


def h_table(M: BottMatrix):
    """Class of each D_{j-} in the basis D_{i+} by solving the linear relations.

    Principal divisors are ``sum_rho <m, u_rho> D_rho`` for m in the dual
    lattice. We solve for x, y in ``D_{j-} - sum_i x_i D_{i+} = sum_k y_k div(e_k^*)``
    as one linear system over the 2r divisor coordinates.
    """
    r = M.r
    rays = list(bott_fan.all_rays(M))
    vectors = {ray: bott_fan.ray_vector(M, ray) for ray in rays}
    out = [[0] * r for _ in range(r)]
    for j in range(1, r + 1):
        # unknowns: x_1..x_r, y_1..y_r ; equations: one per ray
        rows, rhs = [], []
        for ray in rays:
            row = [Fraction(0)] * (2 * r)
            if ray.sign == PLUS:
                row[ray.pos - 1] = Fraction(1)
            for k in range(r):
                row[r + k] = Fraction(vectors[ray][k])
            rows.append(row)
            rhs.append(Fraction(1 if ray == RayId(j, MINUS) else 0))
        sol = solve(rows, rhs)
        for i in range(r):
            if sol[i].denominator != 1:
                raise ConsistencyError("non-integral divisor class")
            out[j - 1][i] = int(sol[i])
    return out


def mori_basis_from_walls(M: BottMatrix):
    """r(P_i) computed from the index-set walls rather than point location."""
    return [curves.wall_relation(M, curves.index_set_wall(M, curves.mori_index_set(M, i)))
            for i in range(1, M.r + 1)]


def d_values_from_walls(M: BottMatrix, D):
    return [c.dot(D) for c in mori_basis_from_walls(M)]


def kleiman(M: BottMatrix, D):
    """(ample, nef) by evaluating D on every wall curve."""
    values = [curves.wall_relation(M, w).dot(D) for w in curves.enumerate_walls(M)]
    return all(v > 0 for v in values), all(v >= 0 for v in values)


def schubert_degrees_from_walls(M: BottMatrix):
    return [curves.schubert_line(M, j)[1].canonical_degree() for j in range(1, M.r + 1)]
