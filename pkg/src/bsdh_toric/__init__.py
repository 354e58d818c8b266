"""Exact combinatorics of the toric limit (a Bott tower) of a BSDH variety."""

from .bott_fan import BottMatrix, RayId, bott_matrix, locate_point, ray_vector
from .classify import consistency_report, is_fano, is_weak_fano
from .curves import mori_cone_basis, mori_index_set, primitive_relation
from .errors import ConsistencyError, InvalidInputError
from .root_data import GeneralizedCartanMatrix, builtin_cartan

__version__ = "0.1.0"
