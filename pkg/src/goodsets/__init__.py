"""Additive decomposability of finite subsets of product spaces.

Decide goodness and fullness, extract and decompose loops, compute related
and relatively full components, and enumerate the extreme points of the
marginal-free measure ball, all in exact rational arithmetic.
"""

from .errors import CapExceeded, GoodSetsError, InvalidInput, PreconditionError, TheoremViolation
from .pointset import (CoordFunctionBundle, CoordinateIndex, Point, PointFunction, PointSet,
                       build_index, parse_point_set, serialize_point_set)
from .structure import (analyze_structure, is_full, is_good, is_good_function, is_relatively_full,
                        solve_decomposition)
from .loops import (LoopCert, decompose_weak_loop, enumerate_loops, extend_from_maximal_good,
                    find_loop, fundamental_loop, loop_coefficients, maximal_good_subset,
                    uperp_fundamental_basis)
from .measures import Measure, loop_measure
from .components import (check_union_maximal_good, find_full_witness, quotient,
                         related_components, relatively_full_components)
from .polytope import enumerate_extreme_points, is_extreme, uperp_dimension

__version__ = "0.1.0"
