"""Goodness, fullness, relative fullness and the additive decomposition solver.

Everything here is a statement about the 0/1 incidence matrix ``A`` of a
point set: one row per point, one column per coordinate, with ``A u = f``
meaning ``f(x) = u_1(x_1) + ... + u_n(x_n)``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .errors import PreconditionError
from .pointset import CoordFunctionBundle, CoordinateIndex, PointFunction, PointSet, build_index


@dataclass(frozen=True)
class IncidenceSystem:
    space: PointSet
    index: CoordinateIndex
    rows: tuple[tuple[int, ...], ...]

    @property
    def matrix(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    @property
    def transposed(self) -> list[list[int]]:
        """The marginal map: coordinates by points."""
        return linalg.transpose(self.rows)

    def row_of(self, p) -> tuple[int, ...]:
        return self.rows[self.space.index(p)]

    def coordinate_masks(self) -> list[int]:
        """Each point's coordinate set as a bitmask over column ids."""
        out = []
        for p in self.space.points:
            m = 0
            for axis, label in enumerate(p):
                m |= 1 << self.index.column(axis, label)
            out.append(m)
        return out


def incidence(S: PointSet) -> IncidenceSystem:
    index = build_index(S)
    rows = []
    for p in S.points:
        row = [0] * index.N
        for axis, label in enumerate(p):
            row[index.column(axis, label)] = 1
        rows.append(tuple(row))
    return IncidenceSystem(S, index, tuple(rows))


def incidence_rank(S: PointSet) -> int:
    if not len(S):
        return 0
    return linalg.rank(incidence(S).rows)


@dataclass(frozen=True)
class StructureReport:
    n: int
    size: int
    N: int
    good: bool
    full: bool
    relatively_full: bool
    rank: int
    kernel_dim: int
    excess: int

    def to_document(self) -> dict:
        return asdict(self)


def analyze_structure(S: PointSet) -> StructureReport:
    r = incidence_rank(S)
    N = S.N
    good = r == len(S)
    nonempty = len(S) > 0
    return StructureReport(
        n=S.n,
        size=len(S),
        N=N,
        good=good,
        full=nonempty and good and len(S) == N - (S.n - 1),
        relatively_full=nonempty and r == N - (S.n - 1),
        rank=r,
        kernel_dim=N - r,
        excess=len(S) - r,
    )


def is_good(S: PointSet) -> bool:
    return incidence_rank(S) == len(S)


def _require_nonempty(S: PointSet):
    if not len(S):
        raise PreconditionError("operation needs a nonempty point set")


def is_full(S: PointSet) -> bool:
    """Good and ``|S| == N(S) - (n - 1)``."""
    _require_nonempty(S)
    return len(S) == S.N - (S.n - 1) and is_good(S)


def is_relatively_full(S: PointSet) -> bool:
    """Anchored decompositions are unique, i.e. rank(A) == N(S) - (n - 1).

    The constant shifts ``u_i += c_i`` with ``sum(c) == 0`` always lie in the
    kernel of ``A`` and are exactly what the n - 1 anchors pin down, so
    uniqueness holds iff the kernel is no bigger than that.
    """
    _require_nonempty(S)
    return incidence_rank(S) == S.N - (S.n - 1)


def default_anchors(S: PointSet) -> dict[int, str]:
    return {i: min(S.projection(i)) for i in range(S.n - 1)}


def _check_anchors(S: PointSet, anchors: Mapping[int, str]) -> dict[int, str]:
    anchors = dict(anchors)
    if set(anchors) != set(range(S.n - 1)):
        raise PreconditionError(
            f"need exactly one anchor for each of the first {S.n - 1} axes, got axes "
            f"{sorted(a + 1 for a in anchors)}")
    for axis, label in anchors.items():
        if label not in S.projection(axis):
            raise PreconditionError(f"anchor label {label!r} does not occur on axis {axis + 1}")
    return anchors


def solve_decomposition(S: PointSet, f: PointFunction | Mapping | Sequence,
                        anchors: Mapping[int, str] | None = None):
    """Write ``f`` as ``u_1(x_1) + ... + u_n(x_n)`` on ``S`` with anchored labels at zero.

    Returns ``(bundle, freedom_dim)`` or None when ``f`` is not additive on
    ``S``.  ``anchors`` maps a 0-based axis (all but the last) to a label
    whose coordinate value is pinned to 0; by default the least label.  When
    the anchored solution is not unique the free coordinates are set to zero
    and ``freedom_dim`` counts them.
    """
    _require_nonempty(S)
    f = _as_function(S, f)
    anchors = default_anchors(S) if anchors is None else _check_anchors(S, anchors)
    system = incidence(S)
    N = system.index.N
    rows = [list(r) for r in system.rows]
    rhs = list(f.values)
    for axis, label in sorted(anchors.items()):
        row = [0] * N
        row[system.index.column(axis, label)] = 1
        rows.append(row)
        rhs.append(Fraction(0))
    u = linalg.solve_linear(rows, rhs)
    if u is None:
        return None
    freedom = N - linalg.rank(rows)
    axes: list[dict[str, Fraction]] = [{} for _ in range(S.n)]
    for (axis, label), col in system.index.columns.items():
        axes[axis][label] = u[col]
    return CoordFunctionBundle(S.n, tuple(axes)), freedom


def _as_function(S: PointSet, f) -> PointFunction:
    if isinstance(f, PointFunction):
        if f.space != S:
            f = PointFunction.from_mapping(S, dict(f.items()))
        return f
    if isinstance(f, Mapping):
        return PointFunction.from_mapping(S, {tuple(k): v for k, v in f.items()})
    return PointFunction(S, tuple(f))


def is_good_function(S: PointSet, f) -> bool:
    """Whether ``f`` is additive on ``S``: every fundamental loop measure annihilates it."""
    from .loops import fundamental_loops

    f = _as_function(S, f)
    for cert in fundamental_loops(S):
        if sum((c * f[p] for p, c in zip(cert.points, cert.coeffs)), Fraction(0)) != 0:
            return False
    return True


def random_good_function(S: PointSet, rng, spread: int = 5) -> PointFunction:
    """``f = u_1 + ... + u_n`` for random small-rational coordinate functions."""
    values = {}
    for i in range(S.n):
        for label in S.projection(i):
            values[(i, label)] = Fraction(rng.randint(-spread, spread), rng.randint(1, 3))
    return PointFunction(S, tuple(sum((values[(i, p[i])] for i in range(S.n)), Fraction(0))
                                  for p in S.points))
