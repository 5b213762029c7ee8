"""Related components, the E_i quotient, and maximal relatively full parts.

Oracle methods are exhaustive over subsets (bitmask scans); heuristic
methods only merge when a counting argument proves the merge sound, so
their partitions refine the oracle's.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import linalg
from .errors import CapExceeded, PreconditionError, TheoremViolation
from .loops import enumerate_loops, maximal_good_subset
from .pointset import Point, PointSet
from .structure import incidence, incidence_rank, is_full, is_good

ORACLE_BOUND = 14


class UnionFind:
    def __init__(self, size: int):
        self._parent = list(range(size))

    def find(self, a: int) -> int:
        root = a
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[a] != root:
            self._parent[a], a = root, self._parent[a]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self._parent[rb] = ra
        return True

    def groups(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for i in range(len(self._parent)):
            out.setdefault(self.find(i), []).append(i)
        return sorted(out.values())


@dataclass(frozen=True)
class Partition:
    parts: tuple[PointSet, ...]
    kind: str
    method: str
    fell_back: bool = False

    def __len__(self) -> int:
        return len(self.parts)

    def part_of(self, p: Sequence[str]) -> int:
        p = tuple(p)
        for k, part in enumerate(self.parts):
            if p in part:
                return k
        raise PreconditionError(f"{list(p)} is not covered")

    def blocks(self) -> set[frozenset]:
        return {frozenset(part.points) for part in self.parts}

    def refines(self, other: "Partition") -> bool:
        return all(any(b <= c for c in other.blocks()) for b in self.blocks())

    def to_document(self) -> dict:
        return {"kind": self.kind, "method": self.method, "fell_back": self.fell_back,
                "parts": [[list(p) for p in part.points] for part in self.parts]}


def _partition(S: PointSet, uf: UnionFind, kind: str, method: str, fell_back=False) -> Partition:
    return Partition(tuple(S.take(g) for g in uf.groups()), kind, method, fell_back)


def _coverage(masks: Sequence[int]) -> list[int]:
    """Union of coordinate bitmasks for every subset of points."""
    cov = [0] * (1 << len(masks))
    for mask in range(1, 1 << len(masks)):
        low = mask & -mask
        cov[mask] = cov[mask ^ low] | masks[low.bit_length() - 1]
    return cov


def _union_mask(uf: UnionFind, mask: int) -> None:
    first = (mask & -mask).bit_length() - 1
    rest = mask ^ (1 << first)
    while rest:
        low = rest & -rest
        uf.union(first, low.bit_length() - 1)
        rest ^= low


def _pick_method(S: PointSet, method: str, bound: int, fallback: bool) -> tuple[str, bool]:
    if method not in ("oracle", "heuristic"):
        raise PreconditionError(f"unknown method {method!r}")
    if method == "oracle" and len(S) > bound:
        if not fallback:
            raise CapExceeded(f"oracle is bounded at {bound} points, got {len(S)}")
        return "heuristic", True
    return method, False


def related_components(S: PointSet, method: str = "oracle", bound: int = ORACLE_BOUND,
                       fallback: bool = True) -> Partition:
    """Classes of the 'lie in a common full subset' relation on a good set."""
    if not is_good(S):
        raise PreconditionError("related components are defined for good sets only")
    method, fell_back = _pick_method(S, method, bound, fallback)
    masks = incidence(S).coordinate_masks()
    uf = UnionFind(len(S))
    if method == "oracle":
        # subsets of a good set are good, so fullness is the counting identity
        cov = _coverage(masks)
        for mask in range(1, 1 << len(S)):
            if mask & (mask - 1) and mask.bit_count() == cov[mask].bit_count() - (S.n - 1):
                _union_mask(uf, mask)
    else:
        _merge_parts(S.n, masks, uf)
    return _partition(S, uf, "related", method, fell_back)


def _merge_parts(n: int, masks: Sequence[int], uf: UnionFind) -> None:
    """Merge full parts whose coordinate pools share n - 1 coordinates, to a fixpoint.

    Two disjoint full parts sharing exactly n - 1 coordinates have a full
    union by counting; in a good set they can never share more.
    """
    pools = {i: m for i, m in enumerate(masks)}
    merged = True
    while merged:
        merged = False
        keys = sorted(pools)
        for a_pos, a in enumerate(keys):
            for b in keys[a_pos + 1:]:
                if (pools[a] & pools[b]).bit_count() >= n - 1:
                    uf.union(a, b)
                    pools[a] |= pools.pop(b)
                    merged = True
                    break
            if merged:
                break


def find_full_witness(S: PointSet, x: Sequence[str], y: Sequence[str],
                      bound: int = ORACLE_BOUND) -> PointSet | None:
    """A smallest full subset of a good set containing both points, or None."""
    if not is_good(S):
        raise PreconditionError("full witnesses are sought in good sets only")
    if len(S) > bound:
        raise CapExceeded(f"witness search is bounded at {bound} points, got {len(S)}")
    need = (1 << S.index(x)) | (1 << S.index(y))
    masks = incidence(S).coordinate_masks()
    cov = _coverage(masks)
    candidates = [m for m in range(1 << len(S)) if m & need == need]
    candidates.sort(key=lambda m: (m.bit_count(), m))
    for m in candidates:
        if m.bit_count() == cov[m].bit_count() - (S.n - 1):
            return S.take(i for i in range(len(S)) if m >> i & 1)
    return None


@dataclass(frozen=True)
class QuotientModel:
    components: Partition
    cross_section: tuple[Point, ...]
    classes: tuple[dict[str, int], ...]
    image: PointSet = field(repr=False)

    def phi(self, p: Sequence[str]) -> Point:
        return tuple(str(self.classes[i][p[i]]) for i in range(len(p)))

    def to_document(self) -> dict:
        return {
            "components": self.components.to_document(),
            "cross_section": [list(p) for p in self.cross_section],
            "classes": [{label: str(c) for label, c in axis.items()} for axis in self.classes],
            "image": self.image.to_document(),
        }


def quotient(S: PointSet, method: str = "oracle", rng=None, components: Partition | None = None,
             bound: int = ORACLE_BOUND, fallback: bool = True) -> QuotientModel:
    """Collapse each E_i class of axis labels and map one point per related component.

    Labels are E_i-equivalent when a chain of related components links them
    through shared axis-i labels.  ``rng`` picks a random cross-section;
    the default is the first point of each component.
    """
    comps = components or related_components(S, method, bound=bound, fallback=fallback)
    classes = []
    for axis in range(S.n):
        labels = S.projection(axis)
        pos = {label: k for k, label in enumerate(labels)}
        uf = UnionFind(len(labels))
        for part in comps.parts:
            proj = part.projection(axis)
            for label in proj[1:]:
                uf.union(pos[proj[0]], pos[label])
        ids: dict[int, int] = {}
        classes.append({label: ids.setdefault(uf.find(pos[label]), len(ids)) for label in labels})
    if rng is None:
        section = tuple(part.points[0] for part in comps.parts)
    else:
        section = tuple(rng.choice(part.points) for part in comps.parts)
    image_points = [tuple(str(classes[i][p[i]]) for i in range(S.n)) for p in section]
    if len(set(image_points)) != len(image_points):
        raise TheoremViolation(f"quotient map is not injective on {S.to_document()}")
    return QuotientModel(comps, section, tuple(classes), PointSet(S.n, tuple(image_points)))


def relatively_full_components(S: PointSet, method: str = "oracle", bound: int = ORACLE_BOUND,
                               fallback: bool = True) -> Partition:
    """The unique partition of ``S`` into maximal relatively full subsets."""
    method, fell_back = _pick_method(S, method, bound, fallback)
    uf = UnionFind(len(S))
    if method == "oracle":
        system = incidence(S)
        ranks = linalg.subset_ranks(system.rows)
        cov = _coverage(system.coordinate_masks())
        for mask in range(1, 1 << len(S)):
            if mask & (mask - 1) and ranks[mask] == cov[mask].bit_count() - (S.n - 1):
                _union_mask(uf, mask)
    else:
        # two points differing on one axis form a relatively full pair
        for i, p in enumerate(S.points):
            for j in range(i + 1, len(S)):
                q = S.points[j]
                if sum(a != b for a, b in zip(p, q)) == 1 or S.n == 1:
                    uf.union(i, j)
    return _partition(S, uf, "relatively_full", method, fell_back)


def shared_coordinates(A: PointSet, B: PointSet) -> int:
    """Coordinates (axis, label) present in both pools."""
    return sum(len(set(A.projection(i)) & set(B.projection(i))) for i in range(A.n))


def max_pointwise_agreement(A: PointSet, B: PointSet) -> int:
    """Most axes on which a point of ``A`` and a point of ``B`` agree."""
    return max((sum(a == b for a, b in zip(p, q)) for p in A.points for q in B.points), default=0)


@dataclass(frozen=True)
class UnionReport:
    partition: Partition
    full_parts: tuple[PointSet, ...]
    union_is_maximal_good: bool
    loops_within_parts: bool
    loops: int

    @property
    def agree(self) -> bool:
        return self.union_is_maximal_good == self.loops_within_parts

    def to_document(self) -> dict:
        return {
            "partition": self.partition.to_document(),
            "full_parts": [[list(p) for p in F.points] for F in self.full_parts],
            "union_is_maximal_good": self.union_is_maximal_good,
            "loops_within_parts": self.loops_within_parts,
            "loops": self.loops,
            "agree": self.agree,
        }


def check_union_maximal_good(S: PointSet, bound: int = ORACLE_BOUND, cap: int | None = None) -> UnionReport:
    """Compare 'the union of full bases of the parts is a basis of S' with 'no loop crosses parts'."""
    partition = relatively_full_components(S, "oracle", bound=bound, fallback=False)
    full_parts = []
    for part in partition.parts:
        F = maximal_good_subset(part)
        if not is_full(F):
            raise TheoremViolation(f"maximal good subset of a relatively full part is not full: {part.to_document()}")
        full_parts.append(F)
    union = S.subset(p for F in full_parts for p in F.points)
    union_ok = is_good(union) and len(union) == incidence_rank(S)
    loops = enumerate_loops(S, cap=cap)
    within = all(len({partition.part_of(p) for p in c.points}) == 1 for c in loops)
    report = UnionReport(partition, tuple(full_parts), union_ok, within, len(loops))
    if not report.agree:
        raise TheoremViolation(f"union-of-full-parts test disagrees with loop containment on {S.to_document()}")
    return report


def cover_count(S: PointSet, parts: Sequence[PointSet]) -> dict:
    """Coordinate bookkeeping for a full set covered by disjoint full pieces.

    With ``A`` the summed coordinate counts of ``k`` pieces, a full ``S``
    must have ``A - (n-1)(k-1) == |S| + (n-1)``.
    """
    n = S.n
    if sum(len(P) for P in parts) != len(S) or set().union(*(P.points for P in parts)) != set(S.points):
        raise PreconditionError("pieces must partition S")
    A = sum(P.N for P in parts)
    k = len(parts)
    return {"A": A, "k": k, "lhs": A - (n - 1) * (k - 1), "rhs": len(S) + (n - 1), "N": S.N}
