"""Loops: minimal sets whose incidence rows admit a vanishing integer combination.

Loops are the circuits of the row matroid of the incidence matrix, so they
are found with an incremental echelon basis: the first point that falls in
the span of an independent prefix closes exactly one circuit.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence

from . import linalg
from .errors import CapExceeded, PreconditionError, TheoremViolation
from .measures import Measure, has_vanishing_marginals, loop_measure
from .pointset import Point, PointFunction, PointSet
from .structure import incidence

log = logging.getLogger(__name__)

ENUMERATION_BOUND = 16


@dataclass(frozen=True)
class LoopCert:
    """A loop with its primitive integer coefficients, first coefficient positive."""

    points: tuple[Point, ...]
    coeffs: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def weight(self) -> int:
        return sum(abs(c) for c in self.coeffs)

    def as_pointset(self) -> PointSet:
        return PointSet(len(self.points[0]), self.points)

    def canonical(self, S: PointSet | None = None) -> "LoopCert":
        """Points in the order of ``S`` (lexicographic if None), re-signed."""
        key = S.index if S is not None else (lambda p: p)
        pairs = sorted(zip(self.points, self.coeffs), key=lambda pc: key(pc[0]))
        sign = 1 if pairs[0][1] > 0 else -1
        return LoopCert(tuple(p for p, _ in pairs), tuple(sign * c for _, c in pairs))

    def key(self) -> frozenset:
        """Orientation- and order-free identity of the loop."""
        c = self.canonical()
        return frozenset(zip(c.points, c.coeffs))

    def validate(self) -> None:
        """Raise PreconditionError unless this is a certified loop."""
        if not self.points or len(self.points) != len(self.coeffs):
            raise PreconditionError("loop certificate needs one coefficient per point")
        if len(set(self.points)) != len(self.points):
            raise PreconditionError("loop certificate repeats a point")
        if any(c == 0 for c in self.coeffs):
            raise PreconditionError("loop coefficients must be nonzero")
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        if g != 1:
            raise PreconditionError(f"loop coefficients have gcd {g}")
        if self.coeffs[0] < 0:
            raise PreconditionError("first loop coefficient must be positive")
        totals: dict[tuple[int, str], int] = {}
        for p, c in zip(self.points, self.coeffs):
            for axis, label in enumerate(p):
                totals[(axis, label)] = totals.get((axis, label), 0) + c
        if any(totals.values()):
            raise PreconditionError("formal sum does not vanish coordinate-wise")
        rows = incidence(self.as_pointset()).rows
        for drop in range(len(rows)):
            rest = [r for i, r in enumerate(rows) if i != drop]
            if rest and linalg.rank(rest) != len(rest):
                raise PreconditionError("a proper subset is already dependent; not minimal")

    def to_document(self) -> dict:
        return {"points": [list(p) for p in self.points], "coeffs": list(self.coeffs)}


def support_kernel_dim(S: PointSet, support: Sequence[int] | None = None) -> int:
    """Dimension of the space of vanishing combinations supported inside ``support``."""
    sub = S if support is None else S.take(support)
    if not len(sub):
        return 0
    return len(linalg.nullspace_basis(incidence(sub).transposed))


def _cert_from_relation(S: PointSet, relation: Mapping[int, int], lead: int | None = None) -> LoopCert:
    idx = sorted(relation)
    if lead is not None:
        idx.remove(lead)
        idx.insert(0, lead)
    vec = linalg.primitive_integer_vector([relation[i] for i in idx])
    return LoopCert(tuple(S.points[i] for i in idx), tuple(vec))


def find_loop(S: PointSet) -> LoopCert | None:
    """First loop met by a canonical-order independence scan, or None if ``S`` is good."""
    rows = incidence(S).rows
    ech = linalg.Echelon()
    for i, row in enumerate(rows):
        rel = ech.push(row, i)
        if rel is not None:
            return _cert_from_relation(S, rel)
    return None


def loop_coefficients(L: PointSet) -> LoopCert:
    """The unique (up to sign) primitive coefficients of a loop."""
    if not len(L):
        raise PreconditionError("empty set is not a loop")
    basis = linalg.nullspace_basis(incidence(L).transposed)
    if not basis:
        raise PreconditionError("not a loop: the set is independent (good)")
    if len(basis) > 1 or any(x == 0 for x in basis[0]):
        raise PreconditionError("not a loop: a proper subset is already dependent")
    return LoopCert(L.points, tuple(linalg.primitive_integer_vector(basis[0])))


def enumerate_loops(S: PointSet, cap: int | None = None,
                    bound: int = ENUMERATION_BOUND, truncate: bool = False) -> list[LoopCert]:
    """Every loop in ``S``, each once, sorted by the canonical indices of its points.

    Each loop is found as an independent set ``I`` plus one point beyond
    ``max(I)`` whose relation with ``I`` uses all of ``I``.  Dependent
    branches are pruned, so only independent sets are visited.  Finding
    more than ``cap`` loops raises CapExceeded, or with ``truncate`` returns
    the first ``cap`` found.
    """
    if len(S) > bound:
        raise CapExceeded(f"loop enumeration is bounded at {bound} points, got {len(S)}")
    rows = incidence(S).rows
    ech = linalg.Echelon()
    found: list[LoopCert] = []
    stack: list[int] = []

    class _Full(Exception):
        pass

    def visit(start: int):
        for x in range(start, len(rows)):
            rel = ech.push(rows[x], x)
            if rel is None:
                stack.append(x)
                visit(x + 1)
                stack.pop()
                ech.pop()
            elif len(rel) == len(stack) + 1:
                found.append(_cert_from_relation(S, rel))
                if cap is not None and len(found) > cap:
                    if truncate:
                        found.pop()
                        raise _Full
                    raise CapExceeded(f"more than {cap} loops")

    try:
        visit(0)
    except _Full:
        pass
    found.sort(key=lambda c: [S.index(p) for p in c.points])
    return found


def maximal_good_subset(S: PointSet, order: Sequence[int] | None = None) -> PointSet:
    """Greedy basis: keep each point (in ``order``) independent of those kept."""
    rows = incidence(S).rows
    order = range(len(S)) if order is None else order
    ech = linalg.Echelon()
    kept = []
    for i in order:
        if ech.push(rows[i], i) is None:
            kept.append(i)
    return S.take(kept)


def _basis_of(S: PointSet, M: PointSet):
    """Echelon basis of ``M`` inside ``S`` after checking ``M`` is maximal good."""
    rows = incidence(S).rows
    ech = linalg.Echelon()
    for p in M.points:
        i = S.index(p)
        if ech.push(rows[i], i) is not None:
            raise PreconditionError("M is not good")
    if len(ech) != linalg.rank(rows):
        raise PreconditionError("M is good but not maximal in S")
    return rows, ech


def fundamental_loop(S: PointSet, M: PointSet, x: Sequence[str]) -> LoopCert:
    """The unique loop through ``x`` using otherwise only points of ``M``.

    ``x`` is listed first with a positive coefficient; the rest follow in
    canonical order.
    """
    x = tuple(x)
    if x in M:
        raise PreconditionError(f"{list(x)} belongs to M")
    rows, ech = _basis_of(S, M)
    return _fundamental(S, rows, ech, S.index(x))


def _fundamental(S, rows, ech, i) -> LoopCert:
    rel = ech.push(rows[i], i)
    if rel is None:
        ech.pop()
        raise PreconditionError("point is independent of M; M is not maximal")
    return _cert_from_relation(S, rel, lead=i)


def fundamental_loops(S: PointSet, M: PointSet | None = None) -> list[LoopCert]:
    M = maximal_good_subset(S) if M is None else M
    rows, ech = _basis_of(S, M)
    return [_fundamental(S, rows, ech, i) for i, p in enumerate(S.points) if p not in M]


def extend_from_maximal_good(S: PointSet, M: PointSet, g) -> PointFunction:
    """The unique additive function on ``S`` agreeing with ``g`` on ``M``.

    Off ``M``, ``f(x) = -sum_j (n_j / n_x) g(y_j)`` over the fundamental loop
    ``n_x x + sum_j n_j y_j = 0``.
    """
    if isinstance(g, dict):
        g = PointFunction.from_mapping(M, {tuple(k): v for k, v in g.items()})
    elif not isinstance(g, PointFunction):
        g = PointFunction(M, tuple(g))
    elif g.space != M:
        g = PointFunction.from_mapping(M, dict(g.items()))
    rows, ech = _basis_of(S, M)
    values = []
    for i, p in enumerate(S.points):
        if p in M:
            values.append(g[p])
            continue
        cert = _fundamental(S, rows, ech, i)
        lead = Fraction(cert.coeffs[0])
        values.append(-sum((c / lead * g[y] for y, c in zip(cert.points[1:], cert.coeffs[1:])),
                           Fraction(0)))
    return PointFunction(S, tuple(values))


def uperp_fundamental_basis(S: PointSet, M: PointSet | None = None) -> list[Measure]:
    """Loop measures of the fundamental loops; a basis of the marginal-free measures."""
    return [loop_measure(c, S) for c in fundamental_loops(S, M)]


@dataclass(frozen=True)
class ConformalTerm:
    """``scale * orientation * cert.coeffs`` placed on ``cert.points``."""

    cert: LoopCert
    scale: Fraction
    orientation: int

    def vector(self) -> dict[Point, Fraction]:
        return {p: self.scale * self.orientation * c for p, c in zip(self.cert.points, self.cert.coeffs)}

    @property
    def norm(self) -> Fraction:
        return self.scale * self.cert.weight


@dataclass(frozen=True)
class ConformalDecomposition:
    terms: tuple[ConformalTerm, ...]
    pivots: int

    def recombine(self, S: PointSet) -> Measure:
        total = {p: Fraction(0) for p in S.points}
        for t in self.terms:
            for p, v in t.vector().items():
                total[p] += v
        return Measure(S, tuple(total[p] for p in S.points))

    @property
    def norm(self) -> Fraction:
        return sum((t.norm for t in self.terms), Fraction(0))

    def to_document(self) -> dict:
        from .pointset import format_rational

        return {
            "terms": [{"loop": t.cert.to_document(), "scale": format_rational(t.scale),
                       "orientation": t.orientation, "norm": format_rational(t.norm)}
                      for t in self.terms],
            "pivots": self.pivots,
            "norm": format_rational(self.norm),
        }


def decompose_weak_loop(m: PointFunction) -> ConformalDecomposition:
    """Split a marginal-free measure into sign-aligned scaled loops.

    Repeatedly finds a loop whose signs agree with the remaining measure and
    removes the largest multiple that keeps the signs, so supports shrink
    and the l1 norms add up exactly.  Sign-aligned loops are obtained by the
    pivot that merges two weak loops with opposite signs at some point.
    """
    S = m.space
    if not any(m.values):
        raise PreconditionError("weak loop needs a nonzero coefficient")
    if not has_vanishing_marginals(m):
        raise PreconditionError("marginals do not vanish; not a weak loop")
    rows = incidence(S).rows
    residual = {i: v for i, v in enumerate(m.values) if v}
    terms = []
    pivots = [0]
    while residual:
        loop = _conformal_loop(S, rows, residual, pivots)
        lam = min(residual[j] / c for j, c in loop.items())
        for j, c in loop.items():
            v = residual[j] - lam * c
            if v:
                residual[j] = v
            else:
                del residual[j]
        cert = _cert_from_relation(S, loop)
        orientation = 1 if loop[S.index(cert.points[0])] > 0 else -1
        terms.append(ConformalTerm(cert, lam, orientation))
    log.debug("conformal decomposition: %d terms, %d pivots", len(terms), pivots[0])
    return ConformalDecomposition(tuple(terms), pivots[0])


def _is_loop_support(rows, support) -> bool:
    cols = linalg.transpose([rows[j] for j in support])
    return len(linalg.nullspace_basis(cols)) == 1


def _conflicts(n: dict, r: dict) -> list[int]:
    return sorted(j for j in n if j in r and (n[j] > 0) != (r[j] > 0))


def _add(a: dict, b: dict, k: Fraction) -> dict:
    out = dict(a)
    for j, v in b.items():
        w = out.get(j, 0) + k * v
        if w:
            out[j] = w
        else:
            out.pop(j, None)
    return out


def _scale(a: dict, k: Fraction) -> dict:
    return {j: k * v for j, v in a.items()}


def _conformal_loop(S, rows, w: dict, pivots: list) -> dict[int, int]:
    """Primitive integer loop vector whose signs agree with ``w`` on its support."""
    support = sorted(w)
    if _is_loop_support(rows, support):
        vec = linalg.primitive_integer_vector([w[j] for j in support])
        if (vec[0] > 0) != (w[support[0]] > 0):
            vec = [-x for x in vec]
        return dict(zip(support, vec))
    inner = find_loop(S.take(support))
    if inner is None:
        raise TheoremViolation(f"support {support} of a weak loop contains no loop")
    n = {S.index(p): Fraction(c) for p, c in zip(inner.points, inner.coeffs)}
    r = _add(w, n, Fraction(-1))
    conflicts = _conflicts(n, r)
    while conflicts:
        j0 = conflicts[0]
        if abs(r[j0]) > abs(n[j0]):
            k = abs(n[j0]) / abs(r[j0])
            n, r = _add(n, r, k), _scale(r, 1 - k)
        else:
            k = abs(r[j0]) / abs(n[j0])
            n, r = _scale(n, 1 - k), _add(r, n, k)
        pivots[0] += 1
        after = _conflicts(n, r)
        if len(after) >= len(conflicts) or not n or not r:
            raise TheoremViolation(
                f"pivot failed to reduce sign conflicts: w={w}, n={n}, r={r}, "
                f"points={[S.points[j] for j in support]}")
        conflicts = after
    a, b = (n, r) if len(n) <= len(r) else (r, n)
    if len(a) == len(support):
        lam = min(a[j] / v for j, v in b.items())
        a = _add(a, b, -lam)
        if not a:
            raise TheoremViolation(f"sign-aligned parts are proportional: w={w}")
    return _conformal_loop(S, rows, a, pivots)
