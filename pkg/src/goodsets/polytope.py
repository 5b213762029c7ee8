"""Extreme points of the unit l1-ball of marginal-free measures.

``A = {mu : all one-dimensional marginals vanish, ||mu||_1 <= 1}``.  The
enumeration here is a plain vertex search on the lifted polytope

    B (p - q) = 0,   sum(p) + sum(q) + t = 1,   p, q, t >= 0

and knows nothing about loops, so it can be checked against them.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .errors import CapExceeded, PreconditionError
from .loops import loop_coefficients, support_kernel_dim
from .measures import Measure, has_vanishing_marginals, loop_measure, zero_measure
from .pointset import PointSet
from .structure import incidence, incidence_rank

POLYTOPE_BOUND = 10


def uperp_dimension(S: PointSet) -> int:
    return len(S) - incidence_rank(S)


def lifted_vertices(S: PointSet) -> list[dict]:
    """Vertices of the lifted polytope with complementary ``p``, ``q``.

    A feasible point is a vertex exactly when its support columns are
    linearly independent, so supports are grown depth-first (each point
    contributes nothing, its ``p`` column or its ``q`` column) and dependent
    branches are cut.  Each vertex is returned as ``{column: value}`` with
    columns ``("p", j)``, ``("q", j)`` or ``("t",)``.
    """
    B = incidence(S).transposed
    N = len(B)
    s = len(S)
    rhs = [0] * N + [1]

    def column(kind, j):
        sign = 1 if kind == "p" else -1
        return [sign * B[c][j] for c in range(N)] + [1]

    vertices = [{("t",): Fraction(1)}]
    ech = linalg.Echelon()
    chosen: list[tuple] = []

    def visit(start: int):
        for j in range(start, s):
            for kind in ("p", "q"):
                key = (kind, j)
                if ech.push(column(kind, j), key) is not None:
                    continue
                chosen.append(key)
                coeffs = ech.express(rhs)
                if coeffs is not None and len(coeffs) == len(chosen) and all(v > 0 for v in coeffs.values()):
                    vertices.append(coeffs)
                visit(j + 1)
                chosen.pop()
                ech.pop()

    visit(0)
    return vertices


def enumerate_extreme_points(S: PointSet, bound: int = POLYTOPE_BOUND) -> list[Measure]:
    """All extreme points of ``A``, as ``+mu, -mu`` pairs in lexicographic order.

    When ``S`` is good, ``A = {0}`` and the zero measure is returned alone.
    """
    if len(S) > bound:
        raise CapExceeded(f"vertex enumeration is bounded at {bound} points, got {len(S)}")
    kernel_trivial = uperp_dimension(S) == 0
    seen = set()
    reps = []
    for x in lifted_vertices(S):
        vals = [Fraction(0)] * len(S)
        for key, v in x.items():
            if key[0] == "p":
                vals[key[1]] += v
            elif key[0] == "q":
                vals[key[1]] -= v
        mu = tuple(vals)
        if mu in seen:
            continue
        seen.add(mu)
        support = [i for i, v in enumerate(mu) if v]
        if not support:
            if kernel_trivial:
                reps.append(mu)
            continue
        if support_kernel_dim(S, support) != 1:
            continue
        first = mu[support[0]]
        if first > 0:
            reps.append(mu)
    reps.sort()
    out = []
    for mu in reps:
        m = Measure(S, mu)
        out.append(m)
        if not m.is_zero():
            out.append(-m)
    return out


def is_extreme(S: PointSet, mu: Measure) -> bool:
    """Whether ``mu`` in ``A`` is a vertex: unit norm on a loop with loop-measure values."""
    if mu.space != S:
        mu = Measure.from_mapping(S, dict(mu.items()), default=Fraction(0))
    if not has_vanishing_marginals(mu):
        raise PreconditionError("measure has nonzero marginals; not in A")
    if mu.norm > 1:
        raise PreconditionError("measure has norm above 1; not in A")
    if mu.is_zero():
        return uperp_dimension(S) == 0
    if mu.norm != 1:
        return False
    support = mu.support
    if support_kernel_dim(S, support) != 1:
        return False
    cert = loop_coefficients(S.take(support))
    lm = loop_measure(cert, S)
    return mu == lm or mu == -lm


def measure_key(mu: Measure) -> tuple:
    return tuple(mu.values)


def loop_measure_set(S: PointSet, certs) -> set[tuple]:
    """``{+mu_L, -mu_L}`` value tuples for the given loops (``{0}`` when there are none)."""
    if not certs:
        return {measure_key(zero_measure(S))}
    out = set()
    for c in certs:
        m = loop_measure(c, S)
        out.add(measure_key(m))
        out.add(measure_key(-m))
    return out
