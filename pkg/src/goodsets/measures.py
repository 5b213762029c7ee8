"""Signed measures on a point set and their one-dimensional marginals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .pointset import PointFunction, PointSet, format_rational


@dataclass(frozen=True)
class Measure(PointFunction):
    @property
    def norm(self) -> Fraction:
        return sum((abs(v) for v in self.values), Fraction(0))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.values) if v)

    def __add__(self, other: "Measure") -> "Measure":
        _same_space(self, other)
        return Measure(self.space, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "Measure") -> "Measure":
        _same_space(self, other)
        return Measure(self.space, tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> "Measure":
        return Measure(self.space, tuple(-a for a in self.values))

    def __mul__(self, k) -> "Measure":
        k = Fraction(k)
        return Measure(self.space, tuple(k * a for a in self.values))

    __rmul__ = __mul__

    def pair(self, f: PointFunction) -> Fraction:
        """``mu(f)``."""
        return sum((self[p] * v for p, v in f.items() if self[p]), Fraction(0))

    def is_zero(self) -> bool:
        return not any(self.values)

    def to_document(self) -> dict:
        doc = super().to_document()
        doc["norm"] = format_rational(self.norm)
        return doc


def _same_space(a: Measure, b: Measure):
    if a.space != b.space:
        raise PreconditionError("measures live on different point sets")


def zero_measure(S: PointSet) -> Measure:
    return Measure(S, (Fraction(0),) * len(S))


def marginals(mu: PointFunction) -> dict[tuple[int, str], Fraction]:
    """Total mass on each coordinate ``(axis, label)``."""
    out: dict[tuple[int, str], Fraction] = {}
    for p, v in mu.items():
        for axis, label in enumerate(p):
            out[(axis, label)] = out.get((axis, label), Fraction(0)) + v
    return out


def has_vanishing_marginals(mu: PointFunction) -> bool:
    return not any(marginals(mu).values())


def loop_measure(cert, S: PointSet | None = None) -> Measure:
    """The normalized measure of a loop: ``n_j / sum|n_k|`` on its points, zero elsewhere."""
    cert.validate()
    if S is None:
        S = PointSet(len(cert.points[0]), cert.points)
    total = sum(abs(c) for c in cert.coeffs)
    vals = {p: Fraction(c, total) for p, c in zip(cert.points, cert.coeffs)}
    for p in vals:
        S.index(p)
    return Measure(S, tuple(vals.get(p, Fraction(0)) for p in S.points))
