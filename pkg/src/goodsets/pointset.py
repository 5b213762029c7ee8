"""Finite point sets in an n-fold product, their coordinates, and JSON documents.

A point is a tuple of opaque string labels, one per axis.  A ``PointSet``
keeps its points in insertion order; that order is the canonical order used
for every deterministic tie-break in the package.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import InvalidInput, PreconditionError

Point = tuple[str, ...]


def parse_rational(value) -> Fraction:
    """Parse ``"p/q"``, ``"<int>"`` or a JSON integer into a Fraction."""
    if isinstance(value, bool):
        raise InvalidInput(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise InvalidInput(f"rationals must be strings or integers, got {value!r}")
    text = value.strip()
    num, sep, den = text.partition("/")
    try:
        if sep:
            q = int(den)
            if q == 0:
                raise InvalidInput(f"zero denominator in {value!r}")
            return Fraction(int(num), q)
        return Fraction(int(num))
    except ValueError:
        raise InvalidInput(f"not a rational: {value!r}") from None


def format_rational(value: Fraction | int) -> str:
    return str(Fraction(value))


@dataclass(frozen=True)
class CoordinateIndex:
    """Column ids for the distinct (axis, label) coordinates of a point set."""

    n: int
    columns: dict[tuple[int, str], int]
    projections: tuple[tuple[str, ...], ...]

    @property
    def N(self) -> int:
        return len(self.columns)

    def column(self, axis: int, label: str) -> int:
        return self.columns[(axis, label)]

    def coordinate(self, col: int) -> tuple[int, str]:
        return self.coordinates[col]

    @property
    def coordinates(self) -> list[tuple[int, str]]:
        out: list[tuple[int, str]] = [None] * len(self.columns)  # type: ignore[list-item]
        for key, col in self.columns.items():
            out[col] = key
        return out


@dataclass(frozen=True)
class PointSet:
    n: int
    points: tuple[Point, ...]
    _position: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidInput(f"dimension must be a positive integer, got {self.n!r}")
        pts = tuple(tuple(p) for p in self.points)
        position = {}
        for i, p in enumerate(pts):
            if len(p) != self.n:
                raise InvalidInput(f"point {list(p)} has {len(p)} coordinates, expected {self.n}")
            if p in position:
                raise InvalidInput(f"duplicate point {list(p)}")
            position[p] = i
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "_position", position)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p) -> bool:
        return tuple(p) in self._position

    def index(self, p: Sequence[str]) -> int:
        try:
            return self._position[tuple(p)]
        except KeyError:
            raise PreconditionError(f"point {list(p)} is not in the set") from None

    def subset(self, pts: Iterable[Sequence[str]]) -> "PointSet":
        """Sub-set in the ambient canonical order, whatever order ``pts`` comes in."""
        idx = sorted({self.index(p) for p in pts})
        return PointSet(self.n, tuple(self.points[i] for i in idx))

    def take(self, indices: Iterable[int]) -> "PointSet":
        return PointSet(self.n, tuple(self.points[i] for i in sorted(set(indices))))

    def reordered(self, order: Sequence[int]) -> "PointSet":
        return PointSet(self.n, tuple(self.points[i] for i in order))

    def canonical(self) -> "PointSet":
        """Lexicographically sorted copy."""
        return PointSet(self.n, tuple(sorted(self.points)))

    def projection(self, axis: int) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for p in self.points:
            seen.setdefault(p[axis], None)
        return tuple(seen)

    def index_coordinates(self) -> CoordinateIndex:
        return build_index(self)

    @property
    def N(self) -> int:
        return sum(len(set(p[i] for p in self.points)) for i in range(self.n))

    def to_document(self) -> dict:
        return {"n": self.n, "points": [list(p) for p in self.points]}


def build_index(S: PointSet) -> CoordinateIndex:
    columns: dict[tuple[int, str], int] = {}
    for p in S.points:
        for axis, label in enumerate(p):
            columns.setdefault((axis, label), len(columns))
    projections = tuple(S.projection(i) for i in range(S.n))
    return CoordinateIndex(S.n, columns, projections)


def parse_point_set(text: str | Mapping) -> PointSet:
    """Build a PointSet from a JSON document ``{"n": int, "points": [[label, ...], ...]}``."""
    doc = _load(text)
    if not isinstance(doc, Mapping) or "n" not in doc or "points" not in doc:
        raise InvalidInput("point-set document needs keys 'n' and 'points'")
    n = doc["n"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise InvalidInput(f"'n' must be an integer, got {n!r}")
    raw = doc["points"]
    if not isinstance(raw, list):
        raise InvalidInput("'points' must be a list")
    points = []
    for p in raw:
        if not isinstance(p, list) or not all(isinstance(x, str) for x in p):
            raise InvalidInput(f"each point must be a list of string labels, got {p!r}")
        points.append(tuple(p))
    return PointSet(n, tuple(points))


def serialize_point_set(S: PointSet) -> str:
    return json.dumps(S.to_document())


def _load(text):
    if isinstance(text, (str, bytes)):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"malformed JSON: {exc}") from None
    return text


@dataclass(frozen=True)
class PointFunction:
    """Exact rational values on every point of ``space``, stored in its order."""

    space: PointSet
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        if len(vals) != len(self.space):
            raise PreconditionError(
                f"function has {len(vals)} values for {len(self.space)} points")
        object.__setattr__(self, "values", vals)

    def __getitem__(self, p: Sequence[str]) -> Fraction:
        return self.values[self.space.index(p)]

    def items(self):
        return zip(self.space.points, self.values)

    @classmethod
    def from_mapping(cls, space: PointSet, mapping: Mapping, default=None):
        vals = []
        for p in space.points:
            if p in mapping:
                vals.append(mapping[p])
            elif default is not None:
                vals.append(default)
            else:
                raise PreconditionError(f"function is missing a value at {list(p)}")
        return cls(space, tuple(vals))

    def restrict(self, sub: PointSet) -> "PointFunction":
        return type(self)(sub, tuple(self[p] for p in sub.points))

    def to_document(self) -> dict:
        return {"values": [{"point": list(p), "value": format_rational(v)}
                           for p, v in self.items()]}


def parse_function(text, space: PointSet, partial: bool = False) -> dict[Point, Fraction]:
    """Read a function document into a point -> value mapping.

    Points must belong to ``space``.  Totality is checked unless ``partial``.
    """
    doc = _load(text)
    if not isinstance(doc, Mapping) or not isinstance(doc.get("values"), list):
        raise InvalidInput("function document needs a 'values' list")
    out: dict[Point, Fraction] = {}
    for entry in doc["values"]:
        if not isinstance(entry, Mapping) or "point" not in entry or "value" not in entry:
            raise InvalidInput(f"bad function entry {entry!r}")
        p = entry["point"]
        if not isinstance(p, list) or not all(isinstance(x, str) for x in p):
            raise InvalidInput(f"bad point {p!r}")
        p = tuple(p)
        if p not in space:
            raise PreconditionError(f"function value given at {list(p)}, which is not in the set")
        if p in out:
            raise InvalidInput(f"duplicate function entry at {list(p)}")
        out[p] = parse_rational(entry["value"])
    if not partial:
        missing = [p for p in space.points if p not in out]
        if missing:
            raise PreconditionError(f"function is missing a value at {list(missing[0])}")
    return out


@dataclass(frozen=True)
class CoordFunctionBundle:
    """One rational-valued function per axis, each defined on that axis's projection."""

    n: int
    axes: tuple[dict[str, Fraction], ...]

    def evaluate(self, p: Sequence[str]) -> Fraction:
        return sum((self.axes[i][p[i]] for i in range(self.n)), Fraction(0))

    def to_document(self) -> list:
        return [{"axis": i + 1, "values": {k: format_rational(v) for k, v in ax.items()}}
                for i, ax in enumerate(self.axes)]
