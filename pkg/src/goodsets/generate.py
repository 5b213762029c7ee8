"""Seeded random point-set generators."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import prod
from typing import Sequence

from . import linalg
from .errors import PreconditionError
from .pointset import Point, PointSet

KINDS = ("full", "good", "random", "loop", "relatively_full")


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int
    size: int
    budgets: tuple[int, ...] | None = None
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PreconditionError(f"unknown generator kind {self.kind!r}")
        if self.n < 1 or self.size < 1:
            raise PreconditionError("n and size must be at least 1")
        if self.budgets is not None:
            if len(self.budgets) != self.n or min(self.budgets) < 1:
                raise PreconditionError("need one positive label budget per axis")

    def resolved_budgets(self) -> tuple[int, ...]:
        if self.budgets is not None:
            return tuple(self.budgets)
        default = self.size if self.kind in ("full", "relatively_full") else 3
        return (max(default, 1),) * self.n


def generate(spec: GeneratorSpec) -> PointSet:
    rng = random.Random(spec.seed)
    budgets = spec.resolved_budgets()
    make = {
        "full": _full,
        "good": _good,
        "random": _random,
        "loop": _loop,
        "relatively_full": _relatively_full,
    }[spec.kind]
    return make(rng, spec.n, spec.size, budgets)


def _full(rng: random.Random, n: int, size: int, budgets: Sequence[int]) -> PointSet:
    """Grow from one point; each new point has one fresh coordinate and n-1 old ones."""
    if size - 1 > sum(b - 1 for b in budgets):
        raise PreconditionError(f"label budgets {list(budgets)} cannot hold a full set of size {size}")
    pools = [["0"] for _ in range(n)]
    points: list[Point] = [("0",) * n]
    while len(points) < size:
        open_axes = [i for i in range(n) if len(pools[i]) < budgets[i]]
        axis = rng.choice(open_axes)
        fresh = str(len(pools[axis]))
        p = tuple(fresh if i == axis else rng.choice(pools[i]) for i in range(n))
        pools[axis].append(fresh)
        points.append(p)
    return PointSet(n, tuple(points))


def _grid_sampler(rng: random.Random, budgets: Sequence[int]):
    total = prod(budgets)
    if total <= 20000:
        grid = list(itertools.product(*(tuple(str(k) for k in range(b)) for b in budgets)))
        rng.shuffle(grid)
        yield from grid
        return
    seen = set()
    while len(seen) < total:
        p = tuple(str(rng.randrange(b)) for b in budgets)
        if p not in seen:
            seen.add(p)
            yield p


def _random(rng, n, size, budgets) -> PointSet:
    if size > prod(budgets):
        raise PreconditionError(f"only {prod(budgets)} points fit in budgets {list(budgets)}")
    return PointSet(n, tuple(itertools.islice(_grid_sampler(rng, budgets), size)))


def _row(p: Point, budgets: Sequence[int]) -> list[int]:
    row = [0] * sum(budgets)
    offset = 0
    for i, label in enumerate(p):
        row[offset + int(label)] = 1
        offset += budgets[i]
    return row


def _good(rng, n, size, budgets) -> PointSet:
    ech = linalg.Echelon()
    points: list[Point] = []
    for p in _grid_sampler(rng, budgets):
        if ech.push(_row(p, budgets), len(points)) is None:
            points.append(p)
            if len(points) == size:
                return PointSet(n, tuple(points))
    raise PreconditionError(f"no good set of size {size} within budgets {list(budgets)}")


def _loop(rng, n, size, budgets, attempts: int = 200) -> PointSet:
    """A random loop of at most ``size`` points: add random points until one closes a circuit."""
    if n == 1:
        raise PreconditionError("there are no loops when n = 1")
    for _ in range(attempts):
        ech = linalg.Echelon()
        points: list[Point] = []
        for p in _grid_sampler(rng, budgets):
            rel = ech.push(_row(p, budgets), len(points))
            points.append(p)
            if rel is not None:
                loop = [points[i] for i in sorted(rel)]
                if len(loop) <= size:
                    return PointSet(n, tuple(loop))
                break
    raise PreconditionError(f"no loop of at most {size} points found within budgets {list(budgets)}")


def _relatively_full(rng, n, size, budgets, attempts: int = 200) -> PointSet:
    """A full core plus extra points that reuse only existing labels."""
    for _ in range(attempts):
        core = _full(rng, n, rng.randint(max(1, (size + 1) // 2), size), budgets)
        projections = [core.projection(i) for i in range(n)]
        extra = [p for p in itertools.product(*projections) if p not in core]
        rng.shuffle(extra)
        points = list(core.points) + extra[: size - len(core)]
        if len(points) == size:
            return PointSet(n, tuple(points))
    raise PreconditionError(f"could not reach size {size} without new labels")
