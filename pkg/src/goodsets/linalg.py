"""Exact rational linear algebra.

Matrices are plain row-major sequences of rationals (ints or Fractions).
Elimination is fraction-free: each row is scaled to integers and reduced
with Bareiss' exact-division update, so intermediate entries stay bounded by
minors of the input.  Fractions only appear during back substitution.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Hashable, Sequence

from .errors import PreconditionError

Rational = int | Fraction
Matrix = Sequence[Sequence[Rational]]


def _integer_row(row: Sequence[Rational]) -> list[int]:
    den = 1
    for x in row:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    return [int(Fraction(x) * den) for x in row]


def _shape(M: Matrix) -> tuple[int, int]:
    rows = len(M)
    cols = len(M[0]) if rows else 0
    for r in M:
        if len(r) != cols:
            raise PreconditionError("ragged matrix")
    return rows, cols


def bareiss_echelon(A: list[list[int]], pivot_limit: int | None = None):
    """Row echelon form of an integer matrix, in place.

    Returns ``(rank, pivots)``; rows ``0..rank-1`` of ``A`` hold the echelon
    rows.  Pivots are the first nonzero entry in column order and are only
    sought in columns below ``pivot_limit`` (the default is every column).
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    limit = cols if pivot_limit is None else pivot_limit
    prev = 1
    r = 0
    pivots: list[int] = []
    for c in range(limit):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            A[p], A[r] = A[r], A[p]
        piv = A[r][c]
        prow = A[r]
        for i in range(r + 1, rows):
            row = A[i]
            lead = row[c]
            for j in range(c + 1, cols):
                row[j] = (piv * row[j] - lead * prow[j]) // prev
            row[c] = 0
        # division above is exact: every entry is a minor of the input
        prev = piv
        pivots.append(c)
        r += 1
    return r, pivots


def rank(M: Matrix) -> int:
    rows, cols = _shape(M)
    if rows == 0 or cols == 0:
        return 0
    A = [_integer_row(r) for r in M]
    return bareiss_echelon(A)[0]


def _back_substitute(A, pivots, cols, rhs=None, free_values=None):
    x = [Fraction(0)] * cols
    if free_values:
        for c, v in free_values.items():
            x[c] = Fraction(v)
    for k in range(len(pivots) - 1, -1, -1):
        pc = pivots[k]
        row = A[k]
        s = Fraction(rhs[k]) if rhs is not None else Fraction(0)
        for j in range(pc + 1, cols):
            if row[j] and x[j]:
                s -= row[j] * x[j]
        x[pc] = s / row[pc]
    return x


def nullspace_basis(M: Matrix) -> list[list[Fraction]]:
    """Basis of ``{v : M v = 0}`` in reduced-echelon convention.

    One vector per free column, ascending; each has a 1 at its free column
    and 0 at the other free columns.
    """
    rows, cols = _shape(M)
    if cols == 0:
        return []
    A = [_integer_row(r) for r in M]
    r, pivots = bareiss_echelon(A)
    free = [c for c in range(cols) if c not in set(pivots)]
    return [_back_substitute(A, pivots, cols, free_values={f: 1}) for f in free]


def solve_linear(M: Matrix, b: Sequence[Rational]) -> list[Fraction] | None:
    """One exact solution of ``M x = b`` with free variables at zero, or None."""
    rows, cols = _shape(M)
    if len(b) != rows:
        raise PreconditionError(f"right-hand side has length {len(b)}, expected {rows}")
    if rows == 0:
        return [Fraction(0)] * cols
    A = [_integer_row(list(r) + [b[i]]) for i, r in enumerate(M)]
    # a pivot in the augmented column means the system is inconsistent
    r, pivots = bareiss_echelon(A)
    if pivots and pivots[-1] == cols:
        return None
    rhs = [A[k][cols] for k in range(r)]
    return _back_substitute(A, pivots, cols, rhs=rhs)


def primitive_integer_vector(v: Sequence[Rational]) -> list[int]:
    """Integer vector parallel to ``v`` with gcd 1 and first nonzero entry positive."""
    ints = _integer_row(v)
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise PreconditionError("zero vector has no primitive form")
    first = next(x for x in ints if x)
    if first < 0:
        g = -g
    return [x // g for x in ints]


def matmul_vec(M: Matrix, v: Sequence[Rational]) -> list[Fraction]:
    return [sum((Fraction(a) * b for a, b in zip(row, v) if a and b), Fraction(0)) for row in M]


def transpose(M: Matrix) -> list[list[Rational]]:
    return [list(col) for col in zip(*M)]


class Echelon:
    """Incrementally built integer echelon basis that remembers row provenance.

    Every stored row equals an integer combination of the vectors pushed so
    far, keyed by the caller.  Pushing a vector that is already in the span
    returns the integer relation instead of storing it, which is how
    circuits are read off.
    """

    def __init__(self):
        self._rows: list[tuple[int, list[int], dict]] = []

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, vec: Sequence[int], combo: dict) -> tuple[list[int], dict]:
        v = list(vec)
        c = dict(combo)
        for piv, row, rcombo in self._rows:
            a = v[piv]
            if not a:
                continue
            b = row[piv]
            v = [b * x - a * y for x, y in zip(v, row)]
            for k in c:
                c[k] *= b
            for k, y in rcombo.items():
                c[k] = c.get(k, 0) - a * y
            v, c = _normalize(v, c)
        return v, c

    def push(self, vec: Sequence[int], key: Hashable) -> dict | None:
        """Add ``vec``; return None if it was independent, else the relation.

        The relation maps keys to integers with ``sum(c[k] * vec_k) == 0``
        and a nonzero entry at ``key``; zero entries are dropped.
        """
        v, c = self.reduce(vec, {key: 1})
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return {k: x for k, x in c.items() if x}
        self._rows.append((piv, v, c))
        return None

    def pop(self) -> None:
        self._rows.pop()

    def express(self, vec: Sequence[int]) -> dict[Hashable, Fraction] | None:
        """Coefficients writing ``vec`` in terms of pushed vectors, or None if outside the span."""
        sentinel = object()
        v, c = self.reduce(vec, {sentinel: 1})
        if any(v):
            return None
        scale = c.pop(sentinel)
        return {k: Fraction(-x, scale) for k, x in c.items() if x}


def _normalize(v: list[int], c: dict) -> tuple[list[int], dict]:
    g = 0
    for x in v:
        g = gcd(g, x)
    for x in c.values():
        g = gcd(g, x)
    if g > 1:
        v = [x // g for x in v]
        c = {k: x // g for k, x in c.items()}
    return v, c


def subset_ranks(rows: Sequence[Sequence[int]]) -> list[int]:
    """Rank of every subset of ``rows``, indexed by bitmask.

    Each mask extends the echelon basis of the mask without its highest bit
    by one row, so the cost per subset is a single reduction.
    """
    k = len(rows)
    ranks = [0] * (1 << k)
    bases: list[tuple] = [()] * (1 << k)
    for mask in range(1, 1 << k):
        top = mask.bit_length() - 1
        rest = mask ^ (1 << top)
        basis = bases[rest]
        v = list(rows[top])
        for piv, row in basis:
            a = v[piv]
            if a:
                b = row[piv]
                v = [b * x - a * y for x, y in zip(v, row)]
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            bases[mask] = basis
            ranks[mask] = ranks[rest]
        else:
            g = 0
            for x in v:
                g = gcd(g, x)
            bases[mask] = basis + ((piv, [x // g for x in v]),)
            ranks[mask] = ranks[rest] + 1
    return ranks
