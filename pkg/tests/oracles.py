"""Slow, independent reference computations used to check the library.

Nothing here imports the package's linear algebra: ranks are plain
Gauss-Jordan over Fractions and structural questions are answered by
exhaustive subset search.
"""

from fractions import Fraction
from itertools import combinations


def fraction_rank(rows):
    M = [[Fraction(x) for x in r] for r in rows]
    if not M:
        return 0
    rank = 0
    cols = len(M[0])
    for c in range(cols):
        piv = next((i for i in range(rank, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][c] != 0:
                k = M[i][c] / M[rank][c]
                M[i] = [a - k * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def fraction_solve(rows, rhs):
    """Some solution of rows x = rhs by Gauss-Jordan, or None."""
    aug = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    cols = len(rows[0])
    pivots = []
    rank = 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(aug)) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        aug[rank] = [x / aug[rank][c] for x in aug[rank]]
        for i in range(len(aug)):
            if i != rank and aug[i][c] != 0:
                k = aug[i][c]
                aug[i] = [a - k * b for a, b in zip(aug[i], aug[rank])]
        pivots.append(c)
        rank += 1
    if any(all(x == 0 for x in r[:-1]) and r[-1] != 0 for r in aug):
        return None
    x = [Fraction(0)] * cols
    for k, c in enumerate(pivots):
        x[c] = aug[k][-1]
    return x


def incidence_rows(points):
    """0/1 rows over (axis, label) coordinates, columns in sorted order."""
    coords = sorted({(i, p[i]) for p in points for i in range(len(p))})
    pos = {c: k for k, c in enumerate(coords)}
    rows = []
    for p in points:
        r = [0] * len(coords)
        for i, label in enumerate(p):
            r[pos[(i, label)]] = 1
        rows.append(r)
    return rows, coords


def n_coords(points):
    return len({(i, p[i]) for p in points for i in range(len(p))})


def good(points):
    if not points:
        return True
    return fraction_rank(incidence_rows(points)[0]) == len(points)


def full(points, n):
    return good(points) and len(points) == n_coords(points) - (n - 1)


def relatively_full_by_anchors(points, n):
    """Literal definition: the zero function has only the zero anchored solution."""
    rows, coords = incidence_rows(points)
    anchors = []
    for axis in range(n - 1):
        label = min(p[axis] for p in points)
        r = [0] * len(coords)
        r[coords.index((axis, label))] = 1
        anchors.append(r)
    return fraction_rank(rows + anchors) == len(coords)


def loops(points):
    """All minimal dependent subsets, as frozensets of points."""
    out = []
    for k in range(2, len(points) + 1):
        for sub in combinations(points, k):
            if good(list(sub)):
                continue
            if all(good([p for p in sub if p != q]) for q in sub):
                out.append(frozenset(sub))
    return out


def related_classes(points, n):
    """Union of full subsets (for a good set), by exhaustive search."""
    parent = {p: p for p in points}

    def find(p):
        while parent[p] != p:
            p = parent[p]
        return p

    for k in range(2, len(points) + 1):
        for sub in combinations(points, k):
            if full(list(sub), n):
                for q in sub[1:]:
                    parent[find(q)] = find(sub[0])
    groups = {}
    for p in points:
        groups.setdefault(find(p), set()).add(p)
    return {frozenset(g) for g in groups.values()}


def relatively_full_classes(points, n):
    parent = {p: p for p in points}

    def find(p):
        while parent[p] != p:
            p = parent[p]
        return p

    for k in range(2, len(points) + 1):
        for sub in combinations(points, k):
            if relatively_full_by_anchors(list(sub), n):
                for q in sub[1:]:
                    parent[find(q)] = find(sub[0])
    groups = {}
    for p in points:
        groups.setdefault(find(p), set()).add(p)
    return {frozenset(g) for g in groups.values()}


def lifted_vertices_bruteforce(points):
    """Vertices of {B(p-q)=0, 1p+1q+t=1, >=0} by trying every column basis.

    Returns projected measures ``p - q`` as tuples, complementary ones only.
    """
    rows, coords = incidence_rows(points)
    s = len(points)
    B = [[rows[j][c] for j in range(s)] for c in range(len(coords))]
    cols = []
    for j in range(s):
        cols.append([B[c][j] for c in range(len(coords))] + [1])
    for j in range(s):
        cols.append([-B[c][j] for c in range(len(coords))] + [1])
    cols.append([0] * len(coords) + [1])
    E = [[cols[k][r] for k in range(len(cols))] for r in range(len(coords) + 1)]
    # keep an independent set of equality rows
    kept = []
    for r in E:
        if fraction_rank(kept + [r]) > len(kept):
            kept.append(r)
    m = len(kept)
    rhs = [1 if r == E[-1] else 0 for r in kept]
    out = set()
    for basis in combinations(range(len(cols)), m):
        sub = [[row[k] for k in basis] for row in kept]
        if fraction_rank(sub) < m:
            continue
        x = fraction_solve(sub, rhs)
        if x is None or any(v < 0 for v in x):
            continue
        full_x = [Fraction(0)] * len(cols)
        for k, v in zip(basis, x):
            full_x[k] = v
        p, q = full_x[:s], full_x[s:2 * s]
        if any(a and b for a, b in zip(p, q)):
            continue
        out.add(tuple(a - b for a, b in zip(p, q)))
    return out
