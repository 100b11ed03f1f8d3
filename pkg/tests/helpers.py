"""Test-only reference routes, deliberately written differently from the package code."""

from fractions import Fraction
from itertools import combinations


def rank(rows):
    """Rank over Q by plain Gaussian elimination on Fractions."""
    m = [[Fraction(x) for x in r] for r in rows]
    rk, cols = 0, len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(rk, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        for i in range(len(m)):
            if i != rk and m[i][c] != 0:
                f = m[i][c] / m[rk][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rk])]
        rk += 1
    return rk


def naive_gc(adj):
    """Smallest k such that the target pair vector lies in the span of k sign rows.

    Plain rank comparison over every row subset; no pruning, no elimination reuse.
    """
    n = len(adj)
    pairs = list(combinations(range(n), 2))
    target = [adj[i][j] for i, j in pairs]
    if not any(target):
        return 0
    rows = []
    for code in range(1 << (n - 1)):
        signs = [1] + [-1 if code >> b & 1 else 1 for b in range(n - 1)]
        rows.append([signs[i] * signs[j] for i, j in pairs])
    for k in range(1, len(rows) + 1):
        for sub in combinations(rows, k):
            cols = [list(col) for col in zip(*sub)]
            if rank(cols) == rank([c + [t] for c, t in zip(cols, target)]):
                return k
    raise AssertionError("unreachable")


def det(m):
    """Exact determinant by Laplace expansion (small matrices only)."""
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** c * m[0][c] * det([row[:c] + row[c + 1:] for row in m[1:]]) for c in range(len(m)) if m[0][c])


def pair_sum(masks_weights, n, i, j):
    return sum(w * (-1 if (m >> i ^ m >> j) & 1 else 1) for m, w in masks_weights)
