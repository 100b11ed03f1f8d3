"""Exhaustive exact solver for the coupling number of small graphs.

For a fixed set of sign rows the weights enter linearly: pair (i, j) needs
sum_r w_r s_r(i) s_r(j) = A[i][j]. Level k of the search enumerates sets of
k distinct rows (first sign +1, ascending row number) and asks whether the
target vector lies in the span of their pair vectors.

The span test runs fraction-free elimination (Bareiss) along the search
path, applied to every remaining candidate and to the target at once. A
candidate that reduces to zero is dependent on the rows already chosen and
is skipped: any feasible set containing it has a feasible proper subset.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .bounds import spectral_lower_bound
from .decomposition import Decomposition, verify
from .errors import InvalidParameter, OracleTimeout, ResourceLimit
from .graph import Graph

__all__ = [
    "LinearSystem",
    "solve_rational_system",
    "brute_force_gc",
    "certify_infeasible_k",
    "candidate_masks",
    "MAX_N",
]

MAX_N = 8
# Bareiss entries after d steps are d x d minors of a +-1 matrix, so at most
# d^(d/2); one elimination step forms a difference of two such products.
INT64_SAFE_DEPTH = 15


@dataclass(frozen=True)
class LinearSystem:
    """B w = c with one equation per vertex pair i < j and one unknown per row."""

    B: tuple[tuple[Fraction, ...], ...]
    c: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        k = len(self.B[0]) if self.B else 0
        if any(len(r) != k for r in self.B) or len(self.c) != len(self.B):
            raise InvalidParameter("B must be rectangular with one c entry per row")

    @classmethod
    def for_rows(cls, g: Graph, masks: Sequence[int]) -> LinearSystem:
        B, c = [], []
        for i, j in combinations(range(g.n), 2):
            B.append(tuple(Fraction(-1 if (m >> i ^ m >> j) & 1 else 1) for m in masks))
            c.append(Fraction(int(g.has_edge(i, j))))
        return cls(tuple(B), tuple(c))


def solve_rational_system(system: LinearSystem) -> list[Fraction] | None:
    """Some exact solution of B w = c (free unknowns set to 0), or None if inconsistent."""
    rows = len(system.B)
    k = len(system.B[0]) if rows else 0
    aug = []
    for brow, ci in zip(system.B, system.c):
        vals = [Fraction(x) for x in brow] + [Fraction(ci)]
        den = math.lcm(*(v.denominator for v in vals))
        aug.append([int(v * den) for v in vals])
    pivots = []
    prev = 1
    r = 0
    for col in range(k):
        sel = next((i for i in range(r, rows) if aug[i][col]), None)
        if sel is None:
            continue
        aug[r], aug[sel] = aug[sel], aug[r]
        p = aug[r][col]
        for i in range(r + 1, rows):
            f = aug[i][col]
            aug[i] = [(p * a - f * b) // prev for a, b in zip(aug[i], aug[r])]
        pivots.append(col)
        prev = p
        r += 1
    if any(aug[i][k] for i in range(r, rows)):
        return None
    w = [Fraction(0)] * k
    for i in range(r - 1, -1, -1):
        col = pivots[i]
        acc = Fraction(aug[i][k]) - sum(Fraction(aug[i][j]) * w[j] for j in pivots[i + 1:])
        w[col] = acc / aug[i][col]
    return w


# ---------------------------------------------------------------- enumeration


def candidate_masks(n: int) -> list[int]:
    """Rows with first sign +1 in ascending row-number order (descending mask)."""
    return [2 * t for t in range((1 << (n - 1)) - 1, -1, -1)]


def _pair_matrix(g: Graph, masks: list[int]) -> np.ndarray:
    """Pair vectors of every candidate, then the target vector as the last row."""
    iu, ju = np.triu_indices(g.n, 1)
    m = np.array(masks, dtype=np.int64).reshape(-1, 1)
    bits = (m >> np.arange(g.n, dtype=np.int64)) & 1
    signs = 1 - 2 * bits
    pv = signs[:, iu] * signs[:, ju]
    target = g.adj[iu, ju].reshape(1, -1)
    return np.vstack([pv, target]).astype(np.int64)


class _Search:
    def __init__(self, g: Graph, k: int, exact_size: bool, deadline: float | None):
        self.k = k
        self.exact_size = exact_size
        self.deadline = deadline
        self.masks = candidate_masks(g.n)
        self.mat = _pair_matrix(g, self.masks)
        self.nodes = 0

    def _tick(self) -> None:
        self.nodes += 1
        if self.deadline is not None and self.nodes & 255 == 0 and time.monotonic() > self.deadline:
            raise OracleTimeout("oracle deadline exceeded")

    def run(self, first: Sequence[int] | None = None) -> list[int] | None:
        """Lexicographically first feasible index set, restricted to the given first choices."""
        idx = np.arange(len(self.masks))
        mat = self.mat
        if not mat[-1].any():
            return []
        starts = range(len(self.masks)) if first is None else first
        for j in starts:
            found = self._choose(mat, idx, j, [], 1)
            if found is not None:
                return found
        return None

    def _choose(self, mat, idx, pos, chosen, prev):
        """Take candidate idx[pos] as the next row; mat holds reduced candidates then target."""
        self._tick()
        u = mat[pos]
        nz = np.flatnonzero(u)
        if nz.size == 0:
            return None
        chosen = chosen + [int(idx[pos])]
        depth = len(chosen)
        p = nz[0]
        piv = u[p]
        rest = mat[pos + 1:]
        if depth > INT64_SAFE_DEPTH and rest.dtype != object:
            rest = rest.astype(object)
        red = (piv * rest - np.outer(rest[:, p], u)) // prev
        target = red[-1]
        if not target.any():
            if depth == self.k or not self.exact_size:
                return chosen
            return None
        if depth >= self.k:
            return None
        cand = red[:-1]
        sub = idx[pos + 1:]
        if depth == self.k - 1:
            q = np.flatnonzero(target)[0]
            ok = (cand * target[q] == np.outer(cand[:, q], target)).all(axis=1) & (cand[:, q] != 0)
            hits = np.flatnonzero(ok)
            return chosen + [int(sub[hits[0]])] if hits.size else None
        if len(sub) < self.k - depth:
            return None
        for j in range(len(sub) - (self.k - depth) + 1):
            found = self._choose(red, sub, j, chosen, piv)
            if found is not None:
                return found
        return None


def _search_chunk(args):
    g, k, exact_size, deadline, first = args
    return _Search(g, k, exact_size, deadline).run(first)


def _level(g: Graph, k: int, exact_size: bool, deadline: float | None, workers: int) -> list[int] | None:
    search = _Search(g, k, exact_size, deadline)
    if workers <= 1:
        return search.run()
    total = len(search.masks)
    chunks = [list(range(s, total, workers)) for s in range(workers)]
    with ProcessPoolExecutor(workers) as pool:
        results = list(pool.map(_search_chunk, [(g, k, exact_size, deadline, c) for c in chunks]))
    found = [r for r in results if r is not None]
    return min(found) if found else None


def _check_caps(g: Graph, k: int, allow_large: bool) -> None:
    if g.n > MAX_N and not allow_large:
        raise ResourceLimit(f"oracle capped at n <= {MAX_N} (got n={g.n}); pass allow_large to override")
    if k > 1 << (g.n - 1):
        raise ResourceLimit(f"only {1 << (g.n - 1)} distinct rows exist for n={g.n}, asked for k={k}")


def certify_infeasible_k(
    g: Graph, k: int, *, timeout: float | None = None, workers: int = 1, allow_large: bool = False
) -> bool:
    """True iff no decomposition with at most k rows exists (enumeration completed)."""
    if k < 0:
        raise InvalidParameter("k must be non-negative")
    if g.is_edgeless():
        return False
    if k == 0:
        return True
    _check_caps(g, min(k, 1 << (g.n - 1)), allow_large)
    k = min(k, 1 << (g.n - 1))
    deadline = None if timeout is None else time.monotonic() + timeout
    return _level(g, k, False, deadline, workers) is None


def brute_force_gc(
    g: Graph,
    k_start: int | None = None,
    k_max: int | None = None,
    *,
    paper_faithful: bool = False,
    timeout: float | None = None,
    workers: int = 1,
    allow_large: bool = False,
) -> tuple[int, Decomposition]:
    """Minimum row count and a verified decomposition attaining it.

    Levels run upward from ``k_start`` (default: the spectral lower bound, or
    1 with ``paper_faithful``); levels below the start are taken as infeasible.
    """
    n = g.n
    if g.is_edgeless():
        return 0, Decomposition(n, ())
    if k_max is None:
        k_max = math.ceil(2.5 * n + 2)
    if k_start is None:
        k_start = 1 if paper_faithful else max(1, spectral_lower_bound(g).lower_bound)
    if k_start < 1 or k_max < k_start:
        raise InvalidParameter(f"need 1 <= k_start <= k_max, got {k_start}, {k_max}")
    _check_caps(g, k_start, allow_large)
    deadline = None if timeout is None else time.monotonic() + timeout
    masks = candidate_masks(n)
    for k in range(k_start, min(k_max, len(masks)) + 1):
        found = _level(g, k, True, deadline, workers)
        if found is None:
            continue
        rows = [masks[i] for i in found]
        w = solve_rational_system(LinearSystem.for_rows(g, rows))
        if w is None:
            raise AssertionError("elimination reported a consistent system the exact solve rejects")
        d = Decomposition(n, tuple(zip(rows, w)))
        if not verify(g, d):
            raise AssertionError("oracle certificate failed verification")
        return k, d
    raise ResourceLimit(f"no decomposition with at most {k_max} rows")
