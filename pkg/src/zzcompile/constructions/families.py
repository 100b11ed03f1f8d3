"""Decompositions for structured families: cliques, clique unions, cycles, paths, matchings."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from ..decomposition import Decomposition, restrict
from ..errors import InvalidParameter, PreconditionViolation
from ..graph import Graph
from ._util import QUARTER, sb
from .hadamard import hadamard

__all__ = [
    "clique_decomposition",
    "disjoint_cliques_decomposition",
    "cycle_decomposition",
    "path_decomposition",
    "perfect_matching_decomposition",
]


def _vertex_set(s: Iterable[int], n: int) -> list[int]:
    out = sorted(set(s))
    if out and (out[0] < 0 or out[-1] >= n):
        raise PreconditionViolation(f"vertex set {out} outside range(n={n})")
    return out


def clique_decomposition(g: Graph, q_set: Iterable[int], route: str = "auto") -> Decomposition:
    """Rows for a graph whose only edges form a clique on ``q_set``.

    ``route="direct"`` gives q+2 rows: -1/4 SB({i}) per clique vertex, 1/4 SB(Q),
    (q-1)/4 all-ones. ``route="complement"`` writes the clique as
    (K_Q u K_R) minus the clique on the rest R, which costs |R|+2 rows with the
    shared rows reused. ``"auto"`` picks the complement route when q > n/2.
    """
    n = g.n
    q_vs = _vertex_set(q_set, n)
    qmask = sb(q_vs, n)
    for i in range(n):
        want = qmask & ~(1 << i) if qmask >> i & 1 else 0
        if g.nbrs[i] != want:
            raise PreconditionViolation(f"graph is not a clique on {q_vs} plus isolated vertices (vertex {i})")
    q = len(q_vs)
    if route == "auto":
        route = "complement" if 2 * q > n else "direct"
    if route == "direct":
        rows = [(sb([i], n), -QUARTER) for i in q_vs]
        rows += [(qmask, QUARTER), (0, Fraction(q - 1, 4))]
    elif route == "complement":
        rest = [i for i in range(n) if not qmask >> i & 1]
        rows = [(qmask, QUARTER), (0, Fraction(1, 2) - Fraction(len(rest) - 1, 4))]
        rows += [(sb([i], n), QUARTER) for i in rest]
    else:
        raise InvalidParameter(f"unknown route {route!r}")
    return Decomposition(n, tuple(rows))


def disjoint_cliques_decomposition(partition: Sequence[Iterable[int]], n: int) -> Decomposition:
    """(1 - q/4) all-ones + 1/4 SB(S) for each part S; realises the union of cliques on the parts."""
    parts = [_vertex_set(p, n) for p in partition]
    seen = 0
    for p in parts:
        m = sb(p, n)
        if not p or m & seen:
            raise PreconditionViolation("parts must be nonempty and pairwise disjoint")
        seen |= m
    if seen != (1 << n) - 1:
        raise PreconditionViolation("parts must cover every vertex")
    rows = [(0, 1 - Fraction(len(parts), 4))] + [(sb(p, n), QUARTER) for p in parts]
    return Decomposition(n, tuple(rows))


def cycle_decomposition(n: int) -> Decomposition:
    """n+1 rows for the cycle 0-1-...-(n-1)-0.

    Even n: the two alternating perfect matchings, each as disjoint 2-cliques,
    with their all-ones rows merged. Odd n: (2 - n/4) all-ones plus 1/4 SB(e)
    for every cycle edge e. The even case expands to the same expression.
    """
    if n < 3:
        raise InvalidParameter(f"a cycle needs n >= 3, got {n}")
    edges = [(i, (i + 1) % n) for i in range(n)]
    if n % 2 == 0:
        first = disjoint_cliques_decomposition([edges[i] for i in range(0, n, 2)], n)
        second = disjoint_cliques_decomposition([edges[i] for i in range(1, n, 2)], n)
        rows = [(0, first.rows[0][1] + second.rows[0][1])] + list(first.rows[1:] + second.rows[1:])
    else:
        rows = [(0, 2 - Fraction(n, 4))] + [(sb(e, n), QUARTER) for e in edges]
    return Decomposition(n, tuple(rows))


def path_decomposition(n: int) -> Decomposition:
    """The path 0-1-...-(n-1) as an induced subgraph of the (n+1)-cycle."""
    if n < 1:
        raise InvalidParameter(f"n must be positive, got {n}")
    if n == 1:
        return Decomposition(1, ())
    return restrict(cycle_decomposition(n + 1), range(n))


def perfect_matching_decomposition(q: int) -> tuple[Decomposition, bool]:
    """Rows for q disjoint edges (2c, 2c+1); returns (decomposition, used_hadamard).

    With a Hadamard matrix of order q every column is duplicated onto both ends
    of its edge and every weight is 1/q, giving q rows. Otherwise q+1 rows.
    """
    if q < 1:
        raise InvalidParameter(f"q must be positive, got {q}")
    n = 2 * q
    h = hadamard(q)
    if h is None:
        return disjoint_cliques_decomposition([(2 * c, 2 * c + 1) for c in range(q)], n), False
    w = Fraction(1, q)
    rows = []
    for hrow in h.entries:
        mask = 0
        for c, s in enumerate(hrow):
            if s == -1:
                mask |= 0b11 << (2 * c)
        rows.append((mask, w))
    return Decomposition(n, tuple(rows)), True
