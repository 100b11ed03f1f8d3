"""Recognisers for graphs with coupling number 0, 1 or 2."""

from __future__ import annotations

from fractions import Fraction

from ..decomposition import Decomposition, simplify
from ..graph import Graph

__all__ = ["detect_small_gc", "is_clique_union", "is_complete_bipartite"]

HALF = Fraction(1, 2)


def _is_clique(g: Graph, comp: list[int]) -> bool:
    mask = 0
    for v in comp:
        mask |= 1 << v
    return all(g.nbrs[v] == mask & ~(1 << v) for v in comp)


def is_clique_union(g: Graph) -> list[list[int]] | None:
    """Components if every component is a clique, else None."""
    comps = g.components()
    return comps if all(_is_clique(g, c) for c in comps) else None


def is_complete_bipartite(g: Graph) -> tuple[int, int] | None:
    """Masks (A, B) with g == K_{A,B} spanning all vertices, else None."""
    if g.n < 2 or not g.nbrs[0]:
        return None
    full = (1 << g.n) - 1
    b = g.nbrs[0]
    a = full ^ b
    for v in range(g.n):
        if g.nbrs[v] != (b if a >> v & 1 else a):
            return None
    return a, b


def detect_small_gc(g: Graph) -> Decomposition | None:
    """Optimal rows when the coupling number is at most 2, otherwise None.

    0 rows: edgeless. 1 row: complete. 2 rows: two cliques covering all
    vertices, or a complete bipartite graph (K_{1,1} is already complete).
    """
    n = g.n
    if g.is_edgeless():
        return Decomposition(n, ())
    if g.is_complete():
        return Decomposition(n, ((0, Fraction(1)),))
    comps = is_clique_union(g)
    if comps is not None and len(comps) == 2:
        a = sum(1 << v for v in comps[0])
        return simplify(Decomposition(n, ((a, HALF), (0, HALF))))
    parts = is_complete_bipartite(g)
    if parts is not None:
        return simplify(Decomposition(n, ((parts[0], -HALF), (0, HALF))))
    return None
