"""Star and double-star primitives and the two greedy edge-partition constructions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from ..decomposition import Decomposition, combine, simplify
from ..errors import PreconditionViolation
from ..graph import Graph
from ._util import QUARTER, sb, vertices_of
from .families import clique_decomposition

__all__ = [
    "DoubleStarClasses",
    "PROTOTYPE_SIGNS",
    "PROTOTYPE_WEIGHTS",
    "star_decomposition",
    "union_of_stars",
    "double_star_classes",
    "double_star_decomposition",
    "union_of_double_stars",
]

# Six-row certificate for the 6-vertex double star: columns are
# (centre 1, centre 2, exclusive leaf of 1, common leaf, exclusive leaf of 2, isolated).
PROTOTYPE_SIGNS = (
    (1, 1, 1, 1, 1, 1),
    (1, 1, 1, 1, -1, -1),
    (1, 1, 1, -1, -1, 1),
    (1, 1, -1, -1, -1, -1),
    (1, -1, 1, -1, -1, 1),
    (1, -1, -1, -1, 1, 1),
)
PROTOTYPE_WEIGHTS = tuple(Fraction(x, 4) for x in (1, 1, -1, -1, 1, -1))


def star_decomposition(center: int, leaves: Iterable[int], n: int) -> Decomposition:
    """1/4 (-SB({c}) - SB(L) + SB({c} u L) + all-ones), raw 4 rows."""
    leaves = sorted(set(leaves))
    if not leaves:
        raise PreconditionViolation("a star needs at least one leaf")
    if center in leaves:
        raise PreconditionViolation(f"centre {center} is also listed as a leaf")
    c = sb([center], n)
    lm = sb(leaves, n)
    rows = ((c, -QUARTER), (lm, -QUARTER), (c | lm, QUARTER), (0, QUARTER))
    return Decomposition(n, rows)


def union_of_stars(g: Graph) -> Decomposition:
    """Peel off the residual max-degree star (lowest label on ties) until no edge is left."""
    residual = g
    out = Decomposition(g.n, ())
    while not residual.is_edgeless():
        v = max(range(g.n), key=lambda u: (residual.degree(u), -u))
        leaves = residual.neighbors(v)
        out = combine(out, star_decomposition(v, leaves, g.n))
        residual = residual.remove_edges((v, u) for u in leaves)
    return simplify(out)


@dataclass(frozen=True)
class DoubleStarClasses:
    """Centres v1, v2 and the column classes of the other vertices.

    only1 / only2 are the exclusive neighbours of v1 / v2, common the shared
    neighbours and rest everything else.
    """

    n: int
    v1: int
    v2: int
    only1: frozenset = frozenset()
    common: frozenset = frozenset()
    only2: frozenset = frozenset()
    rest: frozenset = frozenset()

    def __post_init__(self) -> None:
        if self.v1 == self.v2:
            raise PreconditionViolation("the two centres must differ")
        parts = [{self.v1}, {self.v2}, *map(set, (self.only1, self.common, self.only2, self.rest))]
        union = set().union(*parts)
        if sum(map(len, parts)) != len(union) or union != set(range(self.n)):
            raise PreconditionViolation("the six classes must partition range(n)")
        for name in ("only1", "common", "only2", "rest"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))

    def columns(self) -> list[list[int]]:
        return [[self.v1], [self.v2], *(sorted(s) for s in (self.only1, self.common, self.only2, self.rest))]


def double_star_classes(g: Graph, v1: int, v2: int) -> DoubleStarClasses:
    """Classes of the double star formed by every edge of g at v1 or v2."""
    if g.has_edge(v1, v2):
        raise PreconditionViolation(f"centres {v1} and {v2} are adjacent")
    n1, n2 = g.nbrs[v1], g.nbrs[v2]
    full = (1 << g.n) - 1
    rest = full & ~(n1 | n2 | 1 << v1 | 1 << v2)
    return DoubleStarClasses(
        g.n, v1, v2,
        frozenset(vertices_of(n1 & ~n2)),
        frozenset(vertices_of(n1 & n2)),
        frozenset(vertices_of(n2 & ~n1)),
        frozenset(vertices_of(rest)),
    )


def double_star_decomposition(classes: DoubleStarClasses) -> Decomposition:
    """Expand the six-row certificate so each vertex copies the column of its class."""
    cols = classes.columns()
    rows = []
    for signs, w in zip(PROTOTYPE_SIGNS, PROTOTYPE_WEIGHTS):
        mask = 0
        for s, members in zip(signs, cols):
            if s == -1:
                mask |= sb(members, classes.n)
        rows.append((mask, w))
    return Decomposition(classes.n, tuple(rows))


def union_of_double_stars(g: Graph) -> Decomposition:
    """Greedy double-star peeling, then the leftover clique.

    Each round takes the non-adjacent candidate pair with the largest residual
    degree sum (first in lexicographic order on ties), which is the number of
    edges the double star removes. Both centres leave the candidate set. Once
    every candidate pair is adjacent the remaining edges form a clique.
    """
    n = g.n
    residual = g
    cand = list(range(n))
    out = Decomposition(n, ())
    while True:
        best, best_score = None, 0
        for a in range(len(cand)):
            u = cand[a]
            du = residual.degree(u)
            for v in cand[a + 1:]:
                if residual.has_edge(u, v):
                    continue
                score = du + residual.degree(v)
                if score > best_score:
                    best, best_score = (u, v), score
        if best is None:
            break
        u, v = best
        out = combine(out, double_star_decomposition(double_star_classes(residual, u, v)))
        residual = residual.remove_edges([(u, x) for x in residual.neighbors(u)] + [(v, x) for x in residual.neighbors(v)])
        cand.remove(u)
        cand.remove(v)
    if not residual.is_edgeless():
        out = combine(out, clique_decomposition(residual, cand))
    return simplify(out)
