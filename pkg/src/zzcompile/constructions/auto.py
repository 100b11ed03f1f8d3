"""Run every applicable construction and keep the verified one with the fewest rows."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..bounds import spectral_lower_bound
from ..decomposition import Decomposition, combine, ones, relabel, simplify, verify
from ..errors import ConstructionError
from ..graph import Graph, complement
from .families import clique_decomposition, cycle_decomposition, disjoint_cliques_decomposition, path_decomposition, perfect_matching_decomposition
from .small import detect_small_gc, is_clique_union
from .stars import union_of_double_stars, union_of_stars

__all__ = ["CompileResult", "compile_auto", "family_candidates", "METHODS"]

METHODS = ("detector", "clique", "disjoint-cliques", "pm-hadamard", "cycle", "path", "stars", "double-stars", "complement")


@dataclass(frozen=True)
class CompileResult:
    decomposition: Decomposition
    method: str
    rows: int
    lower_bound: int | None
    verified: bool

    @property
    def optimal(self) -> bool:
        return self.lower_bound is not None and self.lower_bound == self.rows


def _walk(g: Graph, start: int) -> list[int]:
    order, prev, cur = [start], -1, start
    while True:
        nxt = [u for u in g.neighbors(cur) if u != prev and u != start]
        if not nxt:
            return order
        prev, cur = cur, nxt[0]
        order.append(cur)


def _as_path(g: Graph) -> list[int] | None:
    """Vertex order along the path if g is a spanning path."""
    if g.n < 2 or g.m != g.n - 1 or any(g.degree(v) > 2 for v in range(g.n)):
        return None
    ends = [v for v in range(g.n) if g.degree(v) == 1]
    order = _walk(g, ends[0]) if ends else []
    return order if len(order) == g.n else None


def _as_cycle(g: Graph) -> list[int] | None:
    if g.n < 3 or any(g.degree(v) != 2 for v in range(g.n)):
        return None
    order = _walk(g, 0)
    return order if len(order) == g.n else None


def family_candidates(g: Graph) -> list[tuple[str, Decomposition]]:
    """Family-specific decompositions for every family g is recognised as."""
    n = g.n
    out = []
    order = _as_path(g)
    if order is not None:
        out.append(("path", relabel(path_decomposition(n), order)))
    order = _as_cycle(g)
    if order is not None:
        out.append(("cycle", relabel(cycle_decomposition(n), order)))
    comps = is_clique_union(g)
    if comps is not None and not g.is_edgeless():
        if all(len(c) == 2 for c in comps):
            d, used = perfect_matching_decomposition(len(comps))
            perm = [v for c in comps for v in c]
            out.append(("pm-hadamard" if used else "disjoint-cliques", relabel(d, perm)))
        else:
            out.append(("disjoint-cliques", disjoint_cliques_decomposition(comps, n)))
        big = [c for c in comps if len(c) > 1]
        if len(big) == 1:
            out.append(("clique", clique_decomposition(g, big[0])))
    return out


def _complement_route(g: Graph) -> Decomposition:
    # g = K_n - complement(g): one extra all-ones row on top of the complement's rows
    return combine(ones(g.n), _best(complement(g), allow_complement=False)[1], sign="-")


def _best(g: Graph, allow_complement: bool = True) -> tuple[str, Decomposition]:
    builders: list[tuple[str, Callable[[], Decomposition | None]]] = [
        ("detector", lambda: detect_small_gc(g)),
        ("stars", lambda: union_of_stars(g)),
        ("double-stars", lambda: union_of_double_stars(g)),
    ]
    cands = []
    for label, build in builders:
        d = build()
        if d is not None:
            cands.append((label, d))
    cands += family_candidates(g)
    if allow_complement and complement(g).m < g.m:
        cands.append(("complement", _complement_route(g)))
    best = None
    for label, d in cands:
        d = simplify(d)
        rep = verify(g, d)
        if not rep:
            raise ConstructionError(f"method {label} produced an invalid decomposition (worst violation {rep.worst_violation} at {rep.offending_pair})")
        key = (len(d), METHODS.index(label))
        if best is None or key < best[0]:
            best = (key, label, d)
    assert best is not None
    return best[1], best[2]


def compile_auto(g: Graph, bound: str | None = "auto") -> CompileResult:
    """Fewest-row verified decomposition over all constructions.

    Ties on the row count go to the method listed first in METHODS.
    ``bound`` is the spectral-bound mode, or None to skip the bound.
    """
    method, d = _best(g)
    lb = spectral_lower_bound(g, bound).lower_bound if bound is not None else None
    if g.is_edgeless():
        lb = 0
    return CompileResult(d, method, len(d), lb, True)
