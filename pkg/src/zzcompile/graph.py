"""Simple undirected graphs, family generators and text formats.

Vertices are 0-indexed in the Python API. Every text format (edge lists,
adjacency matrices, manifests) uses 1-indexed labels.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InvalidParameter, MalformedInput

__all__ = [
    "Graph",
    "parse_graph",
    "format_graph",
    "parse_adjacency",
    "format_adjacency",
    "generate_family",
    "complete",
    "edgeless",
    "perfect_matching",
    "path",
    "cycle",
    "biclique",
    "disjoint_cliques",
    "erdos_renyi",
    "double_star",
    "prototype",
    "complement",
    "induced",
    "all_graphs",
]


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph stored as one neighbour bit mask per vertex."""

    n: int
    nbrs: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidParameter(f"vertex count must be positive, got {self.n}")
        if len(self.nbrs) != self.n:
            raise InvalidParameter("neighbour table length differs from n")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.nbrs):
            if row & ~full:
                raise InvalidParameter(f"vertex {i} has out-of-range neighbours")
            if row >> i & 1:
                raise InvalidParameter(f"loop at vertex {i}")
            for j in _bits(row):
                if not self.nbrs[j] >> i & 1:
                    raise InvalidParameter(f"asymmetric adjacency at ({i}, {j})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        nbrs = [0] * n
        for u, v in edges:
            if u == v:
                raise InvalidParameter(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParameter(f"edge ({u}, {v}) out of range for n={n}")
            nbrs[u] |= 1 << v
            nbrs[v] |= 1 << u
        return cls(n, tuple(nbrs))

    @classmethod
    def from_matrix(cls, adj) -> Graph:
        a = np.asarray(adj)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InvalidParameter("adjacency matrix must be square")
        if not np.isin(a, (0, 1)).all():
            raise InvalidParameter("adjacency entries must be 0 or 1")
        n = a.shape[0]
        nbrs = tuple(sum(1 << j for j in range(n) if a[i, j]) for i in range(n))
        return cls(n, nbrs)

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.nbrs) // 2

    @property
    def adj(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for i, row in enumerate(self.nbrs):
            for j in _bits(row):
                a[i, j] = 1
        return a

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.nbrs[i] >> j & 1)

    def degree(self, i: int) -> int:
        return self.nbrs[i].bit_count()

    def neighbors(self, i: int) -> list[int]:
        return list(_bits(self.nbrs[i]))

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in _bits(self.nbrs[i]) if i < j]

    def is_edgeless(self) -> bool:
        return not any(self.nbrs)

    def is_complete(self) -> bool:
        full = (1 << self.n) - 1
        return all(row | (1 << i) == full for i, row in enumerate(self.nbrs))

    def components(self) -> list[list[int]]:
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = frontier = 1 << s
            while frontier:
                nxt = 0
                for v in _bits(frontier):
                    nxt |= self.nbrs[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(list(_bits(comp)))
        return comps

    def remove_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        nbrs = list(self.nbrs)
        for u, v in edges:
            if not nbrs[u] >> v & 1:
                raise InvalidParameter(f"edge ({u}, {v}) not present")
            nbrs[u] &= ~(1 << v)
            nbrs[v] &= ~(1 << u)
        return Graph(self.n, tuple(nbrs))

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Return the graph whose vertex ``perm[i]`` plays the role of vertex ``i``."""
        if sorted(perm) != list(range(self.n)):
            raise InvalidParameter("perm must be a permutation of range(n)")
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def __str__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------- text formats


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format: ``n m`` then ``m`` lines ``u v`` with ``1 <= u < v <= n``."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise MalformedInput("empty edge-list document")
    try:
        header = [int(tok) for tok in lines[0]]
    except ValueError as exc:
        raise MalformedInput(f"bad header {' '.join(lines[0])!r}") from exc
    if len(header) != 2:
        raise MalformedInput("header must be 'n m'")
    n, m = header
    if n < 1 or m < 0:
        raise MalformedInput(f"invalid header n={n} m={m}")
    if len(lines) - 1 != m:
        raise MalformedInput(f"header announces {m} edges, found {len(lines) - 1}")
    seen = set()
    edges = []
    for lineno, toks in enumerate(lines[1:], start=2):
        if len(toks) != 2:
            raise MalformedInput(f"line {lineno}: expected 'u v'")
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError as exc:
            raise MalformedInput(f"line {lineno}: bad token") from exc
        if u == v:
            raise MalformedInput(f"line {lineno}: loop at {u}")
        if not (1 <= u <= n and 1 <= v <= n):
            raise MalformedInput(f"line {lineno}: label out of range 1..{n}")
        if u > v:
            raise MalformedInput(f"line {lineno}: expected u < v")
        if (u, v) in seen:
            raise MalformedInput(f"line {lineno}: duplicate edge {u} {v}")
        seen.add((u, v))
        edges.append((u - 1, v - 1))
    return Graph.from_edges(n, edges)


def format_graph(g: Graph) -> str:
    edges = g.edges()
    out = [f"{g.n} {len(edges)}"]
    out += [f"{u + 1} {v + 1}" for u, v in edges]
    return "\n".join(out) + "\n"


def parse_adjacency(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    try:
        mat = [[int(tok) for tok in row] for row in rows]
    except ValueError as exc:
        raise MalformedInput("adjacency entries must be integers") from exc
    n = len(mat)
    if n == 0 or any(len(r) != n for r in mat):
        raise MalformedInput("adjacency matrix must be n lines of n entries")
    for i in range(n):
        if mat[i][i] != 0:
            raise MalformedInput(f"nonzero diagonal at row {i + 1}")
        for j in range(n):
            if mat[i][j] not in (0, 1):
                raise MalformedInput(f"entry ({i + 1}, {j + 1}) is not 0/1")
            if mat[i][j] != mat[j][i]:
                raise MalformedInput(f"asymmetric entry ({i + 1}, {j + 1})")
    return Graph.from_matrix(mat)


def format_adjacency(g: Graph) -> str:
    return "\n".join(" ".join(str(int(x)) for x in row) for row in g.adj) + "\n"


def read_graph(text: str) -> Graph:
    """Sniff the format: a 2-token first line is an edge list, anything else a matrix."""
    first = next((ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")), "")
    if len(first.split()) == 2:
        try:
            return parse_graph(text)
        except MalformedInput:
            if first.split() in (["0", "1"], ["1", "0"], ["0", "0"]):
                return parse_adjacency(text)
            raise
    return parse_adjacency(text)


# ---------------------------------------------------------------- generators


def _check_positive(**params: int) -> None:
    for name, value in params.items():
        if not isinstance(value, (int, np.integer)) or value < 1:
            raise InvalidParameter(f"{name} must be a positive integer, got {value!r}")


def edgeless(n: int) -> Graph:
    _check_positive(n=n)
    return Graph(n, (0,) * n)


def complete(q: int, n: int | None = None) -> Graph:
    """K_q on the first q vertices, padded with isolated vertices up to n."""
    n = q if n is None else n
    _check_positive(q=q, n=n)
    if q > n:
        raise InvalidParameter(f"clique size {q} exceeds n={n}")
    return Graph.from_edges(n, combinations(range(q), 2))


def perfect_matching(q: int) -> Graph:
    _check_positive(q=q)
    return Graph.from_edges(2 * q, ((2 * i, 2 * i + 1) for i in range(q)))


def path(n: int) -> Graph:
    _check_positive(n=n)
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    _check_positive(n=n)
    if n < 3:
        raise InvalidParameter(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])


def biclique(a: int, b: int) -> Graph:
    _check_positive(a=a, b=b)
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def disjoint_cliques(sizes: Sequence[int]) -> Graph:
    if not sizes:
        raise InvalidParameter("need at least one clique")
    for s in sizes:
        _check_positive(size=s)
    edges = []
    start = 0
    for s in sizes:
        edges += [(start + i, start + j) for i, j in combinations(range(s), 2)]
        start += s
    return Graph.from_edges(start, edges)


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """G(n, p) drawn from ``random.Random(seed)``.

    One ``random()`` draw per vertex pair, pairs in lexicographic order
    ``(0,1), (0,2), ..., (n-2,n-1)``; the pair is an edge iff the draw is < p.
    The stdlib Mersenne Twister stream for ``random()`` is stable across
    Python versions, so instances are reproducible from ``(n, p, seed)``.
    """
    _check_positive(n=n)
    if not 0.0 <= p <= 1.0:
        raise InvalidParameter(f"p must lie in [0, 1], got {p}")
    if not isinstance(seed, (int, np.integer)) or not 0 <= seed < 2**64:
        raise InvalidParameter("seed must be a 64-bit unsigned integer")
    rng = random.Random(int(seed))
    return Graph.from_edges(n, [(i, j) for i, j in combinations(range(n), 2) if rng.random() < p])


def double_star(v1: int, v2: int, classes: Sequence[Iterable[int]], n: int) -> Graph:
    """Double star with centres v1, v2 and leaf classes (exclusive-1, common, exclusive-2)."""
    only1, common, only2 = (list(c) for c in classes)
    edges = [(v1, v) for v in only1 + common] + [(v2, v) for v in common + only2]
    return Graph.from_edges(n, edges)


def prototype() -> Graph:
    """The 6-vertex double star: centres 0 and 1, one leaf of each kind, one isolated vertex."""
    return double_star(0, 1, ([2], [3], [4]), 6)


_FAMILIES = {
    "complete": complete,
    "edgeless": edgeless,
    "perfect_matching": perfect_matching,
    "path": path,
    "cycle": cycle,
    "biclique": biclique,
    "disjoint_cliques": disjoint_cliques,
    "erdos_renyi": erdos_renyi,
    "prototype": prototype,
}


def generate_family(kind: str, *args, **kwargs) -> Graph:
    try:
        factory = _FAMILIES[kind.replace("-", "_")]
    except KeyError:
        raise InvalidParameter(f"unknown family {kind!r}; choose from {sorted(_FAMILIES)}") from None
    return factory(*args, **kwargs)


# ---------------------------------------------------------------- operations


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full & ~row & ~(1 << i) for i, row in enumerate(g.nbrs)))


def induced(g: Graph, s: Iterable[int]) -> Graph:
    keep = sorted(set(s))
    if not keep:
        raise InvalidParameter("induced subgraph needs a nonempty vertex set")
    if keep[0] < 0 or keep[-1] >= g.n:
        raise InvalidParameter("vertex set out of range")
    pos = {v: k for k, v in enumerate(keep)}
    edges = [(pos[u], pos[v]) for u, v in g.edges() if u in pos and v in pos]
    return Graph.from_edges(len(keep), edges)


def all_graphs(n: int) -> Iterator[Graph]:
    """Every labelled graph on n vertices, ordered by the edge bit pattern."""
    pairs = list(combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        yield Graph.from_edges(n, (pairs[b] for b in _bits(code)))
