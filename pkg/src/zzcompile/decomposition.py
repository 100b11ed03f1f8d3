"""Sign-row / weight decompositions of a graph and their exact verification.

A decomposition is a list of ``(mask, weight)`` pairs. The mask encodes a
row of P in {-1, +1}^n: bit i is set iff the sign at vertex i is -1. The
weight is an exact :class:`fractions.Fraction`. A decomposition realises a
graph when, for every vertex pair i < j,

    sum_r weight_r * sign_r(i) * sign_r(j) == adj[i][j].

Each row is the signed complete graph ("spin biclique") cut along the set
of -1 vertices; a mask and its complement describe the same biclique.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DimensionMismatch, InvalidParameter, MalformedInput
from .graph import Graph

__all__ = [
    "Decomposition",
    "VerifyReport",
    "biclique_row",
    "mask_to_signs",
    "signs_to_mask",
    "row_number",
    "verify",
    "gram",
    "simplify",
    "restrict",
    "combine",
    "relabel",
    "ones",
    "parse_decomposition",
    "format_decomposition",
]


def biclique_row(cut_set: Iterable[int], n: int) -> int:
    """Mask of the row r_S: -1 exactly on ``cut_set``."""
    mask = 0
    for v in cut_set:
        if not 0 <= v < n:
            raise InvalidParameter(f"vertex {v} outside range(n={n})")
        mask |= 1 << v
    return mask


def mask_to_signs(mask: int, n: int) -> list[int]:
    return [-1 if mask >> i & 1 else 1 for i in range(n)]


def signs_to_mask(signs: Sequence[int]) -> int:
    mask = 0
    for i, s in enumerate(signs):
        if s == -1:
            mask |= 1 << i
        elif s != 1:
            raise InvalidParameter(f"sign entries must be +1 or -1, got {s}")
    return mask


def row_number(mask: int, n: int) -> int:
    """Integer value of the 0/1 image of a row: sum of 2^i over the +1 positions."""
    return ((1 << n) - 1) ^ mask


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Decomposition:
    n: int
    rows: tuple[tuple[int, Fraction], ...] = field(default=())

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidParameter("n must be positive")
        full = (1 << self.n) - 1
        rows = tuple((int(m), _frac(w)) for m, w in self.rows)
        for m, _ in rows:
            if m < 0 or m & ~full:
                raise InvalidParameter(f"mask {m:#x} has bits beyond n={self.n}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_signs(cls, signs: Sequence[Sequence[int]], weights: Sequence, n: int | None = None) -> Decomposition:
        if len(signs) != len(weights):
            raise DimensionMismatch("one weight per row required")
        if n is None:
            if not signs:
                raise InvalidParameter("n is required for an empty decomposition")
            n = len(signs[0])
        for row in signs:
            if len(row) != n:
                raise DimensionMismatch(f"row of length {len(row)} in an n={n} decomposition")
        return cls(n, tuple((signs_to_mask(r), _frac(w)) for r, w in zip(signs, weights)))

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[tuple[int, Fraction]]:
        return iter(self.rows)

    @property
    def masks(self) -> list[int]:
        return [m for m, _ in self.rows]

    @property
    def weights(self) -> list[Fraction]:
        return [w for _, w in self.rows]

    @property
    def trace(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def sign_matrix(self) -> np.ndarray:
        """k x n matrix P with entries in {-1, +1}."""
        if self.n <= 62:
            masks = np.array(self.masks, dtype=np.int64).reshape(-1, 1)
            bits = (masks >> np.arange(self.n, dtype=np.int64)) & 1
            return 1 - 2 * bits
        p = np.ones((len(self.rows), self.n), dtype=np.int64)
        for r, (m, _) in enumerate(self.rows):
            for i in range(self.n):
                if m >> i & 1:
                    p[r, i] = -1
        return p

    def is_canonical(self) -> bool:
        keys = [row_number(m, self.n) for m, _ in self.rows]
        return (
            all(m & 1 == 0 for m, _ in self.rows)
            and all(w != 0 for _, w in self.rows)
            and all(a < b for a, b in zip(keys, keys[1:]))
        )

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": len(self.rows),
            "trace": str(self.trace),
            "rows": [{"weight": str(w), "mask": f"{m:x}"} for m, w in self.rows],
        }

    @classmethod
    def from_dict(cls, data: dict) -> Decomposition:
        rows = tuple((int(r["mask"], 16), Fraction(r["weight"])) for r in data["rows"])
        return cls(int(data["n"]), rows)


def ones(n: int, weight=1) -> Decomposition:
    """The single all-ones row, i.e. the complete graph scaled by ``weight``."""
    return Decomposition(n, ((0, _frac(weight)),))


# ---------------------------------------------------------------- exact gram


def _integer_weights(d: Decomposition) -> tuple[list[int], int]:
    den = lcm(*(w.denominator for w in d.weights)) if d.rows else 1
    return [w.numerator * (den // w.denominator) for w in d.weights], den


def _scaled_gram(d: Decomposition) -> tuple[np.ndarray, int]:
    """Return (G, den) with P^T W P == G / den, computed in exact integers."""
    ints, den = _integer_weights(d)
    k = len(ints)
    p = d.sign_matrix()
    bound = sum(abs(x) for x in ints)
    if bound < 2**62 and den < 2**62:
        w = np.array(ints, dtype=np.int64) if k else np.zeros(0, dtype=np.int64)
        g = (p.T * w) @ p
    else:
        w = np.array(ints, dtype=object)
        g = (p.T.astype(object) * w) @ p.astype(object)
    return g, den


def gram(d: Decomposition) -> list[list[Fraction]]:
    """P^T W P as exact rationals; the diagonal always equals the weight sum."""
    g, den = _scaled_gram(d)
    return [[Fraction(int(x), den) for x in row] for row in g]


@dataclass(frozen=True)
class VerifyReport:
    feasible: bool
    worst_violation: Fraction
    offending_pair: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.feasible


def verify(g: Graph, d: Decomposition) -> VerifyReport:
    """Exact check of every off-diagonal entry; the diagonal is ignored."""
    if g.n != d.n:
        raise DimensionMismatch(f"graph has n={g.n}, decomposition has n={d.n}")
    if g.n == 1:
        return VerifyReport(True, Fraction(0))
    gm, den = _scaled_gram(d)
    diff = gm - g.adj.astype(gm.dtype) * den
    iu = np.triu_indices(g.n, 1)
    off = np.abs(diff[iu])
    idx = int(np.argmax(off))
    worst = Fraction(int(off[idx]), den)
    if worst == 0:
        return VerifyReport(True, worst)
    return VerifyReport(False, worst, (int(iu[0][idx]), int(iu[1][idx])))


# ---------------------------------------------------------------- algebra


def simplify(d: Decomposition) -> Decomposition:
    """Canonical form: first sign +1, equal rows merged, zero rows dropped, sorted by row number."""
    full = (1 << d.n) - 1
    merged: dict[int, Fraction] = {}
    for m, w in d.rows:
        if m & 1:
            m ^= full
        merged[m] = merged.get(m, Fraction(0)) + w
    rows = sorted(((m, w) for m, w in merged.items() if w != 0), key=lambda r: row_number(r[0], d.n))
    return Decomposition(d.n, tuple(rows))


def restrict(d: Decomposition, s: Iterable[int]) -> Decomposition:
    """Keep only the columns in ``s`` (relabelled in increasing order)."""
    keep = sorted(set(s))
    if not keep:
        raise InvalidParameter("restriction needs a nonempty vertex set")
    if keep[0] < 0 or keep[-1] >= d.n:
        raise InvalidParameter("vertex set out of range")
    rows = []
    for m, w in d.rows:
        new = 0
        for k, v in enumerate(keep):
            if m >> v & 1:
                new |= 1 << k
        rows.append((new, w))
    return Decomposition(len(keep), tuple(rows))


def combine(d1: Decomposition, d2: Decomposition, sign: str = "+") -> Decomposition:
    """Stack the rows of d1 and d2; with sign '-' the weights of d2 are negated."""
    if d1.n != d2.n:
        raise DimensionMismatch(f"cannot combine n={d1.n} with n={d2.n}")
    if sign not in ("+", "-"):
        raise InvalidParameter("sign must be '+' or '-'")
    s = 1 if sign == "+" else -1
    return Decomposition(d1.n, d1.rows + tuple((m, s * w) for m, w in d2.rows))


def relabel(d: Decomposition, perm: Sequence[int]) -> Decomposition:
    """Move column i to position ``perm[i]``; pairs with :meth:`Graph.relabel`."""
    if sorted(perm) != list(range(d.n)):
        raise InvalidParameter("perm must be a permutation of range(n)")
    rows = []
    for m, w in d.rows:
        new = 0
        for i in range(d.n):
            if m >> i & 1:
                new |= 1 << perm[i]
        rows.append((new, w))
    return Decomposition(d.n, tuple(rows))


# ---------------------------------------------------------------- document format


def format_decomposition(d: Decomposition) -> str:
    out = [f"{d.n} {len(d.rows)} {d.trace}"]
    out += [f"{w.numerator}/{w.denominator} {m:x}" for m, w in d.rows]
    return "\n".join(out) + "\n"


def parse_decomposition(text: str) -> Decomposition:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or len(lines[0]) != 3:
        raise MalformedInput("header must be 'n k tr'")
    try:
        n, k = int(lines[0][0]), int(lines[0][1])
        tr = Fraction(lines[0][2])
    except ValueError as exc:
        raise MalformedInput("bad header") from exc
    if len(lines) - 1 != k:
        raise MalformedInput(f"header announces {k} rows, found {len(lines) - 1}")
    rows = []
    for lineno, toks in enumerate(lines[1:], start=2):
        if len(toks) != 2:
            raise MalformedInput(f"line {lineno}: expected 'num/den mask_hex'")
        try:
            rows.append((int(toks[1], 16), Fraction(toks[0])))
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInput(f"line {lineno}: bad row") from exc
    try:
        d = Decomposition(n, tuple(rows))
    except InvalidParameter as exc:
        raise MalformedInput(str(exc)) from exc
    if d.trace != tr:
        raise MalformedInput(f"trace {tr} disagrees with the weight sum {d.trace}")
    return d
