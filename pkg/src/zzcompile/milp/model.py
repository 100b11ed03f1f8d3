"""The compact mixed-integer model over binary sign variables.

Variables (1-indexed names): ``P_r_i`` binary image of the sign at vertex i in
row r (1 for +1), ``z_i_j_r`` (i < j) their pairwise products, ``t_i_j_r``
(i <= j) the products with the row weight, ``W_r`` the weight, ``b_r`` the
row-in-use indicator, ``tr`` the weight sum and ``rn_r`` the row number.
The diagonal product z_i_i_r is P_r_i itself, so it gets no variable.

Constraint rows are named ``c<tag>_<indices>``; the tag is the number of the
constraint family, with a/b suffixes for the two halves of a double inequality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Union

from ..bounds import spectral_lower_bound
from ..errors import InvalidParameter
from ..graph import Graph

__all__ = [
    "Rational",
    "MipVariable",
    "MipConstraint",
    "MipModel",
    "build_cmipgc",
    "model_size",
    "sound_big_m",
    "DEFAULT_M",
    "FIRSTDIFF_MIN_N",
]

Rational = Union[int, Fraction]
DEFAULT_M = 10
# above this many vertices the row-number ordering is replaced by first-difference binaries
FIRSTDIFF_MIN_N = 41

BINARY, INTEGER, CONTINUOUS = "binary", "integer", "continuous"
SENSES = ("<=", "=", ">=")


@dataclass(frozen=True)
class MipVariable:
    name: str
    kind: str
    lower: Rational | None  # None means unbounded
    upper: Rational | None

    def __post_init__(self) -> None:
        if self.kind not in (BINARY, INTEGER, CONTINUOUS):
            raise InvalidParameter(f"unknown variable kind {self.kind!r}")
        if self.lower is not None and self.upper is not None and self.lower > self.upper:
            raise InvalidParameter(f"{self.name}: lower bound above upper bound")


@dataclass(frozen=True)
class MipConstraint:
    name: str
    terms: tuple[tuple[Rational, str], ...]
    sense: str
    rhs: Rational
    tag: str

    def __post_init__(self) -> None:
        if self.sense not in SENSES:
            raise InvalidParameter(f"unknown sense {self.sense!r}")


@dataclass(frozen=True)
class MipModel:
    variables: tuple[MipVariable, ...]
    constraints: tuple[MipConstraint, ...]
    objective: tuple[tuple[Rational, str], ...]
    meta: dict = field(default_factory=dict, compare=True)

    def __post_init__(self) -> None:
        names = [v.name for v in self.variables]
        known = set(names)
        if len(known) != len(names):
            raise InvalidParameter("duplicate variable names")
        cnames = [c.name for c in self.constraints]
        if len(set(cnames)) != len(cnames):
            raise InvalidParameter("duplicate constraint names")
        for c in self.constraints:
            for _, v in c.terms:
                if v not in known:
                    raise InvalidParameter(f"constraint {c.name} references unknown variable {v}")
        for _, v in self.objective:
            if not v.startswith("b_") or v not in known:
                raise InvalidParameter(f"objective may only use row indicators, got {v}")

    @property
    def n(self) -> int:
        return self.meta["n"]

    @property
    def R(self) -> int:
        return self.meta["R"]

    def variable(self, name: str) -> MipVariable:
        for v in self.variables:
            if v.name == name:
                return v
        raise KeyError(name)

    def tags(self) -> set[str]:
        return {c.tag for c in self.constraints}


def sound_big_m(n: int) -> int:
    """ceil((3n-2)^((3n-1)/2)), a weight bound that never excludes an optimum."""
    x = (3 * n - 2) ** (3 * n - 1)
    s = math.isqrt(x)
    return s if s * s == x else s + 1


def _pairs(n: int):
    return combinations(range(1, n + 1), 2)


def _upper_pairs(n: int):
    return ((i, j) for i in range(1, n + 1) for j in range(i, n + 1))


def build_cmipgc(
    g: Graph,
    R: int,
    M: Rational = DEFAULT_M,
    *,
    padberg: bool = True,
    drop_tautologies: bool = False,
    lb_cut: bool = True,
    ordering: str = "auto",
    all_ones: bool = False,
    padberg_budget: int | None = None,
    lower_bound: int | None = None,
) -> MipModel:
    """Build the model for graph ``g`` with at most ``R`` rows and weights in [-M, M].

    ``ordering`` is ``"rownumber"`` (integer row numbers kept strictly
    increasing), ``"firstdiff"`` (binary first-difference encoding, no large
    coefficients) or ``"auto"`` (firstdiff from FIRSTDIFF_MIN_N vertices on).
    ``all_ones`` pins the last row to all +1. ``padberg_budget`` caps the
    triples per row, lowest indices first. ``lower_bound`` overrides the
    spectral bound used by the cut.
    """
    n = g.n
    if R < 1:
        raise InvalidParameter(f"R must be at least 1, got {R}")
    M = Fraction(M)
    if M <= 0:
        raise InvalidParameter("M must be positive")
    M = int(M) if M.denominator == 1 else M
    if ordering == "auto":
        ordering = "firstdiff" if n >= FIRSTDIFF_MIN_N else "rownumber"
    if ordering not in ("rownumber", "firstdiff"):
        raise InvalidParameter(f"unknown ordering {ordering!r}")
    if padberg_budget is not None and padberg_budget < 0:
        raise InvalidParameter("padberg_budget must be non-negative")
    A = lambda i, j: int(g.has_edge(i - 1, j - 1)) if i != j else 0  # noqa: E731
    rows = range(1, R + 1)

    def P(r, i):
        return f"P_{r}_{i}"

    def z(i, j, r):
        return P(r, i) if i == j else f"z_{i}_{j}_{r}"

    variables: list[MipVariable] = []
    variables += [MipVariable(P(r, i), BINARY, 0, 1) for r in rows for i in range(1, n + 1)]
    variables += [MipVariable(z(i, j, r), BINARY, 0, 1) for r in rows for i, j in _pairs(n)]
    variables += [MipVariable(f"t_{i}_{j}_{r}", CONTINUOUS, -M, M) for r in rows for i, j in _upper_pairs(n)]
    variables += [MipVariable(f"W_{r}", CONTINUOUS, -M, M) for r in rows]
    variables += [MipVariable(f"b_{r}", BINARY, 0, 1) for r in rows]
    variables.append(MipVariable("tr", CONTINUOUS, None, None))
    if ordering == "rownumber":
        variables += [MipVariable(f"rn_{r}", INTEGER, 1, (1 << n) - 1) for r in rows]
    else:
        variables += [MipVariable(f"e_{r}_{i}", BINARY, 0, 1) for r in range(1, R) for i in range(2, n + 1)]

    cons: list[MipConstraint] = []

    def add(tag, idx, terms, sense, rhs):
        name = "c" + tag + "".join(f"_{x}" for x in idx)
        cons.append(MipConstraint(name, tuple(terms), sense, rhs, tag))

    for r in rows:
        add("2a", (r,), [(1, f"W_{r}"), (-M, f"b_{r}")], "<=", 0)
        add("2b", (r,), [(1, f"W_{r}"), (M, f"b_{r}")], ">=", 0)
    for r in rows:
        for i, j in _pairs(n):
            add("3", (i, j, r), [(1, z(i, j, r)), (-1, P(r, i))], "<=", 0)
            add("4", (i, j, r), [(1, z(i, j, r)), (-1, P(r, j))], "<=", 0)
            add("5", (i, j, r), [(1, z(i, j, r)), (-1, P(r, i)), (-1, P(r, j))], ">=", -1)
    for r in rows:
        for i, j in _upper_pairs(n):
            t = f"t_{i}_{j}_{r}"
            add("6a", (i, j, r), [(1, t), (-M, z(i, j, r))], "<=", 0)
            add("6b", (i, j, r), [(1, t), (M, z(i, j, r))], ">=", 0)
            add("7a", (i, j, r), [(1, t), (-1, f"W_{r}"), (-M, z(i, j, r))], ">=", -M)
            add("7b", (i, j, r), [(1, t), (-1, f"W_{r}"), (M, z(i, j, r))], "<=", M)
    add("8", (), [(1, "tr")] + [(-1, f"W_{r}") for r in rows], "=", 0)

    def tsum(i, j):
        return [(4, f"t_{i}_{j}_{r}") for r in rows]

    if not drop_tautologies:
        add("9", (), tsum(1, 1) + [(-4, "tr")], "=", 0)
        for j in range(2, n + 1):
            add("10", (j,), tsum(1, j) + [(-2, "tr")], "=", 2 * A(1, j))
    for i in range(2, n + 1):
        add("11", (i,), tsum(i, i) + [(-2, "tr")], "=", A(i, i) + 2 * A(1, i))
    for i, j in combinations(range(2, n + 1), 2):
        add("12", (i, j), tsum(i, j) + [(-1, "tr")], "=", A(i, j) + A(1, i) + A(1, j))
    for r in rows:
        add("13", (r,), [(1, P(r, 1))], "=", 1)
    if ordering == "rownumber":
        for r in rows:
            add("14", (r,), [(1, f"rn_{r}")] + [(-(1 << (i - 1)), P(r, i)) for i in range(1, n + 1)], "=", 0)
        for r in range(1, R):
            add("15", (r,), [(1, f"rn_{r}"), (-1, f"rn_{r + 1}")], "<=", -2)
    else:
        # e_r_i = 1 iff rows r and r+1 agree on vertices i..n; e_r_1 = 0 and e_r_(n+1) = 1 are constants.
        # The highest disagreeing vertex must read 0 in row r and 1 in row r+1.
        def e_terms(r, i, coef):
            return [(coef, f"e_{r}_{i}")] if 2 <= i <= n else []

        def e_const(i):
            return 1 if i == n + 1 else 0

        for r in range(1, R):
            for i in range(1, n + 1):
                up, lo = P(r + 1, i), P(r, i)
                add("15d", (r, i, 1), [(1, up), (-1, lo)] + e_terms(r, i, 1), "<=", 1 - e_const(i))
                add("15d", (r, i, 2), [(1, lo), (-1, up)] + e_terms(r, i, 1), "<=", 1 - e_const(i))
                add("15o", (r, i), [(1, up), (-1, lo)] + e_terms(r, i + 1, -2) + e_terms(r, i, 1),
                    ">=", -1 + 2 * e_const(i + 1) - e_const(i))
            for i in range(2, n):
                add("15m", (r, i), [(1, f"e_{r}_{i}"), (-1, f"e_{r}_{i + 1}")], "<=", 0)
    for r in range(2, R + 1):
        add("16", (r,), [(1, P(r, i)) for i in range(1, n + 1)], ">=", 2)
    if padberg:
        for r in rows:
            for count, (i, j, k) in enumerate(combinations(range(1, n + 1), 3)):
                if padberg_budget is not None and count >= padberg_budget:
                    break
                add("17", (i, j, k, r),
                    [(1, P(r, i)), (1, P(r, j)), (1, P(r, k)), (-1, z(i, j, r)), (-1, z(i, k, r)), (-1, z(j, k, r))],
                    "<=", 1)
    if lower_bound is None and lb_cut:
        lower_bound = 0 if g.is_edgeless() else spectral_lower_bound(g).lower_bound
    if lb_cut:
        add("18", (), [(1, f"b_{r}") for r in rows], ">=", lower_bound)
    if all_ones:
        if ordering == "rownumber":
            add("ao", (R,), [(1, f"rn_{R}")], "=", (1 << n) - 1)
        else:
            for i in range(1, n + 1):
                add("ao", (R, i), [(1, P(R, i))], "=", 1)

    meta = {
        "n": n,
        "R": R,
        "M": M,
        "edges": tuple(g.edges()),
        "padberg": padberg,
        "drop_tautologies": drop_tautologies,
        "lb_cut": lb_cut,
        "ordering": ordering,
        "all_ones": all_ones,
        "padberg_budget": padberg_budget,
        "lower_bound": lower_bound if lb_cut else None,
    }
    objective = tuple((1, f"b_{r}") for r in rows)
    return MipModel(tuple(variables), tuple(cons), objective, meta)


def model_size(
    n: int, R: int, *, padberg: bool = True, drop_tautologies: bool = False, lb_cut: bool = True,
    ordering: str = "rownumber", all_ones: bool = False,
) -> tuple[int, int]:
    """Closed-form (variables, constraints) of build_cmipgc without a Padberg budget."""
    pairs, upper, triples = math.comb(n, 2), n * (n + 1) // 2, math.comb(n, 3)
    nv = n * R + R * pairs + R * upper + 2 * R + 1
    nc = 2 * R + 3 * R * pairs + 4 * R * upper + 1
    if not drop_tautologies:
        nc += 1 + (n - 1)
    nc += (n - 1) + math.comb(n - 1, 2) + R
    if ordering == "rownumber":
        nv += R
        nc += R + (R - 1)
        nc += 1 if all_ones else 0
    else:
        nv += (R - 1) * (n - 1)
        nc += (R - 1) * (3 * n + max(n - 2, 0))
        nc += n if all_ones else 0
    nc += R - 1
    nc += R * triples if padberg else 0
    nc += 1 if lb_cut else 0
    return nv, nc
