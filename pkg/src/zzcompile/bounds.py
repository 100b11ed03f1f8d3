"""Spectral lower bound: gc(G) >= n - (largest eigenvalue multiplicity of A).

Two routes compute the maximum multiplicity:

* ``exact``: integer characteristic polynomial, then the tower
  g_0 = p, g_{s+1} = gcd(g_s, g_s'). The tower reaches a constant after
  exactly (max multiplicity) steps, and the last non-constant g is the
  square-free polynomial whose roots are the eigenvalues of that multiplicity.
* ``numeric``: symmetric eigensolver plus absolute-tolerance clustering.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import InvalidParameter, NumericalFailure
from .graph import Graph

__all__ = ["BoundReport", "spectral_lower_bound", "char_poly", "max_multiplicity_exact", "EXACT_MAX_N"]

EXACT_MAX_N = 32


@dataclass(frozen=True)
class BoundReport:
    lower_bound: int
    max_multiplicity: int
    witness_eigenvalue: float
    method: str
    # square-free integer polynomial (highest degree first) whose roots all have
    # the maximum multiplicity; exact mode only
    witness_poly: tuple[int, ...] | None = None

    def render(self) -> str:
        return f"lb={self.lower_bound} mult={self.max_multiplicity} lambda≈{self.witness_eigenvalue:.6g} method={self.method}"


# ---------------------------------------------------------------- integer polynomials
# coefficient lists, highest degree first, no leading zeros (the zero polynomial is [])


def _trim(p: list[int]) -> list[int]:
    k = 0
    while k < len(p) and p[k] == 0:
        k += 1
    return p[k:]


def _derivative(p: list[int]) -> list[int]:
    deg = len(p) - 1
    return _trim([c * (deg - i) for i, c in enumerate(p[:-1])])


def _primitive(p: list[int]) -> list[int]:
    p = _trim(p)
    if not p:
        return p
    g = reduce(math.gcd, p)
    if p[0] < 0:
        g = -g
    return [c // g for c in p]


def _prem(a: list[int], b: list[int]) -> list[int]:
    r = list(a)
    lb, db = b[0], len(b) - 1
    while r and len(r) - 1 >= db:
        lr = r[0]
        r = [lb * c for c in r]
        for i, c in enumerate(b):
            r[i] -= lr * c
        r = _trim(r)
    return r


def poly_gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd over Z[x] via the primitive remainder sequence."""
    a, b = _primitive(a), _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        a, b = b, _primitive(_prem(a, b))
    return _primitive(a) if a else []


def char_poly(g: Graph) -> list[int]:
    """Coefficients of det(xI - A), highest degree first (monic, degree n).

    Faddeev-LeVerrier recurrence; every division by k is exact over Z.
    The product A @ M is formed as neighbour-row sums since A is 0/1.
    """
    n = g.n
    nbrs = [g.neighbors(i) for i in range(n)]
    coeffs = [1]
    m = np.zeros((n, n), dtype=object)
    for k in range(1, n + 1):
        am = np.empty((n, n), dtype=object)
        for i in range(n):
            am[i] = m[nbrs[i]].sum(axis=0) if nbrs[i] else 0
        m = am
        c_prev = coeffs[-1]
        for i in range(n):
            m[i, i] += c_prev
        # trace(A @ M_k)
        tr = 0
        for i in range(n):
            for j in nbrs[i]:
                tr += m[j, i]
        q, r = divmod(-tr, k)
        assert r == 0
        coeffs.append(int(q))
    return [int(c) for c in coeffs]


def max_multiplicity_exact(poly: list[int]) -> tuple[int, list[int]]:
    """Return (max root multiplicity, square-free poly of the roots attaining it)."""
    g = _primitive(poly)
    steps = 0
    prev = g
    while len(g) > 1:
        prev = g
        g = poly_gcd(g, _derivative(g))
        steps += 1
    return steps, prev


def _real_root(p: list[int]) -> float:
    if len(p) == 2:
        return -p[1] / p[0]
    roots = np.roots(np.array(p, dtype=float))
    real = roots[np.argsort(np.abs(roots.imag))]
    return float(real[0].real)


# ---------------------------------------------------------------- public entry


def _exact(g: Graph) -> BoundReport:
    if g.n == 1:
        return BoundReport(0, 1, 0.0, "exact", (1, 0))
    mult, witness = max_multiplicity_exact(char_poly(g))
    return BoundReport(g.n - mult, mult, _real_root(witness), "exact", tuple(witness))


def _numeric(g: Graph) -> BoundReport:
    a = g.adj.astype(float)
    try:
        ev = np.linalg.eigvalsh(a)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(str(exc)) from exc
    if not np.all(np.isfinite(ev)):
        raise NumericalFailure("non-finite eigenvalues")
    radius = float(np.max(np.abs(ev))) if ev.size else 0.0
    tol = 1e-8 * max(1.0, radius)
    best_len, best_val = 0, 0.0
    start = 0
    for i in range(1, len(ev) + 1):
        if i == len(ev) or ev[i] - ev[i - 1] > tol:
            if i - start > best_len:
                best_len, best_val = i - start, float(np.mean(ev[start:i]))
            start = i
    return BoundReport(g.n - best_len, best_len, best_val, "numeric")


def spectral_lower_bound(g: Graph, mode: str = "auto") -> BoundReport:
    """n minus the largest eigenvalue multiplicity of the adjacency matrix.

    ``mode`` is ``"exact"``, ``"numeric"`` or ``"auto"`` (exact up to
    EXACT_MAX_N vertices, numeric above with an exact fallback).
    """
    if mode == "exact":
        return _exact(g)
    if mode == "numeric":
        return _numeric(g)
    if mode != "auto":
        raise InvalidParameter(f"unknown bound mode {mode!r}")
    if g.n <= EXACT_MAX_N:
        return _exact(g)
    try:
        return _numeric(g)
    except NumericalFailure:
        return _exact(g)
