"""The sign-form and binary-form feasibility identities, computed exactly.

With P' = (P + 1) / 2 and a first column of ones, the two identities below
are equivalent; tests check both routes on the same inputs independently.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["sign_form_holds", "binary_form_holds", "binary_form_rhs"]


def _weighted_gram(p, w):
    k, n = len(p), len(p[0]) if p else 0
    return [[sum((w[r] * p[r][i] * p[r][j] for r in range(k)), Fraction(0)) for j in range(n)] for i in range(n)]


def sign_form_holds(p, w, a) -> bool:
    """A + tr(W) I == P^T W P over the full matrix, P with +-1 entries."""
    n = len(a)
    tr = sum(map(Fraction, w), Fraction(0))
    g = _weighted_gram(p, [Fraction(x) for x in w])
    return all(g[i][j] == a[i][j] + (tr if i == j else 0) for i in range(n) for j in range(n))


def binary_form_rhs(a, tr) -> list[list[Fraction]]:
    """A + a1_i + a1_j + tr * K, with K = 4 at (1,1), 2 on the first row, column and diagonal, 1 elsewhere."""
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            k = (i == j) + (i == 0) + (j == 0) + 1
            row.append(Fraction(a[i][j] + a[0][i] + a[0][j]) + tr * k)
        out.append(row)
    return out


def binary_form_holds(pb, w, a) -> bool:
    """4 P'^T W P' equals the right-hand side of :func:`binary_form_rhs`, P' with 0/1 entries."""
    n = len(a)
    tr = sum(map(Fraction, w), Fraction(0))
    g = _weighted_gram(pb, [Fraction(x) for x in w])
    rhs = binary_form_rhs(a, tr)
    return all(4 * g[i][j] == rhs[i][j] for i in range(n) for j in range(n))
