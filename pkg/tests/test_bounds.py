from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zzcompile import graph as G
from zzcompile.bounds import char_poly, max_multiplicity_exact, spectral_lower_bound
from zzcompile.errors import InvalidParameter

from .helpers import det


def poly_by_interpolation(g):
    """det(xI - A) from Laplace determinants at x = 0..n, then Newton interpolation."""
    n = g.n
    a = g.adj.tolist()
    xs = list(range(n + 1))
    ys = [Fraction(det([[(x if i == j else 0) - a[i][j] for j in range(n)] for i in range(n)])) for x in xs]
    # Newton divided differences, then expand to monomial coefficients
    coef = list(ys)
    for lvl in range(1, n + 1):
        for i in range(n, lvl - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - lvl])
    poly = [Fraction(0)] * (n + 1)  # lowest degree first
    basis = [Fraction(1)]
    for i in range(n + 1):
        for d, c in enumerate(basis):
            poly[d] += coef[i] * c
        basis = [Fraction(0)] + basis
        for d in range(len(basis) - 1):
            basis[d] -= xs[i] * basis[d + 1]
    return [int(c) for c in reversed(poly)]


class TestCharPoly:
    def test_k2(self):
        assert char_poly(G.complete(2)) == [1, 0, -1]

    def test_edgeless(self):
        assert char_poly(G.edgeless(3)) == [1, 0, 0, 0]

    def test_c4(self):
        expected = poly_by_interpolation(G.cycle(4))
        assert expected == [1, 0, -4, 0, 0]
        assert char_poly(G.cycle(4)) == expected

    @pytest.mark.parametrize("n", range(1, 7))
    def test_matches_laplace(self, n):
        for seed in range(4):
            g = G.erdos_renyi(n, 0.5, seed)
            assert char_poly(g) == poly_by_interpolation(g)

    def test_matches_numpy(self):
        for seed in range(20):
            g = G.erdos_renyi(10, 0.4, seed)
            ref = np.round(np.poly(g.adj.astype(float))).astype(int).tolist()
            assert char_poly(g) == ref


class TestMultiplicity:
    def test_tower(self):
        # (x-1)^3 (x+2)^2 x
        p = np.poly([1, 1, 1, -2, -2, 0]).round().astype(int).tolist()
        mult, witness = max_multiplicity_exact(p)
        assert mult == 3 and witness == [1, -1]

    def test_ties(self):
        p = np.poly([2, 2, -1, -1]).round().astype(int).tolist()
        mult, witness = max_multiplicity_exact(p)
        assert mult == 2 and np.allclose(sorted(np.roots(witness)), [-1, 2])


class TestLowerBound:
    def test_path10(self):
        assert spectral_lower_bound(G.path(10)).lower_bound == 9

    def test_k5(self):
        rep = spectral_lower_bound(G.complete(5))
        assert rep.lower_bound == 1 and rep.max_multiplicity == 4 and rep.witness_eigenvalue == pytest.approx(-1)

    def test_pm4(self):
        assert spectral_lower_bound(G.perfect_matching(4)).lower_bound == 4

    def test_render(self):
        text = spectral_lower_bound(G.complete(5), "exact").render()
        assert text.startswith("lb=1 mult=4 lambda≈-1 method=exact")

    def test_bad_mode(self):
        with pytest.raises(InvalidParameter):
            spectral_lower_bound(G.complete(3), "fast")

    def test_single_vertex(self):
        for mode in ("exact", "numeric"):
            rep = spectral_lower_bound(G.edgeless(1), mode)
            assert rep.lower_bound == 0 and rep.max_multiplicity == 1

    @pytest.mark.parametrize("n", range(2, 30))
    def test_family_values(self, n):
        assert spectral_lower_bound(G.path(n)).lower_bound == n - 1
        if n >= 3:
            assert spectral_lower_bound(G.cycle(n)).lower_bound >= n - 2
        if n <= 25:
            assert spectral_lower_bound(G.perfect_matching(n)).lower_bound == n
        # q = 1 is the edgeless graph, whose bound is 0
        assert spectral_lower_bound(G.complete(1, n)).lower_bound == 0
        for q in range(2, n // 2 + 1):
            assert spectral_lower_bound(G.complete(q, n)).lower_bound >= q

    def test_large_auto_numeric(self):
        rep = spectral_lower_bound(G.path(40))
        assert rep.method == "numeric" and rep.lower_bound == 39


def test_exact_numeric_agree_on_corpus():
    for seed in range(200):
        n = 2 + seed % 11
        p = ((seed * 7) % 10 + 0.5) / 10
        g = G.erdos_renyi(n, p, seed)
        a = spectral_lower_bound(g, "exact")
        b = spectral_lower_bound(g, "numeric")
        assert a.lower_bound == b.lower_bound, (n, p, seed)
        assert a.witness_eigenvalue == pytest.approx(b.witness_eigenvalue, abs=1e-6) or a.max_multiplicity == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 9), st.floats(0, 1), st.integers(0, 2**32))
def test_report_invariants(n, p, seed):
    g = G.erdos_renyi(n, p, seed)
    rep = spectral_lower_bound(g)
    assert rep.lower_bound == n - rep.max_multiplicity
    assert 1 <= rep.max_multiplicity <= n
    ev = np.linalg.eigvalsh(g.adj.astype(float))
    assert np.sum(np.abs(ev - rep.witness_eigenvalue) < 1e-6) == rep.max_multiplicity
