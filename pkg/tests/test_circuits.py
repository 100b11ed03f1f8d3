from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zzcompile import graph as G
from zzcompile.circuits import (
    PulseProgram,
    emit_pulse_program,
    format_circuit,
    gate_counts,
    naive_flip_count,
    parse_circuit,
    phase_equivalence_check,
)
from zzcompile.constructions import (
    CompileResult,
    compile_auto,
    perfect_matching_decomposition,
    star_decomposition,
    union_of_double_stars,
    union_of_stars,
)
from zzcompile.decomposition import Decomposition, ones, simplify
from zzcompile.errors import MalformedInput, ResourceLimit, UnverifiedInput

from .test_decomposition import PROTO_P, PROTO_W


def simulate_couplings(p):
    """Effective pair couplings replayed gate by gate from the program alone."""
    n = p.n
    coup = {pair: F(0) for pair in combinations(range(n), 2)}
    flipped = [False] * n
    for q in range(n):
        if p.prologue_flips >> q & 1:
            flipped[q] = not flipped[q]
    for w, post in p.layers:
        for i, j in coup:
            coup[i, j] += w * (-1 if flipped[i] != flipped[j] else 1)
        for q in range(n):
            if post >> q & 1:
                flipped[q] = not flipped[q]
    assert not any(flipped)
    return coup


def proto():
    return simplify(Decomposition.from_signs(PROTO_P, PROTO_W))


class TestEmit:
    def test_complete_one_layer(self):
        p = emit_pulse_program(ones(5))
        assert p.prologue_flips == 0 and p.layers == ((1, 0),) and p.bit_flips == 0

    def test_star_program(self):
        g = G.Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
        d = star_decomposition(0, [1, 2, 3], 4)
        p = emit_pulse_program(d, g)
        assert len(p.layers) == 4
        # every mask touches only qubits whose sign changes between neighbouring rows
        masks = d.masks + [0]
        assert p.prologue_flips == masks[0]
        assert [m for _, m in p.layers] == [masks[k] ^ masks[k + 1] for k in range(4)]
        assert phase_equivalence_check(p, g)

    def test_prototype_flips(self):
        d = proto()
        p = emit_pulse_program(d, G.prototype())
        assert len(p.layers) == 6
        assert p.bit_flips < naive_flip_count(d)

    def test_edgeless(self):
        p = emit_pulse_program(Decomposition(3, ()))
        assert p.layers == () and phase_equivalence_check(p, G.edgeless(3))

    def test_unverified(self):
        with pytest.raises(UnverifiedInput):
            emit_pulse_program(ones(3), G.path(3))
        bad = CompileResult(ones(3), "mip-numeric", 1, None, False)
        with pytest.raises(UnverifiedInput):
            emit_pulse_program(bad)

    def test_compile_result_accepted(self):
        r = compile_auto(G.cycle(6))
        assert phase_equivalence_check(emit_pulse_program(r), G.cycle(6))

    def test_reorder_keeps_phase_and_saves_flips(self):
        for seed in range(8):
            g = G.erdos_renyi(9, 0.5, seed)
            d = union_of_stars(g)
            plain = emit_pulse_program(d)
            greedy = emit_pulse_program(d, reorder=True)
            assert phase_equivalence_check(greedy, g)
            assert greedy.bit_flips <= plain.bit_flips

    def test_masks_must_cancel(self):
        with pytest.raises(MalformedInput):
            PulseProgram(3, 1, ((F(1), 0),))


class TestPhaseCheck:
    def test_k3(self):
        assert phase_equivalence_check(emit_pulse_program(ones(3)), G.complete(3))

    def test_double_stars_er10(self):
        g = G.erdos_renyi(10, 0.5, 10)
        assert phase_equivalence_check(emit_pulse_program(union_of_double_stars(g)), g)

    def test_perturbed_layer(self):
        g = G.erdos_renyi(8, 0.5, 3)
        p = emit_pulse_program(union_of_stars(g))
        layers = list(p.layers)
        layers[1] = (layers[1][0] + F(1, 8), layers[1][1])
        assert not phase_equivalence_check(PulseProgram(p.n, p.prologue_flips, tuple(layers)), g)

    def test_cap(self):
        with pytest.raises(ResourceLimit):
            phase_equivalence_check(emit_pulse_program(ones(15)), G.complete(15))

    def test_size_mismatch(self):
        with pytest.raises(MalformedInput):
            phase_equivalence_check(emit_pulse_program(ones(3)), G.complete(4))


class TestCounts:
    def test_k5(self):
        c = gate_counts(ones(5), G.complete(5))
        assert c.ms_layers == 1 and c.baseline_cnots == 20 and c.baseline_rzs == 10

    def test_pm4(self):
        d, _ = perfect_matching_decomposition(4)
        c = gate_counts(d, G.perfect_matching(4))
        assert c.ms_layers == 4 and c.baseline_cnots == 8

    def test_p4_oracle(self, oracle):
        c = gate_counts(oracle.solution(G.path(4)), G.path(4))
        assert c.ms_layers == 5 and c.baseline_cnots == 6


class TestFormat:
    def test_roundtrip(self):
        p = emit_pulse_program(proto(), scale="theta")
        text = format_circuit(p)
        assert text.startswith("# scale theta\nN 6\n")
        assert parse_circuit(text) == p

    @pytest.mark.parametrize("text", ["MS 1\n", "N 3\nX 4\nMS 1\n", "N 3\nMS x\n", "N 2\nFOO\n", "N 2\nX 1\nMS 1\n"])
    def test_rejects(self, text):
        with pytest.raises(MalformedInput):
            parse_circuit(text)

    def test_dict(self):
        out = emit_pulse_program(proto()).to_dict()
        assert out["n"] == 6 and len(out["layers"]) == 6


@st.composite
def verified_programs(draw):
    n = draw(st.integers(2, 8))
    g = G.erdos_renyi(n, draw(st.floats(0, 1)), draw(st.integers(0, 2**31)))
    d = draw(st.sampled_from([union_of_stars, union_of_double_stars]))(g)
    return g, d, emit_pulse_program(d, g, reorder=draw(st.booleans()))


@settings(max_examples=60, deadline=None)
@given(verified_programs())
def test_program_invariants(case):
    g, d, p = case
    acc = p.prologue_flips
    for _, m in p.layers:
        acc ^= m
    assert acc == 0 and len(p.layers) == len(d)
    assert phase_equivalence_check(p, g)
    coup = simulate_couplings(p)
    assert all(coup[i, j] == int(g.has_edge(i, j)) for i, j in coup)
