"""Pulse programs of global MS layers separated by single-qubit bit flips.

During layer p every qubit whose row-p sign is -1 sits flipped, which negates
all of its ZZ couplings in that layer. Flips between consecutive layers are
merged into one mask (the symmetric difference of the two rows' -1 sets), and
the last mask undoes whatever is still flipped.

The QAOA angle multiplies every MS weight uniformly and is carried as a
symbolic name, not folded into the weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .constructions.auto import CompileResult
from .decomposition import Decomposition, verify
from .errors import MalformedInput, ResourceLimit, UnverifiedInput
from .graph import Graph

__all__ = [
    "PulseProgram",
    "GateCounts",
    "emit_pulse_program",
    "phase_equivalence_check",
    "gate_counts",
    "naive_flip_count",
    "format_circuit",
    "parse_circuit",
    "PHASE_CHECK_MAX_N",
]

PHASE_CHECK_MAX_N = 14


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class PulseProgram:
    n: int
    prologue_flips: int
    layers: tuple[tuple[Fraction, int], ...]  # (MS weight, flips applied after the layer)
    scale: str = "gamma"

    def __post_init__(self) -> None:
        acc = self.prologue_flips
        for _, post in self.layers:
            acc ^= post
        if acc:
            raise MalformedInput("flip masks do not cancel: qubits left flipped at the end")

    def flip_states(self) -> list[int]:
        """Mask of flipped qubits during each layer, rebuilt from the flip masks."""
        out, state = [], self.prologue_flips
        for _, post in self.layers:
            out.append(state)
            state ^= post
        return out

    @property
    def bit_flips(self) -> int:
        return _popcount(self.prologue_flips) + sum(_popcount(m) for _, m in self.layers)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "scale": self.scale,
            "prologue_flips": [i + 1 for i in range(self.n) if self.prologue_flips >> i & 1],
            "layers": [
                {"ms_weight": str(w), "post_flips": [i + 1 for i in range(self.n) if m >> i & 1]}
                for w, m in self.layers
            ],
        }


def _greedy_order(rows: list[tuple[int, Fraction]], n: int) -> list[tuple[int, Fraction]]:
    """Nearest-mask chaining; each row may also be used in its complemented form (same coupling)."""
    full = (1 << n) - 1
    left = list(rows)
    out, prev = [], 0
    while left:
        best = None
        for k, (m, w) in enumerate(left):
            for cand in (m, m ^ full):
                cost = _popcount(prev ^ cand)
                if best is None or cost < best[0]:
                    best = (cost, k, cand, w)
        _, k, cand, w = best
        out.append((cand, w))
        prev = cand
        left.pop(k)
    return out


def emit_pulse_program(d, g: Graph | None = None, *, reorder: bool = False, scale: str = "gamma") -> PulseProgram:
    """Layers in row order, or greedily chained to save flips with ``reorder``.

    ``d`` is a Decomposition or a CompileResult. Passing ``g`` re-verifies the
    rows against it; any failed or missing verification raises UnverifiedInput.
    """
    if isinstance(d, CompileResult):
        if not d.verified:
            raise UnverifiedInput(f"{d.method} result was not verified exactly")
        d = d.decomposition
    if not isinstance(d, Decomposition):
        raise TypeError("expected a Decomposition or CompileResult")
    if g is not None:
        rep = verify(g, d)
        if not rep:
            raise UnverifiedInput(f"decomposition misses pair {rep.offending_pair} by {rep.worst_violation}")
    rows = list(d.rows)
    if reorder:
        rows = _greedy_order(rows, d.n)
    if not rows:
        return PulseProgram(d.n, 0, (), scale)
    layers = []
    for p, (mask, w) in enumerate(rows):
        nxt = rows[p + 1][0] if p + 1 < len(rows) else 0
        layers.append((w, mask ^ nxt))
    return PulseProgram(d.n, rows[0][0], tuple(layers), scale)


def naive_flip_count(d: Decomposition) -> int:
    """Flips when every layer is wrapped in its own flips before and after."""
    return 2 * sum(_popcount(m) for m in d.masks)


def phase_equivalence_check(p: PulseProgram, g: Graph) -> bool:
    """Exhaustive exact check over all 2^n basis states.

    For state x, layer p adds w_p * sum_{i<j} s_i s_j, where s_i = -1 iff qubit i
    is in x XOR the current flip mask; with c ones among the n signs that sum is
    ((n - 2c)^2 - n) / 2. The target phase is m - 2 * cut(x).
    """
    n = p.n
    if n != g.n:
        raise MalformedInput(f"program has {n} qubits, graph has {g.n} vertices")
    if n > PHASE_CHECK_MAX_N:
        raise ResourceLimit(f"phase check enumerates 2^n states; capped at n <= {PHASE_CHECK_MAX_N}")
    states = np.arange(1 << n, dtype=np.int64)
    pop = np.zeros(1 << n, dtype=np.int64)
    for b in range(n):
        pop += (states >> b) & 1
    cut = np.zeros(1 << n, dtype=np.int64)
    for i, j in g.edges():
        cut += ((states >> i) ^ (states >> j)) & 1
    den = lcm(*(w.denominator for w, _ in p.layers)) if p.layers else 1
    ints = [int(w * den) for w, _ in p.layers]
    big = sum(abs(x) for x in ints) * n * n
    dtype = np.int64 if big < 2**62 and den * n * n < 2**62 else object
    phase = np.zeros(1 << n, dtype=dtype)
    for w, flip in zip(ints, p.flip_states()):
        c = pop[states ^ flip]
        phase = phase + w * (((n - 2 * c) ** 2 - n) // 2).astype(dtype)
    target = ((g.m - 2 * cut).astype(dtype)) * den
    return bool((phase == target).all())


@dataclass(frozen=True)
class GateCounts:
    ms_layers: int
    bit_flips: int
    baseline_cnots: int
    baseline_rzs: int


def gate_counts(d: Decomposition, g: Graph, *, reorder: bool = False) -> GateCounts:
    prog = emit_pulse_program(d, reorder=reorder)
    return GateCounts(len(d), prog.bit_flips, 2 * g.m, g.m)


# ---------------------------------------------------------------- text format


def _qubits(mask: int, n: int) -> str:
    return " ".join(str(i + 1) for i in range(n) if mask >> i & 1)


def format_circuit(p: PulseProgram) -> str:
    out = [f"# scale {p.scale}", f"N {p.n}"]
    if p.prologue_flips:
        out.append(f"X {_qubits(p.prologue_flips, p.n)}")
    for w, post in p.layers:
        out.append(f"MS {w}")
        if post:
            out.append(f"X {_qubits(post, p.n)}")
    return "\n".join(out) + "\n"


def parse_circuit(text: str) -> PulseProgram:
    n, scale = None, "gamma"
    pending = 0
    prologue, layers = 0, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] == "scale":
                scale = parts[1]
            continue
        op, *args = line.split()
        try:
            if op == "N" and len(args) == 1 and n is None:
                n = int(args[0])
            elif op == "X" and n is not None and args:
                for a in args:
                    q = int(a)
                    if not 1 <= q <= n:
                        raise MalformedInput(f"line {lineno}: qubit {q} outside 1..{n}")
                    pending ^= 1 << (q - 1)
            elif op == "MS" and n is not None and len(args) == 1:
                if layers:
                    layers[-1] = (layers[-1][0], pending)
                else:
                    prologue = pending
                pending = 0
                layers.append((Fraction(args[0]), 0))
            else:
                raise MalformedInput(f"line {lineno}: unexpected {line!r}")
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInput(f"line {lineno}: bad number in {line!r}") from exc
    if n is None:
        raise MalformedInput("missing 'N <n>' header")
    if layers:
        layers[-1] = (layers[-1][0], pending)
    elif pending:
        prologue = pending
    return PulseProgram(n, prologue, tuple(layers), scale)
