"""Warm starts from decompositions, and decompositions from solver solutions."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..constructions.auto import CompileResult
from ..decomposition import Decomposition, row_number, simplify, verify
from ..errors import InconsistentWarmStart, InfeasibleSolution, ParseError, PreconditionViolation
from ..graph import Graph
from .evaluate import evaluate
from .lpformat import format_number
from .model import MipModel

__all__ = ["WarmStart", "assignment_from_decomposition", "emit_warmstart", "parse_solution", "ingest_solution"]

log = logging.getLogger(__name__)

SNAP_DENOMINATOR = 64
NUMERIC_TOL = 1e-6


@dataclass(frozen=True)
class WarmStart:
    assignments: dict

    def text(self, names: list[str]) -> str:
        return "".join(f"{nm} {format_number(self.assignments[nm])}\n" for nm in names)


def _padding_rows(d: Decomposition, model: MipModel) -> list[int]:
    """Unused masks (weight 0) so the warm start fills all R rows; the all-ones row first if pinned."""
    n, R = model.n, model.R
    used = set(d.masks)
    need = R - len(d)
    pad = []
    if model.meta.get("all_ones") and 0 not in used:
        pad.append(0)
    # ascending odd row numbers; row number 1 has a single +1 but always sorts first, where the row-sum cut is off
    rn = 1
    full = (1 << n) - 1
    while len(pad) < need and rn <= full:
        mask = full ^ rn
        if mask not in used and mask not in pad:
            pad.append(mask)
        rn += 2
    if len(pad) != need:
        raise PreconditionViolation(f"cannot place a {len(d)}-row decomposition into R={R} rows")
    return pad


def assignment_from_decomposition(d: Decomposition, model: MipModel) -> dict:
    """Model values for a canonical decomposition; rows sorted by row number, padded with zero rows."""
    n, R = model.n, model.R
    if d.n != n:
        raise PreconditionViolation(f"decomposition has n={d.n}, model has n={n}")
    if not d.is_canonical():
        raise PreconditionViolation("warm start needs a canonical decomposition (see simplify)")
    if len(d) > R:
        raise PreconditionViolation(f"{len(d)} rows do not fit into R={R}")
    rows = list(d.rows) + [(m, Fraction(0)) for m in _padding_rows(d, model)]
    rows.sort(key=lambda r: row_number(r[0], n))
    a: dict = {}
    tr = Fraction(0)
    for r, (mask, w) in enumerate(rows, 1):
        p = [0 if mask >> i & 1 else 1 for i in range(n)]
        for i in range(1, n + 1):
            a[f"P_{r}_{i}"] = p[i - 1]
            for j in range(i, n + 1):
                zz = p[i - 1] * p[j - 1]
                if j > i:
                    a[f"z_{i}_{j}_{r}"] = zz
                a[f"t_{i}_{j}_{r}"] = w * zz
        a[f"W_{r}"] = w
        a[f"b_{r}"] = int(w != 0)
        tr += w
        if model.meta.get("ordering") == "firstdiff":
            if r < R:
                nxt = rows[r][0]
                for i in range(2, n + 1):
                    a[f"e_{r}_{i}"] = int(all((mask ^ nxt) >> (v - 1) & 1 == 0 for v in range(i, n + 1)))
        else:
            a[f"rn_{r}"] = row_number(mask, n)
    a["tr"] = tr
    return a


def emit_warmstart(d: Decomposition, model: MipModel) -> tuple[WarmStart, str]:
    """Warm start for ``model`` from ``d``, checked against every constraint before it is written."""
    a = assignment_from_decomposition(d, model)
    rep = evaluate(model, a)
    if not rep:
        raise InconsistentWarmStart(
            f"warm start violates {', '.join(rep.violated_tags)} (max violation {rep.max_violation})"
        )
    ws = WarmStart(a)
    return ws, ws.text([v.name for v in model.variables])


def parse_solution(text: str) -> dict[str, float]:
    """'name value' lines; '#' comments and blank lines are skipped."""
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'name value', got {s!r}")
        try:
            out[parts[0]] = float(parts[1])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: bad value {parts[1]!r}") from exc
    return out


def ingest_solution(text: str, g: Graph, model: MipModel) -> CompileResult:
    """Rebuild and verify a decomposition from a solver's variable listing.

    Binaries are rounded at 0.5 and weights snapped to the nearest fraction with
    denominator at most 64. When the snapped weights fail exact verification
    the raw floats are checked to 1e-6 instead and the result is labelled
    ``mip-numeric`` with ``verified`` False.
    """
    if g.n != model.n:
        raise PreconditionViolation(f"graph has n={g.n}, model has n={model.n}")
    values = parse_solution(text)
    known = {v.name for v in model.variables}
    for nm in values:
        if nm not in known:
            log.warning("ignoring unknown variable %s in solution", nm)
    n = g.n
    rows, floats = [], []
    for r in range(1, model.R + 1):
        if values.get(f"b_{r}", 0.0) < 0.5:
            continue
        w = values.get(f"W_{r}", 0.0)
        mask = 0
        for i in range(1, n + 1):
            if values.get(f"P_{r}_{i}", 0.0) < 0.5:
                mask |= 1 << (i - 1)
        rows.append((mask, Fraction(w).limit_denominator(SNAP_DENOMINATOR)))
        floats.append((mask, w))
    lb = model.meta.get("lower_bound")
    d = simplify(Decomposition(n, tuple(rows)))
    if verify(g, d):
        return CompileResult(d, "mip", len(d), lb, True)
    if floats:
        masks = np.array([m for m, _ in floats], dtype=object)
        p = np.array([[-1 if int(m) >> i & 1 else 1 for i in range(n)] for m in masks], dtype=float)
        gm = (p.T * np.array([w for _, w in floats])) @ p
    else:
        gm = np.zeros((n, n))
    iu = np.triu_indices(n, 1)
    err = np.abs(gm - g.adj)[iu]
    if err.size == 0 or float(err.max()) <= NUMERIC_TOL:
        d = Decomposition(n, tuple((m, Fraction(w)) for m, w in floats))
        return CompileResult(d, "mip-numeric", len(d), lb, False)
    raise InfeasibleSolution(f"solution misses the target by {float(err.max()):.3g}")
