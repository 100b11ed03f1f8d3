"""Exact evaluation of an assignment against a model."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from ..errors import MissingVariable
from .model import BINARY, INTEGER, MipModel

__all__ = ["EvalReport", "evaluate"]


@dataclass(frozen=True)
class EvalReport:
    max_violation: Fraction
    violated_tags: tuple[str, ...]
    violated_rows: tuple[str, ...]
    objective: Fraction

    @property
    def feasible(self) -> bool:
        return self.max_violation == 0

    def __bool__(self) -> bool:
        return self.feasible


class _Compiled:
    """Constraint rows flattened into integer (row, column, coefficient) arrays."""

    def __init__(self, model: MipModel):
        self.index = {v.name: k for k, v in enumerate(model.variables)}
        rows, cols, coefs, rhs, scale = [], [], [], [], []
        index = self.index
        for r, c in enumerate(model.constraints):
            # almost every row is integral; skip the Fraction work for those
            if type(c.rhs) is int and all(type(a) is int for a, _ in c.terms):
                den = 1
                coefs += [a for a, _ in c.terms]
                rhs.append(c.rhs)
            else:
                den = lcm(*(Fraction(a).denominator for a, _ in c.terms), Fraction(c.rhs).denominator)
                coefs += [int(Fraction(a) * den) for a, _ in c.terms]
                rhs.append(int(Fraction(c.rhs) * den))
            rows += [r] * len(c.terms)
            cols += [index[v] for _, v in c.terms]
            scale.append(den)
        self.rows = np.array(rows, dtype=np.int64)
        self.cols = np.array(cols, dtype=np.int64)
        self.coefs = coefs
        self.rhs = rhs
        self.scale = scale
        self.max_coef = max((abs(x) for x in coefs), default=0)
        self.max_terms = max((len(c.terms) for c in model.constraints), default=0)


_CACHE: dict[int, tuple[MipModel, _Compiled]] = {}


def _compiled(model: MipModel) -> _Compiled:
    hit = _CACHE.get(id(model))
    if hit is None or hit[0] is not model:
        hit = (model, _Compiled(model))
        _CACHE.clear()
        _CACHE[id(model)] = hit
    return hit[1]


def evaluate(model: MipModel, assignment: dict) -> EvalReport:
    """Worst violation over constraints, bounds and integrality, in exact arithmetic."""
    values = []
    for v in model.variables:
        if v.name not in assignment:
            raise MissingVariable(v.name)
        values.append(Fraction(assignment[v.name]))
    comp = _compiled(model)
    den = lcm(*(x.denominator for x in values)) if values else 1
    ints = [int(x * den) for x in values]
    big = max((abs(x) for x in ints), default=0)
    max_rhs = max((abs(x) for x in comp.rhs), default=0)
    exact_int64 = comp.max_coef * big * max(comp.max_terms, 1) < 2**62 and max_rhs * den < 2**62
    dtype = np.int64 if exact_int64 else object
    vals = np.array(ints, dtype=dtype)
    coefs = np.array(comp.coefs, dtype=dtype)
    lhs = np.zeros(len(model.constraints), dtype=dtype)
    if len(comp.rows):
        np.add.at(lhs, comp.rows, coefs * vals[comp.cols])

    worst = Fraction(0)
    tags, names = set(), []
    for r, c in enumerate(model.constraints):
        diff = int(lhs[r]) - comp.rhs[r] * den
        if c.sense == "<=":
            bad = max(diff, 0)
        elif c.sense == ">=":
            bad = max(-diff, 0)
        else:
            bad = abs(diff)
        if bad:
            viol = Fraction(bad, den * comp.scale[r])
            worst = max(worst, viol)
            tags.add(c.tag)
            names.append(c.name)
    for v, x in zip(model.variables, values):
        bad = Fraction(0)
        if v.lower is not None and x < v.lower:
            bad = v.lower - x
        if v.upper is not None and x > v.upper:
            bad = max(bad, x - v.upper)
        if v.kind in (BINARY, INTEGER) and x.denominator != 1:
            bad = max(bad, abs(x - round(x)))
        if bad:
            worst = max(worst, bad)
            tags.add("bounds")
            names.append(v.name)
    obj = sum((Fraction(a) * Fraction(assignment[v]) for a, v in model.objective), Fraction(0))
    return EvalReport(worst, tuple(sorted(tags)), tuple(names), obj)
