from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from ..decomposition import biclique_row

QUARTER = Fraction(1, 4)


def sb(cut: Iterable[int], n: int) -> int:
    return biclique_row(cut, n)


def vertices_of(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out
