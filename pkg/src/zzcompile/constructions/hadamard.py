"""Hadamard matrices from Sylvester doubling, Paley type I and Kronecker products."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..errors import InvalidParameter

__all__ = ["HadamardMatrix", "hadamard", "is_hadamard"]


def is_hadamard(h) -> bool:
    a = np.asarray(h, dtype=np.int64)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or not np.isin(a, (-1, 1)).all():
        return False
    return bool((a @ a.T == a.shape[0] * np.eye(a.shape[0], dtype=np.int64)).all())


@dataclass(frozen=True)
class HadamardMatrix:
    order: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.order or not is_hadamard(self.entries):
            raise InvalidParameter("rows are not pairwise orthogonal +-1 vectors")

    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def _paley1(p: int) -> np.ndarray:
    """Order p+1 from the quadratic character of GF(p), p prime, p = 3 mod 4."""
    chi = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        chi[a] = 1 if pow(a, (p - 1) // 2, p) == 1 else -1
    idx = np.arange(p)
    jacobsthal = chi[(idx[None, :] - idx[:, None]) % p]
    s = np.zeros((p + 1, p + 1), dtype=np.int64)
    s[0, 1:] = 1
    s[1:, 0] = -1
    s[1:, 1:] = jacobsthal
    return np.eye(p + 1, dtype=np.int64) + s


@lru_cache(maxsize=None)
def _build(order: int) -> tuple[tuple[int, ...], ...] | None:
    if order == 1:
        return ((1,),)
    if order == 2:
        return ((1, 1), (1, -1))
    if order % 4:
        return None
    if order & (order - 1) == 0:
        h2 = np.array(_build(2))
        h = np.kron(h2, np.array(_build(order // 2)))
        return tuple(map(tuple, h.tolist()))
    if _is_prime(order - 1) and (order - 1) % 4 == 3:
        return tuple(map(tuple, _paley1(order - 1).tolist()))
    for a in range(2, order // 2 + 1):
        if order % a:
            continue
        ha, hb = _build(a), _build(order // a)
        if ha is not None and hb is not None:
            return tuple(map(tuple, np.kron(np.array(ha), np.array(hb)).tolist()))
    return None


def hadamard(order: int) -> HadamardMatrix | None:
    """A Hadamard matrix of the given order, or None when no covered construction applies.

    None for orders 3, 6, 7, ... is a mathematical fact; for multiples of 4
    outside the covered constructions (e.g. 28, 36) it only means "not built here".
    """
    if order < 1:
        raise InvalidParameter(f"order must be positive, got {order}")
    entries = _build(order)
    return None if entries is None else HadamardMatrix(order, entries)
