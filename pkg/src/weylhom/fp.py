"""Exact Gauss-Jordan elimination over the prime field F_p.

Two paths with identical observable behaviour: rows packed as Python ints
for p = 2, and numpy int64 arrays for odd p (entries stay below p^2).
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

__all__ = ["rref", "rank", "nullspace", "pack_row", "unpack_row"]


def pack_row(row: Sequence[int]) -> int:
    return int("".join("1" if v & 1 else "0" for v in reversed(row)) or "0", 2)


def unpack_row(bitsrow: int, width: int) -> list[int]:
    return [(bitsrow >> j) & 1 for j in range(width)]


def _pack_all(rows: Sequence[Sequence[int]]) -> list[int]:
    if not len(rows):
        return []
    packed = np.packbits(np.asarray(rows, dtype=np.uint8) & 1, axis=1, bitorder="little")
    return [int.from_bytes(r.tobytes(), "little") for r in packed]


def _rref_gf2(rows: Sequence[Sequence[int]], width: int) -> tuple[list[list[int]], list[int]]:
    # echelon basis keyed by lowest set bit, filled incrementally
    basis: dict[int, int] = {}
    for v in _pack_all(rows):
        while v:
            low = v & -v
            piv = basis.get(low)
            if piv is None:
                basis[low] = v
                break
            v ^= piv
    pivots = sorted(basis)
    # back-substitute so every pivot column is clear in the other rows
    for low in reversed(pivots):
        r = basis[low]
        for other in pivots:
            if other != low and basis[other] & low:
                basis[other] ^= r
    return [unpack_row(basis[low], width) for low in pivots], [low.bit_length() - 1 for low in pivots]


def _rref_odd(rows: Sequence[Sequence[int]], width: int, p: int) -> tuple[list[list[int]], list[int]]:
    if not rows or width == 0:
        return [], []
    m = np.asarray(rows, dtype=np.int64) % p
    m = m[m.any(axis=1)]
    if m.size:
        m = np.unique(m, axis=0)
    pivots: list[int] = []
    r = 0
    for col in range(width):
        if r == len(m):
            break
        nz = np.nonzero(m[r:, col])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = m[r] * pow(int(m[r, col]), -1, p) % p
        others = np.nonzero(m[:, col])[0]
        others = others[others != r]
        if others.size:
            m[others] = (m[others] - np.outer(m[others, col], m[r])) % p
        pivots.append(col)
        r += 1
    return m[:r].tolist(), pivots


def rref(rows: Sequence[Sequence[int]], width: int, p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form (nonzero rows only) and its pivot columns."""
    if p == 2:
        return _rref_gf2(rows, width)
    return _rref_odd(rows, width, p)


def rank(rows: Sequence[Sequence[int]], width: int, p: int) -> int:
    return len(rref(rows, width, p)[1])


def nullspace(rows: Sequence[Sequence[int]], width: int, p: int) -> list[list[int]]:
    """Basis of {x : rows . x = 0}, one vector per free column (set to 1)."""
    reduced, pivots = rref(rows, width, p)
    pivot_set = set(pivots)
    basis = []
    for free in range(width):
        if free in pivot_set:
            continue
        v = [0] * width
        v[free] = 1
        for row, pc in zip(reduced, pivots):
            if row[free]:
                v[pc] = (-row[free]) % p
        basis.append(v)
    return basis
