"""Reduced equation systems and their closed-form solutions (p = 2).

Over F_2 the relation system collapses, slice by slice in b_2, to a small
banded system E_k in the variables c_0..c_l.  Its solution space is one
dimensional and supported on a binary-containment upset.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from . import fp
from .binarith import (
    _binom,
    bits,
    contains_binary,
    containment_upset,
    max_two_complement_target,
)
from .errors import InvariantViolation, ParameterError
from .tabcomb import FamilyInstance, TableauKey, enumerate_weight_lambda_sst

__all__ = [
    "Variant",
    "EkSystem",
    "HSet",
    "ReducedEquations",
    "a_k",
    "eps",
    "build_reduced_equations",
    "reduced_solution_space",
    "build_ek",
    "build_ek_unreduced",
    "ek_rows",
    "solve_ek",
    "closed_form_hset",
    "nonvanishing_sequence",
    "final_matrix",
    "lift_hset",
]


class Variant(enum.Enum):
    EVEN_EVEN = "even-even"  # variable i stands for the slice b - b_2 = 2i + 1
    EVEN_ODD = "even-odd"  # variable i stands for the slice b - b_2 = i

    def slice_of(self, i: int) -> int:
        return 2 * i + 1 if self is Variant.EVEN_EVEN else i


def a_k(k: int, x: int, y: int) -> int:
    """C(k + y + x, x) mod 2; 1 for x = 0 and 0 for x < 0."""
    if x < 0:
        return 0
    return _binom(k + y + x, x, 2)


def eps(x: int, y: int) -> int:
    """C(y, x) mod 2, zero outside 0 <= x <= y."""
    if x < 0 or x > y:
        return 0
    return _binom(y, x, 2)


@dataclass(frozen=True)
class EkSystem:
    """Blocks A_{1,k}..A_{l,k}; block i has rows s = 1..i over columns 0..l."""

    k: int
    l: int
    variant: Variant
    blocks: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def width(self) -> int:
        return self.l + 1

    def block(self, i: int) -> tuple[tuple[int, ...], ...]:
        if not 1 <= i <= self.l:
            raise ParameterError(f"block index must lie in [1, {self.l}]")
        return self.blocks[i - 1]

    def rows(self, upto: Optional[int] = None) -> list[list[int]]:
        top = self.l if upto is None else upto
        return [list(r) for blk in self.blocks[:top] for r in blk]


@dataclass(frozen=True)
class HSet:
    """Surviving variable indices: seed and its containment upset."""

    seed: int
    members: tuple[int, ...]
    variant: Variant
    bound: int

    def slices(self) -> tuple[int, ...]:
        """The values b - b_2 carrying the generator."""
        return tuple(self.variant.slice_of(i) for i in self.members)


def _check_kl(k: int, l: int) -> None:
    for name, v in (("k", k), ("l", l)):
        if not isinstance(v, int) or v < 0:
            raise ParameterError(f"{name} must be a nonnegative integer, got {v!r}")


def build_ek(k: int, l: int, variant: Variant = Variant.EVEN_EVEN) -> EkSystem:
    """Banded system with entry a_k(s - j, i) eps(j, i) on column i - j.

    For the even-odd variant pass gamma = a - b as ``k``.  l = 0 yields the
    empty system in one free variable.
    """
    _check_kl(k, l)
    blocks = []
    for i in range(1, l + 1):
        # eps(j, i) = 1 exactly for the j whose binary digits lie inside i
        inside = [j for j in range(i + 1) if j & ~i == 0]
        ak = [a_k(k, x, i) for x in range(i + 1)]
        blk = []
        for s in range(1, i + 1):
            row = [0] * (l + 1)
            for j in inside:
                if j > s:
                    break
                row[i - j] = ak[s - j]
            blk.append(tuple(row))
        blocks.append(tuple(blk))
    return EkSystem(k, l, Variant(variant), tuple(blocks))


def build_ek_unreduced(k: int, l: int) -> list[list[int]]:
    """Even-even rows before parity halving.

    Row (t = 2s, r = 2i + 1): sum over even j of
    C(2k + r + t - j, t - j) C(r, j) c_{(r - j - 1) / 2}.
    """
    _check_kl(k, l)
    gamma = 2 * k
    rows = []
    for i in range(1, l + 1):
        r = 2 * i + 1
        for s in range(1, i + 1):
            t = 2 * s
            row = [0] * (l + 1)
            for j in range(0, t + 1, 2):
                row[(r - j - 1) // 2] ^= _binom(gamma + r + t - j, t - j, 2) & _binom(r, j, 2)
            rows.append(row)
    return rows


def ek_rows(system: EkSystem) -> list[list[int]]:
    return system.rows()


def closed_form_hset(k: int, bound: int, variant: Variant = Variant.EVEN_EVEN) -> Optional[HSet]:
    """Seed = largest i <= bound of which k is a 2-complement; None if there is none."""
    _check_kl(k, bound)
    seed = max_two_complement_target(k, bound)
    if seed is None:
        return None
    return HSet(seed, tuple(containment_upset(seed, bound)), Variant(variant), bound)


def solve_ek(system: EkSystem) -> Optional[HSet]:
    """Solve by elimination, then recognise the solution as an HSet.

    Returns None for the zero solution.  Any other shape raises
    InvariantViolation.
    """
    basis = fp.nullspace(system.rows(), system.width, 2)
    if not basis:
        return None
    if len(basis) > 1:
        raise InvariantViolation(f"E_k solution space has dimension {len(basis)}")
    support = [i for i, v in enumerate(basis[0]) if v]
    seed = support[0]
    if tuple(support) != containment_upset(seed, system.l):
        raise InvariantViolation(f"E_k support {support} is not a containment upset")
    expected = max_two_complement_target(system.k, system.l)
    # l = 0 with k even has no 2-complement target but one free variable
    if system.l > 0 and seed != expected:
        raise InvariantViolation(f"E_k seed {seed} differs from 2-complement target {expected}")
    return HSet(seed, tuple(support), system.variant, system.l)


def nonvanishing_sequence(k: int, l: int) -> list[int]:
    """i_0 then, greedily, each next i with eps(i - i_q, i) = 1 for some earlier i_q."""
    _check_kl(k, l)
    i0 = max_two_complement_target(k, l)
    if i0 is None:
        raise ParameterError(f"no i <= {l} has {k} as a 2-complement")
    seq = [i0]
    for c in range(i0 + 1, l + 1):
        if any(eps(c - prev, c) for prev in seq):
            seq.append(c)
    return seq


def final_matrix(k: int, l: int, s: int) -> list[list[int]]:
    """Matrix of A_{i_s,k} restricted to the columns y_0 < ... < y_t = i_s.

    Row h (1-based, h = 1..i_s) holds a_k(y - (h - 1), i_s).  Each entry
    is also recomputed from the digit criterion and the two must agree.
    """
    seq = nonvanishing_sequence(k, l)
    if not 1 <= s < len(seq):
        raise ParameterError(f"s must lie in [1, {len(seq) - 1}]")
    i0, top = seq[0], seq[s]
    cols = [y for y in seq if y <= top and contains_binary(top, y)]
    lams = bits(top - i0)
    low, high = lams[0], sum(1 << v for v in lams[1:])
    low_mask = (1 << low) - 1
    out = []
    for h in range(1, top + 1):
        row = []
        for y in cols:
            x = y - (h - 1)
            direct = a_k(k, x, top)
            if x < 0:
                formula = 0
            elif x == 0:
                formula = 1
            else:
                formula = 0 if (x & high or x & low_mask) else 1
            if direct != formula:
                raise InvariantViolation(f"final-matrix entry mismatch at x={x}, y_t={top}, k={k}")
            row.append(direct)
        out.append(row)
    return out


def lift_hset(inst: FamilyInstance, hset: HSet) -> list[int]:
    """0/1 coefficient vector on SST_lambda(mu) supported on the H slices."""
    slices = set(hset.slices())
    return [int(inst.b - key.b2 in slices) for key in enumerate_weight_lambda_sst(inst)]


@dataclass
class ReducedEquations:
    """Equation rows over SST_lambda(mu), split into the three groups."""

    instance: FamilyInstance
    columns: list[TableauKey]
    group1: list[list[int]]
    group2: list[list[int]]
    group3: list[list[int]]

    def all_rows(self) -> list[list[int]]:
        return self.group1 + self.group2 + self.group3


def _tail_vectors(length: int, weight: int):
    for ones in combinations(range(length), weight):
        v = [0] * length
        for i in ones:
            v[i] = 1
        yield v


def build_reduced_equations(inst: FamilyInstance) -> ReducedEquations:
    a, b, d, p = inst.a, inst.b, inst.d, inst.p
    columns = enumerate_weight_lambda_sst(inst)
    where = {(key.b2,) + key.tail: n for n, key in enumerate(columns)}
    width = len(columns)
    m = inst.min_bd

    def col(b2: int, tail) -> int:
        return where[(b2,) + tuple(tail)]

    group1 = []
    for r in range(1, m + 1):
        for rs in _tail_vectors(d, r):
            ones = [i for i, v in enumerate(rs) if v]
            for t in range(1, r + 1):
                row = [0] * width
                for k in range(0, t + 1):
                    c = _binom(a - b + r + t - k, t - k, p)
                    if not c:
                        continue
                    if k % 2:
                        c = p - c
                    for chosen in combinations(ones, k):
                        tail = list(rs)
                        for i in chosen:
                            tail[i] = 0
                        j = col(b + k - r, tail)
                        row[j] = (row[j] + c) % p
                group1.append(row)

    group2 = []
    for q in range(b - min(b, d - 1), b + 1):
        for rest in _tail_vectors(d - 1, b - q):
            row = [0] * width
            row[col(q, [0] + rest)] = (b - q + 1) % p
            if q > 0:
                j = col(q - 1, [1] + rest)
                row[j] = (row[j] + q) % p
            group2.append(row)

    group3 = []
    by_slice: dict[int, list[int]] = {}
    for n, key in enumerate(columns):
        by_slice.setdefault(key.b2, []).append(n)
    if p == 2:
        for members in by_slice.values():
            for n in members[1:]:
                row = [0] * width
                row[members[0]] = row[n] = 1
                group3.append(row)
    elif d >= 3:
        for n in range(width):
            row = [0] * width
            row[n] = 1
            group3.append(row)
    else:
        # d = 2, p odd: 2c_{x,1,1} = 0, 2c_{x,0,0} = 0, c_{x,1,0} + c_{x,0,1} = 0
        for b2, members in by_slice.items():
            if len(members) == 1:
                row = [0] * width
                row[members[0]] = 2 % p
                group3.append(row)
            else:
                row = [0] * width
                for n in members:
                    row[n] = 1
                group3.append(row)
    return ReducedEquations(inst, columns, group1, group2, group3)


def reduced_solution_space(eqs: ReducedEquations) -> list[list[int]]:
    """Row-reduced basis of the common solution space of all three groups."""
    p = eqs.instance.p
    width = len(eqs.columns)
    basis = fp.nullspace(eqs.all_rows(), width, p)
    return fp.rref(basis, width, p)[0] if basis else []
