"""The relation system whose kernel is Hom_S(Delta(lambda), Delta(mu)).

A coefficient vector c over SST_lambda(mu) defines sum_T c_T phi_T, which
induces a map on Delta(lambda) iff it kills every x_{i,t}.  The images
phi_T(x_{i,t}) are expanded in the semistandard basis of weight lambda(i,t)
by closed formulas, so the condition is a finite linear system over F_p.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import fp
from .binarith import _binom
from .errors import InvariantViolation, ParameterError
from .tabcomb import (
    FamilyInstance,
    TableauKey,
    enumerate_weight_lambda_sst,
    enumerate_weight_sst,
    shifted_weight,
)

__all__ = [
    "MAX_D",
    "CoeffVector",
    "RelationSystem",
    "relation_labels",
    "expand_phi_x1t",
    "expand_phi_xit",
    "build_relation_system",
    "kernel",
    "hom_dimension",
]

# dense matrices have width sum_h C(d, h) <= 2^d
MAX_D = 16


@dataclass(frozen=True)
class CoeffVector:
    """Finitely supported map from tableau keys of one weight to F_p.

    Only nonzero residues are stored.
    """

    instance: FamilyInstance
    weight: tuple[int, ...]
    entries: Mapping[TableauKey, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        p = self.instance.p
        clean = {k: v % p for k, v in self.entries.items() if v % p}
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_list(cls, inst: FamilyInstance, values: Sequence[int]) -> "CoeffVector":
        keys = enumerate_weight_lambda_sst(inst)
        if len(values) != len(keys):
            raise ParameterError(f"expected {len(keys)} coefficients")
        return cls(inst, inst.lam, dict(zip(keys, values)))

    def __getitem__(self, key: TableauKey) -> int:
        return self.entries.get(key, 0)

    def __bool__(self) -> bool:
        return bool(self.entries)

    def to_list(self, keys: Iterable[TableauKey] | None = None) -> list[int]:
        if keys is None:
            keys = enumerate_weight_lambda_sst(self.instance)
        return [self.entries.get(k, 0) for k in keys]

    def support(self) -> list[TableauKey]:
        return sorted(self.entries, key=lambda k: (-k.b2, k.tail))


@dataclass
class RelationSystem:
    """Rows indexed by (label, target key); columns by SST_lambda(mu)."""

    instance: FamilyInstance
    columns: list[TableauKey]
    row_labels: list[tuple[tuple[int, int], TableauKey]]
    rows: list[list[int]]

    @property
    def width(self) -> int:
        return len(self.columns)

    def labels(self) -> list[tuple[int, int]]:
        seen: dict[tuple[int, int], None] = {}
        for lab, _ in self.row_labels:
            seen.setdefault(lab, None)
        return list(seen)

    def apply(self, values: Sequence[int]) -> list[int]:
        p = self.instance.p
        return [sum(r * v for r, v in zip(row, values)) % p for row in self.rows]

    def first_violation(self, values: Sequence[int]) -> tuple[int, int] | None:
        """Label of the first relation not annihilated by ``values``."""
        for (lab, _), out in zip(self.row_labels, self.apply(values)):
            if out:
                return lab
        return None


def relation_labels(inst: FamilyInstance) -> list[tuple[int, int]]:
    """(1, t) for t <= min(b, d), then (i, 1) for 2 <= i <= d+1."""
    return [(1, t) for t in range(1, inst.min_bd + 1)] + [(i, 1) for i in range(2, inst.d + 2)]


def _nonneg(x: int, what: str) -> int:
    if x < 0:
        raise InvariantViolation(f"negative intermediate {what} = {x}")
    return x


def expand_phi_x1t(inst: FamilyInstance, key: TableauKey, t: int) -> CoeffVector:
    """phi_T(x_{1,t}) in the semistandard basis of weight lambda(1, t).

    Sum over 0/1 vectors k_3..k_{d+2} supported where b_s = 0, with
    t - (b - b_2) <= k <= b_2, of
    (-1)^k C(lambda_1 - b_2 + t, t - k) prod C(b_s + k_s, k_s).
    """
    b, p = inst.b, inst.p
    if not 1 <= t <= b:
        raise ParameterError(f"t must lie in [1, {b}]")
    weight = shifted_weight(inst, 1, t)
    if t > inst.min_bd:
        return CoeffVector(inst, weight)
    lam1 = inst.a
    b2 = key.b2
    tail = key.tail
    zeros = [s for s, v in enumerate(tail) if v == 0]
    top = _nonneg(lam1 - b2 + t, "lambda_1 - b_2 + t")
    acc: dict[TableauKey, int] = defaultdict(int)
    for k in range(max(0, t - (b - b2)), min(b2, t, len(zeros)) + 1):
        c = _binom(top, t - k, p)
        if not c:
            continue
        if k % 2:
            c = p - c
        # the tail factors C(b_s + k_s, k_s) are all 1 since k_s = 1 forces b_s = 0
        head = (lam1 + t, _nonneg(b - b2 - t + k, "first-row 2s"))
        for chosen in combinations(zeros, k):
            sec = list(tail)
            for s in chosen:
                sec[s] = 1
            first = head + tuple(1 - v for v in sec)
            acc[TableauKey(first, (0, b2 - k) + tuple(sec))] += c
    return CoeffVector(inst, weight, acc)


def expand_phi_xit(inst: FamilyInstance, key: TableauKey, i: int, t: int = 1) -> CoeffVector:
    """phi_T(x_{i,t}) for 2 <= i <= d+1 in the basis of weight lambda(i, t).

    Sum over j in [max(0, t - b_{i+1}), min(t, a_{i+1})] of
    C(a_i + j, j) C(b_i + t - j, t - j), moving j letters i+1 -> i in the
    first row and t - j in the second.
    """
    p = inst.p
    if not 2 <= i <= inst.d + 1:
        raise ParameterError(f"i must lie in [2, {inst.d + 1}]")
    weight = shifted_weight(inst, i, t)
    lo, hi = i - 1, i  # 0-based positions of the letters i and i+1
    ai, an = key.first_row[lo], key.first_row[hi]
    bi, bn = key.second_row[lo], key.second_row[hi]
    acc: dict[TableauKey, int] = defaultdict(int)
    for j in range(max(0, t - bn), min(t, an) + 1):
        coeff = _binom(ai + j, j, p) * _binom(bi + t - j, t - j, p) % p
        if not coeff:
            continue
        first = list(key.first_row)
        second = list(key.second_row)
        first[lo] += j
        first[hi] -= j
        second[lo] += t - j
        second[hi] -= t - j
        acc[TableauKey(tuple(first), tuple(second))] += coeff
    return CoeffVector(inst, weight, acc)


def _expansion(inst: FamilyInstance, key: TableauKey, label: tuple[int, int]) -> CoeffVector:
    i, t = label
    return expand_phi_x1t(inst, key, t) if i == 1 else expand_phi_xit(inst, key, i, t)


def build_relation_system(inst: FamilyInstance) -> RelationSystem:
    if inst.d > MAX_D:
        raise ParameterError(f"d = {inst.d} exceeds the dense-matrix cap {MAX_D}")
    columns = enumerate_weight_lambda_sst(inst)
    row_labels: list[tuple[tuple[int, int], TableauKey]] = []
    rows: list[list[int]] = []
    for label in relation_labels(inst):
        targets = enumerate_weight_sst(inst, shifted_weight(inst, *label))
        where = {key: n for n, key in enumerate(targets)}
        block = [[0] * len(columns) for _ in targets]
        for col, key in enumerate(columns):
            for target, coeff in _expansion(inst, key, label).entries.items():
                try:
                    block[where[target]][col] = coeff
                except KeyError:
                    raise InvariantViolation(f"expansion left the semistandard basis: {target}") from None
        row_labels.extend((label, target) for target in targets)
        rows.extend(block)
    return RelationSystem(inst, columns, row_labels, rows)


def kernel(system: RelationSystem) -> list[CoeffVector]:
    """Nullspace basis; free coordinates set to 1, pivots solved from the RREF."""
    inst = system.instance
    basis = fp.nullspace(system.rows, system.width, inst.p)
    return [CoeffVector(inst, inst.lam, dict(zip(system.columns, v))) for v in basis]


def hom_dimension(inst: FamilyInstance) -> int:
    system = build_relation_system(inst)
    return system.width - fp.rank(system.rows, system.width, inst.p)
