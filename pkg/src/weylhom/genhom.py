"""Predicted Hom dimension, closed-form generator, and end-to-end verification."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

from . import fp
from .errors import ParameterError, UnsupportedRegime
from .reduced import HSet, Variant, closed_form_hset
from .relsys import CoeffVector, RelationSystem, build_relation_system
from .tabcomb import FamilyInstance, enumerate_weight_lambda_sst, format_key

__all__ = [
    "HomReport",
    "predicted_dimension",
    "generator_hset",
    "generator_vector",
    "spans_kernel",
    "verify_instance",
]


@dataclass
class HomReport:
    instance: FamilyInstance
    predicted_dim: int
    computed_dim: int
    generator: Optional[CoeffVector] = None
    hset: Optional[HSet] = None
    verified: bool = False
    failing_label: Optional[tuple[int, int]] = None
    detail: str = ""

    def to_record(self, with_support: bool = False) -> dict[str, Any]:
        inst = self.instance
        rec: dict[str, Any] = {
            "a": inst.a,
            "b": inst.b,
            "d": inst.d,
            "p": inst.p,
            "predicted": self.predicted_dim,
            "computed": self.computed_dim,
            "match": self.predicted_dim == self.computed_dim,
            "verified": self.verified,
        }
        if self.hset is not None:
            rec["variant"] = self.hset.variant.value
            rec["seed"] = self.hset.seed
            rec["members"] = list(self.hset.members)
        if self.failing_label is not None:
            rec["failing_label"] = list(self.failing_label)
        if self.detail:
            rec["detail"] = self.detail
        if with_support and self.generator is not None:
            rec["support"] = [format_key(k) for k in self.generator.support()]
        return rec


def _check_regime(inst: FamilyInstance) -> None:
    if inst.b < 2 or inst.d < 2:
        raise UnsupportedRegime("only b, d >= 2 are covered")


def predicted_dimension(inst: FamilyInstance) -> int:
    """1 iff p = 2 and a is even."""
    _check_regime(inst)
    return int(inst.p == 2 and inst.a % 2 == 0)


def generator_hset(inst: FamilyInstance) -> HSet:
    """Index set carrying the generator, for p = 2 and a even.

    b even: k = (a - b)/2 over the odd slices 2i + 1 <= min(b, d).
    b odd: gamma = a - b over all slices 0..min(b, d).
    """
    if inst.p != 2 or inst.a % 2:
        raise ParameterError("a generator exists only for p = 2 and a even")
    if inst.b % 2 == 0:
        l = inst.l
        h = closed_form_hset(inst.k, l, Variant.EVEN_EVEN)
        if h is None:
            # l = 0: the single odd slice is unconstrained
            h = HSet(0, (0,), Variant.EVEN_EVEN, l)
        return h
    h = closed_form_hset(inst.gamma, inst.lprime, Variant.EVEN_ODD)
    assert h is not None  # gamma is odd, so 0 always qualifies
    return h


def generator_vector(inst: FamilyInstance) -> CoeffVector:
    """Sum of F_h over the H-set: coefficient 1 on every key with b - b_2 in the slice set."""
    hset = generator_hset(inst)
    slices = set(hset.slices())
    entries = {key: 1 for key in enumerate_weight_lambda_sst(inst) if inst.b - key.b2 in slices}
    return CoeffVector(inst, inst.lam, entries)


def spans_kernel(system: RelationSystem, vector: list[int]) -> bool:
    """True iff every kernel basis vector is a multiple of ``vector``."""
    p = system.instance.p
    width = system.width
    basis = fp.nullspace(system.rows, width, p)
    if not any(vector):
        return not basis
    base_rank = fp.rank([vector], width, p)
    return fp.rank([vector] + basis, width, p) == base_rank


def verify_instance(inst: FamilyInstance, system: Optional[RelationSystem] = None) -> HomReport:
    predicted = predicted_dimension(inst)
    if system is None:
        system = build_relation_system(inst)
    computed = system.width - fp.rank(system.rows, system.width, inst.p)
    report = HomReport(inst, predicted, computed)
    if predicted != computed:
        report.detail = "dimension mismatch"
        return report
    if predicted == 0:
        report.verified = True
        return report
    report.hset = generator_hset(inst)
    gen = generator_vector(inst)
    report.generator = gen
    values = gen.to_list(system.columns)
    bad = system.first_violation(values)
    if bad is not None:
        report.failing_label = bad
        report.detail = "generator not in kernel"
        return report
    if not spans_kernel(system, values):
        report.detail = "generator does not span kernel"
        return report
    report.verified = True
    return report
