"""Side criteria: hook-target vanishing, the all-ones map psi, and a
Carter-Payne non-factorisation trace for lambda = (a, 2, 1^d)."""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, field
from typing import Any, Optional, Sequence

from .binarith import check_prime, max_two_complement_target
from .errors import InvariantViolation, ParameterError
from .genhom import predicted_dimension
from .relsys import RelationSystem, build_relation_system
from .tabcomb import FamilyInstance

__all__ = [
    "l_p",
    "HookCriterionResult",
    "hook_vanishing",
    "psi_condition_general",
    "PsiPaths",
    "psi_paths",
    "psi_nonzero",
    "Justification",
    "CpStep",
    "CpTrace",
    "row_removal",
    "cp_trace",
]


def l_p(y: int, p: int) -> int:
    """Least i with p^i > y."""
    if not isinstance(y, int) or y < 0:
        raise ParameterError(f"y must be a nonnegative integer, got {y!r}")
    check_prime(p)
    i, power = 0, 1
    while power <= y:
        power *= p
        i += 1
    return i


def _partition(parts: Sequence[int]) -> tuple[int, ...]:
    parts = tuple(parts)
    if any(not isinstance(x, int) or x < 0 for x in parts):
        raise ParameterError("partition parts must be nonnegative integers")
    if any(x < y for x, y in zip(parts, parts[1:])):
        raise ParameterError(f"{parts} is not weakly decreasing")
    return tuple(x for x in parts if x)


@dataclass(frozen=True)
class HookCriterionResult:
    applicable: bool
    vanishes: bool
    q: int
    check_value: int
    p_divides: bool

    def to_record(self) -> dict[str, Any]:
        return asdict(self)


def hook_vanishing(lam: Sequence[int], hook_a: int, hook_d: int, p: int) -> HookCriterionResult:
    """Vanishing test for Hom(Delta(lam), Delta(hook_a, 1^hook_d)).

    With q the last row of length >= 2 (q = 0 and lam_q = 0 for a column),
    Hom vanishes when q <= hook_d and p does not divide lam_q + hook_d + 2 - q.
    """
    check_prime(p)
    parts = _partition(lam)
    if hook_a < 1 or hook_d < 0:
        raise ParameterError("hook must have hook_a >= 1 and hook_d >= 0")
    if sum(parts) != hook_a + hook_d:
        raise ParameterError(f"sizes differ: |lambda| = {sum(parts)}, hook size {hook_a + hook_d}")
    if len(parts) < hook_d + 2:
        raise ParameterError(f"lambda needs at least {hook_d + 2} nonzero parts")
    long_rows = [i for i, x in enumerate(parts, start=1) if x >= 2]
    q = long_rows[-1] if long_rows else 0
    lam_q = parts[q - 1] if q else 0
    value = lam_q + hook_d + 2 - q
    divides = value % p == 0
    applicable = q <= hook_d
    return HookCriterionResult(applicable, applicable and not divides, q, value, divides)


def psi_condition_general(lam: Sequence[int], mu: Sequence[int], p: int) -> bool:
    """Divisibility test for psi: lam with m >= 2 rows, mu = (mu_1, mu_2), mu_2 <= lam_1 <= mu_1.

    p^{l_p(min(lam_2, mu_1 - lam_1))} | lam_1 - mu_2 + 1 and
    p^{l_p(lam_{i+1})} | lam_i + 1 for 2 <= i <= m - 1.
    """
    check_prime(p)
    lam = _partition(lam)
    mu = _partition(mu)
    if len(lam) < 2 or len(mu) != 2:
        raise ParameterError("need lambda with at least two rows and mu with exactly two")
    if sum(lam) != sum(mu) or not mu[1] <= lam[0] <= mu[0]:
        raise ParameterError("need |lambda| = |mu| and mu_2 <= lambda_1 <= mu_1")
    if (lam[0] - mu[1] + 1) % p ** l_p(min(lam[1], mu[0] - lam[0]), p):
        return False
    return all((lam[i - 1] + 1) % p ** l_p(lam[i], p) == 0 for i in range(2, len(lam)))


@dataclass(frozen=True)
class PsiPaths:
    arithmetic: bool
    seed: bool
    kernel: bool

    @property
    def agree(self) -> bool:
        return self.arithmetic == self.seed == self.kernel


def psi_paths(inst: FamilyInstance, system: Optional[RelationSystem] = None) -> PsiPaths:
    """Evaluate the psi condition three independent ways (p = 2 only)."""
    if inst.p != 2:
        raise ParameterError("psi criterion is stated for p = 2")
    a, b, m = inst.a, inst.b, inst.min_bd
    parity = a % 2 == 0 and b % 2 == 1
    arithmetic = parity and (a - b + 1) % (2 ** l_p(m, 2)) == 0
    seed = parity and max_two_complement_target(a - b, m) == 0
    if system is None:
        system = build_relation_system(inst)
    kernel = system.first_violation([1] * system.width) is None
    return PsiPaths(arithmetic, seed, kernel)


def psi_nonzero(inst: FamilyInstance, system: Optional[RelationSystem] = None) -> bool:
    paths = psi_paths(inst, system)
    if not paths.agree:
        raise InvariantViolation(f"psi evaluations disagree on {inst}: {paths}")
    return paths.kernel


class Justification(enum.Enum):
    PARITY = "main-theorem-parity"
    HOOK = "hook-criterion"
    ROW_REMOVAL_HOOK = "row-removal+hook-criterion"


@dataclass
class CpStep:
    case: str
    shape: tuple[int, ...]
    justification: Justification
    applicable: bool
    discharged: bool
    reduced_source: Optional[tuple[int, ...]] = None
    reduced_target: Optional[tuple[int, ...]] = None
    hook: Optional[HookCriterionResult] = None
    note: str = ""

    def to_record(self) -> dict[str, Any]:
        rec: dict[str, Any] = {
            "case": self.case,
            "shape": list(self.shape),
            "justification": self.justification.value,
            "applicable": self.applicable,
            "discharged": self.discharged,
        }
        if self.reduced_source is not None:
            rec["reduced"] = [list(self.reduced_source), list(self.reduced_target or ())]
        if self.hook is not None:
            rec["check_value"] = self.hook.check_value
        if self.note:
            rec["note"] = self.note
        return rec


@dataclass
class CpTrace:
    a: int
    d: int
    steps: list[CpStep] = field(default_factory=list)

    @property
    def conclusion(self) -> bool:
        """True when every applicable first step is shown to give zero."""
        return all(s.discharged for s in self.steps if s.applicable)

    def to_record(self) -> dict[str, Any]:
        return {
            "a": self.a,
            "d": self.d,
            "conclusion": self.conclusion,
            "steps": [s.to_record() for s in self.steps],
        }


def row_removal(src: Sequence[int], dst: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Strip common first rows from both shapes."""
    src, dst = _partition(src), _partition(dst)
    while src and dst and src[0] == dst[0]:
        src, dst = src[1:], dst[1:]
    return src, dst


def _hook_of(shape: tuple[int, ...]) -> tuple[int, int]:
    if any(x != 1 for x in shape[1:]):
        raise InvariantViolation(f"{shape} is not a hook")
    return shape[0], len(shape) - 1


def _parity_step(case: str, a: int, d: int) -> CpStep:
    # (a+1, 2, 1^{d-1}) -> (a+d, 2) has odd first row
    shape = (a + 1, 2) + (1,) * (d - 1)
    zero = predicted_dimension(FamilyInstance(a + 1, 2, d - 1, 2)) == 0
    return CpStep(case, shape, Justification.PARITY, True, zero)


def _reduced_hook_step(case: str, src: tuple[int, ...], dst: tuple[int, ...], applicable: bool, note: str = "") -> CpStep:
    if not applicable:
        return CpStep(case, dst, Justification.ROW_REMOVAL_HOOK, False, False, note=note)
    rsrc, rdst = row_removal(src, dst)
    ha, hd = _hook_of(rdst)
    res = hook_vanishing(rsrc, ha, hd, 2)
    return CpStep(case, dst, Justification.ROW_REMOVAL_HOOK, True, res.vanishes, rsrc, rdst, res, note)


def cp_trace(a: int, d: int) -> CpTrace:
    """Case analysis on the first Carter-Payne step out of (a, 2, 1^d), p = 2."""
    if not isinstance(a, int) or a < 2 or a % 2:
        raise ParameterError("a must be an even integer >= 2")
    if not isinstance(d, int) or d < 3 or d % 2 == 0:
        raise ParameterError("d must be an odd integer >= 3")
    src = (a, 2) + (1,) * d
    trace = CpTrace(a, d)

    trace.steps.append(_parity_step("1", a, d))

    case2 = (a, 3) + (1,) * (d - 1)
    trace.steps.append(
        _reduced_hook_step("2", src, case2, a >= 3, "" if a >= 3 else "(a, 3, ...) is not a partition for a < 3")
    )

    mid = (a + 1,) + (1,) * (d + 1)
    res = hook_vanishing(mid, a + 2, d, 2)
    trace.steps.append(CpStep("3a", (a + 2,) + (1,) * d, Justification.HOOK, True, res.vanishes, mid, (a + 2,) + (1,) * d, res))
    trace.steps.append(_parity_step("3b", a, d))

    case4 = (a, 2, 2) + (1,) * (d - 2)
    trace.steps.append(_reduced_hook_step("4", src, case4, True))
    return trace
