"""Seeded randomized property suites for the binary lemmas and E_k facts.

Each suite draws ``count`` valid instances from a ``random.Random(seed)``
and checks one property against a brute-force or independent computation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Callable, Optional

from . import fp
from .binarith import (
    binom_mod_p,
    contains_binary,
    is_two_complement,
    unique_completion,
    unique_exceeding_completion,
)
from .reduced import a_k, build_ek, eps, final_matrix, nonvanishing_sequence

__all__ = ["DEFAULT_SEED", "SuiteResult", "SUITES", "run_suite"]

DEFAULT_SEED = 20240601


@dataclass
class SuiteResult:
    suite: str
    seed: int
    count: int
    passed: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.count

    def to_record(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "count": self.count,
            "passed": self.passed,
            "ok": self.ok,
            "failures": self.failures[:10],
        }


# a case returns None on success or a dict describing the failure
Case = Callable[[random.Random], Optional[dict]]


def _positions(rng: random.Random, lo: int, hi: int, n: int) -> list[int]:
    return sorted(rng.sample(range(lo, hi), n))


def _case_lucas(rng):
    p = rng.choice((2, 3, 5, 7))
    m = rng.randrange(0, 2000)
    n = rng.randrange(0, m + 2)
    want = comb(m, n) % p if n <= m else 0
    got = binom_mod_p(m, n, p)
    return None if got == want else {"m": m, "n": n, "p": p, "got": got}


def _case_two_digits_1(rng):
    bs = _positions(rng, 0, 14, rng.randint(1, 6))
    as_ = _positions(rng, 0, 14, rng.randint(1, 6))
    big, small = sum(1 << v for v in bs), sum(1 << v for v in as_)
    if big < small:
        bs, as_, big, small = as_, bs, small, big
    x = big - small
    digits = set(bs) | set(as_)
    has = any(x >> v & 1 for v in digits)
    bad = has != (x > 0)
    if x > 0:
        low = (x & -x).bit_length() - 1
        bad |= low < min(as_[0], bs[0])
        if bs[0] > as_[0]:
            bad |= not x >> as_[0] & 1
    return {"b": bs, "a": as_} if bad else None


def _case_two_digits_2(rng):
    s = rng.randint(1, 1 << 12)
    t = rng.randint(1, s)
    ok = contains_binary(s, t) == (eps(s - t, s) == 1)
    return None if ok else {"s": s, "t": t}


def _case_elementary1(rng):
    positions = _positions(rng, 0, 12, rng.randint(1, 6))
    x = rng.randrange(0, 1 << 14)
    if not any(x >> v & 1 for v in positions):
        x |= 1 << rng.choice(positions)
    valid = []
    for r in range(len(positions) + 1):
        for sub in combinations(positions, r):
            y = x + sum(1 << v for v in sub)
            if not any(y >> v & 1 for v in positions):
                valid.append(sub)
    got = unique_completion(x, positions)
    if valid == [tuple(got)]:
        return None
    return {"x": x, "positions": positions, "got": list(got), "brute": [list(v) for v in valid]}


def _case_elementary2(rng):
    lams = _positions(rng, 0, 12, rng.randint(2, 6))
    total = sum(1 << v for v in lams)
    while True:
        chosen = [v for v in lams if rng.random() < 0.5]
        target = sum(1 << v for v in chosen)
        if target < total:
            break
    high = lams[1:]
    valid = []
    for r in range(1, len(lams) + 1):
        for sub in combinations(lams, r):
            diff = sum(1 << v for v in sub) - target
            if diff > 0 and not any(diff >> v & 1 for v in high):
                valid.append(sub)
    got = unique_exceeding_completion(target, lams)
    if valid == [tuple(got)]:
        return None
    return {"target": target, "positions": lams, "got": list(got), "brute": [list(v) for v in valid]}


def _case_two_digit_3(rng):
    bs = _positions(rng, 0, 16, rng.randint(2, 7))
    b0, rest = bs[0], bs[1:]
    pool = [v for v in range(b0, bs[-1])]
    cs = sorted(rng.sample(pool, rng.randint(1, min(4, len(pool)))))
    value = sum(1 << v for v in range(b0, bs[-1] + 1) if v not in rest) + sum(1 << v for v in cs)
    ok = any(value >> v & 1 for v in set(rest) | set(cs))
    return None if ok else {"b": bs, "c": cs}


def _case_two_complement_2(rng):
    # draw (k, i) with k a 2-complement of i, then h with i - h also a target
    i = rng.randint(1, 1 << 10)
    width = i.bit_length()
    mask = (1 << width) - 1
    k = ((mask - i) & mask) + (rng.randrange(0, 1 << 8) << width)
    hs = [h for h in range(i + 1) if is_two_complement(k, i - h)]
    h = rng.choice(hs)
    return None if eps(h, i) == 1 else {"k": k, "i": i, "h": h}


def _case_two_complement_3(rng):
    i = rng.randint(1, 1 << 9)
    k = rng.randrange(0, 1 << 12)
    if is_two_complement(k, i):
        k += 1
        if is_two_complement(k, i):
            return None
    ok = any(a_k(k, s, i) for s in range(1, i + 1))
    return None if ok else {"k": k, "i": i}


def _case_row_parity(rng):
    while True:
        k = rng.randint(0, 1 << 12)
        l = rng.randint(1, 128)
        seq = nonvanishing_sequence(k, l)
        if len(seq) >= 2:
            break
    s = rng.randrange(1, len(seq))
    mat = final_matrix(k, l, s)
    odd = [h for h, row in enumerate(mat, start=1) if sum(row) % 2]
    return {"k": k, "l": l, "s": s, "odd_rows": odd[:5]} if odd else None


def _case_pivotal(rng):
    i = rng.randint(1, 48)
    width = i.bit_length()
    mask = (1 << width) - 1
    k = ((mask - i) & mask) + (rng.randrange(0, 1 << 6) << width)
    basis = fp.nullspace(build_ek(k, i).rows(), i + 1, 2)
    expected = [[0] * i + [1]]
    return None if basis == expected else {"k": k, "i": i}


SUITES: dict[str, Case] = {
    "lucas": _case_lucas,
    "2-digits-1": _case_two_digits_1,
    "2-digits-2": _case_two_digits_2,
    "elementary1": _case_elementary1,
    "elementary2": _case_elementary2,
    "2-digit-3": _case_two_digit_3,
    "2complement-2": _case_two_complement_2,
    "2complement-3": _case_two_complement_3,
    "row-parity": _case_row_parity,
    "pivotal": _case_pivotal,
}


def run_suite(name: str, seed: int = DEFAULT_SEED, count: int = 200) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    case = SUITES[name]
    # one stream per suite so results do not depend on suite order
    rng = random.Random(f"{name}:{seed}")
    result = SuiteResult(name, seed, count)
    for _ in range(count):
        failure = case(rng)
        if failure is None:
            result.passed += 1
        else:
            result.failures.append(failure)
    return result
