"""Two-row tableaux of shape mu = (a+d, b) and the shuffle tableaux T_{h,sigma}.

A tableau is stored as two multiplicity vectors over the letters 1..d+2
(index 0 is the letter 1).  Only the letters 1..d+2 ever occur, so the
rank of the general linear group is fixed at d+2 and never exposed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Sequence

from .binarith import check_prime
from .errors import ParameterError, UnsupportedRegime

__all__ = [
    "FamilyInstance",
    "TableauKey",
    "Shuffle",
    "enumerate_weight_lambda_sst",
    "enumerate_weight_sst",
    "shifted_weight",
    "shuffles",
    "tableau_from_shuffle",
    "key_to_index",
    "index_to_key",
    "format_key",
    "parse_key",
]


@dataclass(frozen=True)
class FamilyInstance:
    """lambda = (a, b, 1^d) and mu = (a+d, b) over a field of characteristic p."""

    a: int
    b: int
    d: int
    p: int

    def __post_init__(self) -> None:
        for name in ("a", "b", "d", "p"):
            if not isinstance(getattr(self, name), int):
                raise ParameterError(f"{name} must be an integer")
        check_prime(self.p)
        if self.b < 1 or self.d < 1 or self.a < self.b:
            raise ParameterError(
                f"(a, b, 1^d) = ({self.a}, {self.b}, 1^{self.d}) is not a partition with a >= b >= 1, d >= 1"
            )
        if self.b == 1 or self.d == 1:
            raise UnsupportedRegime("b = 1 and d = 1 are outside the family (b, d >= 2 required)")

    @property
    def lam(self) -> tuple[int, ...]:
        return (self.a, self.b) + (1,) * self.d

    @property
    def mu(self) -> tuple[int, int]:
        return (self.a + self.d, self.b)

    @property
    def r(self) -> int:
        return self.a + self.b + self.d

    @property
    def letters(self) -> int:
        return self.d + 2

    @property
    def min_bd(self) -> int:
        return min(self.b, self.d)

    @property
    def k(self) -> int:
        """(a - b) / 2; meaningful when a and b are both even."""
        if (self.a - self.b) % 2:
            raise ParameterError("k is defined only when a - b is even")
        return (self.a - self.b) // 2

    @property
    def gamma(self) -> int:
        return self.a - self.b

    @property
    def l(self) -> int:
        """Number of odd integers in [1, min(b, d)], minus one."""
        return (self.min_bd + 1) // 2 - 1

    @property
    def lprime(self) -> int:
        return self.min_bd

    def __str__(self) -> str:
        return f"a={self.a} b={self.b} d={self.d} p={self.p}"


@dataclass(frozen=True, order=True)
class TableauKey:
    first_row: tuple[int, ...]
    second_row: tuple[int, ...]

    @property
    def weight(self) -> tuple[int, ...]:
        return tuple(x + y for x, y in zip(self.first_row, self.second_row))

    @property
    def b2(self) -> int:
        return self.second_row[1]

    @property
    def tail(self) -> tuple[int, ...]:
        """Second-row multiplicities of the letters 3..d+2."""
        return self.second_row[2:]

    def __str__(self) -> str:
        return format_key(self)


@dataclass(frozen=True)
class Shuffle:
    """A permutation of 1..n, increasing on positions 1..split and split+1..n."""

    image: tuple[int, ...]
    split: int

    def __post_init__(self) -> None:
        n = len(self.image)
        if sorted(self.image) != list(range(1, n + 1)) or not 0 <= self.split <= n:
            raise ParameterError("not a permutation with a valid split point")
        head, tail = self.image[: self.split], self.image[self.split :]
        if list(head) != sorted(head) or list(tail) != sorted(tail):
            raise ParameterError(f"{self.image} is not a ({self.split}, {n - self.split})-shuffle")


def shifted_weight(inst: FamilyInstance, i: int, t: int) -> tuple[int, ...]:
    """lambda(i, t): move t from part i+1 to part i (1-based)."""
    lam = list(inst.lam)
    if not 1 <= i < len(lam) or not 1 <= t <= lam[i]:
        raise ParameterError(f"lambda({i},{t}) undefined for {lam}")
    lam[i - 1] += t
    lam[i] -= t
    return tuple(lam)


def _second_rows(weight: Sequence[int], total: int):
    """Second-row vectors (no letter 1) with entries bounded by ``weight``.

    Ordered by descending count of the letter 2, then lexicographically on
    the remaining letters.
    """
    rest = weight[2:]

    def tails(pos: int, remaining: int):
        if pos == len(rest):
            if remaining == 0:
                yield ()
            return
        for v in range(0, min(rest[pos], remaining) + 1):
            for tl in tails(pos + 1, remaining - v):
                yield (v,) + tl

    for b2 in range(min(weight[1], total), -1, -1):
        for tl in tails(0, total - b2):
            yield (0, b2) + tl


def enumerate_weight_sst(inst: FamilyInstance, weight: Sequence[int]) -> list[TableauKey]:
    """All semistandard keys of shape mu with the given weight.

    Since mu_2 <= lambda_1 every row-semistandard filling without a 1 in the
    second row is semistandard.
    """
    weight = tuple(weight)
    if len(weight) != inst.letters:
        raise ParameterError(f"weight must have {inst.letters} entries")
    if any(not isinstance(w, int) or w < 0 for w in weight):
        raise ParameterError("weight entries must be nonnegative integers")
    if sum(weight) != inst.r:
        raise ParameterError(f"weight must sum to {inst.r}")
    return _enumerate(inst.a, inst.b, inst.d, weight)


@lru_cache(maxsize=4096)
def _enumerate(a: int, b: int, d: int, weight: tuple[int, ...]) -> list[TableauKey]:
    out = []
    for second in _second_rows(weight, b):
        first = tuple(w - s for w, s in zip(weight, second))
        out.append(TableauKey(first, second))
    return out


def enumerate_weight_lambda_sst(inst: FamilyInstance) -> list[TableauKey]:
    """SST_lambda(mu) in canonical order: descending b_2, then lexicographic tail.

    Its size is sum_{h <= min(b, d)} C(d, h).
    """
    keys = _enumerate(inst.a, inst.b, inst.d, inst.lam)
    assert len(keys) == sum(comb(inst.d, h) for h in range(inst.min_bd + 1))
    return keys


@lru_cache(maxsize=1024)
def _index(a: int, b: int, d: int) -> dict[TableauKey, int]:
    lam = (a, b) + (1,) * d
    return {key: i for i, key in enumerate(_enumerate(a, b, d, lam))}


def key_to_index(inst: FamilyInstance, key: TableauKey) -> int:
    try:
        return _index(inst.a, inst.b, inst.d)[key]
    except KeyError:
        raise ParameterError(f"{key} is not in SST_lambda(mu)") from None


def index_to_key(inst: FamilyInstance, i: int) -> TableauKey:
    keys = enumerate_weight_lambda_sst(inst)
    if not 0 <= i < len(keys):
        raise ParameterError(f"index {i} out of range 0..{len(keys) - 1}")
    return keys[i]


def shuffles(s: int, t: int) -> list[Shuffle]:
    """The C(s+t, s) shuffles of Sh(s, t), lexicographic in their first block."""
    if s < 0 or t < 0 or s + t < 1:
        raise ParameterError("need s, t >= 0 and s + t >= 1")
    n = s + t
    out = []
    for head in combinations(range(1, n + 1), s):
        chosen = set(head)
        tail = tuple(x for x in range(1, n + 1) if x not in chosen)
        out.append(Shuffle(head + tail, s))
    return out


def tableau_from_shuffle(inst: FamilyInstance, h: int, sigma: Shuffle) -> TableauKey:
    """T_{h,sigma}: first row 1^a 2^h x_sigma(1..d-h), second 2^(b-h) x_sigma(d-h+1..d)."""
    d = inst.d
    if not 0 <= h <= inst.min_bd:
        raise ParameterError(f"h must lie in [0, {inst.min_bd}]")
    if len(sigma.image) != d or sigma.split != d - h:
        raise ParameterError(f"sigma must be a ({d - h}, {h})-shuffle of 1..{d}")
    first = [0] * (d + 2)
    second = [0] * (d + 2)
    first[0], first[1], second[1] = inst.a, h, inst.b - h
    for pos, j in enumerate(sigma.image):
        row = first if pos < d - h else second
        row[j + 1] += 1  # x_j is the letter j + 2, stored at index j + 1
    return TableauKey(tuple(first), tuple(second))


def _format_row(row: Sequence[int]) -> str:
    parts = []
    for letter, mult in enumerate(row, start=1):
        if mult == 1:
            parts.append(str(letter))
        elif mult > 1:
            parts.append(f"{letter}^({mult})")
    return " ".join(parts)


def format_key(key: TableauKey) -> str:
    """Exponential notation, e.g. ``1^(6) 2^(2)/2 3 4``."""
    return f"{_format_row(key.first_row)}/{_format_row(key.second_row)}"


_TOKEN = re.compile(r"^(\d+)(?:\^\((\d+)\))?$")


def parse_key(text: str, letters: int) -> TableauKey:
    rows = text.split("/")
    if len(rows) != 2:
        raise ParameterError(f"expected 'row1/row2', got {text!r}")
    parsed = []
    for row in rows:
        counts = [0] * letters
        for tok in row.split():
            m = _TOKEN.match(tok)
            if not m or not 1 <= int(m.group(1)) <= letters:
                raise ParameterError(f"bad token {tok!r}")
            counts[int(m.group(1)) - 1] += int(m.group(2) or 1)
        parsed.append(tuple(counts))
    return TableauKey(parsed[0], parsed[1])


def check_key(inst: FamilyInstance, key: TableauKey, weight: Sequence[int] | None = None) -> None:
    """Raise ParameterError unless ``key`` is a valid shape-mu key of the given weight.

    With ``weight=None`` the weight-lambda constraints of SST_lambda(mu) are checked.
    """
    n = inst.letters
    if len(key.first_row) != n or len(key.second_row) != n:
        raise ParameterError("key has the wrong number of letters")
    if min(key.first_row + key.second_row) < 0:
        raise ParameterError("negative multiplicity")
    if sum(key.first_row) != inst.mu[0] or sum(key.second_row) != inst.mu[1]:
        raise ParameterError("row sums differ from mu")
    if key.second_row[0] != 0:
        raise ParameterError("letter 1 in the second row")
    if key.weight != tuple(inst.lam if weight is None else weight):
        raise ParameterError("wrong weight")
    if weight is None:
        if key.first_row[0] != inst.a or not max(0, inst.b - inst.d) <= key.b2 <= inst.b:
            raise ParameterError("violates the weight-lambda constraints")
        if any(v not in (0, 1) for v in key.tail):
            raise ParameterError("tail multiplicities must be 0 or 1")
