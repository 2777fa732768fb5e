"""Base-p digits, Lucas binomials and binary-expansion predicates.

Everything here is a pure function of Python integers, so there is no
overflow regime; digit sequences are least-significant first.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, isqrt
from typing import Iterator, Optional, Sequence

from .errors import DomainError, ParameterError

__all__ = [
    "DigitSeq",
    "is_prime",
    "check_prime",
    "base_p_digits",
    "binom_mod_p",
    "bits",
    "is_two_complement",
    "contains_binary",
    "max_two_complement_target",
    "containment_upset",
    "unique_completion",
    "unique_exceeding_completion",
]


@dataclass(frozen=True)
class DigitSeq:
    digits: tuple[int, ...]
    p: int

    @property
    def value(self) -> int:
        return sum(d * self.p**i for i, d in enumerate(self.digits))

    def __len__(self) -> int:
        return len(self.digits)

    def __getitem__(self, i: int) -> int:
        return self.digits[i]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, isqrt(p) + 1))


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise ParameterError(f"p must be prime, got {p!r}")
    return p


def _check_nonneg(**values: int) -> None:
    for name, v in values.items():
        if not isinstance(v, int) or v < 0:
            raise ParameterError(f"{name} must be a nonnegative integer, got {v!r}")


def base_p_digits(m: int, p: int) -> DigitSeq:
    """Digits of ``m`` in base ``p``, least significant first; ``0 -> [0]``."""
    _check_nonneg(m=m)
    check_prime(p)
    if m == 0:
        return DigitSeq((0,), p)
    out = []
    while m:
        m, r = divmod(m, p)
        out.append(r)
    return DigitSeq(tuple(out), p)


def binom_mod_p(m: int, n: int, p: int) -> int:
    """C(m, n) mod p by Lucas' theorem, with C(m, n) = 0 when n > m."""
    _check_nonneg(m=m, n=n)
    check_prime(p)
    return _binom(m, n, p)


@lru_cache(maxsize=1 << 16)
def _binom(m: int, n: int, p: int) -> int:
    # unchecked; callers guarantee nonnegative m, n and prime p
    if n > m:
        return 0
    if p == 2:
        # digitwise C(m_i, n_i) is 0 exactly when n_i = 1 > m_i = 0
        return int(n & ~m == 0)
    result = 1
    while n:
        m, mi = divmod(m, p)
        n, ni = divmod(n, p)
        if ni > mi:
            return 0
        result = result * comb(mi, ni) % p
    return result


def bits(x: int) -> list[int]:
    """Positions of the set binary digits of ``x``, ascending."""
    out = []
    pos = 0
    while x:
        if x & 1:
            out.append(pos)
        x >>= 1
        pos += 1
    return out


def is_two_complement(k: int, i: int) -> bool:
    """True iff ``i + k`` has every binary digit up to ``i``'s top digit set.

    For ``i = 0`` the convention is: any odd ``k`` qualifies.  ``(0, 0)``
    is therefore False.
    """
    _check_nonneg(k=k, i=i)
    if i == 0:
        return k % 2 == 1
    mask = (1 << i.bit_length()) - 1
    return (i + k) & mask == mask


def contains_binary(x: int, y: int) -> bool:
    """True iff every set binary digit of ``y`` is also set in ``x``."""
    _check_nonneg(x=x, y=y)
    return y & ~x == 0


def max_two_complement_target(k: int, bound: int) -> Optional[int]:
    """Largest ``i`` in ``[0, bound]`` of which ``k`` is a 2-complement.

    Each dyadic block ``[2^m, 2^(m+1))`` holds at most one candidate, namely
    the residue of ``-1 - k`` modulo ``2^(m+1)``, so the scan is logarithmic.
    """
    _check_nonneg(k=k, bound=bound)
    for m in range(bound.bit_length() - 1, -1, -1):
        cand = (-1 - k) % (1 << (m + 1))
        if cand >> m and cand <= bound:
            return cand
    return 0 if k % 2 else None


def _free_positions(seed: int, width: int) -> list[int]:
    return [pos for pos in range(width) if not (seed >> pos) & 1]


def _deposit(n: int, positions: Sequence[int]) -> int:
    out = 0
    for j, pos in enumerate(positions):
        if (n >> j) & 1:
            out |= 1 << pos
    return out


def iter_supersets(seed: int, bound: int) -> Iterator[int]:
    """Integers in ``[seed, bound]`` containing ``seed``, in increasing order."""
    width = max(bound.bit_length(), seed.bit_length())
    free = _free_positions(seed, width)
    for n in range(1 << len(free)):
        i = seed | _deposit(n, free)
        if i > bound:
            return
        yield i


def containment_upset(seed: int, bound: int) -> tuple[int, ...]:
    _check_nonneg(seed=seed, bound=bound)
    return tuple(iter_supersets(seed, bound))


def unique_completion(x: int, positions: Sequence[int]) -> tuple[int, ...]:
    """The subsequence ``b`` of ``positions`` clearing them all from ``x + sum 2^b``.

    Adding ``2^pos`` to a number whose digit ``pos`` is set clears that digit
    and only carries upwards, so sweeping the positions in ascending order
    forces every choice.
    """
    _check_nonneg(x=x)
    positions = list(positions)
    if any(q <= p for p, q in zip(positions, positions[1:])) or any(p < 0 for p in positions):
        raise ParameterError("positions must be strictly increasing and nonnegative")
    if not any((x >> pos) & 1 for pos in positions):
        raise DomainError("x has no set digit among the given positions")
    y = x
    chosen = []
    for pos in positions:
        if (y >> pos) & 1:
            y += 1 << pos
            chosen.append(pos)
    return tuple(chosen)


def unique_exceeding_completion(target: int, positions: Sequence[int]) -> tuple[int, ...]:
    """The subsequence of ``positions`` whose sum exceeds ``target`` by a number
    with no digit at ``positions[1:]``.

    With ``lam_j`` the lowest position absent from ``target``, the answer is
    ``lam_j`` together with every digit of ``target`` above it.
    """
    _check_nonneg(target=target)
    positions = list(positions)
    if any(q <= p for p, q in zip(positions, positions[1:])) or any(p < 0 for p in positions):
        raise ParameterError("positions must be strictly increasing and nonnegative")
    if len(positions) < 2:
        raise DomainError("need at least two positions")
    allowed = sum(1 << p for p in positions)
    if target & ~allowed:
        raise DomainError("target has a digit outside the given positions")
    if target >= allowed:
        raise DomainError("target must be smaller than the sum of all positions")
    first_missing = next(p for p in positions if not (target >> p) & 1)
    return (first_missing,) + tuple(p for p in positions if p > first_missing and (target >> p) & 1)
