"""Canonical enumerations of countable carriers.

None of these orders carries meaning beyond fixing a deterministic search
order; "first hit wins" everywhere refers to them.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt


def pair(i: int, j: int) -> int:
    """Cantor pairing ℕ×ℕ → ℕ."""
    s = i + j
    return s * (s + 1) // 2 + j


def unpair(n: int) -> tuple[int, int]:
    s = (isqrt(8 * n + 1) - 1) // 2
    j = n - s * (s + 1) // 2
    return s - j, j


def diagonal(bound: int):
    """Index pairs (i, j) with i, j ≤ bound, by i + j ascending then i ascending."""
    for s in range(2 * bound + 1):
        for i in range(max(0, s - bound), min(s, bound) + 1):
            yield i, s - i


def nat_sequence(n: int) -> tuple[int, ...]:
    """Bijection ℕ → ℕ* reading the gaps between the set bits of n."""
    out = []
    while n:
        k = (n & -n).bit_length() - 1
        out.append(k)
        n >>= k + 1
    return tuple(out)


def word(n: int, size: int) -> tuple[int, ...]:
    """Bijection ℕ → {0..size-1}* in length-then-lexicographic order."""
    if size == 1:
        return (0,) * n
    out = []
    while n:
        n -= 1
        n, r = divmod(n, size)
        out.append(r)
    return tuple(reversed(out))


def _fusc(n: int) -> int:
    a, b = 1, 0
    while n:
        if n & 1:
            b += a
        else:
            a += b
        n >>= 1
    return b


def positive_rational(k: int) -> Fraction:
    """k-th positive rational (k ≥ 1) in Calkin-Wilf order: 1, 1/2, 2, 1/3, 3/2, ..."""
    return Fraction(_fusc(k), _fusc(k + 1))


def rational(n: int) -> Fraction:
    """Bijection ℕ → ℚ: 0, then ±q for q running through Calkin-Wilf."""
    if n == 0:
        return Fraction(0)
    q = positive_rational((n + 1) // 2)
    return q if n % 2 else -q
