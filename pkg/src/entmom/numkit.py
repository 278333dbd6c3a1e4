"""Exact integer/rational building blocks for the analytic modules.

Everything here is pure and exact: arbitrary-precision rationals (via
``fractions.Fraction``), memoized factorials, half-integer gamma ratios,
integer compositions, multiplicity vectors and probabilists' Hermite
polynomial coefficients.  Floating point never enters this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

# Carrier of every exact quantity in the package.  ``fractions.Fraction``
# already guarantees a positive denominator and gcd-reduced terms.
Rational = Fraction

__all__ = [
    "Rational",
    "Composition",
    "MultiplicityVector",
    "factorial",
    "half_gamma",
    "compositions",
    "multiplicity_vectors",
    "hermite_he",
]


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    """Exact n!, memoized so repeated lookups are O(1)."""
    if n < 0:
        raise ValueError(f"factorial is undefined for negative n (got {n})")
    return math.factorial(n)


def half_gamma(k: int) -> Fraction:
    """Gamma(k + 1/2) / sqrt(pi) as an exact rational, i.e. (2k)! / (4**k k!).

    Callers only ever form ratios of half-integer gamma values, so the
    sqrt(pi) factor always cancels and the arithmetic stays rational.
    """
    if k < 0:
        raise ValueError(f"half_gamma requires k >= 0 (got {k})")
    return Fraction(factorial(2 * k), 4**k * factorial(k))


@dataclass(frozen=True, slots=True)
class Composition:
    """Ordered tuple of non-negative integers; the order of parts matters."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(part < 0 for part in self.parts):
            raise ValueError(f"composition parts must be >= 0: {self.parts}")

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]


def _composition_tuples(n: int, p: int) -> Iterator[tuple[int, ...]]:
    if p == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _composition_tuples(n - first, p - 1):
            yield (first,) + rest


def compositions(n: int, p: int) -> Iterator[Composition]:
    """Every ordered p-tuple of non-negative integers summing to n.

    Yielded exactly once each, in lexicographically decreasing order:
    (n, 0, ..., 0) first, (0, ..., 0, n) last.  The count is
    binomial(n + p - 1, p - 1).  The order is fixed so that term-by-term
    results of the partition sums are reproducible.
    """
    if p < 1:
        raise ValueError(f"compositions requires p >= 1 (got {p})")
    if n < 0:
        raise ValueError(f"compositions requires n >= 0 (got {n})")
    for parts in _composition_tuples(n, p):
        yield Composition(parts)


@dataclass(frozen=True, slots=True)
class MultiplicityVector:
    """Multiplicities (k_1, ..., k_s) of exponents with fixed weight sum(j*k_j)."""

    counts: tuple[int, ...]

    @property
    def weight(self) -> int:
        return sum(j * k for j, k in enumerate(self.counts, start=1))

    @property
    def size(self) -> int:
        return sum(self.counts)

    def __len__(self) -> int:
        return len(self.counts)

    def __iter__(self):
        return iter(self.counts)


def _multiplicity_tuples(j: int, remaining: int, n: int) -> Iterator[tuple[int, ...]]:
    if j > n:
        if remaining == 0:
            yield ()
        return
    for k in range(remaining // j, -1, -1):
        for rest in _multiplicity_tuples(j + 1, remaining - j * k, n):
            yield (k,) + rest


def multiplicity_vectors(n: int) -> Iterator[MultiplicityVector]:
    """Every (k_1, ..., k_n) with k_j >= 0 and sum(j*k_j) == n, once each.

    There is one vector per integer partition of n.  Enumeration order is
    lexicographically decreasing in (k_1, k_2, ...).
    """
    if n < 1:
        raise ValueError(f"multiplicity_vectors requires n >= 1 (got {n})")
    for counts in _multiplicity_tuples(1, n, n):
        yield MultiplicityVector(counts)


def hermite_he(n: int) -> list[int]:
    """Coefficients of the probabilists' Hermite polynomial He_n.

    Returned ascending in degree (index = power of x), exact integers:
    He_n(x) = n! * sum_k (-1)**k x**(n-2k) / (k! (n-2k)! 2**k).
    """
    if n < 0:
        raise ValueError(f"hermite_he requires n >= 0 (got {n})")
    coeffs = [0] * (n + 1)
    for k in range(n // 2 + 1):
        coeffs[n - 2 * k] = (-1) ** k * factorial(n) // (
            factorial(k) * factorial(n - 2 * k) * 2**k
        )
    return coeffs
