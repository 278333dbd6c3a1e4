"""Exact moments of the purity R of a bipartite random pure state.

For a Haar-random pure state on a p x q bipartition (p <= q) the Schmidt
coefficients x_1..x_p follow the squared-Vandermonde density on the
probability simplex, and every moment <R^n> of the purity R = sum(x_i**2)
is an exact rational number.  This module computes those moments by three
independent routes:

* ``moment_R``            -- partition sum over ordered compositions of n,
* ``moment_R_symmetric``  -- an equivalent sum whose factors treat the two
                             subsystem dimensions symmetrically,
* ``moment_R_p2``         -- a binomial sum with half-integer gamma ratios,
                             valid for p = 2 only,

plus the closed-form simplex integrals the partition sum is built from
(``simplex_integral_ordered`` / ``simplex_integral_symmetrized``), which act
as an internal oracle via ``moment_R_from_integrals``.  The exact p = 2
density and its CDF are also provided.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .numkit import Composition, compositions, factorial, half_gamma

__all__ = [
    "DimensionPair",
    "MomentVector",
    "SchmidtVector",
    "moment_R",
    "moment_R_symmetric",
    "moment_R_p2",
    "moment_vector",
    "moment_R_from_integrals",
    "simplex_integral_ordered",
    "simplex_integral_symmetrized",
    "density_p2",
    "density_p2_normalization",
    "density_p2_cdf",
]


@dataclass(frozen=True, slots=True)
class DimensionPair:
    """Bipartition dimensions with p <= q enforced.

    The Schmidt spectrum, hence the purity, depends only on the unordered
    pair of dimensions, so a constructor call with p > q silently swaps
    them.
    """

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p < 1 or self.q < 1:
            raise ValueError(f"dimensions must be >= 1 (got p={self.p}, q={self.q})")
        if self.p > self.q:
            p, q = self.q, self.p
            object.__setattr__(self, "p", p)
            object.__setattr__(self, "q", q)

    @property
    def r(self) -> int:
        """Dimension surplus q - p of the larger subsystem."""
        return self.q - self.p

    @property
    def descriptor(self) -> str:
        return f"purity({self.p},{self.q})"


@dataclass(frozen=True)
class MomentVector:
    """Exact purity moments mu_1..mu_N for one bipartition (mu_0 = 1 implicit)."""

    dims: DimensionPair
    values: tuple[Fraction, ...]

    def moment(self, n: int) -> Fraction:
        if n == 0:
            return Fraction(1)
        return self.values[n - 1]

    @property
    def descriptor(self) -> str:
        return self.dims.descriptor

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class SchmidtVector:
    """Schmidt coefficients of one draw: non-negative reals summing to 1."""

    coefficients: tuple[float, ...]

    def __post_init__(self) -> None:
        if any(c < -1e-12 for c in self.coefficients):
            raise ValueError(f"Schmidt coefficients must be >= 0: {self.coefficients}")
        total = sum(self.coefficients)
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"Schmidt coefficients must sum to 1 (got {total!r})")

    def purity(self) -> float:
        return sum(c * c for c in self.coefficients)


def _multinomial(n: int, parts: Sequence[int]) -> int:
    coeff = factorial(n)
    for part in parts:
        coeff //= factorial(part)
    return coeff


def moment_R(dims: DimensionPair, n: int) -> Fraction:
    """Exact <R^n> via the partition sum over ordered compositions of n.

    Each composition (n_1..n_p) contributes its multinomial coefficient, a
    product of factorial ratios (q + 2n_i - i)! / ((q - i)! (i - 1)!) and
    the pair-difference product prod_{i<j}(2n_i - i - 2n_j + j); the total
    carries the prefactor (pq - 1)! / (pq + 2n - 1)!.
    """
    if n < 0:
        raise ValueError(f"moment order must be >= 0 (got {n})")
    if n == 0:
        return Fraction(1)
    p, q = dims.p, dims.q
    if p == 1:
        # Single Schmidt coefficient x_1 = 1 forces R = 1.
        return Fraction(1)
    total = Fraction(0)
    for comp in compositions(n, p):
        parts = comp.parts
        num = _multinomial(n, parts)
        den = 1
        for i, ni in enumerate(parts, start=1):
            num *= factorial(q + 2 * ni - i)
            den *= factorial(q - i) * factorial(i - 1)
        diff = 1
        for i in range(p):
            for j in range(i + 1, p):
                diff *= 2 * parts[i] - (i + 1) - 2 * parts[j] + (j + 1)
        total += Fraction(num * diff, den)
    return Fraction(factorial(p * q - 1), factorial(p * q + 2 * n - 1)) * total


def _symmetric_sum(parts_count: int, p: int, q: int, n: int) -> Fraction:
    """Partition sum of the symmetric form over ``parts_count`` parts.

    Factors are restricted to indices with n_i != 0; a factorial of a
    negative argument in a denominator kills the term (reciprocal-gamma
    convention), which is what makes the sum independent of whether it
    runs over p or q parts.
    """
    total = Fraction(0)
    for comp in compositions(n, parts_count):
        parts = comp.parts
        term = Fraction(_multinomial(n, parts))
        for i, ni in enumerate(parts, start=1):
            if ni == 0:
                continue
            if q - i < 0 or p - i < 0:
                term = Fraction(0)
                break
            term *= Fraction(
                factorial(q + 2 * ni - i) * factorial(p + 2 * ni - i),
                factorial(q - i) * factorial(p - i) * factorial(2 * ni),
            )
            for j in range(1, i):
                term *= 1 - Fraction(2 * ni, 2 * parts[j - 1] + i - j)
        total += term
    return Fraction(factorial(p * q - 1), factorial(p * q + 2 * n - 1)) * total


def moment_R_symmetric(dims: DimensionPair, n: int) -> Fraction:
    """Exact <R^n> via the p/q-symmetric partition sum.

    Same contract as :func:`moment_R`; independent implementation used as a
    cross-check.  Only indices with n_i != 0 contribute a factor
    (q + 2n_i - i)! (p + 2n_i - i)! / ((q - i)! (p - i)! (2n_i)!) together
    with the corrections prod_{j<i}(1 - 2n_i / (2n_j + i - j)).
    """
    if n < 0:
        raise ValueError(f"moment order must be >= 0 (got {n})")
    if n == 0:
        return Fraction(1)
    if dims.p == 1:
        return Fraction(1)
    return _symmetric_sum(dims.p, dims.p, dims.q, n)


def moment_R_p2(q: int, n: int) -> Fraction:
    """Exact <R^n> for a 2 x q bipartition via the binomial sum.

    Uses half-integer gamma ratios (exact rationals via ``half_gamma``), so
    the result is exact and must agree with ``moment_R((2, q), n)``.
    """
    if q < 2:
        raise ValueError(f"moment_R_p2 requires q >= 2 (got {q})")
    if n < 0:
        raise ValueError(f"moment order must be >= 0 (got {n})")
    total = Fraction(0)
    for k in range(n + 1):
        total += math.comb(n, k) * half_gamma(k + 1) / half_gamma(q + k)
    return half_gamma(q) * Fraction(2, 2**n) * total


def moment_vector(dims: DimensionPair, n_max: int) -> MomentVector:
    """Moments mu_1..mu_{n_max} as a :class:`MomentVector`."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1 (got {n_max})")
    return MomentVector(dims, tuple(moment_R(dims, n) for n in range(1, n_max + 1)))


# ---------------------------------------------------------------------------
# Simplex integral oracle
#
# I(n) = integral over the simplex of V(x)^2 * prod x_k^r * f_n(x) with
# f_n the sum of x^{n} over all p! orderings of the exponents (duplicate
# orderings counted).  The sign convention fixes V(x) = prod_{i<j}(x_j - x_i)
# so that I(0) > 0; only ratios I(2n)/I(0) are ever meaningful and those are
# convention-independent.
# ---------------------------------------------------------------------------


def simplex_integral_ordered(parts: Composition | Sequence[int], dims: DimensionPair) -> Fraction:
    """Closed form of the single-ordering simplex integral.

    J(n) = p! * prod_i (r + n_i + i - 1)! / (p**2 + r*p + sum(n) - 1)!
           * prod_{i<j} (n_j - n_i + j - i).
    """
    parts = tuple(parts)
    p, r = dims.p, dims.r
    if len(parts) != p:
        raise ValueError(f"expected {p} exponents, got {len(parts)}")
    num = factorial(p)
    for i, ni in enumerate(parts, start=1):
        num *= factorial(r + ni + i - 1)
    diff = 1
    for i in range(p):
        for j in range(i + 1, p):
            diff *= parts[j] - parts[i] + (j + 1) - (i + 1)
    den = factorial(p * p + r * p + sum(parts) - 1)
    return Fraction(num * diff, den)


def simplex_integral_symmetrized(parts: Composition | Sequence[int], dims: DimensionPair) -> Fraction:
    """Symmetrized simplex integral: sum of the ordered closed form over all
    p! orderings of the exponents, duplicates included."""
    parts = tuple(parts)
    if len(parts) != dims.p:
        raise ValueError(f"expected {dims.p} exponents, got {len(parts)}")
    total = Fraction(0)
    for perm in itertools.permutations(parts):
        total += simplex_integral_ordered(perm, dims)
    return total


def moment_R_from_integrals(dims: DimensionPair, n: int) -> Fraction:
    """<R^n> rebuilt from the simplex-integral ratio construction.

    Multinomial expansion of R**n reduces every term to a symmetrized
    integral with doubled exponents, so
    <R^n> = sum over compositions of multinomial * I(2n) / I(0).
    Exists purely as an internal oracle for :func:`moment_R`.
    """
    if n < 0:
        raise ValueError(f"moment order must be >= 0 (got {n})")
    if n == 0:
        return Fraction(1)
    p = dims.p
    norm = simplex_integral_symmetrized((0,) * p, dims)
    total = Fraction(0)
    for comp in compositions(n, p):
        doubled = tuple(2 * ni for ni in comp.parts)
        total += _multinomial(n, comp.parts) * simplex_integral_symmetrized(doubled, dims)
    return total / norm


# ---------------------------------------------------------------------------
# Exact p = 2 density
# ---------------------------------------------------------------------------


def density_p2_normalization(q: int) -> Fraction:
    """Exact normalization A of the p = 2 purity density: 2**q * half_gamma(q) / (q-2)!."""
    if q < 2:
        raise ValueError(f"density_p2 requires q >= 2 (got {q})")
    return Fraction(2**q) * half_gamma(q) / factorial(q - 2)


def density_p2(R: float, q: int) -> float:
    """Probability density of the purity for a 2 x q bipartition.

    A * (1 - R)**(q - 2) * sqrt(2R - 1) on the support [1/2, 1], zero
    outside; A normalizes the density to unit mass.
    """
    if q < 2:
        raise ValueError(f"density_p2 requires q >= 2 (got {q})")
    if R < 0.5 or R > 1.0:
        return 0.0
    a = float(density_p2_normalization(q))
    return a * (1.0 - R) ** (q - 2) * math.sqrt(2.0 * R - 1.0)


def density_p2_cdf(R: float, q: int) -> float:
    """Cumulative distribution of the p = 2 purity density.

    Closed form from the binomial expansion of (1 - t)**(q - 2):
    F(R) = A * 2**(1-q) * sum_j C(q-2, j) (-1)**j x**(j + 3/2) / (j + 3/2)
    with x = 2R - 1.
    """
    if q < 2:
        raise ValueError(f"density_p2_cdf requires q >= 2 (got {q})")
    if R <= 0.5:
        return 0.0
    if R >= 1.0:
        return 1.0
    x = 2.0 * R - 1.0
    acc = 0.0
    for j in range(q - 1):
        acc += math.comb(q - 2, j) * (-1.0) ** j * x ** (j + 1.5) / (j + 1.5)
    return float(density_p2_normalization(q)) * 2.0 ** (1 - q) * acc
