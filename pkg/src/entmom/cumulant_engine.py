"""Moment-to-cumulant conversion and the purity cumulant closed forms.

``moments_to_cumulants`` implements the classical combinatorial conversion

    kappa_n = n! * sum over multiplicity vectors {k_m} of
              (-1)**(r-1) (r-1)! * prod_m (1/k_m!) (mu_m / m!)**k_m

with r = sum(k_m) and the sum over all k_m >= 0 with sum(m*k_m) = n, kept
exact in rational arithmetic.  ``closed_form_kappa`` evaluates the printed
closed forms of the first five purity cumulants (including the degree-8 and
degree-12 polynomials entering orders 4 and 5) purely as an independent
oracle against the conversion pipeline.  ``rescale`` is the single place
where exact cumulants become binary64 floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .numkit import factorial, multiplicity_vectors
from .purity import DimensionPair

__all__ = [
    "CumulantVector",
    "RescaledCumulants",
    "DegenerateDistributionError",
    "moments_to_cumulants",
    "closed_form_kappa",
    "rescale",
]


class DegenerateDistributionError(ValueError):
    """Raised when a distribution has no spread (kappa_2 <= 0)."""


@dataclass(frozen=True)
class CumulantVector:
    """Exact cumulants kappa_1..kappa_N of one distribution."""

    source: str
    values: tuple[Fraction, ...]

    def kappa(self, n: int) -> Fraction:
        if not 1 <= n <= len(self.values):
            raise ValueError(f"kappa_{n} not available (have 1..{len(self.values)})")
        return self.values[n - 1]

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class RescaledCumulants:
    """Mean/sigma and rescaled cumulants, converted to binary64.

    gammas[i] is gamma_{i+3} = kappa_{i+3} / sigma**(2(i+3)-2) and
    taus[i] is tau_{i+3} = kappa_{i+3} / sigma**(i+3).  The gamma values
    are also kept exact (they are rational functions of the cumulants);
    tau is irrational for odd orders so only the float is stored.
    Conversion is round-to-nearest binary64.
    """

    mu: float
    sigma: float
    gammas: tuple[float, ...]
    taus: tuple[float, ...]
    mu_exact: Fraction
    variance_exact: Fraction
    gammas_exact: tuple[Fraction, ...]
    source: str = "custom"

    @property
    def order(self) -> int:
        """Highest cumulant order available."""
        return len(self.taus) + 2

    def tau(self, r: int) -> float:
        if not 3 <= r <= self.order:
            raise ValueError(f"tau_{r} not available (have 3..{self.order})")
        return self.taus[r - 3]

    def gamma_exact(self, r: int) -> Fraction:
        if not 3 <= r <= self.order:
            raise ValueError(f"gamma_{r} not available (have 3..{self.order})")
        return self.gammas_exact[r - 3]


def _moment_values(moments) -> tuple[tuple[Fraction, ...], str]:
    if hasattr(moments, "values") and hasattr(moments, "descriptor"):
        return tuple(Fraction(v) for v in moments.values), moments.descriptor
    return tuple(Fraction(v) for v in moments), "custom"


def moments_to_cumulants(moments, n_max: int | None = None, source: str | None = None) -> CumulantVector:
    """Convert exact raw moments mu_1..mu_N to exact cumulants kappa_1..kappa_N.

    ``moments`` may be a :class:`~entmom.purity.MomentVector`-like object
    (anything with ``values`` and ``descriptor``) or a plain sequence of
    rationals.  Requesting more cumulants than supplied moments is an error.
    """
    values, descriptor = _moment_values(moments)
    if source is not None:
        descriptor = source
    n_max = len(values) if n_max is None else n_max
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1 (got {n_max})")
    if n_max > len(values):
        raise ValueError(f"need {n_max} moments, only {len(values)} supplied")
    kappas = []
    for n in range(1, n_max + 1):
        acc = Fraction(0)
        for mv in multiplicity_vectors(n):
            r = mv.size
            term = Fraction((-1) ** (r - 1) * factorial(r - 1))
            for m, km in enumerate(mv.counts, start=1):
                if km:
                    term *= Fraction(1, factorial(km)) * (values[m - 1] / factorial(m)) ** km
            acc += term
        kappas.append(factorial(n) * acc)
    return CumulantVector(source=descriptor, values=tuple(kappas))


def _poly_a(p: int, q: int) -> int:
    return (
        28
        - 112 * p**2
        - 153 * p * q
        - 79 * p**3 * q
        - 112 * q**2
        - 98 * p**2 * q**2
        - 11 * p**4 * q**2
        - 79 * p * q**3
        - 3 * p**3 * q**3
        + p**5 * q**3
        - 11 * p**2 * q**4
        + 4 * p**4 * q**4
        + p**3 * q**5
    )


def _poly_b(p: int, q: int) -> int:
    return (
        3528
        - 6552 * p**2
        - 6343 * p * q
        - 449 * p**3 * q
        - 6552 * q**2
        + 1545 * p**2 * q**2
        + 1237 * p**4 * q**2
        - 449 * p * q**3
        + 1164 * p**3 * q**3
        + 132 * p**5 * q**3
        + 1237 * p**2 * q**4
        - 274 * p**4 * q**4
        - 41 * p**6 * q**4
        + 132 * p**3 * q**5
        - 93 * p**5 * q**5
        + p**7 * q**5
        - 41 * p**4 * q**6
        + 9 * p**6 * q**6
        + p**5 * q**7
    )


def closed_form_kappa(dims: DimensionPair, n: int) -> Fraction:
    """Printed closed form of the n-th purity cumulant, 1 <= n <= 5.

    kappa_1 is Lubkin's mean (p + q) / (1 + pq); orders 2..5 carry the
    factor (p**2 - 1)(q**2 - 1) that kills them in the degenerate p = 1
    case.  Exists purely as an oracle against the moments->cumulants
    pipeline fed by :func:`~entmom.purity.moment_R`.
    """
    p, q = dims.p, dims.q
    d = p * q
    if n == 1:
        return Fraction(p + q, 1 + d)
    if n == 2:
        return Fraction(2 * (p**2 - 1) * (q**2 - 1), (1 + d) ** 2 * (2 + d) * (3 + d))
    if n == 3:
        num = 8 * (p**2 - 1) * (q**2 - 1) * (p + q) * (d - 5)
        den = (1 + d) ** 3 * (2 + d) * (3 + d) * (4 + d) * (5 + d)
        return Fraction(num, den)
    if n == 4:
        num = 48 * (p**2 - 1) * (q**2 - 1) * (d - 3) * _poly_a(p, q)
        den = (1 + d) ** 3 * (2 + d) * (3 + d)
        for i in range(1, 8):
            den *= i + d
        return Fraction(num, den)
    if n == 5:
        num = 384 * (p**2 - 1) * (q**2 - 1) * (p + q) * _poly_b(p, q)
        den = (1 + d) ** 4 * (2 + d) * (3 + d)
        for i in range(1, 10):
            den *= i + d
        return Fraction(num, den)
    raise ValueError(f"closed forms available for n in 1..5 only (got {n})")


def rescale(cumulants: CumulantVector) -> RescaledCumulants:
    """Mean, standard deviation and rescaled cumulants gamma_r, tau_r.

    This is the exact-to-float boundary: all conversions are binary64,
    round-to-nearest.  Raises :class:`DegenerateDistributionError` when
    kappa_2 <= 0.
    """
    if len(cumulants) < 2:
        raise ValueError("rescaling needs cumulants through order 2")
    k2 = cumulants.kappa(2)
    if k2 <= 0:
        raise DegenerateDistributionError(f"kappa_2 must be > 0 (got {k2})")
    mu_exact = cumulants.kappa(1)
    sigma = math.sqrt(float(k2))
    gammas_exact = tuple(
        cumulants.kappa(r) / k2 ** (r - 1) for r in range(3, len(cumulants) + 1)
    )
    taus = tuple(
        float(cumulants.kappa(r)) / sigma**r for r in range(3, len(cumulants) + 1)
    )
    return RescaledCumulants(
        mu=float(mu_exact),
        sigma=sigma,
        gammas=tuple(float(g) for g in gammas_exact),
        taus=taus,
        mu_exact=mu_exact,
        variance_exact=k2,
        gammas_exact=gammas_exact,
        source=cumulants.source,
    )
