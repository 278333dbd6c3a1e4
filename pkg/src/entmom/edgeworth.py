"""Truncated Edgeworth expansion of a density from its rescaled cumulants.

The expansion corrects the Gaussian base density (1/sigma) Z((x - mu)/sigma)
with Hermite-polynomial terms: for each correction order s >= 1 the terms
are indexed by multiplicity vectors {k_m} of weight s (sum m*k_m = s, with
t = sum k_m) and contribute

    sigma**s * He_{s+2t}(z) * prod_m (1/k_m!) * (gamma_{m+2} / (m+2)!)**k_m,

which collapses to tau-monomials: the first orders read tau_3/6 He_3, then
tau_4/24 He_4 + tau_3**2/72 He_6, then tau_5/120 He_5 + tau_3 tau_4/144 He_7
+ tau_3**3/1296 He_9.  A truncated expansion integrates to 1 but may dip
negative in the far tails; the evaluator returns the signed value and does
not clip.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .cumulant_engine import RescaledCumulants
from .numkit import factorial, hermite_he, multiplicity_vectors

__all__ = [
    "EdgeworthSeries",
    "EdgeworthTerm",
    "coefficient_table",
    "evaluate",
    "density_function",
    "adaptive_simpson",
]

_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class EdgeworthTerm:
    """One term of the expansion: coefficient * prod tau_r**power * He_degree."""

    s: int
    he_degree: int
    coefficient: Fraction
    tau_powers: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class EdgeworthSeries:
    """A density expansion truncated at correction order ``order``.

    ``order`` = 0 is the plain Gaussian.  Order s needs cumulants through
    s + 2, so the rescaled input must reach at least that far.
    """

    rescaled: RescaledCumulants
    order: int

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ValueError(f"truncation order must be >= 0 (got {self.order})")
        if self.rescaled.order < self.order + 2:
            raise ValueError(
                f"order {self.order} needs cumulants through {self.order + 2}, "
                f"have {self.rescaled.order}"
            )

    @property
    def mu(self) -> float:
        return self.rescaled.mu

    @property
    def sigma(self) -> float:
        return self.rescaled.sigma


def coefficient_table(series: EdgeworthSeries) -> list[EdgeworthTerm]:
    """Enumerate the expansion terms for s = 1..order in canonical order.

    Canonical order is ascending in (s, Hermite degree).  The rational
    ``coefficient`` is the universal factor prod_m 1 / (k_m! ((m+2)!)**k_m)
    and ``tau_powers`` records the accompanying monomial in the rescaled
    cumulants tau_r.
    """
    terms: list[EdgeworthTerm] = []
    for s in range(1, series.order + 1):
        batch = []
        for mv in multiplicity_vectors(s):
            t = mv.size
            coeff = Fraction(1)
            powers = []
            for m, km in enumerate(mv.counts, start=1):
                if km:
                    coeff *= Fraction(1, factorial(km) * factorial(m + 2) ** km)
                    powers.append((m + 2, km))
            batch.append(
                EdgeworthTerm(
                    s=s,
                    he_degree=s + 2 * t,
                    coefficient=coeff,
                    tau_powers=tuple(powers),
                )
            )
        batch.sort(key=lambda term: term.he_degree)
        terms.extend(batch)
    return terms


def _horner(coeffs: list[int], z: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def density_function(series: EdgeworthSeries) -> Callable[[float], float]:
    """Compile the series into a plain float -> float density evaluator."""
    mu = series.rescaled.mu
    sigma = series.rescaled.sigma
    compiled: list[tuple[float, list[int]]] = []
    for term in coefficient_table(series):
        weight = float(term.coefficient)
        for r, power in term.tau_powers:
            weight *= series.rescaled.tau(r) ** power
        compiled.append((weight, hermite_he(term.he_degree)))

    def density(x: float) -> float:
        z = (x - mu) / sigma
        bracket = 1.0
        for weight, he_coeffs in compiled:
            bracket += weight * _horner(he_coeffs, z)
        return math.exp(-0.5 * z * z) / (_SQRT_2PI * sigma) * bracket

    return density


def evaluate(series: EdgeworthSeries, x: float) -> float:
    """Signed density value of the truncated expansion at ``x``.

    Binary64 throughout; Hermite polynomials are evaluated by Horner's rule
    from their exact integer coefficients.  Values can be negative in the
    tails; callers decide whether that matters.
    """
    return density_function(series)(x)


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-10,
    max_depth: int = 48,
) -> float:
    """Adaptive Simpson quadrature of ``f`` on [a, b] to absolute tolerance."""
    if b <= a:
        return 0.0
    fa, fb = f(a), f(b)
    mid = 0.5 * (a + b)
    fm = f(mid)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth)


def _simpson_step(f, a, b, fa, fm, fb, whole, tol, depth):
    mid = 0.5 * (a + b)
    lm = 0.5 * (a + mid)
    rm = 0.5 * (mid + b)
    flm, frm = f(lm), f(rm)
    left = (mid - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - mid) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if depth <= 0 or abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    return _simpson_step(
        f, a, mid, fa, flm, fm, left, 0.5 * tol, depth - 1
    ) + _simpson_step(f, mid, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
