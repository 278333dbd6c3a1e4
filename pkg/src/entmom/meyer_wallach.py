"""Approximate moments and density of Meyer-Wallach entanglement Q.

For an m-qubit random pure state, Q = 2 (1 - (1/m) sum_k R_k) averages the
purity R_k of each qubit against the rest.  Each R_k is the purity of a
2 x 2**(m-1) bipartition, so its individual moments are exact; moments of
Q for n >= 2, however, involve cross-correlations <R_i R_j> which are here
factorized as <R_i><R_j> for i != j.  That independence assumption is
structural: every <Q^n> with n >= 2 is an approximation (empirically very
close to the sampled distribution), and statistical tests against the
Monte Carlo sampler use tolerances, never exact equality.  kappa_1 alone
is assumption-free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cumulant_engine import CumulantVector, moments_to_cumulants, rescale
from .edgeworth import EdgeworthSeries
from .numkit import factorial, multiplicity_vectors
from .purity import DimensionPair, moment_R_p2

__all__ = [
    "QubitSystem",
    "QMomentVector",
    "q_moment",
    "q_moment_vector",
    "q_cumulants",
    "closed_form_q_kappa",
    "q_density",
]


@dataclass(frozen=True, slots=True)
class QubitSystem:
    """An m-qubit register; the implied one-qubit bipartition is 2 x 2**(m-1)."""

    m: int

    def __post_init__(self) -> None:
        if self.m < 2:
            raise ValueError(f"QubitSystem needs m >= 2 qubits (got {self.m})")

    @property
    def M(self) -> int:
        """Hilbert-space dimension 2**m."""
        return 2**self.m

    @property
    def q_half(self) -> int:
        """Dimension 2**(m-1) of the complement of a single qubit."""
        return 2 ** (self.m - 1)

    @property
    def dims(self) -> DimensionPair:
        return DimensionPair(2, self.q_half)

    @property
    def descriptor(self) -> str:
        return f"meyer_wallach({self.m})"


@dataclass(frozen=True)
class QMomentVector:
    """Moments <Q^1>..<Q^N> under the independence assumption (<Q^0> = 1)."""

    system: QubitSystem
    values: tuple[Fraction, ...]

    def moment(self, n: int) -> Fraction:
        if n == 0:
            return Fraction(1)
        return self.values[n - 1]

    @property
    def descriptor(self) -> str:
        return self.system.descriptor

    def __len__(self) -> int:
        return len(self.values)


def q_moment(system: QubitSystem, n: int) -> Fraction:
    """<Q^n> for an m-qubit random state (exact under the independence assumption).

    <Q^n> = 2**n sum_{k=0..n} C(n,k) (-1)**k k!/m**k
            sum over multiplicity vectors {r_i} of weight k with r = sum r_i <= m
            of m! / (r_1! ... r_k! (m-r)!) * prod_i (<R^i> / i!)**r_i

    where <R^i> is the exact one-qubit purity moment from
    :func:`~entmom.purity.moment_R_p2`.  Vectors with r > m are skipped:
    their multinomial count of qubit assignments is zero.
    """
    if n < 0:
        raise ValueError(f"moment order must be >= 0 (got {n})")
    if n == 0:
        return Fraction(1)
    m = system.m
    r_moments = [Fraction(1)] + [moment_R_p2(system.q_half, i) for i in range(1, n + 1)]
    total = Fraction(0)
    for k in range(n + 1):
        if k == 0:
            inner = Fraction(1)
        else:
            inner = Fraction(0)
            for mv in multiplicity_vectors(k):
                r = mv.size
                if r > m:
                    continue
                coeff = Fraction(factorial(m), factorial(m - r))
                for i, ri in enumerate(mv.counts, start=1):
                    if ri:
                        coeff *= Fraction(1, factorial(ri))
                        coeff *= (r_moments[i] / factorial(i)) ** ri
                inner += coeff
        total += math.comb(n, k) * Fraction((-1) ** k * factorial(k), m**k) * inner
    return Fraction(2**n) * total


def q_moment_vector(system: QubitSystem, n_max: int) -> QMomentVector:
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1 (got {n_max})")
    return QMomentVector(system, tuple(q_moment(system, n) for n in range(1, n_max + 1)))


def q_cumulants(system: QubitSystem, n_max: int) -> CumulantVector:
    """Cumulants of Q via the moments->cumulants pipeline.

    For n <= 5 these must reproduce :func:`closed_form_q_kappa` exactly.
    """
    return moments_to_cumulants(q_moment_vector(system, n_max))


def closed_form_q_kappa(system: QubitSystem, n: int) -> Fraction:
    """Printed closed form of the n-th cumulant of Q, 1 <= n <= 5.

    Rational functions of M = 2**m carrying an explicit 1/m**(n-1) scale;
    oracle for :func:`q_cumulants`.
    """
    M = system.M
    m = system.m
    if n == 1:
        return Fraction(M - 2, M + 1)
    if n == 2:
        return Fraction(6 * (M - 2), (M + 1) ** 2 * (M + 3) * m)
    if n == 3:
        return Fraction(
            24 * (-(M**2) + 7 * M - 10),
            (M + 1) ** 3 * (M + 3) * (M + 5) * m**2,
        )
    if n == 4:
        return Fraction(
            144 * (M**4 - 12 * M**3 + 6 * M**2 + 133 * M - 210),
            (M + 1) ** 4 * (M + 3) ** 2 * (M + 5) * (M + 7) * m**3,
        )
    if n == 5:
        return Fraction(
            -1152 * (1890 - 1763 * M + 337 * M**2 + 78 * M**3 - 23 * M**4 + M**5),
            (M + 1) ** 5 * (M + 3) ** 2 * (M + 5) * (M + 7) * (M + 9) * m**4,
        )
    raise ValueError(f"closed forms available for n in 1..5 only (got {n})")


def q_density(system: QubitSystem, order: int) -> EdgeworthSeries:
    """Edgeworth series for the density of Q, truncated at ``order``.

    Order 0 is the Gaussian with mu = kappa_1, sigma = sqrt(kappa_2);
    order 3 carries all terms through tau_5.
    """
    if order < 0:
        raise ValueError(f"truncation order must be >= 0 (got {order})")
    cumulants = q_cumulants(system, order + 2)
    return EdgeworthSeries(rescale(cumulants), order)
