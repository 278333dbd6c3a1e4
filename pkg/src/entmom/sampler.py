"""Monte Carlo oracle: Haar-random pure states, purities and Meyer-Wallach Q.

States are drawn as vectors of independent standard complex Gaussian
entries normalized to unit length, which is distributionally identical to
a column of a Haar-random unitary and costs O(dim) per draw.  The RNG is
numpy's counter-based Philox (numpy >= 1.24 bit-stream); draws are consumed
in fixed-size blocks so a batch is reproducible bit-for-bit from
(descriptor, seed, count) alone.  Optional independent sub-streams mix the
stream index into the key as seed XOR (index * 0x9E3779B97F4A7C15); with
one stream the output is the canonical sequence.

Aggregation (moments, histograms) relies on numpy's pairwise summation, so
accumulated statistics do not depend on chunking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterator, Sequence

import numpy as np

__all__ = [
    "SampleBatch",
    "Histogram",
    "sample_purity",
    "sample_mw",
    "schmidt_spectra",
    "empirical_moments",
    "histogram",
    "ks_statistic",
    "write_batch_csv",
    "read_batch_csv",
]

_STREAM_MIX = 0x9E3779B97F4A7C15
_MASK64 = (1 << 64) - 1
# Draws per RNG block.  Fixed so that the generated values are a pure
# function of (seed, streams) regardless of how consumers chunk them.
_BLOCK = 4096
_MAX_QUBITS = 24


@dataclass(frozen=True)
class SampleBatch:
    """Values of R or Q for ``count`` independent draws, with provenance."""

    descriptor: str
    seed: int
    count: int
    values: np.ndarray
    support: tuple[float, float]

    def __post_init__(self) -> None:
        if len(self.values) != self.count:
            raise ValueError("value array length does not match count")


@dataclass(frozen=True)
class Histogram:
    """Binned summary of a batch: len(counts) == len(bin_edges) - 1."""

    bin_edges: np.ndarray
    counts: np.ndarray
    total: int

    def __post_init__(self) -> None:
        if len(self.counts) != len(self.bin_edges) - 1:
            raise ValueError("counts/bin_edges length mismatch")
        if int(self.counts.sum()) != self.total:
            raise ValueError("counts do not sum to total")

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.bin_edges)

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.bin_edges[:-1] + self.bin_edges[1:])

    def densities(self) -> np.ndarray:
        """Counts normalized so the histogram integrates to exactly 1."""
        return self.counts / (self.total * self.widths)


def _stream_rng(seed: int, stream: int) -> np.random.Generator:
    key = (seed ^ ((stream * _STREAM_MIX) & _MASK64)) & _MASK64
    return np.random.Generator(np.random.Philox(key=key))


def _stream_counts(count: int, streams: int) -> list[int]:
    if streams < 1:
        raise ValueError(f"streams must be >= 1 (got {streams})")
    base, extra = divmod(count, streams)
    return [base + (1 if j < extra else 0) for j in range(streams)]


def _gaussian_states(rng: np.random.Generator, n: int, dim: int, block: int) -> Iterator[np.ndarray]:
    """Unit-norm complex Gaussian vectors, shape (chunk, dim), in fixed blocks."""
    remaining = n
    while remaining > 0:
        chunk = min(block, remaining)
        re = rng.standard_normal((chunk, dim))
        im = rng.standard_normal((chunk, dim))
        psi = re + 1j * im
        norms = np.sqrt(np.sum(psi.real**2 + psi.imag**2, axis=1, keepdims=True))
        psi /= norms
        yield psi
        remaining -= chunk


def _purity_spectra(
    p: int, q: int, count: int, seed: int, streams: int
) -> Iterator[np.ndarray]:
    """Schmidt spectra (chunk, p) of normalized p x q coefficient matrices."""
    for stream, n in enumerate(_stream_counts(count, streams)):
        rng = _stream_rng(seed, stream)
        for psi in _gaussian_states(rng, n, p * q, _BLOCK):
            matrices = psi.reshape(-1, p, q)
            singular = np.linalg.svd(matrices, compute_uv=False)
            yield singular**2


def sample_purity(p: int, q: int, count: int, seed: int, streams: int = 1) -> SampleBatch:
    """Purities R = sum(x_i**2) of ``count`` Haar-random p x q pure states.

    Each draw normalizes a p*q vector of standard complex Gaussians,
    reshapes it to a p x q matrix and squares its singular values to get
    the Schmidt coefficients.  For p = 1 every purity is exactly 1 (a
    single Schmidt coefficient), so no randomness is consumed.
    """
    if p < 1 or q < 1:
        raise ValueError(f"dimensions must be >= 1 (got p={p}, q={q})")
    if p > q:
        p, q = q, p
    if count < 1:
        raise ValueError(f"count must be >= 1 (got {count})")
    descriptor = f"purity({p},{q})"
    if p == 1:
        values = np.ones(count)
    else:
        values = np.empty(count)
        pos = 0
        for spectra in _purity_spectra(p, q, count, seed, streams):
            chunk = len(spectra)
            values[pos : pos + chunk] = np.sum(spectra**2, axis=1)
            pos += chunk
    return SampleBatch(
        descriptor=descriptor,
        seed=seed,
        count=count,
        values=values,
        support=(1.0 / p, 1.0),
    )


def schmidt_spectra(p: int, q: int, count: int, seed: int, streams: int = 1) -> np.ndarray:
    """Schmidt spectra, shape (count, p), from the same stream as sample_purity."""
    if p < 1 or q < 1:
        raise ValueError(f"dimensions must be >= 1 (got p={p}, q={q})")
    if p > q:
        p, q = q, p
    if count < 1:
        raise ValueError(f"count must be >= 1 (got {count})")
    if p == 1:
        return np.ones((count, 1))
    return np.concatenate(list(_purity_spectra(p, q, count, seed, streams)), axis=0)


def _mw_block(m: int) -> int:
    # Cap block memory at ~64 MiB of complex128 state amplitudes.
    return max(1, min(_BLOCK, 2**22 // 2**m))


def sample_mw(m: int, count: int, seed: int, streams: int = 1) -> SampleBatch:
    """Meyer-Wallach Q of ``count`` Haar-random m-qubit pure states.

    Per draw, the 2 x 2 reduced density matrix of each qubit is formed by a
    direct partial trace (index reshaping, no per-qubit SVD), R_k is the
    trace of its square, and Q = 2 (1 - mean_k R_k).
    """
    if m < 2:
        raise ValueError(f"sample_mw requires m >= 2 (got {m})")
    if m > _MAX_QUBITS:
        raise ValueError(
            f"m = {m} exceeds the memory guard ({_MAX_QUBITS} qubits, "
            f"{2**_MAX_QUBITS} amplitudes per draw)"
        )
    if count < 1:
        raise ValueError(f"count must be >= 1 (got {count})")
    values = np.empty(count)
    pos = 0
    block = _mw_block(m)
    for stream, n in enumerate(_stream_counts(count, streams)):
        rng = _stream_rng(seed, stream)
        for psi in _gaussian_states(rng, n, 2**m, block):
            chunk = len(psi)
            purity_sum = np.zeros(chunk)
            for k in range(m):
                reshaped = psi.reshape(chunk, 2 ** (m - 1 - k), 2, 2**k)
                rho = np.einsum("nxby,nxcy->nbc", reshaped, reshaped.conj())
                purity_sum += np.sum(rho.real**2 + rho.imag**2, axis=(1, 2))
            values[pos : pos + chunk] = 2.0 * (1.0 - purity_sum / m)
            pos += chunk
    return SampleBatch(
        descriptor=f"mw({m})",
        seed=seed,
        count=count,
        values=values,
        support=(0.0, 1.0),
    )


def empirical_moments(batch: SampleBatch, n_max: int) -> list[tuple[float, float]]:
    """Sample means of value**n for n = 1..n_max with their standard errors."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1 (got {n_max})")
    if batch.count < 1:
        raise ValueError("empty batch")
    out = []
    for n in range(1, n_max + 1):
        powered = batch.values**n
        mean = float(np.mean(powered))
        if batch.count == 1:
            se = 0.0
        else:
            se = float(np.std(powered, ddof=1) / math.sqrt(batch.count))
        out.append((mean, se))
    return out


def histogram(
    batch: SampleBatch,
    bins: int,
    value_range: tuple[float, float] | None = None,
) -> Histogram:
    """Equal-width histogram of a batch.

    Bins span the batch's theoretical support by default; pass
    ``value_range`` to bin over a different window (values outside it are
    dropped and ``total`` counts only what landed in range).  A degenerate
    support (single point) is widened by 0.5 on each side so constant
    batches land in one bin.
    """
    if bins < 2:
        raise ValueError(f"bins must be >= 2 (got {bins})")
    lo, hi = value_range if value_range is not None else batch.support
    if lo > hi:
        raise ValueError(f"empty bin range ({lo}, {hi})")
    if lo == hi:
        lo, hi = lo - 0.5, hi + 0.5
    edges = np.linspace(lo, hi, bins + 1)
    counts, _ = np.histogram(batch.values, bins=edges)
    return Histogram(bin_edges=edges, counts=counts, total=int(counts.sum()))


def ks_statistic(values: Sequence[float] | np.ndarray, cdf: Callable[[float], float]) -> float:
    """Kolmogorov-Smirnov distance between a sample and a reference CDF."""
    data = np.sort(np.asarray(values, dtype=float))
    n = len(data)
    if n == 0:
        raise ValueError("empty sample")
    theo = np.array([cdf(x) for x in data])
    steps = np.arange(n + 1) / n
    return float(max(np.max(steps[1:] - theo), np.max(theo - steps[:-1])))


def write_batch_csv(batch: SampleBatch, path: str | Path) -> None:
    """Export a batch: '# descriptor,seed,count' header then one value per line.

    Values carry 17 significant digits, enough for an exact binary64
    round-trip.
    """
    lines = [f"# {batch.descriptor},{batch.seed},{batch.count}"]
    lines.extend(f"{v:.17g}" for v in batch.values)
    Path(path).write_text("\n".join(lines) + "\n")


def read_batch_csv(path: str | Path) -> SampleBatch:
    """Read a batch written by :func:`write_batch_csv`."""
    text = Path(path).read_text().strip().splitlines()
    header = text[0]
    if not header.startswith("# "):
        raise ValueError(f"malformed batch header: {header!r}")
    descriptor, seed, count = header[2:].rsplit(",", 2)
    values = np.array([float(line) for line in text[1:]])
    if descriptor.startswith("purity("):
        p = int(descriptor[len("purity(") : -1].split(",")[0])
        support = (1.0 / p, 1.0)
    elif descriptor.startswith("mw("):
        support = (0.0, 1.0)
    else:
        raise ValueError(f"unknown descriptor: {descriptor!r}")
    return SampleBatch(
        descriptor=descriptor,
        seed=int(seed),
        count=int(count),
        values=values,
        support=support,
    )
