"""Command-line front end.

Five subcommands expose the analytic and Monte Carlo capabilities:

* ``moments``    exact purity moments, cross-checked across formulas
* ``cumulants``  exact cumulants of the purity or of Meyer-Wallach Q
* ``pdf``        density curves (truncated expansion or the exact p = 2 law)
* ``sample``     Haar Monte Carlo batches and histograms
* ``compare``    empirical histogram vs truncated expansions with L1 distances

All commands emit CSV (default) or JSON with identical numeric content.
Exact rationals are serialized as "num/den" strings, floats with 17
significant digits (binary64 round-trip).  Output is deterministic given
the full flag set, seed included; the environment variable ENTMOM_SEED
supplies the default seed.  ``--figure PATH`` on the report commands
renders a matplotlib figure to a file alongside the delimited output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import click
import numpy as np

from . import __version__
from .cumulant_engine import (
    DegenerateDistributionError,
    closed_form_kappa,
    moments_to_cumulants,
    rescale,
)
from .edgeworth import EdgeworthSeries, density_function
from .meyer_wallach import QubitSystem, closed_form_q_kappa, q_cumulants, q_density
from .purity import (
    DimensionPair,
    density_p2,
    moment_R,
    moment_R_p2,
    moment_R_symmetric,
    moment_vector,
)
from .sampler import histogram as make_histogram
from .sampler import sample_mw, sample_purity, write_batch_csv


def _rat(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _f17(x: float) -> str:
    return f"{x:.17g}"


@dataclass
class OutputRecord:
    """One command's output: metadata, column names and data rows."""

    kind: str
    params: dict
    columns: tuple[str, ...]
    rows: list[tuple]
    aggregates: dict = field(default_factory=dict)

    def _cell(self, value) -> str:
        if isinstance(value, Fraction):
            return _rat(value)
        if isinstance(value, float):
            return _f17(value)
        return str(value)

    def _meta(self, value) -> str:
        cell = self._cell(value)
        return f'"{cell}"' if "," in cell else cell

    def to_csv(self) -> str:
        lines = ["# tool,entmom", f"# version,{__version__}", f"# kind,{self.kind}"]
        for key, value in self.params.items():
            lines.append(f"# {key},{self._meta(value)}")
        for key, value in self.aggregates.items():
            lines.append(f"# {key},{self._meta(value)}")
        lines.append(",".join(self.columns))
        for row in self.rows:
            lines.append(",".join(self._cell(v) for v in row))
        return "\n".join(lines) + "\n"

    def _jsonable(self, value):
        if isinstance(value, Fraction):
            return _rat(value)
        return value

    def to_json(self) -> str:
        payload: dict = {
            "tool": "entmom",
            "version": __version__,
            "kind": self.kind,
            "params": {k: self._jsonable(v) for k, v in self.params.items()},
        }
        if self.aggregates:
            payload["aggregates"] = {k: self._jsonable(v) for k, v in self.aggregates.items()}
        payload["columns"] = list(self.columns)
        payload["rows"] = [[self._jsonable(v) for v in row] for row in self.rows]
        return json.dumps(payload, indent=2) + "\n"


def _emit(record: OutputRecord, fmt: str) -> None:
    click.echo(record.to_csv() if fmt == "csv" else record.to_json(), nl=False)


_FORMAT_OPTION = click.option(
    "--format",
    "fmt",
    type=click.Choice(["csv", "json"]),
    default="csv",
    show_default=True,
    help="Output serialization.",
)


@click.group()
@click.version_option(__version__, prog_name="entmom")
def main() -> None:
    """Exact purity/entanglement moment analytics with Monte Carlo validation."""


@main.command()
@click.option("--p", "p", type=int, required=True, help="One subsystem dimension.")
@click.option("--q", "q", type=int, required=True, help="The other subsystem dimension.")
@click.option("--n-max", type=int, default=8, show_default=True, help="Highest moment order.")
@click.option(
    "--formula",
    type=click.Choice(["partition", "symmetric", "p2", "all"]),
    default="all",
    show_default=True,
    help="Implementation to use; 'all' cross-checks every applicable one.",
)
@_FORMAT_OPTION
def moments(p: int, q: int, n_max: int, formula: str, fmt: str) -> None:
    """Exact purity moments <R^n> for a p x q bipartition."""
    if n_max < 0:
        raise click.UsageError("--n-max must be >= 0")
    dims = DimensionPair(p, q)
    if formula == "p2" and dims.p != 2:
        raise click.UsageError("--formula p2 requires the smaller dimension to be 2")
    rows = []
    for n in range(1, n_max + 1):
        if formula == "partition":
            value = moment_R(dims, n)
        elif formula == "symmetric":
            value = moment_R_symmetric(dims, n)
        elif formula == "p2":
            value = moment_R_p2(dims.q, n)
        else:
            value = moment_R(dims, n)
            checks = {"symmetric": moment_R_symmetric(dims, n)}
            if dims.p == 2:
                checks["p2"] = moment_R_p2(dims.q, n)
            for name, other in checks.items():
                if other != value:
                    raise click.ClickException(
                        f"formula cross-check failed at n={n}: "
                        f"partition={_rat(value)} {name}={_rat(other)}"
                    )
        rows.append((n, value, float(value)))
    record = OutputRecord(
        kind="moments",
        params={"p": dims.p, "q": dims.q, "n_max": n_max, "formula": formula},
        columns=("n", "exact", "float"),
        rows=rows,
    )
    _emit(record, fmt)


@main.command()
@click.option("--p", "p", type=int, default=None, help="One subsystem dimension.")
@click.option("--q", "q", type=int, default=None, help="The other subsystem dimension.")
@click.option("--mw", is_flag=True, help="Meyer-Wallach Q instead of the purity.")
@click.option("--qubits", type=int, default=None, help="Number of qubits (with --mw).")
@click.option("--n-max", type=int, default=8, show_default=True, help="Highest cumulant order.")
@click.option(
    "--check-closed-form",
    is_flag=True,
    help="Assert pipeline cumulants equal the printed closed forms for n <= 5.",
)
@_FORMAT_OPTION
def cumulants(
    p: int | None,
    q: int | None,
    mw: bool,
    qubits: int | None,
    n_max: int,
    check_closed_form: bool,
    fmt: str,
) -> None:
    """Exact cumulants of the purity, or of Meyer-Wallach Q with --mw."""
    if n_max < 1:
        raise click.UsageError("--n-max must be >= 1")
    if mw:
        if qubits is None:
            raise click.UsageError("--mw requires --qubits")
        system = QubitSystem(qubits)
        vector = q_cumulants(system, n_max)
        params: dict = {"mw": True, "qubits": qubits, "n_max": n_max}

        def closed(n: int) -> Fraction:
            return closed_form_q_kappa(system, n)

    else:
        if p is None or q is None:
            raise click.UsageError("give --p and --q, or --mw with --qubits")
        dims = DimensionPair(p, q)
        vector = moments_to_cumulants(moment_vector(dims, n_max))
        params = {"p": dims.p, "q": dims.q, "n_max": n_max}

        def closed(n: int) -> Fraction:
            return closed_form_kappa(dims, n)

    if check_closed_form:
        params["check_closed_form"] = True
        mismatches = []
        for n in range(1, min(5, n_max) + 1):
            got, expect = vector.kappa(n), closed(n)
            if got != expect:
                mismatches.append((n, got, expect))
        if mismatches:
            for n, got, expect in mismatches:
                click.echo(
                    f"kappa_{n}: pipeline {_rat(got)} != closed form {_rat(expect)}",
                    err=True,
                )
            raise click.ClickException("closed-form cumulant check failed")
    rows = [(n, vector.kappa(n), float(vector.kappa(n))) for n in range(1, n_max + 1)]
    record = OutputRecord(
        kind="cumulants",
        params=params,
        columns=("n", "exact", "float"),
        rows=rows,
    )
    _emit(record, fmt)


def _purity_series(dims: DimensionPair, order: int) -> EdgeworthSeries:
    cumulant_vector = moments_to_cumulants(moment_vector(dims, order + 2))
    return EdgeworthSeries(rescale(cumulant_vector), order)


@main.command()
@click.option("--p", "p", type=int, default=None, help="One subsystem dimension.")
@click.option("--q", "q", type=int, default=None, help="The other subsystem dimension.")
@click.option("--mw", is_flag=True, help="Meyer-Wallach Q instead of the purity.")
@click.option("--qubits", type=int, default=None, help="Number of qubits (with --mw).")
@click.option("--order", type=int, default=3, show_default=True, help="Truncation order (0 = Gaussian).")
@click.option("--grid", type=int, default=512, show_default=True, help="Number of grid points.")
@click.option("--exact-p2", is_flag=True, help="Emit the exact p = 2 density instead of the expansion.")
@click.option("--figure", type=click.Path(dir_okay=False), default=None, help="Also render the curve to this image file.")
@_FORMAT_OPTION
def pdf(
    p: int | None,
    q: int | None,
    mw: bool,
    qubits: int | None,
    order: int,
    grid: int,
    exact_p2: bool,
    figure: str | None,
    fmt: str,
) -> None:
    """Density curve on an even grid over [mu-6sigma, mu+6sigma] cut to the support.

    Truncated expansions are signed: values may dip below zero in the far
    tails and are emitted as-is.
    """
    if order < 0:
        raise click.UsageError("--order must be >= 0")
    if grid < 2:
        raise click.UsageError("--grid must be >= 2")
    if mw:
        if exact_p2:
            raise click.UsageError("--exact-p2 applies to the purity, not --mw")
        if qubits is None:
            raise click.UsageError("--mw requires --qubits")
        system = QubitSystem(qubits)
        series = q_density(system, order)
        support = (0.0, 1.0)
        params: dict = {"mw": True, "qubits": qubits, "order": order, "grid": grid}
        xlabel = "Q"
    else:
        if p is None or q is None:
            raise click.UsageError("give --p and --q, or --mw with --qubits")
        dims = DimensionPair(p, q)
        if exact_p2 and dims.p != 2:
            raise click.UsageError("--exact-p2 requires the smaller dimension to be 2")
        try:
            series = _purity_series(dims, 0 if exact_p2 else order)
        except DegenerateDistributionError as exc:
            raise click.ClickException(f"degenerate distribution: {exc}") from exc
        support = (1.0 / dims.p, 1.0)
        if exact_p2:
            params = {"p": dims.p, "q": dims.q, "exact_p2": True, "grid": grid}
        else:
            params = {"p": dims.p, "q": dims.q, "order": order, "grid": grid}
        xlabel = "R"
    lo = max(series.mu - 6.0 * series.sigma, support[0])
    hi = min(series.mu + 6.0 * series.sigma, support[1])
    xs = np.linspace(lo, hi, grid)
    if exact_p2:
        ys = [density_p2(float(x), dims.q) for x in xs]
    else:
        f = density_function(series)
        ys = [f(float(x)) for x in xs]
    rows = [(float(x), float(y)) for x, y in zip(xs, ys)]
    record = OutputRecord(kind="density_curve", params=params, columns=("x", "density"), rows=rows)
    _emit(record, fmt)
    if figure is not None:
        from .figures import render_curve

        label = "exact p=2 density" if exact_p2 else f"expansion order {order}"
        render_curve(figure, [r[0] for r in rows], [r[1] for r in rows], xlabel, label)


def _observed_range(values: np.ndarray) -> tuple[float, float]:
    return float(values.min()), float(values.max())


@main.command()
@click.option("--p", "p", type=int, default=None, help="One subsystem dimension.")
@click.option("--q", "q", type=int, default=None, help="The other subsystem dimension.")
@click.option("--mw", is_flag=True, help="Sample Meyer-Wallach Q instead of the purity.")
@click.option("--qubits", type=int, default=None, help="Number of qubits (with --mw).")
@click.option("--count", type=int, default=1000, show_default=True, help="Number of draws.")
@click.option("--seed", type=int, default=0, envvar="ENTMOM_SEED", show_default=True, help="RNG seed (env ENTMOM_SEED).")
@click.option("--bins", type=int, default=50, show_default=True, help="Histogram bins.")
@click.option("--threads", type=int, default=1, show_default=True, help="Independent RNG streams.")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Also write the raw batch CSV here.")
@click.option("--figure", type=click.Path(dir_okay=False), default=None, help="Also render the histogram to this image file.")
@_FORMAT_OPTION
def sample(
    p: int | None,
    q: int | None,
    mw: bool,
    qubits: int | None,
    count: int,
    seed: int,
    bins: int,
    threads: int,
    out: str | None,
    figure: str | None,
    fmt: str,
) -> None:
    """Monte Carlo batch: histogram to stdout, raw values to --out.

    Histogram bins span the observed data range (density-normalized, so the
    histogram integrates to exactly 1).  Identical flag sets reproduce
    identical output byte for byte.
    """
    if count < 1:
        raise click.UsageError("--count must be >= 1")
    if bins < 2:
        raise click.UsageError("--bins must be >= 2")
    if threads < 1:
        raise click.UsageError("--threads must be >= 1")
    if mw:
        if qubits is None:
            raise click.UsageError("--mw requires --qubits")
        batch = sample_mw(qubits, count, seed, streams=threads)
        params: dict = {"mw": True, "qubits": qubits}
        xlabel = "Q"
    else:
        if p is None or q is None:
            raise click.UsageError("give --p and --q, or --mw with --qubits")
        batch = sample_purity(p, q, count, seed, streams=threads)
        params = {"p": p, "q": q}
        xlabel = "R"
    params.update({"count": count, "seed": seed, "bins": bins, "threads": threads})
    if out is not None:
        write_batch_csv(batch, out)
        params["out"] = out
    hist = make_histogram(batch, bins, value_range=_observed_range(batch.values))
    densities = hist.densities()
    rows = [(float(c), float(d)) for c, d in zip(hist.centers, densities)]
    record = OutputRecord(kind="histogram", params=params, columns=("bin_center", "density"), rows=rows)
    _emit(record, fmt)
    if figure is not None:
        from .figures import render_histogram

        render_histogram(
            figure,
            hist.centers,
            hist.widths,
            densities,
            xlabel,
            f"{batch.descriptor}, {count} draws, seed {seed}",
        )


@main.command()
@click.option("--mw", is_flag=True, required=True, help="Compare Meyer-Wallach Q (required).")
@click.option("--qubits", type=int, required=True, help="Number of qubits.")
@click.option("--orders", default="0,1,2,3", show_default=True, help="Comma-separated truncation orders.")
@click.option("--count", type=int, default=10000, show_default=True, help="Number of draws.")
@click.option("--seed", type=int, default=0, envvar="ENTMOM_SEED", show_default=True, help="RNG seed (env ENTMOM_SEED).")
@click.option("--bins", type=int, default=50, show_default=True, help="Histogram bins.")
@click.option("--threads", type=int, default=1, show_default=True, help="Independent RNG streams.")
@click.option("--figure", type=click.Path(dir_okay=False), default=None, help="Also render the comparison panels to this image file.")
@_FORMAT_OPTION
def compare(
    mw: bool,
    qubits: int,
    orders: str,
    count: int,
    seed: int,
    bins: int,
    threads: int,
    figure: str | None,
    fmt: str,
) -> None:
    """Empirical P(Q) histogram vs truncated expansions, with per-order L1 distances."""
    tokens = [tok for tok in orders.split(",") if tok.strip()]
    if not tokens:
        raise click.UsageError("--orders must list at least one truncation order")
    try:
        order_list = sorted({int(tok) for tok in tokens})
    except ValueError as exc:
        raise click.UsageError(f"bad --orders value: {exc}") from exc
    if any(s < 0 for s in order_list):
        raise click.UsageError("truncation orders must be >= 0")
    if count < 1:
        raise click.UsageError("--count must be >= 1")
    if bins < 2:
        raise click.UsageError("--bins must be >= 2")
    if threads < 1:
        raise click.UsageError("--threads must be >= 1")
    system = QubitSystem(qubits)
    batch = sample_mw(qubits, count, seed, streams=threads)
    hist = make_histogram(batch, bins, value_range=_observed_range(batch.values))
    centers = hist.centers
    widths = hist.widths
    empirical = hist.densities()
    curves: dict[int, np.ndarray] = {}
    l1: dict[int, float] = {}
    for order in order_list:
        f = density_function(q_density(system, order))
        curve = np.array([f(float(c)) for c in centers])
        curves[order] = curve
        l1[order] = float(np.sum(np.abs(empirical - curve) * widths))
    columns = ["bin_center", "empirical"]
    for order in order_list:
        columns += [f"order{order}_density", f"order{order}_diff"]
    rows = []
    for i, center in enumerate(centers):
        row: list[float] = [float(center), float(empirical[i])]
        for order in order_list:
            row += [float(curves[order][i]), float(curves[order][i] - empirical[i])]
        rows.append(tuple(row))
    record = OutputRecord(
        kind="comparison",
        params={
            "mw": True,
            "qubits": qubits,
            "orders": ",".join(str(s) for s in order_list),
            "count": count,
            "seed": seed,
            "bins": bins,
            "threads": threads,
        },
        columns=tuple(columns),
        rows=rows,
        aggregates={f"l1_order_{order}": l1[order] for order in order_list},
    )
    _emit(record, fmt)
    if figure is not None:
        from .figures import render_comparison

        render_comparison(
            figure,
            centers,
            empirical,
            curves,
            "Q",
            f"P(Q), m={qubits}, {count} draws, seed {seed}",
        )


if __name__ == "__main__":
    main()
