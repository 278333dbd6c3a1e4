import json

import numpy as np
import pytest
from click.testing import CliRunner

from entmom import __version__
from entmom.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def run_ok(runner, args, env=None):
    result = runner.invoke(main, args, env=env, catch_exceptions=False)
    assert result.exit_code == 0, result.output
    return result.output


def data_rows(output):
    lines = [line for line in output.strip().splitlines() if not line.startswith("#")]
    return lines[0].split(","), [line.split(",") for line in lines[1:]]


class TestMoments:
    def test_lubkin_row(self, runner):
        out = run_ok(runner, ["moments", "--p", "2", "--q", "2", "--n-max", "1"])
        header, rows = data_rows(out)
        assert header == ["n", "exact", "float"]
        assert rows[0][0] == "1"
        assert rows[0][1] == "4/5"
        assert float(rows[0][2]) == 0.8

    def test_p1_all_unit(self, runner):
        out = run_ok(runner, ["moments", "--p", "1", "--q", "9", "--n-max", "3"])
        _, rows = data_rows(out)
        assert [r[1] for r in rows] == ["1/1", "1/1", "1/1"]

    def test_formula_p2_selection(self, runner):
        out = run_ok(
            runner,
            ["moments", "--p", "2", "--q", "4", "--n-max", "2", "--formula", "p2"],
        )
        _, rows = data_rows(out)
        assert rows[1][1] == "5/11"

    def test_formula_p2_requires_p_two(self, runner):
        result = runner.invoke(main, ["moments", "--p", "3", "--q", "4", "--formula", "p2"])
        assert result.exit_code != 0
        assert "p2" in result.output

    def test_version_stamp_present(self, runner):
        out = run_ok(runner, ["moments", "--p", "2", "--q", "3", "--n-max", "1"])
        assert f"# version,{__version__}" in out.splitlines()


class TestCumulants:
    def test_kappa2_2x2(self, runner):
        out = run_ok(runner, ["cumulants", "--p", "2", "--q", "2", "--n-max", "2"])
        _, rows = data_rows(out)
        assert rows[1][1] == "3/175"

    def test_mw_kappa1_m10(self, runner):
        out = run_ok(runner, ["cumulants", "--mw", "--qubits", "10", "--n-max", "1"])
        _, rows = data_rows(out)
        assert rows[0][1] == "1022/1025"

    def test_degenerate_p1(self, runner):
        out = run_ok(runner, ["cumulants", "--p", "1", "--q", "5", "--n-max", "3"])
        _, rows = data_rows(out)
        assert [r[1] for r in rows] == ["1/1", "0/1", "0/1"]

    def test_closed_form_check_passes(self, runner):
        run_ok(
            runner,
            ["cumulants", "--p", "3", "--q", "5", "--n-max", "5", "--check-closed-form"],
        )
        run_ok(
            runner,
            ["cumulants", "--mw", "--qubits", "6", "--n-max", "5", "--check-closed-form"],
        )

    def test_requires_some_target(self, runner):
        result = runner.invoke(main, ["cumulants", "--n-max", "2"])
        assert result.exit_code != 0

    def test_mw_needs_qubits(self, runner):
        result = runner.invoke(main, ["cumulants", "--mw"])
        assert result.exit_code != 0


class TestPdf:
    def test_order_zero_is_gaussian(self, runner):
        import math

        from entmom.cumulant_engine import moments_to_cumulants, rescale
        from entmom.purity import DimensionPair, moment_vector

        out = run_ok(
            runner,
            ["pdf", "--p", "3", "--q", "3", "--order", "0", "--grid", "5"],
        )
        _, rows = data_rows(out)
        rc = rescale(moments_to_cumulants(moment_vector(DimensionPair(3, 3), 2)))
        for x_str, y_str in rows:
            x, y = float(x_str), float(y_str)
            z = (x - rc.mu) / rc.sigma
            expect = math.exp(-0.5 * z * z) / (rc.sigma * math.sqrt(2 * math.pi))
            assert y == pytest.approx(expect, rel=1e-12)

    def test_exact_p2_trapezoid_mass(self, runner):
        # the sqrt edge limits an even-grid trapezoid rule to ~1e-3 accuracy;
        # proper quadrature of the same density is checked at 1e-8 elsewhere
        out = run_ok(
            runner,
            ["pdf", "--p", "2", "--q", "8", "--exact-p2", "--grid", "400"],
        )
        _, rows = data_rows(out)
        xs = np.array([float(r[0]) for r in rows])
        ys = np.array([float(r[1]) for r in rows])
        mass = float(np.sum(0.5 * (ys[1:] + ys[:-1]) * np.diff(xs)))
        assert abs(mass - 1.0) < 2e-3

    def test_exact_p2_requires_p_two(self, runner):
        result = runner.invoke(main, ["pdf", "--p", "3", "--q", "4", "--exact-p2"])
        assert result.exit_code != 0

    def test_mw_curve_within_support(self, runner):
        out = run_ok(
            runner,
            ["pdf", "--mw", "--qubits", "10", "--order", "3", "--grid", "64"],
        )
        _, rows = data_rows(out)
        xs = [float(r[0]) for r in rows]
        assert len(xs) == 64
        assert min(xs) >= 0.0 and max(xs) <= 1.0

    def test_degenerate_purity_errors(self, runner):
        result = runner.invoke(main, ["pdf", "--p", "1", "--q", "4"])
        assert result.exit_code != 0

    def test_figure_written(self, runner, tmp_path):
        fig = tmp_path / "curve.png"
        run_ok(
            runner,
            ["pdf", "--p", "2", "--q", "4", "--order", "2", "--grid", "32", "--figure", str(fig)],
        )
        assert fig.exists() and fig.stat().st_size > 0


class TestSample:
    def test_repeat_runs_byte_identical(self, runner):
        args = ["sample", "--p", "2", "--q", "4", "--count", "500", "--seed", "9", "--bins", "20"]
        assert run_ok(runner, args) == run_ok(runner, args)

    def test_p1_batch_values(self, runner, tmp_path):
        out_file = tmp_path / "batch.csv"
        run_ok(
            runner,
            ["sample", "--p", "1", "--q", "4", "--count", "10", "--out", str(out_file)],
        )
        lines = out_file.read_text().strip().splitlines()
        assert lines[0] == "# purity(1,4),0,10"
        assert lines[1:] == ["1"] * 10

    def test_histogram_integrates_to_one(self, runner):
        out = run_ok(
            runner,
            ["sample", "--mw", "--qubits", "4", "--count", "400", "--seed", "3", "--bins", "25"],
        )
        _, rows = data_rows(out)
        centers = np.array([float(r[0]) for r in rows])
        dens = np.array([float(r[1]) for r in rows])
        width = centers[1] - centers[0]
        assert float(np.sum(dens) * width) == pytest.approx(1.0, rel=1e-9)

    def test_env_seed_used_as_default(self, runner):
        out = run_ok(
            runner,
            ["sample", "--p", "2", "--q", "2", "--count", "50", "--bins", "10"],
            env={"ENTMOM_SEED": "123"},
        )
        assert "# seed,123" in out.splitlines()

    def test_figure_written(self, runner, tmp_path):
        fig = tmp_path / "hist.png"
        run_ok(
            runner,
            ["sample", "--p", "2", "--q", "8", "--count", "300", "--seed", "1", "--figure", str(fig)],
        )
        assert fig.exists() and fig.stat().st_size > 0


class TestCompare:
    def test_reports_l1_per_order(self, runner):
        out = run_ok(
            runner,
            ["compare", "--mw", "--qubits", "4", "--orders", "0,3", "--count", "400", "--seed", "5", "--bins", "16"],
        )
        lines = out.splitlines()
        assert any(line.startswith("# l1_order_0,") for line in lines)
        assert any(line.startswith("# l1_order_3,") for line in lines)
        header, rows = data_rows(out)
        assert header[:2] == ["bin_center", "empirical"]
        assert "order0_density" in header and "order3_diff" in header
        assert len(rows) == 16

    def test_empty_orders_rejected(self, runner):
        result = runner.invoke(main, ["compare", "--mw", "--qubits", "4", "--orders", ","])
        assert result.exit_code != 0

    def test_deterministic(self, runner):
        args = ["compare", "--mw", "--qubits", "3", "--orders", "0,1", "--count", "300", "--seed", "8", "--bins", "12"]
        assert run_ok(runner, args) == run_ok(runner, args)

    def test_figure_written(self, runner, tmp_path):
        fig = tmp_path / "cmp.png"
        run_ok(
            runner,
            ["compare", "--mw", "--qubits", "3", "--orders", "0,1", "--count", "200", "--seed", "2", "--figure", str(fig)],
        )
        assert fig.exists() and fig.stat().st_size > 0


class TestFormats:
    def test_json_matches_csv_numerically(self, runner):
        csv_out = run_ok(runner, ["moments", "--p", "2", "--q", "4", "--n-max", "3"])
        json_out = run_ok(
            runner,
            ["moments", "--p", "2", "--q", "4", "--n-max", "3", "--format", "json"],
        )
        payload = json.loads(json_out)
        assert payload["tool"] == "entmom"
        assert payload["version"] == __version__
        assert payload["columns"] == ["n", "exact", "float"]
        _, rows = data_rows(csv_out)
        for csv_row, json_row in zip(rows, payload["rows"]):
            assert int(csv_row[0]) == json_row[0]
            assert csv_row[1] == json_row[1]
            assert float(csv_row[2]) == json_row[2]

    def test_json_kind_and_params(self, runner):
        out = run_ok(
            runner,
            ["cumulants", "--mw", "--qubits", "5", "--n-max", "2", "--format", "json"],
        )
        payload = json.loads(out)
        assert payload["kind"] == "cumulants"
        assert payload["params"]["qubits"] == 5

    def test_comparison_json_carries_aggregates(self, runner):
        out = run_ok(
            runner,
            ["compare", "--mw", "--qubits", "3", "--orders", "0", "--count", "200", "--seed", "4", "--format", "json"],
        )
        payload = json.loads(out)
        assert "l1_order_0" in payload["aggregates"]
