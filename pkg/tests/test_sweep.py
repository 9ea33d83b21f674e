import math

import numpy as np
import pytest

from dotspin import DomainError
from dotspin.sweep import (
    HEADERS,
    AxisRange,
    SweepConfig,
    format_value,
    render_csv,
    run_sweep,
    sweep_rows,
)

SMALL = SweepConfig(n="both", xb=AxisRange(0.8, 2.0, 4), xc=AxisRange(0.0, 3.0, 3))


@pytest.fixture(scope="module")
def small_tables():
    return run_sweep(SMALL)


class TestAxisRange:
    def test_values_inclusive(self):
        np.testing.assert_allclose(AxisRange(1.0, 2.0, 3).values(), [1.0, 1.5, 2.0])

    def test_single_step_collapses(self):
        assert AxisRange(1.5, 1.5, 1).values().tolist() == [1.5]

    @pytest.mark.parametrize("lo, hi, steps", [(1.0, 2.0, 0), (2.0, 1.0, 5), (math.inf, 3.0, 2)])
    def test_validation(self, lo, hi, steps):
        with pytest.raises(DomainError):
            AxisRange(lo, hi, steps)


class TestSweepConfig:
    def test_defaults_cover_region_of_interest(self):
        config = SweepConfig()
        assert config.n == "both"
        assert (config.xb.lo, config.xb.hi, config.xb.steps) == (0.5, 3.0, 50)
        assert (config.xc.lo, config.xc.hi, config.xc.steps) == (0.0, 6.0, 50)

    def test_rejects_nonpositive_xb_start(self):
        with pytest.raises(DomainError):
            SweepConfig(xb=AxisRange(0.0, 1.0, 10))

    def test_rejects_negative_xc(self):
        with pytest.raises(DomainError):
            SweepConfig(xc=AxisRange(-1.0, 1.0, 10))

    def test_rejects_unknown_n(self):
        with pytest.raises(DomainError):
            SweepConfig(n="5")


class TestFormatValue:
    def test_nan_token(self):
        assert format_value(float("nan")) == "NaN"

    def test_seventeen_significant_digits(self):
        assert format_value(1.0 / 3.0) == "0.33333333333333331"

    def test_integer_valued(self):
        assert format_value(2.0) == "2"


class TestRows:
    def test_row_count_and_order(self):
        xb = np.array([1.0, 2.0])
        xc = np.array([0.0, 1.0, 2.0])
        rows = sweep_rows(3, xb, xc)
        assert len(rows) == 6
        assert [r[0] for r in rows] == [1.0, 1.0, 1.0, 2.0, 2.0, 2.0]
        assert [r[1] for r in rows] == [0.0, 1.0, 2.0, 0.0, 1.0, 2.0]

    def test_delta_j_pole_becomes_nan_without_losing_the_row(self):
        # 1 - 3 exp(-2 x_b) = 0 at x_b = ln(3)/2: only deltaJ is undefined there
        pole = math.log(3.0) / 2.0
        row = sweep_rows(3, [pole], [1.0])[0]
        names = HEADERS[3]
        assert math.isnan(row[names.index("deltaJ")])
        assert not math.isnan(row[names.index("J")])

    def test_four_electron_ratio_populated(self):
        row = sweep_rows(4, [1.0], [1.5])[0]
        names = HEADERS[4]
        ratio = row[names.index("Jprime_over_J")]
        assert ratio == pytest.approx(
            row[names.index("Jprime")] / row[names.index("J")], rel=1e-15
        )

    def test_collapsed_basis_row_is_all_nan_but_present(self):
        # at x_b ~ 1e-7 the orbitals are essentially identical: every matching
        # denominator vanishes, but the grid row must survive with NaN data
        row = sweep_rows(3, [1e-7], [1.0])[0]
        assert row[0] == 1e-7 and row[1] == 1.0
        assert all(math.isnan(v) for v in row[2:])

    def test_threaded_evaluation_bitwise_matches_sequential(self):
        # grid points are independent pure functions; evaluating them on a
        # thread pool with ordered collection must reproduce the serial rows
        from concurrent.futures import ThreadPoolExecutor

        from dotspin.sweep import _point_row3

        xb = np.linspace(0.8, 2.0, 4)
        xc = np.linspace(0.0, 3.0, 3)
        sequential = sweep_rows(3, xb, xc)
        points = [(float(b), float(c)) for b in xb for c in xc]
        with ThreadPoolExecutor(max_workers=4) as pool:
            threaded = list(pool.map(lambda p: _point_row3(*p), points))
        assert threaded == sequential


class TestCsv:
    def test_headers_exact(self):
        assert ",".join(HEADERS[3]) == "x_b,x_c,E_half,E_threehalf,L0,L1,K,J,deltaJ"
        assert (
            ",".join(HEADERS[4])
            == "x_b,x_c,E0,E1,E2,L0,L1,L2,K,J,Jprime,Jprime_over_J"
        )

    def test_byte_identical_reruns(self, small_tables):
        again = run_sweep(SMALL)
        for first, second in zip(small_tables, again):
            assert first.csv_text == second.csv_text

    def test_row_count_matches_grid(self, small_tables):
        for table in small_tables:
            lines = table.csv_text.strip().split("\n")
            assert len(lines) == 1 + 4 * 3

    def test_mev_block_appends_scaled_columns(self):
        config = SweepConfig(
            n="3", xb=AxisRange(1.0, 1.5, 2), xc=AxisRange(0.5, 1.0, 2),
            hbar_omega_mev=3.0,
        )
        plain = run_sweep(SweepConfig(n="3", xb=config.xb, xc=config.xc))[0]
        scaled = run_sweep(config)[0]
        plain_lines = plain.csv_text.strip().split("\n")
        scaled_lines = scaled.csv_text.strip().split("\n")
        assert scaled_lines[0] == plain_lines[0] + (
            ",E_half_meV,E_threehalf_meV,L0_meV,L1_meV,K_meV,J_meV,deltaJ_meV"
        )
        for plain_row, scaled_row in zip(plain_lines[1:], scaled_lines[1:]):
            # dimensionless block unchanged
            assert scaled_row.startswith(plain_row)
            base = [float(v) for v in plain_row.split(",")]
            extra = [float(v) for v in scaled_row.split(",")[len(base):]]
            for value, mev in zip(base[2:], extra):
                assert mev == value * 3.0

    def test_render_csv_nan_token(self):
        rows = [[1.0, 2.0] + [float("nan")] * 7]
        text = render_csv(3, rows, None)
        assert "NaN" in text and "nan" not in text


class TestGrids:
    def test_gnuplot_matrix_layout(self, small_tables):
        table3 = small_tables[0]
        grid = table3.grids["J"]
        lines = grid.strip().split("\n")
        first = lines[0].split()
        assert first[0] == "3"  # x_c count
        assert len(lines) == 1 + 4
        assert float(lines[1].split()[0]) == 0.8

    def test_grid_value_matches_row(self, small_tables):
        table3 = small_tables[0]
        j_col = HEADERS[3].index("J")
        grid_lines = table3.grids["J"].strip().split("\n")
        first_value = float(grid_lines[1].split()[1])
        assert first_value == table3.rows[0][j_col]

    def test_quantities_per_count(self, small_tables):
        assert set(small_tables[0].grids) == {"J", "deltaJ"}
        assert set(small_tables[1].grids) == {"J", "Jprime"}


class TestRunSweep:
    def test_both_counts_produced(self, small_tables):
        assert [t.n for t in small_tables] == [3, 4]

    def test_summary_mentions_count_and_range(self, small_tables):
        assert "points" in small_tables[0].summary
        assert small_tables[0].summary.startswith("n=3:")

    def test_j_grows_as_barrier_shrinks_at_fixed_xc(self, small_tables):
        j_col = HEADERS[3].index("J")
        rows = small_tables[0].rows
        n_xc = SMALL.xc.steps
        for col in range(n_xc):
            j_series = [rows[i * n_xc + col][j_col] for i in range(SMALL.xb.steps)]
            assert all(a > b for a, b in zip(j_series, j_series[1:]))
