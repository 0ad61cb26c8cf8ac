"""Directional F-tests and the per-market experiment grid."""

from __future__ import annotations

import numpy as np
import pytest

from conftest import make_frame, make_series
from oracles import f_upper_tail_by_quadrature, granger_f_by_normal_equations
from sentvar import InsufficientDataError
from sentvar.granger import (
    DIRECTIONS,
    TRANSFORMATIONS,
    CellError,
    GrangerResult,
    granger_test,
    run_experiment,
)
from sentvar.stats_core import f_cdf

FAMILIES = tuple(family for family, _, _ in TRANSFORMATIONS)


def _lagged_pair_frame(seed=2, t=200, noise=0.5):
    """b follows a's previous value, so causality runs a -> b only."""
    rng = np.random.default_rng(seed)
    a = rng.standard_normal(t + 1)
    b = a[:-1] + noise * rng.standard_normal(t)
    return make_frame(("a", "b"), [a[1:], b])


class TestGrangerTest:
    def test_fixed_frame_matches_exact_arithmetic(self):
        a = [2.0, 5.0, 3.0, 8.0, 1.0, 9.0, 4.0, 7.0, 6.0, 2.0, 8.0, 3.0]
        b = [1.0, 4.0, 2.0, 7.0, 3.0, 6.0, 5.0, 9.0, 2.0, 8.0, 4.0, 1.0]
        frame = make_frame(("a", "b"), [a, b])
        result = granger_test(frame, cause="a", effect="b", p=1)
        f_ref, dof1, dof2 = granger_f_by_normal_equations(a, b, 1)
        assert (dof1, dof2) == (1, 8)
        assert result.t_eff == 11
        assert result.f_stat == pytest.approx(f_ref, rel=1e-9)
        assert result.p_value == pytest.approx(
            f_upper_tail_by_quadrature(f_ref, dof1, dof2), abs=1e-9
        )
        assert result.significant_5pct == (result.p_value < 0.05)

    def test_higher_order_matches_exact_arithmetic(self):
        rng = np.random.default_rng(20)
        a = list(rng.standard_normal(30))
        b = list(rng.standard_normal(30))
        frame = make_frame(("a", "b"), [a, b])
        result = granger_test(frame, cause="b", effect="a", p=3)
        f_ref, dof1, dof2 = granger_f_by_normal_equations(b, a, 3)
        assert result.t_eff == 27
        assert (dof1, dof2) == (3, 27 - 7)
        assert result.f_stat == pytest.approx(f_ref, rel=1e-9)
        assert result.p_value == pytest.approx(
            f_upper_tail_by_quadrature(f_ref, dof1, dof2), abs=1e-9
        )

    def test_direction_asymmetry(self):
        frame = _lagged_pair_frame()
        for p in (1, 2):
            forward = granger_test(frame, cause="a", effect="b", p=p)
            reverse = granger_test(frame, cause="b", effect="a", p=p)
            assert forward.significant_5pct
            assert not forward.perfect_fit
            assert not reverse.significant_5pct
            assert forward.p_value < 0.05 < reverse.p_value
            assert (forward.cause, forward.effect) == ("a", "b")
            assert (reverse.cause, reverse.effect) == ("b", "a")
            assert forward.t_eff == reverse.t_eff == frame.rows - p

    def test_perfect_fit_marker(self):
        cause = np.random.default_rng(7).standard_normal(40)
        effect = np.concatenate([[0.0], cause[:-1]])
        frame = make_frame(("x", "y"), [cause, effect])
        result = granger_test(frame, cause="x", effect="y", p=1)
        assert result.perfect_fit
        assert result.f_stat is None
        assert result.p_value == 0.0
        assert result.significant_5pct
        assert result.t_eff == 39

    def test_statistic_is_never_negative(self):
        rng = np.random.default_rng(21)
        for _ in range(50):
            t = int(rng.integers(20, 80))
            frame = make_frame(("a", "b"), [rng.standard_normal(t), rng.standard_normal(t)])
            result = granger_test(frame, cause="a", effect="b", p=2)
            assert result.f_stat >= 0.0
            assert 0.0 <= result.p_value <= 1.0

    def test_invariant_to_column_scaling(self):
        rng = np.random.default_rng(22)
        a, b = rng.standard_normal(60), rng.standard_normal(60)
        base = granger_test(make_frame(("a", "b"), [a, b]), cause="a", effect="b", p=2)
        for ca, cb in [(16.0, 1.0), (1.0, 0.25), (16.0, 0.25)]:
            scaled = granger_test(
                make_frame(("a", "b"), [ca * a, cb * b]), cause="a", effect="b", p=2
            )
            assert scaled.f_stat == pytest.approx(base.f_stat, rel=1e-9)
            assert scaled.p_value == pytest.approx(base.p_value, abs=1e-9)

    def test_p_value_comes_from_the_f_distribution(self):
        frame = _lagged_pair_frame(seed=3, noise=2.0)
        result = granger_test(frame, cause="a", effect="b", p=2)
        dof2 = result.t_eff - 2 * 2 - 1
        assert result.p_value == pytest.approx(1.0 - f_cdf(result.f_stat, 2, dof2), abs=1e-15)

    def test_argument_validation(self):
        frame = _lagged_pair_frame()
        with pytest.raises(ValueError):
            granger_test(frame, cause="a", effect="b", p=0)
        with pytest.raises(ValueError):
            granger_test(frame, cause="a", effect="a", p=1)
        with pytest.raises(ValueError):
            granger_test(frame, cause="missing", effect="b", p=1)

    def test_too_few_rows(self):
        rng = np.random.default_rng(23)
        frame = make_frame(("a", "b"), [rng.standard_normal(7), rng.standard_normal(7)])
        with pytest.raises(InsufficientDataError):
            granger_test(frame, cause="a", effect="b", p=2)


def _planted_inputs(rng, t=400, coupling=0.6):
    """Returns lead both indicators by one day through a shared shock."""
    shocks = rng.standard_normal(t + 1)
    ret = make_series("ret", list(shocks[1:]))
    sent = make_series("sent", list(coupling * shocks[:-1] + rng.standard_normal(t)))
    arms = make_series("arms", list(coupling * shocks[:-1] + rng.standard_normal(t)))
    return ret, sent, arms


class TestRunExperiment:
    def test_grid_is_complete(self):
        ret, sent, arms = _planted_inputs(np.random.default_rng(30), t=120)
        report = run_experiment(ret, sent, arms, market="m", lags=(1, 2), p_max_for_aic=3)
        assert report.market == "m"
        assert report.lags == (1, 2)
        expected_cells = {
            (family, indicator, lag, direction)
            for family in FAMILIES
            for indicator in ("SENT", "ARMS")
            for lag in (1, 2)
            for direction in DIRECTIONS
        }
        assert set(report.cells) == expected_cells
        assert len(report.cells) == 32
        assert set(report.var_tables) == {
            (family, indicator, lag)
            for family in FAMILIES
            for indicator in ("SENT", "ARMS")
            for lag in (1, 2)
        }
        assert set(report.aic_selected) == {
            (family, indicator) for family in FAMILIES for indicator in ("SENT", "ARMS")
        }
        for sel in report.aic_selected.values():
            assert isinstance(sel, int) and 1 <= sel <= 3

    def test_direction_naming_tracks_the_transformation(self):
        ret, sent, arms = _planted_inputs(np.random.default_rng(31), t=150)
        report = run_experiment(ret, sent, arms, market="m", lags=(1,))
        oriented = {
            ("levels", "SENT"): ("ret", "sent"),
            ("diff_indicator", "ARMS"): ("ret", "darms"),
            ("diff_return", "SENT"): ("dret", "sent"),
            ("diff_both", "ARMS"): ("dret", "darms"),
        }
        for (family, indicator), (ret_name, ind_name) in oriented.items():
            test1 = report.cells[(family, indicator, 1, "test1")]
            test2 = report.cells[(family, indicator, 1, "test2")]
            assert (test1.cause, test1.effect) == (ret_name, ind_name)
            assert (test2.cause, test2.effect) == (ind_name, ret_name)

    def test_aic_selection_is_optional(self):
        ret, sent, arms = _planted_inputs(np.random.default_rng(32), t=100)
        report = run_experiment(ret, sent, arms, market="m", lags=(1,))
        assert report.aic_selected == {}

    def test_short_input_degrades_to_cell_errors(self):
        ret = make_series("ret", [0.01, -0.02, 0.005, 0.012])
        sent = make_series("sent", [1.1, 0.9, 1.3, 1.0])
        arms = make_series("arms", [0.8, 1.2, 0.7, 1.1])
        report = run_experiment(ret, sent, arms, market="m", lags=(1, 2), p_max_for_aic=2)
        assert len(report.cells) == 32
        for cell in report.cells.values():
            assert isinstance(cell, CellError)
            assert cell.kind == "insufficient_data"
        for table in report.var_tables.values():
            assert isinstance(table, CellError)
        for sel in report.aic_selected.values():
            assert isinstance(sel, CellError)

    def test_lags_validated(self):
        ret, sent, arms = _planted_inputs(np.random.default_rng(33), t=60)
        with pytest.raises(ValueError):
            run_experiment(ret, sent, arms, market="m", lags=())
        with pytest.raises(ValueError):
            run_experiment(ret, sent, arms, market="m", lags=(1, 0))

    def test_independent_inputs_rarely_reject(self):
        rng = np.random.default_rng(1)
        significant = 0
        reps = 500
        for _ in range(reps):
            ret = make_series("ret", list(rng.standard_normal(300)))
            sent = make_series("sent", list(np.abs(rng.standard_normal(300)) + 0.1))
            arms = make_series("arms", list(np.abs(rng.standard_normal(300)) + 0.1))
            report = run_experiment(ret, sent, arms, market="m", lags=(1, 2))
            significant += sum(
                1
                for cell in report.cells.values()
                if isinstance(cell, GrangerResult) and cell.significant_5pct
            )
        # 32 cells at a 5% level would give 1.6 hits per run if the cells
        # were independent; they are heavily correlated, so allow slack.
        assert 1.0 <= significant / reps <= 2.2

    def test_planted_direction_found_and_reverse_mostly_quiet(self):
        rng = np.random.default_rng(0)
        reps = 200
        hits: dict[tuple[str, str, int, str], int] = {}
        for _ in range(reps):
            ret, sent, arms = _planted_inputs(rng)
            report = run_experiment(ret, sent, arms, market="m", lags=(1, 2))
            for key, cell in report.cells.items():
                hits[key] = hits.get(key, 0) + (
                    isinstance(cell, GrangerResult) and cell.significant_5pct
                )
        for family in FAMILIES:
            for indicator in ("SENT", "ARMS"):
                for lag in (1, 2):
                    rate1 = hits[(family, indicator, lag, "test1")] / reps
                    rate2 = hits[(family, indicator, lag, "test2")] / reps
                    assert rate1 >= 0.95, (family, indicator, lag, rate1)
                    if family in ("levels", "diff_indicator"):
                        assert rate2 <= 0.10, (family, indicator, lag, rate2)
                    elif family == "diff_return":
                        # Differencing only the return side of a one-day lead
                        # makes the indicator predictive of the return change,
                        # so the reverse test fires by construction.
                        assert rate2 >= 0.80, (family, indicator, lag, rate2)
                    else:
                        assert rate2 >= 0.30, (family, indicator, lag, rate2)
