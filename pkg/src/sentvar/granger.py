"""Granger causality F-tests and the two-indicator experiment matrix.

``granger_test`` runs one direction on one aligned frame. ``run_experiment``
sweeps the full grid for a market: four transformation families (levels and
first differences on either side), two indicators, each requested lag, and
both directions, re-aligning the pair for every family.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .breadth import diff_series
from .errors import (
    DataError,
    InsufficientDataError,
    NumericalError,
    SingularDesignError,
)
from .ingest import AlignedFrame, TimeSeries, align
from .stats_core import DesignMatrix, f_cdf, ols_fit
from .var_engine import CoefficientTable, coefficient_table, fit_var, select_lag

#: Relative residual threshold under which the unrestricted fit is exact.
PERFECT_FIT_REL_RSS = 1.0e-16

#: Family name -> (difference the return side, difference the indicator side).
TRANSFORMATIONS: tuple[tuple[str, bool, bool], ...] = (
    ("levels", False, False),
    ("diff_indicator", False, True),
    ("diff_return", True, False),
    ("diff_both", True, True),
)

DIRECTIONS = ("test1", "test2")  # test1: return side -> indicator side


@dataclass(frozen=True)
class GrangerResult:
    """One direction's F-test outcome.

    ``f_stat`` is None exactly when the unrestricted regression fit the
    effect perfectly; the marker keeps reports serializable instead of
    carrying an infinity. In that case ``p_value`` is 0.
    """

    cause: str
    effect: str
    p: int
    f_stat: float | None
    p_value: float
    significant_5pct: bool
    t_eff: int
    perfect_fit: bool = False


@dataclass(frozen=True)
class CellError:
    """Why one experiment cell could not be computed."""

    kind: str  # "insufficient_data" or "numerical"
    message: str


@dataclass(frozen=True)
class ExperimentReport:
    """All Granger cells, VAR tables, and lag diagnostics for one market."""

    market: str
    lags: tuple[int, ...]
    cells: Mapping[tuple[str, str, int, str], GrangerResult | CellError]
    var_tables: Mapping[tuple[str, str, int], CoefficientTable | CellError]
    aic_selected: Mapping[tuple[str, str], int | CellError]


def granger_test(frame: AlignedFrame, cause: str, effect: str, p: int) -> GrangerResult:
    """Test whether ``cause`` helps predict ``effect`` at lag order p.

    The unrestricted regression explains the effect by a constant, its own
    first p lags, and the cause's first p lags; the restricted one drops the
    cause block. Both use the same rows. The statistic is
    ``((rss_r - rss_u) / p) / (rss_u / (t_eff - 2p - 1))`` against
    F(p, t_eff - 2p - 1).
    """
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    if cause == effect:
        raise ValueError("cause and effect must name different columns")
    effect_col = frame.column(effect)
    cause_col = frame.column(cause)
    t_total = frame.rows
    t_eff = t_total - p
    dof2 = t_eff - 2 * p - 1
    if dof2 < 1:
        raise InsufficientDataError(
            f"{cause} -> {effect} at p={p}: {t_total} rows leave {dof2} denominator "
            "degrees of freedom"
        )

    y = effect_col[p:]
    cols = [np.ones(t_eff)]
    names = ["const"]
    for lag in range(1, p + 1):
        cols.append(effect_col[p - lag : t_total - lag])
        names.append(f"{effect}(-{lag})")
    for lag in range(1, p + 1):
        cols.append(cause_col[p - lag : t_total - lag])
        names.append(f"{cause}(-{lag})")

    unrestricted = DesignMatrix(values=np.column_stack(cols), col_names=tuple(names))
    restricted = DesignMatrix(
        values=unrestricted.values[:, : 1 + p],
        col_names=unrestricted.col_names[: 1 + p],
    )
    fit_u = ols_fit(unrestricted, y)
    fit_r = ols_fit(restricted, y)

    y_scale = float(y @ y)
    if fit_u.rss <= PERFECT_FIT_REL_RSS * y_scale:
        return GrangerResult(
            cause=cause,
            effect=effect,
            p=p,
            f_stat=None,
            p_value=0.0,
            significant_5pct=True,
            t_eff=t_eff,
            perfect_fit=True,
        )

    f_stat = ((fit_r.rss - fit_u.rss) / p) / (fit_u.rss / dof2)
    f_stat = max(f_stat, 0.0)
    p_value = 1.0 - f_cdf(f_stat, p, dof2)
    return GrangerResult(
        cause=cause,
        effect=effect,
        p=p,
        f_stat=float(f_stat),
        p_value=float(p_value),
        significant_5pct=p_value < 0.05,
        t_eff=t_eff,
    )


def _cell_error(exc: Exception) -> CellError:
    kind = "numerical" if isinstance(exc, NumericalError) else "insufficient_data"
    return CellError(kind=kind, message=str(exc))


def run_experiment(
    returns: TimeSeries,
    sent: TimeSeries,
    arms: TimeSeries,
    market: str,
    lags: Sequence[int] = (1, 2),
    p_max_for_aic: int | None = None,
) -> ExperimentReport:
    """Run the full causality grid for one market.

    Every (family, indicator) pair re-aligns its transformed series, then
    each lag gets both test directions plus a companion VAR coefficient
    table. A cell that cannot be computed is recorded as a
    :class:`CellError` in place; the report always comes back complete.
    """
    if not lags or any(lag < 1 for lag in lags):
        raise ValueError(f"lags must be a non-empty list of orders >= 1, got {lags!r}")
    indicator_series = {"SENT": sent, "ARMS": arms}
    cells: dict[tuple[str, str, int, str], GrangerResult | CellError] = {}
    var_tables: dict[tuple[str, str, int], CoefficientTable | CellError] = {}
    aic_selected: dict[tuple[str, str], int | CellError] = {}

    for family, diff_ret, diff_ind in TRANSFORMATIONS:
        for indicator, base in indicator_series.items():
            try:
                ret_side = diff_series(returns) if diff_ret else returns
                ind_side = diff_series(base) if diff_ind else base
                frame = align([ret_side, ind_side])
            except (DataError, NumericalError) as exc:
                err = _cell_error(exc)
                for lag in lags:
                    for direction in DIRECTIONS:
                        cells[(family, indicator, lag, direction)] = err
                    var_tables[(family, indicator, lag)] = err
                aic_selected[(family, indicator)] = err
                continue

            ret_name, ind_name = frame.names
            for lag in lags:
                pairs = (
                    ("test1", ret_name, ind_name),
                    ("test2", ind_name, ret_name),
                )
                for direction, cause, effect in pairs:
                    try:
                        cells[(family, indicator, lag, direction)] = granger_test(
                            frame, cause=cause, effect=effect, p=lag
                        )
                    except (DataError, NumericalError) as exc:
                        cells[(family, indicator, lag, direction)] = _cell_error(exc)
                try:
                    var_tables[(family, indicator, lag)] = coefficient_table(
                        fit_var(frame, lag)
                    )
                except (DataError, NumericalError) as exc:
                    var_tables[(family, indicator, lag)] = _cell_error(exc)

            if p_max_for_aic is not None:
                try:
                    aic_selected[(family, indicator)] = select_lag(frame, p_max_for_aic)
                except (DataError, NumericalError) as exc:
                    aic_selected[(family, indicator)] = _cell_error(exc)

    return ExperimentReport(
        market=market,
        lags=tuple(lags),
        cells=cells,
        var_tables=var_tables,
        aic_selected=aic_selected,
    )
