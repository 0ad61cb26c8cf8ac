"""Regression and distribution primitives used by the estimation layers.

Everything here is deterministic and float64. The least-squares path is QR
based and refuses ill-conditioned designs outright instead of regularizing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular
from scipy.special import betainc

from .errors import InsufficientDataError, SingularDesignError
from .ingest import TimeSeries

#: Condition numbers above this raise SingularDesignError.
CONDITION_LIMIT = 1.0e12

#: Dickey-Fuller critical values (constant-only regression) at 1%, 5%, 10%.
ADF_CRITICAL_VALUES = (-3.43, -2.86, -2.57)


@dataclass(frozen=True)
class DesignMatrix:
    """A named regression design with more rows than columns."""

    values: np.ndarray
    col_names: tuple[str, ...]

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError("design must be 2-dimensional")
        if arr.shape[1] != len(self.col_names):
            raise ValueError("col_names must match the number of columns")
        if arr.shape[0] <= arr.shape[1]:
            raise ValueError(
                f"design needs rows > cols, got {arr.shape[0]}x{arr.shape[1]}"
            )
        if not np.all(np.isfinite(arr)):
            raise ValueError("design entries must be finite")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def rows(self) -> int:
        return self.values.shape[0]

    @property
    def cols(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class OlsFit:
    """Coefficients and residual diagnostics of one least-squares fit."""

    coefs: np.ndarray
    residuals: np.ndarray
    rss: float
    se: np.ndarray
    tstats: np.ndarray
    df_resid: int


@dataclass(frozen=True)
class AdfResult:
    """Unit root test outcome for one series."""

    statistic: float
    lags_used: int
    n_obs: int
    reject_unit_root_5pct: bool


def ols_fit(design: DesignMatrix, y: np.ndarray) -> OlsFit:
    """Fit ordinary least squares by QR decomposition.

    Parameters
    ----------
    design
        Design matrix; its condition number must stay at or below 1e12.
    y
        Response vector with one entry per design row.

    Returns
    -------
    OlsFit
        Coefficients in column order, residuals ``y - X @ coefs``, the
        residual sum of squares, classical standard errors computed from
        ``sqrt(sigma2 * diag((X'X)^-1))`` with ``sigma2 = rss / df_resid``,
        t-statistics, and the residual degrees of freedom.

    Raises
    ------
    SingularDesignError
        If the design is rank deficient or its condition number exceeds
        the limit. There is no fallback; callers must fix their design.
    """
    X = design.values
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (design.rows,):
        raise ValueError(f"y must have shape ({design.rows},), got {y.shape}")
    if not np.all(np.isfinite(y)):
        raise ValueError("y entries must be finite")

    cond = np.linalg.cond(X)
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise SingularDesignError(
            f"design condition number {cond:.3e} exceeds {CONDITION_LIMIT:.0e} "
            f"(columns: {', '.join(design.col_names)})"
        )

    q, r = np.linalg.qr(X)
    coefs = solve_triangular(r, q.T @ y)
    residuals = y - X @ coefs
    rss = float(residuals @ residuals)
    df_resid = design.rows - design.cols
    sigma2 = rss / df_resid
    r_inv = solve_triangular(r, np.eye(design.cols))
    xtx_inv_diag = np.sum(r_inv * r_inv, axis=1)
    se = np.sqrt(sigma2 * xtx_inv_diag)
    tstats = np.divide(coefs, se, out=np.zeros_like(coefs), where=se > 0)
    return OlsFit(
        coefs=coefs,
        residuals=residuals,
        rss=rss,
        se=se,
        tstats=tstats,
        df_resid=df_resid,
    )


def f_cdf(x: float, d1: int, d2: int) -> float:
    """Cumulative distribution function of the F(d1, d2) distribution.

    Evaluated through the regularized incomplete beta function at
    ``d1 * x / (d1 * x + d2)``. Arguments at or below zero return 0.
    """
    if d1 < 1 or d2 < 1:
        raise ValueError(f"degrees of freedom must be >= 1, got ({d1}, {d2})")
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"x must be finite, got {x!r}")
    if x <= 0.0:
        return 0.0
    z = d1 * x / (d1 * x + d2)
    return float(betainc(d1 / 2.0, d2 / 2.0, z))


def aic_var(log_det_sigma: float, t_eff: int, k: int, p: int) -> float:
    """Multivariate AIC for a k-variable order-p autoregression.

    ``log_det_sigma`` is the log determinant of the maximum-likelihood
    residual covariance (residual cross-products divided by ``t_eff``).
    The penalty counts one intercept plus k coefficients per lag for each
    of the k equations: ``2 * (k*k*p + k) / t_eff``.
    """
    if t_eff <= k * p + k:
        raise ValueError(f"t_eff={t_eff} too small for k={k}, p={p}")
    return float(log_det_sigma) + 2.0 * (k * k * p + k) / t_eff


def adf_test(series: TimeSeries, max_lags: int) -> AdfResult:
    """Augmented Dickey-Fuller test with a constant and AIC lag choice.

    The regression is ``ds_t = c + gamma * s_{t-1} + sum phi_j ds_{t-j}``
    with the augmentation order picked over 0..max_lags by minimizing the
    univariate AIC on a common estimation sample (ties go to fewer lags).
    The statistic is the t-ratio on gamma; the 5% decision compares it to
    -2.86.

    Requires a fully defined series long enough that the widest candidate
    regression still has more rows than columns: length at least
    ``max(max_lags + 10, 2 * max_lags + 4)``.
    """
    if max_lags < 0:
        raise ValueError("max_lags must be non-negative")
    if any(v is None for v in series.values):
        raise ValueError(f"series {series.name!r} has missing values; drop them first")
    n = len(series)
    floor = max(max_lags + 10, 2 * max_lags + 4)
    if n < floor:
        raise InsufficientDataError(
            f"series {series.name!r}: need at least {floor} observations "
            f"for max_lags={max_lags}, got {n}"
        )

    y = np.asarray(series.values, dtype=np.float64)
    dy = np.diff(y)
    t_common = len(dy) - max_lags
    target = dy[max_lags:]
    level = y[max_lags : n - 1]
    lag_cols = [dy[max_lags - j : len(dy) - j] for j in range(1, max_lags + 1)]

    best: tuple[float, int, OlsFit] | None = None
    for q in range(max_lags + 1):
        cols = [np.ones(t_common), level, *lag_cols[:q]]
        names = ("const", "level", *(f"dlag{j}" for j in range(1, q + 1)))
        design = DesignMatrix(values=np.column_stack(cols), col_names=names)
        fit = ols_fit(design, target)
        if fit.rss <= 0.0:
            aic = -math.inf
        else:
            aic = math.log(fit.rss / t_common) + 2.0 * (q + 2) / t_common
        if best is None or aic < best[0]:
            best = (aic, q, fit)

    _, lags_used, fit = best
    statistic = float(fit.tstats[1])
    return AdfResult(
        statistic=statistic,
        lags_used=lags_used,
        n_obs=t_common,
        reject_unit_root_5pct=statistic < ADF_CRITICAL_VALUES[1],
    )
