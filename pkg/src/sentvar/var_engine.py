"""Vector autoregression estimation on aligned frames.

A VAR(p) here is k equations fit one at a time by least squares on one
shared design whose rows are ``[1, Y_{t-1}, ..., Y_{t-p}]`` (lag-major
column blocks). The residual covariance is the maximum-likelihood one,
residual cross-products divided by the effective sample size.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InsufficientDataError, SingularDesignError
from .ingest import AlignedFrame
from .stats_core import DesignMatrix, OlsFit, aic_var, f_cdf, ols_fit


@dataclass(frozen=True)
class VarSpec:
    """Order and column naming of a fitted VAR."""

    p: int
    column_names: tuple[str, ...]

    @property
    def k(self) -> int:
        return len(self.column_names)


@dataclass(frozen=True)
class VarFit:
    """Estimates for one VAR(p): intercepts, lag matrices, and errors.

    ``theta[i]`` is the k-by-k matrix at lag i+1 with rows indexing the
    equation and columns the lagged series. ``se_*`` and ``tstat_*``
    mirror the shapes of ``mu`` and ``theta``.
    """

    spec: VarSpec
    mu: np.ndarray
    theta: np.ndarray
    residuals: np.ndarray
    sigma: np.ndarray
    se_mu: np.ndarray
    se_theta: np.ndarray
    tstat_mu: np.ndarray
    tstat_theta: np.ndarray
    t_eff: int


@dataclass(frozen=True)
class CoefficientTable:
    """Presentation-ordered coefficient grid for one fitted VAR.

    Rows run series-major (series1 at lags 1..p, then series2, and so on)
    and close with the intercept row ``C``. Columns are the equations.
    """

    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    coefs: np.ndarray
    tstats: np.ndarray
    significant: np.ndarray


def _check_frame_size(frame: AlignedFrame, p: int) -> None:
    k = len(frame.names)
    needed = k * p + k + 5
    if frame.rows <= needed:
        raise InsufficientDataError(
            f"frame with {frame.rows} rows is too short for p={p} with k={k} "
            f"(needs more than {needed})"
        )


def build_lag_matrix(frame: AlignedFrame, p: int) -> tuple[np.ndarray, DesignMatrix]:
    """Stack targets and lagged regressors for a VAR(p).

    Returns ``(Y, X)`` where ``Y`` holds rows ``Y_t`` for t = p..T-1 and the
    design rows are ``[1, Y_{t-1}, ..., Y_{t-p}]``.
    """
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    _check_frame_size(frame, p)
    data = frame.data
    t_total = frame.rows
    y = data[p:]
    cols = [np.ones(t_total - p)]
    names: list[str] = ["const"]
    for lag in range(1, p + 1):
        block = data[p - lag : t_total - lag]
        cols.append(block)
        names.extend(f"{name}(-{lag})" for name in frame.names)
    design = DesignMatrix(values=np.column_stack(cols), col_names=tuple(names))
    return y, design


def fit_var(frame: AlignedFrame, p: int) -> VarFit:
    """Estimate a VAR(p) equation by equation on the shared lag design."""
    y, design = build_lag_matrix(frame, p)
    k = len(frame.names)
    t_eff = y.shape[0]
    fits: list[OlsFit] = [ols_fit(design, y[:, i]) for i in range(k)]

    coef_rows = np.vstack([f.coefs for f in fits])  # (k, 1 + k*p)
    se_rows = np.vstack([f.se for f in fits])
    tstat_rows = np.vstack([f.tstats for f in fits])
    residuals = np.column_stack([f.residuals for f in fits])
    sigma = residuals.T @ residuals / t_eff

    mu = coef_rows[:, 0].copy()
    theta = np.stack(
        [coef_rows[:, 1 + i * k : 1 + (i + 1) * k] for i in range(p)]
    )
    se_mu = se_rows[:, 0].copy()
    se_theta = np.stack([se_rows[:, 1 + i * k : 1 + (i + 1) * k] for i in range(p)])
    tstat_mu = tstat_rows[:, 0].copy()
    tstat_theta = np.stack(
        [tstat_rows[:, 1 + i * k : 1 + (i + 1) * k] for i in range(p)]
    )
    return VarFit(
        spec=VarSpec(p=p, column_names=frame.names),
        mu=mu,
        theta=theta,
        residuals=residuals,
        sigma=sigma,
        se_mu=se_mu,
        se_theta=se_theta,
        tstat_mu=tstat_mu,
        tstat_theta=tstat_theta,
        t_eff=t_eff,
    )


def select_lag(frame: AlignedFrame, p_max: int) -> int:
    """Pick the lag order in 1..p_max minimizing the multivariate AIC.

    All candidates are evaluated on the common sample left after dropping
    ``p_max`` initial rows, so their likelihoods are comparable. Ties go
    to the smaller order.
    """
    if p_max < 1:
        raise ValueError(f"p_max must be >= 1, got {p_max}")
    _check_frame_size(frame, p_max)
    y_common, full_design = build_lag_matrix(frame, p_max)
    k = len(frame.names)
    t_eff = y_common.shape[0]

    best_p = 0
    best_aic = np.inf
    for p in range(1, p_max + 1):
        n_cols = 1 + k * p
        design = DesignMatrix(
            values=full_design.values[:, :n_cols],
            col_names=full_design.col_names[:n_cols],
        )
        residuals = np.column_stack(
            [ols_fit(design, y_common[:, i]).residuals for i in range(k)]
        )
        sigma = residuals.T @ residuals / t_eff
        sign, log_det = np.linalg.slogdet(sigma)
        if sign <= 0:
            raise SingularDesignError(
                f"residual covariance at p={p} is not positive definite"
            )
        candidate = aic_var(log_det, t_eff, k, p)
        if candidate < best_aic:
            best_aic = candidate
            best_p = p
    return best_p


def coefficient_table(fit: VarFit) -> CoefficientTable:
    """Reorder a fit into the presentation grid with significance flags.

    A coefficient is flagged when its two-sided t-test rejects at the 5%
    level, using the squared t-ratio against F(1, df_resid).
    """
    spec = fit.spec
    k = spec.k
    df_resid = fit.t_eff - (k * spec.p + 1)

    row_labels: list[str] = []
    coef_rows: list[np.ndarray] = []
    tstat_rows: list[np.ndarray] = []
    for j, name in enumerate(spec.column_names):
        for lag in range(1, spec.p + 1):
            row_labels.append(f"{name} (-{lag})")
            coef_rows.append(fit.theta[lag - 1, :, j])
            tstat_rows.append(fit.tstat_theta[lag - 1, :, j])
    row_labels.append("C")
    coef_rows.append(fit.mu)
    tstat_rows.append(fit.tstat_mu)

    coefs = np.vstack(coef_rows)
    tstats = np.vstack(tstat_rows)
    significant = np.zeros(coefs.shape, dtype=bool)
    for idx, t in np.ndenumerate(tstats):
        p_value = 1.0 - f_cdf(float(t) * float(t), 1, df_resid)
        significant[idx] = p_value < 0.05
    return CoefficientTable(
        row_labels=tuple(row_labels),
        col_labels=spec.column_names,
        coefs=coefs,
        tstats=tstats,
        significant=significant,
    )


def stability_modulus(fit: VarFit) -> float:
    """Largest companion-matrix eigenvalue modulus. Below 1 means stable.

    Reported as a diagnostic only; an explosive fit is never rejected here.
    """
    k = fit.spec.k
    p = fit.spec.p
    companion = np.zeros((k * p, k * p))
    companion[:k, :] = np.hstack([fit.theta[i] for i in range(p)])
    if p > 1:
        companion[k:, : k * (p - 1)] = np.eye(k * (p - 1))
    return float(np.max(np.abs(np.linalg.eigvals(companion))))
