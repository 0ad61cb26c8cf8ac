"""Shared builders for the test suite."""

from __future__ import annotations

from datetime import date as Date, timedelta

import numpy as np
import pytest

from sentvar import AlignedFrame, TimeSeries

BASE_DATE = Date(2010, 1, 4)


def consecutive_dates(n: int, start: Date = BASE_DATE) -> tuple[Date, ...]:
    return tuple(start + timedelta(days=i) for i in range(n))


def make_series(name: str, values, start: Date = BASE_DATE) -> TimeSeries:
    """A TimeSeries on consecutive calendar dates; None marks missing."""
    vals = tuple(None if v is None else float(v) for v in values)
    return TimeSeries(name=name, dates=consecutive_dates(len(vals), start), values=vals)


def make_frame(names, columns, start: Date = BASE_DATE) -> AlignedFrame:
    """An AlignedFrame from equal-length fully defined columns."""
    data = np.column_stack([np.asarray(c, dtype=np.float64) for c in columns])
    return AlignedFrame(
        dates=consecutive_dates(data.shape[0], start),
        names=tuple(names),
        data=data,
    )


def simulate_var(mu, thetas, sigma_chol, t: int, rng, burn: int = 100) -> np.ndarray:
    """Forward-simulate a VAR(p) sample of length t after a burn-in.

    ``thetas`` is a sequence of k-by-k lag matrices (lag 1 first);
    ``sigma_chol`` is a lower-triangular Cholesky factor of the innovation
    covariance. Written as an explicit recursion so it shares nothing with
    the estimation code.
    """
    mu = np.asarray(mu, dtype=np.float64)
    thetas = [np.asarray(th, dtype=np.float64) for th in thetas]
    chol = np.asarray(sigma_chol, dtype=np.float64)
    k = mu.shape[0]
    p = len(thetas)
    total = t + burn
    shocks = rng.standard_normal((total, k)) @ chol.T
    out = np.zeros((total, k))
    for i in range(total):
        acc = mu + shocks[i]
        for lag in range(1, p + 1):
            if i - lag >= 0:
                acc = acc + thetas[lag - 1] @ out[i - lag]
        out[i] = acc
    return out[burn:]


def panel_text(rows) -> str:
    """Panel CSV text from (date, ticker, close, volume) tuples."""
    lines = ["date,ticker,close,volume"]
    for date, ticker, close, volume in rows:
        lines.append(f"{date},{ticker},{close},{volume}")
    return "\n".join(lines) + "\n"


def index_text(rows) -> str:
    """Index CSV text from (date, close) tuples."""
    lines = ["date,close"]
    for date, close in rows:
        lines.append(f"{date},{close}")
    return "\n".join(lines) + "\n"


@pytest.fixture
def write_csv(tmp_path):
    """Write text to a file under tmp_path and return the path."""

    def _write(name: str, text: str):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write


def random_panel_rows(rng, n_tickers: int = 5, n_dates: int = 4):
    """Random small panel rows on a two-decimal price grid.

    Prices land on a coarse grid so that classification (up, down,
    unchanged) is stable under exact positive rescaling in the
    scale-invariance properties. Repeated prices do occur, exercising the
    unchanged branch.
    """
    tickers = [f"T{i:02d}" for i in range(n_tickers)]
    dates = consecutive_dates(n_dates)
    rows = []
    for date in dates:
        for ticker in tickers:
            close = round(float(rng.integers(100, 400)) / 4.0, 2)
            volume = int(rng.integers(0, 5000))
            rows.append((date.isoformat(), ticker, f"{close:.2f}", volume))
    return rows
