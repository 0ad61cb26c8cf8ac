"""End-to-end pipeline: parse, derive indicators, test, and write reports.

Markets are processed independently; one market's failure never blocks the
others. Exit codes: 0 success, 1 config, 2 data, 3 numerical, 4 I/O. When
several markets fail in different ways the highest code wins.
"""

from __future__ import annotations

import logging
import sys
from pathlib import Path

from .breadth import daily_breadth, diff_series, sent_series, arms_series
from .config import MarketConfig, RunConfig
from .errors import DataError, NumericalError, SentVarError
from .granger import CellError, run_experiment
from .ingest import market_return_series, parse_index_csv, parse_price_csv
from .report import (
    render_adf_csv,
    render_granger_csv,
    render_granger_json,
    render_granger_md,
    render_indicators_csv,
    render_var_tables_csv,
    render_var_tables_md,
)
from .stats_core import adf_test

log = logging.getLogger("sentvar")

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

ADF_MAX_LAGS = 8


def _classify(exc: Exception) -> int:
    if isinstance(exc, NumericalError):
        return EXIT_NUMERICAL
    if isinstance(exc, DataError):
        return EXIT_DATA
    if isinstance(exc, OSError):
        return EXIT_IO
    return EXIT_NUMERICAL if isinstance(exc, ArithmeticError) else EXIT_DATA


def _write(path: Path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)


def _process_market(market: MarketConfig, config: RunConfig) -> list[Path]:
    try:
        panel = parse_price_csv(market.panel_path, market.label)
    except OSError as exc:
        raise DataError(f"cannot read panel file {market.panel_path}: {exc}") from exc
    index = None
    if market.index_path is not None:
        try:
            index = parse_index_csv(market.index_path)
        except OSError as exc:
            raise DataError(f"cannot read index file {market.index_path}: {exc}") from exc

    returns = market_return_series(panel, index)
    records = daily_breadth(panel)
    sent = sent_series(records)
    arms = arms_series(records)
    report = run_experiment(
        returns, sent, arms, market.label,
        lags=config.lags, p_max_for_aic=config.p_max_for_aic,
    )

    adf_rows = []
    if config.run_adf:
        tested = [returns, sent, arms]
        tested.extend(diff_series(s) for s in (returns, sent, arms))
        for series in tested:
            compressed = series.without_missing()
            try:
                adf_rows.append((series.name, adf_test(compressed, ADF_MAX_LAGS)))
            except (DataError, NumericalError, ValueError) as exc:
                kind = "numerical" if isinstance(exc, NumericalError) else "insufficient_data"
                adf_rows.append((series.name, CellError(kind=kind, message=str(exc))))

    label = market.label
    out = config.output_dir
    written: list[Path] = []

    def emit(name: str, text: str) -> None:
        path = out / name
        _write(path, text)
        written.append(path)

    if "json" in config.formats:
        emit(f"{label}_granger.json", render_granger_json(report))
    if "csv" in config.formats:
        emit(f"{label}_granger.csv", render_granger_csv(report))
        emit(f"{label}_var_tables.csv", render_var_tables_csv(report))
        emit(f"{label}_indicators.csv", render_indicators_csv([returns, sent, arms]))
        if config.run_adf:
            emit(f"{label}_adf.csv", render_adf_csv(adf_rows))
    if "markdown" in config.formats:
        emit(f"{label}_granger.md", render_granger_md(report))
        emit(f"{label}_var_tables.md", render_var_tables_md(report))
    return written


def run(config: RunConfig) -> int:
    """Process every configured market and write its report files."""
    try:
        config.output_dir.mkdir(parents=True, exist_ok=True)
        probe = config.output_dir / ".write_probe"
        probe.write_text("", encoding="utf-8")
        probe.unlink()
    except OSError as exc:
        print(f"error: output dir {config.output_dir} is not writable: {exc}",
              file=sys.stderr)
        return EXIT_IO

    failures: list[tuple[str, int, str]] = []
    for market in config.markets:
        try:
            written = _process_market(market, config)
        except (SentVarError, OSError) as exc:
            code = _classify(exc)
            failures.append((market.label, code, str(exc)))
            log.error("market %s failed: %s", market.label, exc)
            continue
        names = ", ".join(p.name for p in written)
        print(f"{market.label}: wrote {len(written)} files ({names})")

    if failures:
        for label, _, message in failures:
            print(f"error: market {label}: {message}", file=sys.stderr)
        return max(code for _, code, _ in failures)
    return EXIT_OK
