"""Daily advance/decline breadth counts and the ratio indicators built on them.

For each consecutive pair of calendar dates, a ticker priced on both days is
classified by its close move: up, down, or unchanged. Volume sums use the
later day's volume. Tickers missing on either day stay out of every field.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date as Date
from typing import Sequence

from .errors import InsufficientDataError
from .ingest import PricePanel, TimeSeries


@dataclass(frozen=True)
class BreadthRecord:
    """Advance/decline counts and volumes for one date."""

    date: Date
    adv: int
    dec: int
    adv_vol: int
    dec_vol: int
    unchanged: int


def daily_breadth(panel: PricePanel) -> list[BreadthRecord]:
    """Count advancers and decliners for every date after the first."""
    if len(panel.calendar) < 2:
        raise InsufficientDataError(
            f"market {panel.market!r}: breadth needs at least two calendar dates"
        )
    table = panel.by_date()
    records: list[BreadthRecord] = []
    for prev_day, day in zip(panel.calendar, panel.calendar[1:]):
        prev_bars = table[prev_day]
        adv = dec = unchanged = 0
        adv_vol = dec_vol = 0
        for ticker, bar in table[day].items():
            prev = prev_bars.get(ticker)
            if prev is None:
                continue
            if bar.close > prev.close:
                adv += 1
                adv_vol += bar.volume
            elif bar.close < prev.close:
                dec += 1
                dec_vol += bar.volume
            else:
                unchanged += 1
        records.append(
            BreadthRecord(
                date=day,
                adv=adv,
                dec=dec,
                adv_vol=adv_vol,
                dec_vol=dec_vol,
                unchanged=unchanged,
            )
        )
    return records


def sent_series(records: Sequence[BreadthRecord]) -> TimeSeries:
    """Advancers divided by decliners, missing on degenerate days.

    A day with zero decliners has no defined ratio; a day with zero advancers
    is treated the same way so that the indicator stays strictly positive
    wherever it is defined.
    """
    values: list[float | None] = []
    for r in records:
        if r.dec == 0 or r.adv == 0:
            values.append(None)
        else:
            values.append(r.adv / r.dec)
    return TimeSeries(name="sent", dates=tuple(r.date for r in records), values=tuple(values))


def arms_series(records: Sequence[BreadthRecord]) -> TimeSeries:
    """Advance/decline ratio normalized by per-side volume.

    value = (adv / adv_vol) / (dec / dec_vol). Any zero among adv, dec,
    adv_vol, dec_vol leaves the day missing.
    """
    values: list[float | None] = []
    for r in records:
        if 0 in (r.adv, r.dec, r.adv_vol, r.dec_vol):
            values.append(None)
        else:
            values.append((r.adv / r.adv_vol) / (r.dec / r.dec_vol))
    return TimeSeries(name="arms", dates=tuple(r.date for r in records), values=tuple(values))


def diff_series(series: TimeSeries) -> TimeSeries:
    """First difference on the series' own date grid.

    The first slot is missing, and a difference is defined only where both
    the current and the previous slot are defined. Differencing never
    shortens the grid; it only adds missing markers.
    """
    if len(series) < 2:
        raise InsufficientDataError(f"cannot difference {series.name!r} with fewer than 2 points")
    values: list[float | None] = [None]
    for prev, cur in zip(series.values, series.values[1:]):
        if prev is None or cur is None:
            values.append(None)
        else:
            values.append(cur - prev)
    return TimeSeries(name=f"d{series.name}", dates=series.dates, values=tuple(values))
