"""Price panel ingestion, market return construction, and date alignment.

Input files are UTF-8 CSV. A panel file has the exact header
``date,ticker,close,volume`` and one row per ticker-day; an index file has the
header ``date,close``. Dates are ISO ``YYYY-MM-DD`` and act as opaque ordered
keys. Missing values are represented explicitly as ``None`` inside
:class:`TimeSeries`; NaN never enters the data path.
"""

from __future__ import annotations

import csv
import io
import math
import re
from dataclasses import dataclass
from datetime import date as Date
from pathlib import Path
from typing import IO, Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    DuplicateKeyError,
    InsufficientDataError,
    InsufficientOverlapError,
    ParseError,
)

PRICE_HEADER = ("date", "ticker", "close", "volume")
INDEX_HEADER = ("date", "close")

_ISO_DATE = re.compile(r"^\d{4}-\d{2}-\d{2}$")


@dataclass(frozen=True)
class PriceBar:
    """One ticker-day observation."""

    ticker: str
    date: Date
    close: float
    volume: int


@dataclass(frozen=True)
class PricePanel:
    """All bars for one market, sorted by (date, ticker), plus its calendar."""

    market: str
    bars: tuple[PriceBar, ...]
    calendar: tuple[Date, ...]

    @classmethod
    def from_bars(cls, market: str, bars: Iterable[PriceBar]) -> "PricePanel":
        ordered = tuple(sorted(bars, key=lambda b: (b.date, b.ticker)))
        seen: set[tuple[str, Date]] = set()
        for bar in ordered:
            key = (bar.ticker, bar.date)
            if key in seen:
                raise DuplicateKeyError(
                    f"duplicate (ticker, date) key {key[0]!r}/{key[1].isoformat()}", 0
                )
            seen.add(key)
        calendar = tuple(sorted({b.date for b in ordered}))
        return cls(market=market, bars=ordered, calendar=calendar)

    def by_date(self) -> dict[Date, dict[str, PriceBar]]:
        """Group bars per date, keyed by ticker."""
        table: dict[Date, dict[str, PriceBar]] = {d: {} for d in self.calendar}
        for bar in self.bars:
            table[bar.date][bar.ticker] = bar
        return table


@dataclass(frozen=True)
class TimeSeries:
    """A named series over ordered dates with explicit missing slots."""

    name: str
    dates: tuple[Date, ...]
    values: tuple[float | None, ...]

    def __post_init__(self) -> None:
        if len(self.dates) != len(self.values):
            raise ValueError("dates and values must have equal length")
        for prev, cur in zip(self.dates, self.dates[1:]):
            if not prev < cur:
                raise ValueError("dates must be strictly increasing")
        for v in self.values:
            if v is not None and not math.isfinite(v):
                raise ValueError("values must be finite or missing")

    def __len__(self) -> int:
        return len(self.dates)

    def defined(self) -> Iterator[tuple[Date, float]]:
        """Yield (date, value) pairs for the non-missing slots."""
        for d, v in zip(self.dates, self.values):
            if v is not None:
                yield d, v

    def without_missing(self) -> "TimeSeries":
        """Drop missing slots, compressing the series to its defined part."""
        pairs = list(self.defined())
        return TimeSeries(
            name=self.name,
            dates=tuple(d for d, _ in pairs),
            values=tuple(v for _, v in pairs),
        )


@dataclass(frozen=True)
class AlignedFrame:
    """Two or more equally indexed columns with no missing entries."""

    dates: tuple[Date, ...]
    names: tuple[str, ...]
    data: np.ndarray  # shape (rows, len(names)), float64

    def __post_init__(self) -> None:
        if len(self.names) < 2:
            raise ValueError("an aligned frame needs at least two columns")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"column names must be unique, got {self.names}")
        arr = np.asarray(self.data, dtype=np.float64)
        if arr.ndim != 2 or arr.shape != (len(self.dates), len(self.names)):
            raise ValueError("data shape must be (len(dates), len(names))")
        if not np.all(np.isfinite(arr)):
            raise ValueError("aligned data must be finite")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def rows(self) -> int:
        return len(self.dates)

    def column(self, name: str) -> np.ndarray:
        return self.data[:, self.names.index(name)]


def _text_lines(source: str | Path | IO[bytes] | IO[str]) -> Iterator[str]:
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8", newline="") as handle:
            yield from handle
        return
    if isinstance(source, io.TextIOBase):
        yield from source
        return
    raw = source.read()
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8")
    yield from io.StringIO(raw, newline="")


def _parse_date(text: str, line_no: int) -> Date:
    if not _ISO_DATE.match(text):
        raise ParseError(f"bad date {text!r}, expected YYYY-MM-DD", line_no)
    try:
        return Date.fromisoformat(text)
    except ValueError as exc:
        raise ParseError(f"bad date {text!r}: {exc}", line_no) from None


def _parse_close(text: str, line_no: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"unparsable close {text!r}", line_no) from None
    if not math.isfinite(value) or value <= 0.0:
        raise ParseError(f"close must be a finite positive number, got {text!r}", line_no)
    return value


def parse_price_csv(source: str | Path | IO[bytes] | IO[str], market: str) -> PricePanel:
    """Parse one market's panel CSV into a :class:`PricePanel`.

    Malformed rows raise :class:`ParseError` with the physical line number;
    a repeated (ticker, date) key raises :class:`DuplicateKeyError` rather
    than silently keeping either row. A header-only file yields an empty
    panel; downstream operations reject it as insufficient.
    """
    reader = csv.reader(_text_lines(source))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty file, expected header date,ticker,close,volume", 1) from None
    if tuple(h.strip() for h in header) != PRICE_HEADER:
        raise ParseError(
            f"bad header {','.join(header)!r}, expected 'date,ticker,close,volume'", 1
        )

    bars: list[PriceBar] = []
    seen: dict[tuple[str, Date], int] = {}
    for row in reader:
        line_no = reader.line_num
        if not row:
            continue
        if len(row) != 4:
            raise ParseError(f"expected 4 fields, got {len(row)}", line_no)
        day = _parse_date(row[0].strip(), line_no)
        ticker = row[1].strip()
        if not ticker:
            raise ParseError("empty ticker", line_no)
        close = _parse_close(row[2].strip(), line_no)
        vol_text = row[3].strip()
        try:
            volume = int(vol_text)
        except ValueError:
            raise ParseError(f"unparsable volume {vol_text!r}", line_no) from None
        if volume < 0:
            raise ParseError(f"volume must be non-negative, got {volume}", line_no)
        key = (ticker, day)
        if key in seen:
            raise DuplicateKeyError(
                f"duplicate key {ticker!r}/{day.isoformat()}, first seen on line {seen[key]}",
                line_no,
            )
        seen[key] = line_no
        bars.append(PriceBar(ticker=ticker, date=day, close=close, volume=volume))

    ordered = tuple(sorted(bars, key=lambda b: (b.date, b.ticker)))
    calendar = tuple(sorted({b.date for b in ordered}))
    return PricePanel(market=market, bars=ordered, calendar=calendar)


def parse_index_csv(source: str | Path | IO[bytes] | IO[str], name: str = "index") -> TimeSeries:
    """Parse an index CSV (header ``date,close``) into a fully defined series."""
    reader = csv.reader(_text_lines(source))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty file, expected header date,close", 1) from None
    if tuple(h.strip() for h in header) != INDEX_HEADER:
        raise ParseError(f"bad header {','.join(header)!r}, expected 'date,close'", 1)

    points: dict[Date, float] = {}
    for row in reader:
        line_no = reader.line_num
        if not row:
            continue
        if len(row) != 2:
            raise ParseError(f"expected 2 fields, got {len(row)}", line_no)
        day = _parse_date(row[0].strip(), line_no)
        if day in points:
            raise DuplicateKeyError(f"duplicate date {day.isoformat()}", line_no)
        points[day] = _parse_close(row[1].strip(), line_no)

    dates = tuple(sorted(points))
    return TimeSeries(name=name, dates=dates, values=tuple(points[d] for d in dates))


def market_return_series(panel: PricePanel, index_series: TimeSeries | None = None) -> TimeSeries:
    """Build the market return series on the panel's calendar.

    With an index the return on each index date after the first is the simple
    return of the index close. Without one, each date's return is the
    equal-weighted mean of per-stock simple returns over tickers priced on
    both that date and the previous calendar date. The first calendar date is
    always missing; so is any date where no return can be formed.
    """
    calendar = panel.calendar
    values: list[float | None] = [None] * len(calendar)

    if index_series is not None:
        pos = {d: i for i, d in enumerate(calendar)}
        missing_dates = [d for d in index_series.dates if d not in pos]
        if missing_dates:
            raise InsufficientDataError(
                f"index date {missing_dates[0].isoformat()} is not in the panel calendar"
            )
        idx_pairs = [(d, v) for d, v in zip(index_series.dates, index_series.values) if v is not None]
        for (d_prev, v_prev), (d_cur, v_cur) in zip(idx_pairs, idx_pairs[1:]):
            values[pos[d_cur]] = v_cur / v_prev - 1.0
    else:
        table = panel.by_date()
        for i in range(1, len(calendar)):
            prev_bars = table[calendar[i - 1]]
            cur_bars = table[calendar[i]]
            rets = [
                cur_bars[t].close / prev_bars[t].close - 1.0
                for t in cur_bars
                if t in prev_bars
            ]
            if rets:
                values[i] = float(np.mean(rets))

    if sum(1 for v in values if v is not None) < 1 or len(calendar) < 2:
        raise InsufficientDataError(
            f"market {panel.market!r}: fewer than two usable dates for returns"
        )
    return TimeSeries(name="ret", dates=calendar, values=tuple(values))


def align(series: Sequence[TimeSeries]) -> AlignedFrame:
    """Intersect the defined dates of two or more series (listwise deletion).

    Column order follows the input order. Fewer than two common rows raise
    :class:`InsufficientOverlapError`.
    """
    if len(series) < 2:
        raise ValueError("align needs at least two series")
    maps = [dict(s.defined()) for s in series]
    common = set(maps[0])
    for m in maps[1:]:
        common &= set(m)
    dates = tuple(sorted(common))
    if len(dates) < 2:
        raise InsufficientOverlapError(
            f"alignment of {[s.name for s in series]} left {len(dates)} rows"
        )
    data = np.array([[m[d] for m in maps] for d in dates], dtype=np.float64)
    return AlignedFrame(dates=dates, names=tuple(s.name for s in series), data=data)
