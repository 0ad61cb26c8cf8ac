"""Run configuration loading with strict key checking.

Unknown keys are rejected with a near-miss suggestion instead of being
ignored, so typos like ``"lag"`` fail loudly rather than silently running
with defaults.
"""

from __future__ import annotations

import difflib
import json
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError

VALID_FORMATS = ("json", "csv", "markdown")

_RUN_KEYS = {
    "markets", "lags", "p_max_for_aic", "run_adf", "output_dir", "formats", "seed",
}
_MARKET_KEYS = {"label", "panel_path", "index_path"}


@dataclass(frozen=True)
class MarketConfig:
    label: str
    panel_path: Path
    index_path: Path | None = None


@dataclass(frozen=True)
class RunConfig:
    markets: tuple[MarketConfig, ...]
    output_dir: Path
    lags: tuple[int, ...] = (1, 2)
    p_max_for_aic: int = 10
    run_adf: bool = True
    formats: tuple[str, ...] = VALID_FORMATS
    seed: int = 1


def _reject_unknown(keys, allowed: set[str], context: str) -> None:
    for key in keys:
        if key not in allowed:
            suggestion = difflib.get_close_matches(key, sorted(allowed), n=1)
            hint = f", did you mean {suggestion[0]!r}?" if suggestion else ""
            raise ConfigError(f"unknown {context} key {key!r}{hint}", field=key)


def _require(condition: bool, message: str, field: str) -> None:
    if not condition:
        raise ConfigError(message, field=field)


def _parse_market(raw: object, base: Path, position: int) -> MarketConfig:
    _require(isinstance(raw, dict), f"markets[{position}] must be an object", "markets")
    _reject_unknown(raw.keys(), _MARKET_KEYS, f"markets[{position}]")
    label = raw.get("label")
    _require(
        isinstance(label, str) and bool(label.strip()),
        f"markets[{position}].label must be a non-empty string",
        "label",
    )
    panel = raw.get("panel_path")
    _require(
        isinstance(panel, str) and bool(panel),
        f"markets[{position}].panel_path must be a non-empty string",
        "panel_path",
    )
    index = raw.get("index_path")
    if index is not None:
        _require(
            isinstance(index, str) and bool(index),
            f"markets[{position}].index_path must be a non-empty string when present",
            "index_path",
        )
    return MarketConfig(
        label=label.strip(),
        panel_path=(base / panel).resolve(),
        index_path=(base / index).resolve() if index is not None else None,
    )


def load_config(path: str | Path) -> RunConfig:
    """Load and validate a JSON run configuration.

    Relative paths inside the file resolve against the file's directory, so
    a bundled config runs from any working directory.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    _require(isinstance(raw, dict), "config root must be a JSON object", "root")
    _reject_unknown(raw.keys(), _RUN_KEYS, "config")

    base = path.resolve().parent

    markets_raw = raw.get("markets")
    _require(
        isinstance(markets_raw, list) and len(markets_raw) > 0,
        "markets must be a non-empty list",
        "markets",
    )
    markets = tuple(_parse_market(m, base, i) for i, m in enumerate(markets_raw))
    labels = [m.label for m in markets]
    _require(len(set(labels)) == len(labels), "market labels must be unique", "markets")

    output_dir = raw.get("output_dir")
    _require(
        isinstance(output_dir, str) and bool(output_dir),
        "output_dir must be a non-empty string",
        "output_dir",
    )

    lags = raw.get("lags", [1, 2])
    _require(
        isinstance(lags, list)
        and len(lags) > 0
        and all(isinstance(v, int) and not isinstance(v, bool) and v >= 1 for v in lags)
        and len(set(lags)) == len(lags),
        "lags must be a non-empty list of distinct integers >= 1",
        "lags",
    )

    p_max = raw.get("p_max_for_aic", 10)
    _require(
        isinstance(p_max, int) and not isinstance(p_max, bool) and p_max >= 1,
        "p_max_for_aic must be an integer >= 1",
        "p_max_for_aic",
    )

    run_adf = raw.get("run_adf", True)
    _require(isinstance(run_adf, bool), "run_adf must be a boolean", "run_adf")

    formats = raw.get("formats", list(VALID_FORMATS))
    _require(
        isinstance(formats, list) and len(formats) > 0,
        "formats must be a non-empty list",
        "formats",
    )
    for fmt in formats:
        if fmt not in VALID_FORMATS:
            suggestion = difflib.get_close_matches(str(fmt), VALID_FORMATS, n=1)
            hint = f", did you mean {suggestion[0]!r}?" if suggestion else ""
            raise ConfigError(f"unknown format {fmt!r}{hint}", field="formats")
    _require(len(set(formats)) == len(formats), "formats must not repeat", "formats")

    seed = raw.get("seed", 1)
    _require(
        isinstance(seed, int) and not isinstance(seed, bool),
        "seed must be an integer",
        "seed",
    )

    return RunConfig(
        markets=markets,
        output_dir=(base / output_dir).resolve(),
        lags=tuple(lags),
        p_max_for_aic=p_max,
        run_adf=run_adf,
        formats=tuple(formats),
        seed=seed,
    )
