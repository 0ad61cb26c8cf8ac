"""Command line behavior and exit codes."""

from __future__ import annotations

import json
import subprocess
import sys

import numpy as np
import pytest

from sentvar import __version__
from sentvar.cli import main
from sentvar.runner import EXIT_CONFIG, EXIT_DATA, EXIT_IO, EXIT_OK

REPORT_FILES = (
    "{label}_granger.json",
    "{label}_granger.csv",
    "{label}_var_tables.csv",
    "{label}_indicators.csv",
    "{label}_adf.csv",
    "{label}_granger.md",
    "{label}_var_tables.md",
)


def _write_small_panel(path, seed=0, n_days=40, n_tickers=4):
    """A compact panel where every day has both advancers and decliners."""
    rng = np.random.default_rng(seed)
    prices = 60.0 + np.arange(n_tickers) * 5.0
    lines = ["date,ticker,close,volume"]
    day_numbers = []
    day, month = 4, 1
    for i in range(n_days):
        day_numbers.append(f"2010-{month:02d}-{day:02d}")
        day += 1
        if day > 28:
            day, month = 1, month + 1
    for i, stamp in enumerate(day_numbers):
        if i > 0:
            steps = rng.integers(1, 51, n_tickers) / 100.0
            signs = np.where(rng.random(n_tickers) < 0.5, 1.0, -1.0)
            signs[0] = 1.0
            signs[1] = -1.0
            prices = prices + signs * steps
        for j in range(n_tickers):
            volume = int(rng.integers(100, 5000))
            lines.append(f"{stamp},T{j},{prices[j]:.2f},{volume}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _write_config(tmp_path, name="run.json", **overrides):
    payload = {
        "markets": [{"label": "mini", "panel_path": "mini_panel.csv"}],
        "output_dir": "report",
        "lags": [1, 2],
        "p_max_for_aic": 10,
    }
    payload.update(overrides)
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


class TestVersionAndFixture:
    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["--version"])
        assert excinfo.value.code == 0
        assert capsys.readouterr().out.strip() == f"sentvar {__version__}"

    def test_missing_subcommand_exits_with_usage(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main([])
        assert excinfo.value.code == 2

    def test_fixture_subcommand_writes_the_dataset(self, tmp_path, capsys):
        out = tmp_path / "demo"
        assert main(["fixture", "--seed", "3", "--out", str(out)]) == 0
        for name in (
            "alpha_panel.csv",
            "alpha_index.csv",
            "beta_panel.csv",
            "beta_index.csv",
            "config.json",
        ):
            assert (out / name).exists()
        assert "wrote 5 files" in capsys.readouterr().out

    def test_console_script_is_installed(self):
        result = subprocess.run(
            ["sentvar", "--version"], capture_output=True, text=True
        )
        assert result.returncode == 0
        assert result.stdout.strip() == f"sentvar {__version__}"


class TestRunCommand:
    def test_small_run_succeeds_and_writes_reports(self, tmp_path, capsys):
        _write_small_panel(tmp_path / "mini_panel.csv")
        config = _write_config(tmp_path)
        assert main(["run", "--config", str(config)]) == EXIT_OK
        out = capsys.readouterr().out
        assert "mini: wrote 7 files" in out
        for template in REPORT_FILES:
            assert (tmp_path / "report" / template.format(label="mini")).exists()
        payload = json.loads(
            (tmp_path / "report" / "mini_granger.json").read_text()
        )
        assert payload["market"] == "mini"
        assert payload["lags"] == [1, 2]

    def test_reruns_are_byte_identical(self, tmp_path, capsys):
        _write_small_panel(tmp_path / "mini_panel.csv")
        first = _write_config(tmp_path, name="a.json", output_dir="out_a")
        second = _write_config(tmp_path, name="b.json", output_dir="out_b")
        assert main(["run", "--config", str(first)]) == EXIT_OK
        assert main(["run", "--config", str(second)]) == EXIT_OK
        for template in REPORT_FILES:
            name = template.format(label="mini")
            assert (tmp_path / "out_a" / name).read_bytes() == (
                tmp_path / "out_b" / name
            ).read_bytes()

    def test_formats_limit_the_outputs(self, tmp_path, capsys):
        _write_small_panel(tmp_path / "mini_panel.csv")
        config = _write_config(tmp_path, formats=["json"])
        assert main(["run", "--config", str(config)]) == EXIT_OK
        written = sorted(p.name for p in (tmp_path / "report").iterdir())
        assert written == ["mini_granger.json"]

    def test_bad_config_exits_one(self, tmp_path, capsys):
        config = _write_config(tmp_path, lag=[1])
        assert main(["run", "--config", str(config)]) == EXIT_CONFIG
        assert "config error" in capsys.readouterr().err

    def test_missing_panel_exits_two_and_names_the_file(self, tmp_path, capsys):
        config = _write_config(tmp_path)
        assert main(["run", "--config", str(config)]) == EXIT_DATA
        assert "mini_panel.csv" in capsys.readouterr().err

    def test_one_bad_market_does_not_block_the_good_one(self, tmp_path, capsys):
        _write_small_panel(tmp_path / "good_panel.csv")
        (tmp_path / "empty_panel.csv").write_text(
            "date,ticker,close,volume\n", encoding="utf-8"
        )
        config = _write_config(
            tmp_path,
            markets=[
                {"label": "good", "panel_path": "good_panel.csv"},
                {"label": "empty", "panel_path": "empty_panel.csv"},
            ],
        )
        assert main(["run", "--config", str(config)]) == EXIT_DATA
        captured = capsys.readouterr()
        assert "good: wrote 7 files" in captured.out
        assert "error: market empty" in captured.err
        assert (tmp_path / "report" / "good_granger.json").exists()
        assert not (tmp_path / "report" / "empty_granger.json").exists()

    def test_unwritable_output_dir_exits_four(self, tmp_path, capsys):
        _write_small_panel(tmp_path / "mini_panel.csv")
        (tmp_path / "blocked").write_text("a file, not a directory", encoding="utf-8")
        config = _write_config(tmp_path, output_dir="blocked")
        assert main(["run", "--config", str(config)]) == EXIT_IO
        assert "not writable" in capsys.readouterr().err
