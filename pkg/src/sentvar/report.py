"""Deterministic renderers for the report files.

Formatting rules: coefficients and t-statistics carry four decimals;
p-values below 1e-4 switch to scientific notation with one significant
digit (for example ``1E-159``), everything else keeps four decimals. The
same formatting functions feed the CSV and markdown paths so numbers agree
across formats; JSON carries the raw floats.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Sequence

from .granger import (
    DIRECTIONS,
    TRANSFORMATIONS,
    CellError,
    ExperimentReport,
    GrangerResult,
)
from .ingest import TimeSeries
from .stats_core import AdfResult
from .var_engine import CoefficientTable

FAMILY_TITLES = {
    "levels": "Returns and sentiment in levels",
    "diff_indicator": "Returns and sentiment changes",
    "diff_return": "Return changes and sentiment",
    "diff_both": "Return changes and sentiment changes",
}

INDICATOR_ORDER = ("SENT", "ARMS")


def fmt_coef(x: float) -> str:
    if x == 0:
        x = 0.0
    return f"{x:.4f}"


fmt_tstat = fmt_coef


def fmt_pvalue(p: float) -> str:
    if p < 1.0e-4:
        return f"{p:.0E}"
    return f"{p:.4f}"


def _grid_cell(cell: GrangerResult | CellError) -> str:
    if isinstance(cell, CellError):
        return "n/a"
    marker = "*" if cell.significant_5pct else ""
    return fmt_pvalue(cell.p_value) + marker


def _family_keys(report: ExperimentReport) -> list[str]:
    return [family for family, _, _ in TRANSFORMATIONS]


def render_granger_json(report: ExperimentReport) -> str:
    families: dict = {}
    for family in _family_keys(report):
        fam_block: dict = {}
        for indicator in INDICATOR_ORDER:
            ind_block: dict = {}
            for lag in report.lags:
                lag_block: dict = {}
                for direction in DIRECTIONS:
                    cell = report.cells[(family, indicator, lag, direction)]
                    if isinstance(cell, CellError):
                        lag_block[direction] = {
                            "error": {"kind": cell.kind, "message": cell.message}
                        }
                    else:
                        lag_block[direction] = {
                            "cause": cell.cause,
                            "effect": cell.effect,
                            "f_stat": cell.f_stat,
                            "p_value": cell.p_value,
                            "significant_5pct": cell.significant_5pct,
                            "t_eff": cell.t_eff,
                            "perfect_fit": cell.perfect_fit,
                        }
                ind_block[str(lag)] = lag_block
            sel = report.aic_selected.get((family, indicator))
            if isinstance(sel, CellError):
                ind_block["aic_selected_lag"] = {
                    "error": {"kind": sel.kind, "message": sel.message}
                }
            elif sel is not None:
                ind_block["aic_selected_lag"] = sel
            fam_block[indicator] = ind_block
        families[family] = fam_block
    payload = {
        "market": report.market,
        "lags": list(report.lags),
        "families": families,
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def render_granger_csv(report: ExperimentReport) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        [
            "market",
            "transformation",
            "indicator",
            "lag",
            "direction",
            "cause",
            "effect",
            "f_stat",
            "p_value",
            "significant_5pct",
            "t_eff",
            "status",
            "message",
        ]
    )
    for family in _family_keys(report):
        for indicator in INDICATOR_ORDER:
            for lag in report.lags:
                for direction in DIRECTIONS:
                    cell = report.cells[(family, indicator, lag, direction)]
                    if isinstance(cell, CellError):
                        writer.writerow(
                            [report.market, family, indicator, lag, direction,
                             "", "", "", "", "", "", cell.kind, cell.message]
                        )
                        continue
                    writer.writerow(
                        [
                            report.market,
                            family,
                            indicator,
                            lag,
                            direction,
                            cell.cause,
                            cell.effect,
                            "" if cell.f_stat is None else fmt_coef(cell.f_stat),
                            fmt_pvalue(cell.p_value),
                            str(cell.significant_5pct).lower(),
                            cell.t_eff,
                            "perfect_fit" if cell.perfect_fit else "ok",
                            "",
                        ]
                    )
    return out.getvalue()


def render_granger_md(report: ExperimentReport) -> str:
    lines: list[str] = [f"# Granger causality report: {report.market}", ""]
    lines.append("Cells show the test p-value; `*` marks significance at the 5% level.")
    lines.append("Test 1 asks whether the return side predicts the indicator side;")
    lines.append("Test 2 asks the reverse.")
    lines.append("")
    for family in _family_keys(report):
        lines.append(f"## {FAMILY_TITLES[family]}")
        lines.append("")
        header = ["Indicator"]
        for lag in report.lags:
            header.extend([f"Lag {lag} Test 1", f"Lag {lag} Test 2"])
        lines.append("| " + " | ".join(header) + " |")
        lines.append("|" + " --- |" * len(header))
        for indicator in INDICATOR_ORDER:
            row = [indicator]
            for lag in report.lags:
                for direction in DIRECTIONS:
                    row.append(_grid_cell(report.cells[(family, indicator, lag, direction)]))
            lines.append("| " + " | ".join(row) + " |")
        sel_parts = []
        for indicator in INDICATOR_ORDER:
            sel = report.aic_selected.get((family, indicator))
            if isinstance(sel, CellError):
                sel_parts.append(f"{indicator} n/a")
            elif sel is not None:
                sel_parts.append(f"{indicator} {sel}")
        if sel_parts:
            lines.append("")
            lines.append(f"AIC lag choice: {', '.join(sel_parts)}.")
        lines.append("")
    return "\n".join(lines)


def _table_cell(coef: float, tstat: float, significant: bool) -> str:
    marker = "*" if significant else ""
    return f"{fmt_coef(coef)}{marker} ({fmt_tstat(tstat)})"


def render_var_tables_md(report: ExperimentReport) -> str:
    lines: list[str] = [f"# VAR coefficient tables: {report.market}", ""]
    lines.append("Each cell shows the coefficient with its t-statistic in")
    lines.append("parentheses; `*` marks a two-sided 5% rejection.")
    lines.append("")
    for family in _family_keys(report):
        for indicator in INDICATOR_ORDER:
            for lag in report.lags:
                table = report.var_tables.get((family, indicator, lag))
                if table is None:
                    continue
                lines.append(f"## {FAMILY_TITLES[family]}: {indicator}, VAR({lag})")
                lines.append("")
                if isinstance(table, CellError):
                    lines.append(f"Table unavailable ({table.kind}): {table.message}")
                    lines.append("")
                    continue
                header = [""] + [f"{name} equation" for name in table.col_labels]
                lines.append("| " + " | ".join(header) + " |")
                lines.append("|" + " --- |" * len(header))
                for i, label in enumerate(table.row_labels):
                    row = [label]
                    for j in range(len(table.col_labels)):
                        row.append(
                            _table_cell(
                                float(table.coefs[i, j]),
                                float(table.tstats[i, j]),
                                bool(table.significant[i, j]),
                            )
                        )
                    lines.append("| " + " | ".join(row) + " |")
                lines.append("")
    return "\n".join(lines)


def render_var_tables_csv(report: ExperimentReport) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        [
            "market",
            "transformation",
            "indicator",
            "lag",
            "row",
            "equation",
            "coef",
            "tstat",
            "significant_5pct",
            "status",
            "message",
        ]
    )
    for family in _family_keys(report):
        for indicator in INDICATOR_ORDER:
            for lag in report.lags:
                table = report.var_tables.get((family, indicator, lag))
                if table is None:
                    continue
                if isinstance(table, CellError):
                    writer.writerow(
                        [report.market, family, indicator, lag, "", "", "", "",
                         "", table.kind, table.message]
                    )
                    continue
                for i, label in enumerate(table.row_labels):
                    for j, equation in enumerate(table.col_labels):
                        writer.writerow(
                            [
                                report.market,
                                family,
                                indicator,
                                lag,
                                label,
                                equation,
                                fmt_coef(float(table.coefs[i, j])),
                                fmt_tstat(float(table.tstats[i, j])),
                                str(bool(table.significant[i, j])).lower(),
                                "ok",
                                "",
                            ]
                        )
    return out.getvalue()


def render_indicators_csv(series_list: Sequence[TimeSeries]) -> str:
    """Long-format CSV of defined indicator values, missing rows omitted."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["series", "date", "value"])
    for series in series_list:
        for day, value in series.defined():
            writer.writerow([series.name, day.isoformat(), f"{value:.12g}"])
    return out.getvalue()


def render_adf_csv(rows: Sequence[tuple[str, AdfResult | CellError]]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        ["series", "statistic", "lags_used", "n_obs",
         "reject_unit_root_5pct", "status", "message"]
    )
    for name, result in rows:
        if isinstance(result, CellError):
            writer.writerow([name, "", "", "", "", result.kind, result.message])
        else:
            writer.writerow(
                [
                    name,
                    fmt_coef(result.statistic),
                    result.lags_used,
                    result.n_obs,
                    str(result.reject_unit_root_5pct).lower(),
                    "ok",
                    "",
                ]
            )
    return out.getvalue()
