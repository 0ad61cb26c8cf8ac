"""Breadth-based sentiment indicators and Granger causality tooling.

The public surface: CSV ingestion into typed panels and series, daily
advance/decline indicators, a QR-based regression core, VAR estimation with
AIC lag choice, directional Granger F-tests over a four-family
transformation grid, and deterministic report emission.
"""

from .breadth import BreadthRecord, arms_series, daily_breadth, diff_series, sent_series
from .config import MarketConfig, RunConfig, load_config
from .errors import (
    ConfigError,
    DataError,
    DuplicateKeyError,
    InsufficientDataError,
    InsufficientOverlapError,
    NumericalError,
    ParseError,
    SentVarError,
    SingularDesignError,
)
from .fixture import DEFAULT_SEED, generate_fixture
from .granger import (
    CellError,
    ExperimentReport,
    GrangerResult,
    granger_test,
    run_experiment,
)
from .ingest import (
    AlignedFrame,
    PriceBar,
    PricePanel,
    TimeSeries,
    align,
    market_return_series,
    parse_index_csv,
    parse_price_csv,
)
from .stats_core import (
    ADF_CRITICAL_VALUES,
    AdfResult,
    DesignMatrix,
    OlsFit,
    adf_test,
    aic_var,
    f_cdf,
    ols_fit,
)
from .var_engine import (
    CoefficientTable,
    VarFit,
    VarSpec,
    build_lag_matrix,
    coefficient_table,
    fit_var,
    select_lag,
    stability_modulus,
)

__version__ = "0.1.0"

__all__ = [
    "ADF_CRITICAL_VALUES",
    "AdfResult",
    "AlignedFrame",
    "BreadthRecord",
    "CellError",
    "CoefficientTable",
    "ConfigError",
    "DataError",
    "DesignMatrix",
    "DuplicateKeyError",
    "ExperimentReport",
    "GrangerResult",
    "InsufficientDataError",
    "InsufficientOverlapError",
    "MarketConfig",
    "NumericalError",
    "OlsFit",
    "ParseError",
    "PriceBar",
    "PricePanel",
    "RunConfig",
    "SentVarError",
    "SingularDesignError",
    "TimeSeries",
    "VarFit",
    "VarSpec",
    "adf_test",
    "aic_var",
    "align",
    "arms_series",
    "build_lag_matrix",
    "coefficient_table",
    "daily_breadth",
    "diff_series",
    "f_cdf",
    "fit_var",
    "DEFAULT_SEED",
    "generate_fixture",
    "granger_test",
    "load_config",
    "market_return_series",
    "ols_fit",
    "parse_index_csv",
    "parse_price_csv",
    "run_experiment",
    "select_lag",
    "sent_series",
    "stability_modulus",
    "__version__",
]
