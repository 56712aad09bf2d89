"""Long-term citation-impact forecasting toolkit.

Field-normalized impact and readership indicators, three nested OLS
model families across seven citation windows, nested-model ANOVA
comparison, bootstrap and residual diagnostics, and a calibrated
synthetic-corpus generator.
"""

__version__ = "0.1.0"

from .corpus import (
    CITATION_WINDOWS,
    PREDICTOR_WINDOWS,
    READERSHIP_WINDOWS,
    RESPONSE_WINDOW,
    Corpus,
    CorpusManifest,
    PublicationRecord,
    corpus_manifest,
    load_corpus,
    validate_record,
    write_corpus,
)
from .design import DesignMatrix, ModelSpec, build_matrix, encode_dummies, log_transform
from .diagnostics import BootstrapReport, bootstrap, qq_points, residual_histogram
from .ols import FitResult, adjusted_r2, fit, predict
from .stats import (
    BaselineTable,
    NormalizedMeasures,
    compute_baselines,
    compute_measures,
    correlation_matrices,
    descriptive_table,
    hhi,
    load_baselines,
    normalize_measures,
    pearson,
    write_baselines,
)
from .suite import ComparisonReport, SuiteResult, anova_f, run_suite, sc_coefficient_summary
from .synth import GeneratorConfig, calibration_report, generate
