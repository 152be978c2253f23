"""aesu: subjectivity modeling of crowd aesthetic-rating histograms.

A 10-bin rating histogram is fitted with a beta distribution by EMD
minimization; the fitted shape converts to a subjective-logic opinion
(belief, disbelief, uncertainty), whose uncertainty mass is an
interpretable [0, 1] subjectivity metric. The package also provides the
classical subjectivity metrics, unimodality testing, the training-loss
suite for simultaneous distribution/shape prediction, ternary
classification, and a recommendation simulation, all behind both a
library API and the ``aesu`` command-line tool.
"""

__version__ = "0.1.0"

from .beta_model import (
    BetaShape,
    FitResult,
    Opinion,
    b2r,
    beta_pdf,
    fit_beta,
    log_beta_fn,
    moments_init,
    opinion_from_shape,
    reg_inc_beta,
)
from .decision import (
    RecommendationRule,
    RuleResult,
    SimulationSummary,
    TernaryCenter,
    TernaryClass,
    classify,
    compute_center,
    satisfaction_ratio,
    simulate_recommendation,
)
from .distributions import (
    BIN_CENTERS,
    NUM_BINS,
    CdfVector,
    RatingDistribution,
    cdf,
    delta_distribution,
    emd,
    kld,
    mad_median,
    mae,
    mean_score,
    normalize_counts,
    plcc,
    srocc,
    std_normalized,
    to_score_scale,
    uniform_distribution,
)
from .errors import (
    AesuError,
    AllZeroCounts,
    DegenerateInput,
    DomainError,
    EmptyCorpus,
    InvalidOrder,
    InvalidWeights,
    IoError,
    MalformedLine,
    MissingRaterCount,
    NoRecommendations,
    NonFiniteValue,
    TooFewPoints,
)
from .ingest import (
    CSV_HEADER,
    RESULT_FIELDS,
    generate_synthetic,
    parse_ava_line,
    read_corpus,
    write_results,
)
from .losses import (
    DEFAULT_WEIGHTS,
    LossBreakdown,
    LossWeights,
    fd_gradient,
    l1_emd,
    l2_rmsle,
    l3_consistency,
    total_loss,
)
from .modality import (
    ModalityResult,
    count_modes,
    dip_statistic,
    dip_test,
    expand_histogram,
    null_dip_samples,
)
from .pipeline import AnalysisOptions, analyze_corpus, analyze_record, classify_corpus
from .records import ImageRecord, SyntheticSpec
from .subjectivity import (
    SubjectivityReport,
    aesu,
    dud,
    full_report,
    max_entropy_same_mean,
    med,
)

__all__ = [name for name in dir() if not name.startswith("_")]
