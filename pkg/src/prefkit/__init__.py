"""prefkit: consistency, scoring, and adaptive collection of pairwise preferences.

Three things live here:

* transitivity-based intra-annotator agreement (an exact-rational kappa over
  fully judged item triples),
* a constructive bridge from consistent relative judgments to absolute
  integer scores,
* adaptive annotation sessions that infer every pair deducible by transitive
  closure instead of asking it.

The HTTP service in :mod:`prefkit.service` and the CLI in :mod:`prefkit.cli`
are thin wrappers over these functions.
"""

from .analysis import AnalysisEntry, AnalysisReport, NotAssessable, analyze
from .errors import (
    ConflictingJudgment,
    DuplicateItems,
    NoCompleteTriples,
    NotComplete,
    NotTransitive,
    PairAlreadyDetermined,
    ParseError,
    PrefkitError,
    SelfPair,
    SessionNotDone,
    TieInStrictMode,
    TooFewItems,
    UnknownPair,
    UnknownRelationSymbol,
)
from .formats import Dataset, parse_judgments, write_judgments
from .model import (
    ConflictPolicy,
    Judgment,
    Mode,
    PreferenceRelation,
    Relation,
    assert_mode,
    build_relation,
)
from .representation import (
    CompletenessReport,
    ScoreTable,
    TransitivityReport,
    check_strongly_complete,
    check_transitive,
    derive_scores,
    scale_scores,
)
from .scheduler import Session, SessionStats, Strategy, create_session
from .transitivity import (
    IAReport,
    TripletConfig,
    chance_expected_agreement,
    complete_triples,
    enumerate_configs,
    expand_directional_patterns,
    ia_kappa,
    is_transitive,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisEntry",
    "AnalysisReport",
    "CompletenessReport",
    "ConflictPolicy",
    "ConflictingJudgment",
    "Dataset",
    "DuplicateItems",
    "IAReport",
    "Judgment",
    "Mode",
    "NoCompleteTriples",
    "NotAssessable",
    "NotComplete",
    "NotTransitive",
    "PairAlreadyDetermined",
    "ParseError",
    "PreferenceRelation",
    "PrefkitError",
    "Relation",
    "ScoreTable",
    "SelfPair",
    "Session",
    "SessionNotDone",
    "SessionStats",
    "Strategy",
    "TieInStrictMode",
    "TooFewItems",
    "TransitivityReport",
    "TripletConfig",
    "UnknownPair",
    "UnknownRelationSymbol",
    "analyze",
    "assert_mode",
    "build_relation",
    "chance_expected_agreement",
    "check_strongly_complete",
    "check_transitive",
    "complete_triples",
    "create_session",
    "derive_scores",
    "enumerate_configs",
    "expand_directional_patterns",
    "ia_kappa",
    "is_transitive",
    "parse_judgments",
    "scale_scores",
    "write_judgments",
]
