"""Pun detection and target-word location from thesaurus-based
semantic-field vectors."""

from .classifier import (
    EvalReport,
    LogisticRegressionClassifier,
    SmoSvmClassifier,
    evaluate,
)
from .defaults import default_corpus_path, default_index, default_manifest
from .locator import (
    CandidateScore,
    FieldGroups,
    compute_groups,
    locate_heterographic,
    locate_homographic,
    merge_wb,
    position_value,
    score_homographic,
)
from .textprep import Collocation, Token, analyze, tokenize
from .thesaurus import Manifest, ThesaurusIndex, parse_thesaurus
from .vectorizer import (
    SemanticFieldVectorizer,
    SemanticVector,
    semantic_vector,
    sort_full,
    sort_partitioned,
)

__version__ = "0.1.0"

__all__ = [
    "CandidateScore",
    "Collocation",
    "EvalReport",
    "FieldGroups",
    "LogisticRegressionClassifier",
    "Manifest",
    "SemanticFieldVectorizer",
    "SemanticVector",
    "SmoSvmClassifier",
    "ThesaurusIndex",
    "Token",
    "analyze",
    "compute_groups",
    "default_corpus_path",
    "default_index",
    "default_manifest",
    "evaluate",
    "locate_heterographic",
    "locate_homographic",
    "merge_wb",
    "parse_thesaurus",
    "position_value",
    "score_homographic",
    "semantic_vector",
    "sort_full",
    "sort_partitioned",
    "tokenize",
]
