"""Emotion ranking for short texts from corpus co-occurrence proximity."""

__version__ = "0.1.0"

from .emomodel import EmotionModel, builtin_models, get_model, load_model
from .preprocess import TokenList, filter_tokens, load_profile, preprocess, tokenize
from .proximity import MeasureKind, PmingContext, build_pming_context, confidence, ngd, pmi, pming, proximity
from .ranking import EmotionVector, SentenceResult, aggregate, process_sentence, rank, term_vector

__all__ = [
    "EmotionModel",
    "EmotionVector",
    "MeasureKind",
    "PmingContext",
    "SentenceResult",
    "TokenList",
    "aggregate",
    "build_pming_context",
    "builtin_models",
    "confidence",
    "filter_tokens",
    "get_model",
    "load_model",
    "load_profile",
    "ngd",
    "pmi",
    "pming",
    "preprocess",
    "process_sentence",
    "proximity",
    "rank",
    "term_vector",
    "tokenize",
]
