"""Gunning Fog and Flesch Reading Ease, per document and per collection."""

import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

from services.errors import DegenerateVarianceError, InsufficientDataError, UndefinedReadabilityError
from services.stats import SampleSummary, TestResult, f_test_variance, summarize, welch_t_test
from utils.syllables import is_complex
from utils.text_segmenter import TokenizedDocument

logger = logging.getLogger(__name__)

FOG_WEIGHT = 0.4
FLESCH_BASE = 206.835
FLESCH_SENTENCE_WEIGHT = 1.015
FLESCH_SYLLABLE_WEIGHT = 84.6


@dataclass(frozen=True)
class ReadabilityScores:
    fog: float
    flesch: float


@dataclass(frozen=True)
class ReadabilitySummary:
    n: int
    skipped: int
    fog: SampleSummary
    flesch: SampleSummary
    fog_values: Tuple[float, ...]
    flesch_values: Tuple[float, ...]


def _check_scoreable(doc: TokenizedDocument) -> None:
    if doc.word_count == 0 or doc.sentence_count == 0:
        raise UndefinedReadabilityError(f"document {doc.doc_id} has no words or sentences")


def complex_word_count(doc: TokenizedDocument, exclude_inflected: bool = True) -> int:
    return sum(1 for token in doc.tokens if is_complex(token, exclude_inflected=exclude_inflected))


def fog_index(doc: TokenizedDocument, exclude_inflected: bool = True) -> float:
    """0.4 * (words per sentence + percentage of complex words)."""
    _check_scoreable(doc)
    words = doc.word_count
    complex_words = complex_word_count(doc, exclude_inflected)
    return FOG_WEIGHT * (words / doc.sentence_count + 100.0 * complex_words / words)


def flesch_index(doc: TokenizedDocument) -> float:
    _check_scoreable(doc)
    words = doc.word_count
    return (
        FLESCH_BASE
        - FLESCH_SENTENCE_WEIGHT * (words / doc.sentence_count)
        - FLESCH_SYLLABLE_WEIGHT * (doc.syllable_count / words)
    )


def score_document(doc: TokenizedDocument, exclude_inflected: bool = True) -> ReadabilityScores:
    return ReadabilityScores(fog=fog_index(doc, exclude_inflected), flesch=flesch_index(doc))


def readability_summary(docs: Iterable[TokenizedDocument], exclude_inflected: bool = True) -> ReadabilitySummary:
    """Score each document, then take the sample mean and stddev over the collection.

    Documents without words or sentences are skipped and counted.
    """
    fog_values = []
    flesch_values = []
    skipped = 0
    for doc in docs:
        try:
            scores = score_document(doc, exclude_inflected)
        except UndefinedReadabilityError:
            skipped += 1
            logger.warning("skipping document %s: nothing to score", doc.doc_id)
            continue
        fog_values.append(scores.fog)
        flesch_values.append(scores.flesch)

    if len(fog_values) < 2:
        raise InsufficientDataError(f"need at least two scoreable documents, got {len(fog_values)}")

    return ReadabilitySummary(
        n=len(fog_values),
        skipped=skipped,
        fog=summarize(fog_values),
        flesch=summarize(flesch_values),
        fog_values=tuple(fog_values),
        flesch_values=tuple(flesch_values),
    )


def fog_band(fog: float) -> str:
    """universal (< 8), general (8-15), academic (15-20), difficult (> 20)."""
    if fog > 20.0:
        return "difficult"
    if fog >= 15.0:
        return "academic"
    if fog >= 8.0:
        return "general"
    return "universal"


def flesch_band(flesch: float) -> str:
    """very easy (>= 90), standard (60-90), difficult (30-60), graduate (< 30)."""
    if flesch >= 90.0:
        return "very easy"
    if flesch >= 60.0:
        return "standard"
    if flesch >= 30.0:
        return "difficult"
    return "graduate"


@dataclass(frozen=True)
class CollectionComparison:
    summary: ReadabilitySummary
    fog_t: TestResult
    flesch_t: TestResult
    fog_f: Optional[TestResult]
    flesch_f: Optional[TestResult]


def _variance_test(values, control_values) -> Optional[TestResult]:
    try:
        return f_test_variance(values, control_values)
    except DegenerateVarianceError:
        logger.warning("variance test skipped: a sample has zero variance")
        return None


def compare_to_control(summary: ReadabilitySummary, control: ReadabilitySummary) -> CollectionComparison:
    """Welch t and variance F tests of a collection against the control, for both indices."""
    return CollectionComparison(
        summary=summary,
        fog_t=welch_t_test(summary.fog_values, control.fog_values),
        flesch_t=welch_t_test(summary.flesch_values, control.flesch_values),
        fog_f=_variance_test(summary.fog_values, control.fog_values),
        flesch_f=_variance_test(summary.flesch_values, control.flesch_values),
    )
