"""Class coverage and dominance scores.

Coverage of a class in a corpus is the share of the corpus tokens that belong to
the class; dominance is the coverage in a target corpus divided by the coverage
in the control corpus. Scores above 1.2 mark a dominant class, below 0.8 an
avoided one, anything in between is filtered out as not significant.
"""

import enum
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence

from pydantic import BaseModel, ConfigDict

from services.errors import UndefinedCoverageError
from services.lexicon import CategoryLexicon
from utils.text_segmenter import TokenizedDocument

logger = logging.getLogger(__name__)

DOMINANT_CUTOFF = 1.2
AVOIDED_CUTOFF = 0.8


class Band(str, enum.Enum):
    DOMINANT = "Dominant"
    AVOIDED = "Avoided"
    FILTERED = "Filtered"
    UNDEFINED = "Undefined"


class Scope(str, enum.Enum):
    ALL = "all"
    SOME = "some"
    NONE = "none"


@dataclass(frozen=True)
class CorpusCounts:
    size: int
    class_freq: Mapping[str, int] = field(default_factory=dict)

    def freq(self, label: str) -> int:
        return self.class_freq.get(label, 0)

    def merge(self, other: "CorpusCounts") -> "CorpusCounts":
        merged = Counter(self.class_freq)
        merged.update(other.class_freq)
        labels = set(self.class_freq) | set(other.class_freq)
        return CorpusCounts(size=self.size + other.size, class_freq={k: merged[k] for k in sorted(labels)})


class DominanceRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    label: str
    coverage_target: float
    coverage_control: float
    dominance: Optional[float] = None
    band: Band


def classify_band(dominance: Optional[float]) -> Band:
    if dominance is None:
        return Band.UNDEFINED
    if dominance > DOMINANT_CUTOFF:
        return Band.DOMINANT
    if dominance < AVOIDED_CUTOFF:
        return Band.AVOIDED
    return Band.FILTERED


def document_counts(doc: TokenizedDocument, lex: CategoryLexicon) -> CorpusCounts:
    return corpus_counts([doc], lex)


def corpus_counts(docs: Iterable[TokenizedDocument], lex: CategoryLexicon) -> CorpusCounts:
    """Token total and per-class occurrence counts; a multi-class token counts once per class."""
    freq: Counter = Counter()
    lookup: Dict[str, frozenset] = {}
    size = 0
    documents = 0
    for doc in docs:
        documents += 1
        size += doc.word_count
        for token in doc.tokens:
            word = token.normalized
            labels = lookup.get(word)
            if labels is None:
                labels = lookup[word] = lex.categories_of(word)
            freq.update(labels)
    class_freq = {label: freq[label] for label in lex.labels}
    logger.debug("counted %d documents, %d tokens", documents, size)
    return CorpusCounts(size=size, class_freq=class_freq)


def class_coverage(counts: CorpusCounts, label: str) -> float:
    if counts.size == 0:
        raise UndefinedCoverageError(f"coverage of {label} is undefined for an empty corpus")
    return counts.freq(label) / counts.size


def dominance_score(target: CorpusCounts, control: CorpusCounts, label: str) -> DominanceRow:
    coverage_target = class_coverage(target, label)
    coverage_control = class_coverage(control, label)
    dominance = coverage_target / coverage_control if coverage_control > 0 else None
    return DominanceRow(
        label=label,
        coverage_target=coverage_target,
        coverage_control=coverage_control,
        dominance=dominance,
        band=classify_band(dominance),
    )


@dataclass(frozen=True)
class DominanceTableRow:
    label: str
    coverage_control: float
    scores: Mapping[str, DominanceRow]
    scope: Scope


def dominance_scope(rows: Sequence[DominanceRow]) -> Scope:
    """``all`` when every target agrees on Dominant (or on Avoided), ``some`` when any is significant."""
    bands = {row.band for row in rows}
    if bands == {Band.DOMINANT} or bands == {Band.AVOIDED}:
        return Scope.ALL
    if bands & {Band.DOMINANT, Band.AVOIDED}:
        return Scope.SOME
    return Scope.NONE


def dominance_table(
    targets: Mapping[str, CorpusCounts],
    control: CorpusCounts,
    labels: Iterable[str],
) -> List[DominanceTableRow]:
    """One row per label (sorted), scoring every target collection against the control."""
    table = []
    for label in sorted(labels):
        scores = {name: dominance_score(counts, control, label) for name, counts in targets.items()}
        table.append(
            DominanceTableRow(
                label=label,
                coverage_control=class_coverage(control, label),
                scores=scores,
                scope=dominance_scope(list(scores.values())),
            )
        )
    return table
