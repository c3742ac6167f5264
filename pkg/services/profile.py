"""Virality profile scoring of a single abstract.

The abstract is treated as a one-document corpus and every profile class is
scored against the control corpus. A class is met when its band matches the
direction the profile asks for.
"""

import json
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator

from services.dominance import Band, CorpusCounts, document_counts, dominance_score
from services.errors import ProfileError, UndefinedCoverageError
from services.lexicon import CategoryLexicon
from utils.files import read_utf8
from utils.text_segmenter import TokenizedDocument

# classes dominant in every viral collection; PAST was consistently avoided
DEFAULT_DOMINANT = (
    "CERTAIN", "DISCREP", "EXCL", "FUTURE", "NEGATE", "OTHREF", "PRONOUN",
    "SELF", "SENSES", "SIMILES", "SOCIAL", "TENTAT", "WE",
)
DEFAULT_AVOIDED = ("PAST",)

_DIRECTIONS = (Band.DOMINANT, Band.AVOIDED)


class ViralityProfile(BaseModel):
    model_config = ConfigDict(frozen=True)

    targets: Dict[str, Band]

    @field_validator("targets")
    @classmethod
    def _directions_only(cls, targets):
        if not targets:
            raise ValueError("a profile needs at least one class")
        for label, band in targets.items():
            if band not in _DIRECTIONS:
                raise ValueError(f"{label}: direction must be Dominant or Avoided, not {band.value}")
        return dict(sorted(targets.items()))

    @classmethod
    def default(cls) -> "ViralityProfile":
        targets = {label: Band.DOMINANT for label in DEFAULT_DOMINANT}
        targets.update({label: Band.AVOIDED for label in DEFAULT_AVOIDED})
        return cls(targets=targets)

    @classmethod
    def from_json(cls, text: str) -> "ViralityProfile":
        try:
            return cls(targets=json.loads(text))
        except (json.JSONDecodeError, ValidationError) as exc:
            raise ProfileError(f"invalid profile: {exc}") from exc

    @classmethod
    def load(cls, path) -> "ViralityProfile":
        return cls.from_json(read_utf8(path, ProfileError, "profile"))

    def validate_for(self, lex: CategoryLexicon) -> None:
        missing = [label for label in self.targets if label not in lex]
        if missing:
            raise ProfileError(f"profile classes missing from lexicon {lex.name}: {', '.join(missing)}")

    def __len__(self) -> int:
        return len(self.targets)


class ProfileRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    label: str
    direction: Band
    coverage_doc: float
    coverage_control: float
    dominance: Optional[float] = None
    band: Band
    met: bool
    undefined: bool


class ProfileResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    rows: List[ProfileRow]
    met: int
    size: int

    @property
    def fraction_met(self) -> float:
        return self.met / self.size


def profile_score(
    doc: TokenizedDocument,
    control: CorpusCounts,
    profile: ViralityProfile,
    lex: CategoryLexicon,
) -> ProfileResult:
    profile.validate_for(lex)
    if doc.word_count == 0:
        raise UndefinedCoverageError(f"document {doc.doc_id} has no tokens")
    counts = document_counts(doc, lex)
    rows = []
    for label, direction in profile.targets.items():
        scored = dominance_score(counts, control, label)
        rows.append(
            ProfileRow(
                label=label,
                direction=direction,
                coverage_doc=scored.coverage_target,
                coverage_control=scored.coverage_control,
                dominance=scored.dominance,
                band=scored.band,
                met=scored.band == direction,
                undefined=scored.band == Band.UNDEFINED,
            )
        )
    return ProfileResult(rows=rows, met=sum(row.met for row in rows), size=len(rows))
