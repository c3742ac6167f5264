"""Deterministic tokenization and sentence segmentation of abstracts.

Tokens are maximal runs of letters, optionally joined by internal apostrophes
("don't"); a trailing apostrophe is not part of the token. Digits, hyphens, math symbols and other
punctuation separate tokens and are never tokens themselves.

A sentence ends at ``.``, ``!``, ``?`` or ``;`` when the terminator (plus any
closing quotes or brackets) is followed by whitespace and a capital letter, or
by the end of the text. Decimal points and a fixed list of abbreviations never
end a sentence; reference words such as "Fig." or "No." count as abbreviations
only when a number follows.
"""

import logging
import re
import unicodedata
from dataclasses import dataclass
from typing import List, Tuple

from services.errors import TextError
from utils.syllables import count_syllables

logger = logging.getLogger(__name__)

WORD_RE = re.compile(r"[^\W\d_]+(?:['’][^\W\d_]+)*")
TERMINATOR_RE = re.compile(r"[.!?;]")
CLOSERS = "\"')]}’”"
OPENERS = "\"'([{‘“"

# lowercase, with the trailing period
ABBREVIATIONS = frozenset(
    {
        "e.g.", "i.e.", "vs.", "cf.", "etc.", "approx.", "resp.",
        "dr.", "mr.", "mrs.", "prof.", "ca.",
    }
)
# abbreviations only when a reference follows ("Fig. 3", "Sect. IV", "Eq. (2)")
NUMBERED_ABBREVIATIONS = frozenset(
    {
        "fig.", "figs.", "eq.", "eqs.", "ref.", "refs.", "sect.", "sec.",
        "tab.", "no.", "vol.",
    }
)
REFERENCE_RE = re.compile(r"\s*\(?(?:\d|[A-Z]\d|[IVX]{2,}\b)")

Bounds = Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class RawDocument:
    id: str
    text: str

    def __post_init__(self):
        if not self.id:
            raise TextError("document id must be nonempty")


@dataclass(frozen=True)
class Token:
    surface: str
    normalized: str
    syllables: int


@dataclass(frozen=True)
class TokenizedDocument:
    doc_id: str
    tokens: Tuple[Token, ...]
    sentence_bounds: Bounds

    @property
    def word_count(self) -> int:
        return len(self.tokens)

    @property
    def sentence_count(self) -> int:
        return len(self.sentence_bounds)

    @property
    def syllable_count(self) -> int:
        return sum(token.syllables for token in self.tokens)

    def words(self) -> List[str]:
        return [token.normalized for token in self.tokens]


def normalize_word(surface: str) -> str:
    """Lowercase a token surface and drop apostrophes."""
    lowered = surface.lower()
    return "".join(ch for ch in lowered if ch.isalpha())


def _prepare(text: str) -> str:
    return unicodedata.normalize("NFC", text)


def _is_abbreviation(text: str, dot: int) -> bool:
    start = dot
    while start > 0 and (text[start - 1].isalpha() or text[start - 1] == "."):
        start -= 1
    chunk = text[start : dot + 1].lower().lstrip(OPENERS)
    if chunk in ABBREVIATIONS:
        return True
    if chunk in NUMBERED_ABBREVIATIONS:
        return REFERENCE_RE.match(text, dot + 1) is not None
    # "et al." spans a space
    before = text[max(0, start - 3) : start].lower()
    return chunk == "al." and before == "et "


def _is_decimal_point(text: str, dot: int) -> bool:
    return 0 < dot < len(text) - 1 and text[dot - 1].isdigit() and text[dot + 1].isdigit()


def _sentence_breaks(text: str) -> List[int]:
    """Character offsets just past each sentence-final terminator."""
    breaks = []
    size = len(text)
    for match in TERMINATOR_RE.finditer(text):
        pos = match.start()
        if text[pos] == "." and (_is_decimal_point(text, pos) or _is_abbreviation(text, pos)):
            continue
        end = pos + 1
        while end < size and text[end] in CLOSERS:
            end += 1
        rest = end
        while rest < size and text[rest].isspace():
            rest += 1
        if rest == size:
            breaks.append(end)
        elif rest > end and text[rest].isupper():
            breaks.append(end)
    return breaks


def _scan(text: str):
    text = _prepare(text)
    spans = [(m.start(), m.group()) for m in WORD_RE.finditer(text)]
    bounds = []
    first = 0
    index = 0
    for cut in _sentence_breaks(text):
        while index < len(spans) and spans[index][0] < cut:
            index += 1
        if index > first:
            bounds.append((first, index))
            first = index
    if first < len(spans):
        bounds.append((first, len(spans)))
    return [surface for _, surface in spans], tuple(bounds)


def segment_sentences(doc: RawDocument) -> Bounds:
    """Sentence bounds as half-open token index ranges; their count is the sentence count."""
    _, bounds = _scan(doc.text)
    return bounds


def tokenize(doc: RawDocument) -> TokenizedDocument:
    surfaces, bounds = _scan(doc.text)
    tokens = []
    for surface in surfaces:
        normalized = normalize_word(surface)
        tokens.append(Token(surface=surface, normalized=normalized, syllables=count_syllables(normalized)))
    logger.debug("tokenized %s: %d tokens, %d sentences", doc.id, len(tokens), len(bounds))
    return TokenizedDocument(doc_id=doc.id, tokens=tuple(tokens), sentence_bounds=bounds)


def tokenize_text(text: str, doc_id: str = "text") -> TokenizedDocument:
    return tokenize(RawDocument(id=doc_id, text=text))
