"""LIWC-style category lexicons with wildcard stems.

File format (UTF-8)::

    # comment
    CERTAIN: all, very, fact*, exact*, certain*, completely
    SELF: we, our, I, us
    !exclude RELIGION, MUSIC

A label may appear on several lines; its entries are merged. Entries are
case-insensitive and apostrophes are dropped, matching token normalization.
Excluded labels stay in the structure but are never reported by a lookup.
"""

import enum
import hashlib
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from services.errors import LexiconParseError, LexiconValidationError
from utils.files import read_utf8

logger = logging.getLogger(__name__)

LABEL_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")
EXCLUDE_DIRECTIVE = "!exclude"
MIN_STEM_LENGTH = 2


class EntryKind(str, enum.Enum):
    EXACT = "exact"
    STEM = "stem"


@dataclass(frozen=True, order=True)
class LexEntry:
    pattern: str
    kind: EntryKind

    @property
    def prefix(self) -> str:
        return self.pattern[:-1] if self.kind is EntryKind.STEM else self.pattern

    def matches(self, word: str) -> bool:
        if self.kind is EntryKind.STEM:
            return word.startswith(self.prefix)
        return word == self.pattern

    def __str__(self) -> str:
        return self.pattern


class _TrieNode:
    __slots__ = ("children", "exact", "stem")

    def __init__(self):
        self.children: Dict[str, "_TrieNode"] = {}
        self.exact: set = set()
        self.stem: set = set()


class CategoryLexicon:
    """Immutable label -> entries mapping with a prefix trie for lookups."""

    def __init__(
        self,
        categories: Mapping[str, Iterable[LexEntry]],
        excluded_labels: Iterable[str] = (),
        name: str = "<lexicon>",
        digest: Optional[str] = None,
    ):
        self._categories: Dict[str, FrozenSet[LexEntry]] = {
            label: frozenset(entries) for label, entries in sorted(categories.items())
        }
        self._excluded = frozenset(excluded_labels)
        self.name = name
        self.digest = digest
        for label, entries in self._categories.items():
            if not entries:
                raise LexiconValidationError(f"category {label} is empty")
        unknown = sorted(self._excluded - set(self._categories))
        if unknown:
            raise LexiconValidationError(f"excluded labels not defined: {', '.join(unknown)}")
        self._root = _TrieNode()
        for label in self.labels:
            for entry in self._categories[label]:
                self._insert(entry, label)

    def _insert(self, entry: LexEntry, label: str) -> None:
        node = self._root
        for letter in entry.prefix:
            node = node.children.setdefault(letter, _TrieNode())
        if entry.kind is EntryKind.STEM:
            node.stem.add(label)
        else:
            node.exact.add(label)

    @property
    def categories(self) -> Mapping[str, FrozenSet[LexEntry]]:
        return dict(self._categories)

    @property
    def excluded_labels(self) -> FrozenSet[str]:
        return self._excluded

    @property
    def labels(self) -> Tuple[str, ...]:
        """Active (non-excluded) labels, sorted."""
        return tuple(label for label in self._categories if label not in self._excluded)

    def entries(self, label: str) -> FrozenSet[LexEntry]:
        return self._categories[label]

    def categories_of(self, word: str) -> FrozenSet[str]:
        found = set()
        node = self._root
        found.update(node.stem)
        for letter in word:
            node = node.children.get(letter)
            if node is None:
                return frozenset(found)
            found.update(node.stem)
        found.update(node.exact)
        return frozenset(found)

    def categories_of_scan(self, word: str) -> FrozenSet[str]:
        """Reference lookup: linear scan over every entry of every active label."""
        return frozenset(
            label for label in self.labels if any(entry.matches(word) for entry in self._categories[label])
        )

    def __contains__(self, label: str) -> bool:
        return label in self._categories and label not in self._excluded

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"CategoryLexicon(name={self.name!r}, labels={len(self.labels)}, excluded={len(self._excluded)})"


def categories_of(word: str, lex: CategoryLexicon) -> FrozenSet[str]:
    return lex.categories_of(word)


def parse_entry(raw: str, line: int) -> LexEntry:
    pattern = raw.strip().lower().replace("'", "").replace("’", "")
    if not pattern:
        raise LexiconParseError("empty entry", line)
    if "*" in pattern[:-1]:
        raise LexiconValidationError(f"'*' must be the final character in '{raw.strip()}'", line)
    if pattern.endswith("*"):
        stem = pattern[:-1]
        if len(stem) < MIN_STEM_LENGTH or not stem.isalpha():
            raise LexiconValidationError(
                f"stem '{raw.strip()}' needs at least {MIN_STEM_LENGTH} letters before '*'", line
            )
        return LexEntry(pattern=pattern, kind=EntryKind.STEM)
    if not pattern.isalpha():
        raise LexiconValidationError(f"entry '{raw.strip()}' must be alphabetic", line)
    return LexEntry(pattern=pattern, kind=EntryKind.EXACT)


def _split_items(text: str) -> List[str]:
    return [item for item in (part.strip() for part in text.split(",")) if item]


def parse_lexicon(text: str, name: str = "<string>") -> CategoryLexicon:
    categories: Dict[str, set] = {}
    excluded: Dict[str, int] = {}

    for number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue

        if line.lower().startswith(EXCLUDE_DIRECTIVE):
            for label in _split_items(line[len(EXCLUDE_DIRECTIVE):]):
                if not LABEL_RE.match(label):
                    raise LexiconParseError(f"bad label '{label}' in exclusion directive", number)
                excluded.setdefault(label.upper(), number)
            continue

        label, sep, body = line.partition(":")
        label = label.strip()
        if not sep or not LABEL_RE.match(label):
            raise LexiconParseError(f"expected 'LABEL: entry, entry, ...', got '{raw_line.strip()}'", number)
        label = label.upper()
        entries = [parse_entry(item, number) for item in _split_items(body)]
        if not entries and label not in categories:
            raise LexiconValidationError(f"category {label} is empty", number)
        categories.setdefault(label, set()).update(entries)

    for label, number in excluded.items():
        if label not in categories:
            raise LexiconValidationError(f"excluded label {label} is not defined", number)

    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
    lexicon = CategoryLexicon(categories, excluded_labels=excluded, name=name, digest=digest)
    logger.debug("parsed lexicon %s: %d categories, %d excluded", name, len(categories), len(excluded))
    return lexicon


def load_lexicon(path) -> CategoryLexicon:
    path = Path(path)
    return parse_lexicon(read_utf8(path, LexiconParseError, "lexicon"), name=path.name)
