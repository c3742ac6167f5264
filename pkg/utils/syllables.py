"""Heuristic English syllable counting.

A syllable is a maximal run of vowel letters (``y`` included). A final silent
``e`` and a silent inflectional ``-es``/``-ed`` take one run away again, except
after a consonant + ``le`` and where the ending is pronounced (``-ces``,
``-ted`` and friends). Every word with a vowel keeps at least one syllable.
"""

import re
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from utils.text_segmenter import Token

VOWEL_RUNS = re.compile(r"[aeiouy]+")
SILENT_ENDING = re.compile(r"[^aeiouy]e[sd]?$")
PRONOUNCED_ENDING = re.compile(
    # article, tables, cycled
    r"[^aeiouy]le[sd]?$|"
    # indices, pages, causes, boxes, mazes, matches, wishes
    r"(?:[cgsxz]|ch|sh)es$|"
    # posted, added
    r"[td]ed$"
)

# inflections that may supply the third syllable of a word
INFLECTIONS = ("ing", "es", "ed")

COMPLEX_SYLLABLES = 3


def count_syllables(word: str) -> int:
    """Return the heuristic syllable count of a lowercase word (0 when it has no vowel)."""
    runs = len(VOWEL_RUNS.findall(word))
    if runs == 0:
        return 0
    if runs >= 2 and SILENT_ENDING.search(word) and not PRONOUNCED_ENDING.search(word):
        runs -= 1
    return max(1, runs)


def _inflection_base(word: str, suffix: str) -> str:
    if suffix == "ing":
        return word[: -len(suffix)]
    # support-ed -> "supporte", respons-es -> "response": keep the e so the
    # silent-e rule sees the base form
    return word[:-1]


def is_complex(token: "Token", exclude_inflected: bool = False) -> bool:
    """Fog complex word test: three or more syllables.

    With ``exclude_inflected`` a word is not complex when only an ``-ing``,
    ``-es`` or ``-ed`` ending lifts it to three syllables (Gunning's rule).
    """
    if token.syllables < COMPLEX_SYLLABLES:
        return False
    if not exclude_inflected:
        return True
    word = token.normalized
    for suffix in INFLECTIONS:
        if word.endswith(suffix) and len(word) > len(suffix) + 1:
            base = _inflection_base(word, suffix)
            if count_syllables(base) < COMPLEX_SYLLABLES:
                return False
            break
    return True
