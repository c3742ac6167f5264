from pathlib import Path

import pytest

from config import LEXICON_DIR
from services.corpus import parse_records
from services.lexicon import load_lexicon, parse_lexicon

FIXTURES = Path(__file__).resolve().parent / "fixtures"

SAMPLE_LEXICON_TEXT = """\
CERTAIN: all, very, fact*, exact*, certain*, completely
NEGATE: not, no, zero, without, never
DISCREP: but, if, expect*, should
TENTAT: or, some, may, possib*, probab*
SENSES: observ*, discuss*, shows, appears
SELF: we, our, I, us
SOCIAL: discuss*, interact*, suggest*, argu*
"""


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def sample_lexicon():
    return parse_lexicon(SAMPLE_LEXICON_TEXT, name="sample_lexicon")


@pytest.fixture
def demo_lexicon():
    return load_lexicon(LEXICON_DIR / "sample_classes.lex")


@pytest.fixture
def profile_lexicon():
    return load_lexicon(LEXICON_DIR / "virality_profile.lex")


@pytest.fixture
def published_abstract() -> str:
    return (FIXTURES / "published_abstract.txt").read_text(encoding="utf-8")


@pytest.fixture
def fixture_records():
    return parse_records((FIXTURES / "records.jsonl").read_text(encoding="utf-8"))
