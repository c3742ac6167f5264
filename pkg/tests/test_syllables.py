import pytest

from utils.syllables import count_syllables, is_complex
from utils.text_segmenter import Token, tokenize_text


def token(word):
    return Token(surface=word, normalized=word, syllables=count_syllables(word))


@pytest.mark.parametrize(
    "word, expected",
    [
        ("cat", 1),
        ("a", 1),
        ("article", 3),
        ("readability", 5),
        ("observe", 2),
        ("astronomy", 4),
        ("rhythm", 1),
        ("whale", 1),
        ("style", 1),
        ("able", 2),
        ("tables", 2),
        ("cycled", 2),
        ("the", 1),
        ("indices", 3),
        ("pages", 2),
        ("posted", 2),
        ("jumped", 1),
        ("supported", 3),
        ("responses", 3),
        ("examine", 3),
    ],
)
def test_count_syllables(word, expected):
    assert count_syllables(word) == expected


def test_no_vowel_means_no_syllable():
    assert count_syllables("bcd") == 0
    assert count_syllables("") == 0


@pytest.mark.parametrize("word", ["observe", "a", "cat", "style"])
def test_short_words_are_not_complex(word):
    assert not is_complex(token(word))


def test_astronomy_is_complex():
    assert is_complex(token("astronomy"))


@pytest.mark.parametrize("word", ["supported", "depending", "responses", "submitted", "indices"])
def test_inflection_only_complexity(word):
    assert is_complex(token(word))
    assert not is_complex(token(word), exclude_inflected=True)


@pytest.mark.parametrize("word", ["determining", "associated", "readability", "citations"])
def test_inflection_rule_keeps_truly_long_words(word):
    assert is_complex(token(word), exclude_inflected=True)


def test_complex_counts_on_published_abstract(published_abstract):
    doc = tokenize_text(published_abstract)
    assert sum(is_complex(t) for t in doc.tokens) == 32
    assert sum(is_complex(t, exclude_inflected=True) for t in doc.tokens) == 27
