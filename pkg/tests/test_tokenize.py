import unicodedata

from hypothesis import given
from hypothesis import strategies as st

from mufahris.analyzer import normalize, tokenize

arabic_chars = st.sampled_from(
    [chr(c) for c in range(0x0621, 0x064B)]
    + [chr(c) for c in range(0x064B, 0x0653)]
    + [" ", "\n", "،", "؛", "؟", ".", "!", '"']
)


def toks(text):
    return [t.text for t in tokenize(normalize(text))]


def test_two_word_sentence():
    assert toks("المطرُ غزيرٌ") == ["المطرُ", "غزيرٌ"]


def test_empty_input():
    assert toks("") == []


def character_class_oracle(text):
    """Independent reference: a character is punctuation iff its Unicode
    category is P*; tokens are maximal runs of non-space non-punctuation."""
    out = []
    word = ""
    for ch in text:
        if ch.isspace():
            if word:
                out.append(word)
                word = ""
        elif unicodedata.category(ch).startswith("P") and not unicodedata.combining(ch):
            if word:
                out.append(word)
                word = ""
            out.append(ch)
        else:
            word += ch
    if word:
        out.append(word)
    return out


def test_punctuation_split_matches_character_class_oracle():
    text = "جاء، ثم ذهب."
    expected = character_class_oracle(text)
    assert expected == ["جاء", "،", "ثم", "ذهب", "."]
    assert toks(text) == expected


@given(st.text(alphabet=arabic_chars, max_size=60))
def test_tokens_match_oracle(text):
    assert toks(text) == character_class_oracle(normalize(text).content)


@given(st.text(alphabet=arabic_chars, max_size=60))
def test_spans_cover_non_whitespace_exactly_once(text):
    n = normalize(text)
    tokens = tokenize(n)
    covered = []
    last_end = 0
    for t in tokens:
        assert t.start < t.end
        assert t.start >= last_end
        last_end = t.end
        covered.extend(range(t.start, t.end))
        assert n.content[t.start : t.end] == t.text
    non_ws = [i for i, ch in enumerate(n.content) if not ch.isspace()]
    assert covered == non_ws
