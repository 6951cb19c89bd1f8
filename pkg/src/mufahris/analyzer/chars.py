"""Character classes for Arabic text processing.

All segmentation and matching in this package works on Unicode code points;
nothing here touches encodings.
"""

import unicodedata

# Short-vowel and syllable marks (harakat), U+064B..U+0652:
# fathatan, dammatan, kasratan, fatha, damma, kasra, shadda, sukun.
DIACRITICS = frozenset(chr(cp) for cp in range(0x064B, 0x0653))

FATHATAN = "ً"
DAMMATAN = "ٌ"
KASRATAN = "ٍ"
FATHA = "َ"
DAMMA = "ُ"
KASRA = "ِ"
SHADDA = "ّ"
SUKUN = "ْ"

# Tatweel (kashida) stretches letters for layout and carries no meaning.
TATWEEL = "ـ"

# Letters that block root-and-pattern template matching ("weak" radicals):
# alef, waw, yaa, alef maqsura, alef madda.  Hamza seats count as strong.
WEAK_LETTERS = frozenset("اويىآ")

# Sentence-final punctuation: Latin and Arabic full stops, question marks,
# exclamation mark, Arabic semicolon.
SENTENCE_FINAL = frozenset(".؟!؛?")

ARABIC_COMMA = "،"    # ،
ARABIC_SEMICOLON = "؛"  # ؛
ARABIC_QUESTION = "؟"   # ؟


def is_diacritic(ch: str) -> bool:
    return ch in DIACRITICS


def is_combining(ch: str) -> bool:
    """True for any combining mark (attaches to the preceding base char)."""
    return unicodedata.combining(ch) != 0


def is_punctuation(ch: str) -> bool:
    """True for characters emitted as standalone punctuation tokens."""
    if is_combining(ch):
        return False
    return unicodedata.category(ch).startswith("P")


def strip_diacritics(s: str) -> str:
    """Remove the harakat in U+064B..U+0652, leaving every other code point.

    Idempotent; the bare form of a fully voweled stem.
    """
    return "".join(ch for ch in s if ch not in DIACRITICS)
