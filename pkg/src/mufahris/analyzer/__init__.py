"""Arabic morphological analyzer: normalization through annotated text."""

from .chars import strip_diacritics
from .classify import (
    Classification,
    NounFeatures,
    Reading,
    VerbFeatures,
    classify_candidate,
    classify_token,
    detect_case,
    word_class_of,
)
from .composites import ATFI, IDHAFI, JAR, KINDS, NAATI, CompositeConstruct, detect_composites
from .lexicon import (
    KhojaClass,
    LexEntry,
    Lexicon,
    SUBCLASSES,
    bundled_lexicon,
    load_lexicon,
    parse_lexicon,
)
from .normalize import NormalizedText, decode_utf8, normalize
from .patterns import (
    FORM_I_VARIANTS,
    PATTERNS_BY_ID,
    PatternMatch,
    VerbPattern,
    instantiate,
    match_verb_pattern,
)
from .pipeline import (
    AnnotatedText,
    ArabicToken,
    analyze_text,
    compute_profile,
    dump_profile,
    dump_tokens,
)
from .segment import SegmentationCandidate, segment
from .sentences import Complement, SentenceUnit, detect_sentences
from .tokenize import RawToken, tokenize

__all__ = [
    "ATFI",
    "AnnotatedText",
    "ArabicToken",
    "Classification",
    "Complement",
    "CompositeConstruct",
    "FORM_I_VARIANTS",
    "IDHAFI",
    "JAR",
    "KINDS",
    "KhojaClass",
    "LexEntry",
    "Lexicon",
    "NAATI",
    "NormalizedText",
    "NounFeatures",
    "PATTERNS_BY_ID",
    "PatternMatch",
    "RawToken",
    "Reading",
    "SUBCLASSES",
    "SegmentationCandidate",
    "SentenceUnit",
    "VerbFeatures",
    "VerbPattern",
    "analyze_text",
    "bundled_lexicon",
    "classify_candidate",
    "classify_token",
    "compute_profile",
    "decode_utf8",
    "detect_case",
    "detect_composites",
    "detect_sentences",
    "dump_profile",
    "dump_tokens",
    "instantiate",
    "load_lexicon",
    "match_verb_pattern",
    "normalize",
    "parse_lexicon",
    "segment",
    "strip_diacritics",
    "tokenize",
    "word_class_of",
]
