"""Khoja-class assignment for segmented stems.

Resolution routes, in order: direct lexicon entry; lexicon verb base under
a subject-agreement suffix (the pro-drop route: the suffix carries person,
number and gender); form-I template match for stems the lexicon does not
know, accepted only when fully voweled.  Class ambiguity resolves by the
fixed priority Verb > Noun > Particle; the losing readings are retained.
"""

from dataclasses import dataclass
from typing import Optional

from .chars import (
    DAMMA,
    DAMMATAN,
    DIACRITICS,
    FATHA,
    FATHATAN,
    KASRA,
    KASRATAN,
    strip_diacritics,
)
from ..errors import NoMatch
from .lexicon import KhojaClass, LexEntry
from .patterns import PATTERNS_BY_ID, VerbPattern, match_verb_pattern


@dataclass(frozen=True)
class VerbFeatures:
    tense: str
    person: Optional[int] = None
    number: Optional[str] = None      # sg / dual / pl
    gender: Optional[str] = None      # masc / fem
    pattern: Optional[VerbPattern] = None


@dataclass(frozen=True)
class NounFeatures:
    case_mark: Optional[str] = None   # NOM / ACC / GEN
    determiner: bool = False


@dataclass(frozen=True)
class Reading:
    word_class: KhojaClass
    subclass: str
    tense: str = ""
    person: Optional[int] = None
    number: Optional[str] = None
    gender: Optional[str] = None
    pattern_id: Optional[str] = None
    entry: Optional[LexEntry] = None


@dataclass(frozen=True)
class Classification:
    word_class: KhojaClass
    subclass: str
    features: object = None           # VerbFeatures | NounFeatures | None
    alternatives: tuple = ()          # losing (class, subclass) readings


_CLASS_PRIORITY = {
    KhojaClass.VERB: 0,
    KhojaClass.NOUN: 1,
    KhojaClass.PARTICLE: 2,
    KhojaClass.RESIDUAL: 3,
}

# Past-tense subject suffixes with the agreement they encode
# (person, number, gender); longest first so e.g. تما wins over ا.
PAST_SUFFIXES = (
    ("تما", (2, "dual", None)),
    ("تم", (2, "pl", "masc")),
    ("تن", (2, "pl", "fem")),
    ("نا", (1, "pl", None)),
    ("وا", (3, "pl", "masc")),
    ("تا", (3, "dual", "fem")),
    ("ت", (3, "sg", "fem")),
    ("ن", (3, "pl", "fem")),
    ("ا", (3, "dual", "masc")),
)

# Present-tense subject suffixes on yaa-prefixed bases.
PRESENT_SUFFIXES = (
    ("ون", (3, "pl", "masc")),
    ("ان", (3, "dual", None)),
    ("ن", (3, "pl", "fem")),
)


def _int_or_none(value):
    return int(value) if value not in (None, "") else None


def _entry_reading(entry: LexEntry) -> Reading:
    if entry.word_class is KhojaClass.VERB:
        return Reading(
            word_class=KhojaClass.VERB,
            subclass=entry.subclass,
            tense=entry.subclass,
            person=_int_or_none(entry.feature("person")),
            number=entry.feature("number"),
            gender=entry.feature("gender"),
            pattern_id=entry.feature("pattern"),
            entry=entry,
        )
    return Reading(entry.word_class, entry.subclass, entry=entry)


def stem_readings(bare_stem: str, surface_stem: str, lexicon, suffix_only: bool = False):
    """All readings of a stem, ordered by resolution route then class priority.

    ``suffix_only`` restricts to the agreement-suffix route (used by the
    segmenter's resolvability check, which tests the other routes itself).
    """
    readings = []
    if not suffix_only:
        for entry in lexicon.lookup(bare_stem):
            readings.append((0, _entry_reading(entry)))
    # Accusative-indefinite alef: a noun's tanwin-fath seat (e.g. جرسًا).
    if bare_stem.endswith("ا") and len(bare_stem) > 2:
        for entry in lexicon.lookup(bare_stem[:-1]):
            if entry.word_class is KhojaClass.NOUN:
                readings.append((1, _entry_reading(entry)))
    for suffixes, tense in ((PAST_SUFFIXES, "past"), (PRESENT_SUFFIXES, "present")):
        for suffix, (person, number, gender) in suffixes:
            if not bare_stem.endswith(suffix):
                continue
            base = bare_stem[: -len(suffix)]
            if len(base) < 2:
                continue
            for entry in lexicon.lookup(base):
                if entry.word_class is KhojaClass.VERB and entry.subclass == tense:
                    readings.append(
                        (
                            1,
                            Reading(
                                word_class=KhojaClass.VERB,
                                subclass=tense,
                                tense=tense,
                                person=person,
                                number=number,
                                gender=gender,
                                pattern_id=entry.feature("pattern"),
                                entry=entry,
                            ),
                        )
                    )
    if not suffix_only and not readings:
        # Unknown stem: commit to Verb only on a fully voweled template match.
        try:
            matches = match_verb_pattern(surface_stem or bare_stem, lexicon)
        except NoMatch:
            matches = ()
        complete = [m for m in matches if m.complete]
        for tense in ("past", "present"):
            tense_matches = [m for m in complete if m.tense == tense]
            if not tense_matches:
                continue
            pattern_ids = {m.pattern.pattern_id for m in tense_matches}
            pattern_id = pattern_ids.pop() if len(pattern_ids) == 1 else None
            readings.append(
                (2, Reading(KhojaClass.VERB, tense, tense=tense, pattern_id=pattern_id))
            )
    readings.sort(key=lambda pair: (_CLASS_PRIORITY[pair[1].word_class], pair[0]))
    return [r for _, r in readings]


def detect_case(noun_surface: str) -> Optional[str]:
    """Case from the final letter's vowel mark: damma NOM, fatha ACC, kasra GEN.

    Tanwin counts; tanwin-fath seated on a final alef is read from the
    letter before the alef.  No mark (or sukun) means no case is set.
    """
    chunks = []
    for ch in noun_surface:
        if ch in DIACRITICS and chunks:
            chunks[-1][1].append(ch)
        elif ch not in DIACRITICS:
            chunks.append([ch, []])
    if not chunks:
        return None
    base, marks = chunks[-1]
    if not marks and base in "اى" and len(chunks) >= 2 and FATHATAN in chunks[-2][1]:
        return "ACC"
    mark_set = set(marks)
    if mark_set & {DAMMA, DAMMATAN}:
        return "NOM"
    if mark_set & {FATHA, FATHATAN}:
        return "ACC"
    if mark_set & {KASRA, KASRATAN}:
        return "GEN"
    return None


def _verb_features(reading: Reading) -> VerbFeatures:
    pattern = PATTERNS_BY_ID.get(reading.pattern_id) if reading.pattern_id else None
    if pattern is not None and reading.tense not in ("past", "present"):
        pattern = None
    person = reading.person
    number = reading.number
    gender = reading.gender
    if reading.entry is not None and person is None and reading.tense == "past":
        person, number, gender = 3, "sg", "masc"
    return VerbFeatures(reading.tense, person, number, gender, pattern)


def classify_candidate(candidate, lexicon) -> Optional[Classification]:
    """Commit one reading for a segmentation candidate, or None."""
    readings = stem_readings(candidate.stem, candidate.stem_surface, lexicon)
    if not readings:
        return None
    top = readings[0]
    if top.word_class is KhojaClass.VERB:
        features = _verb_features(top)
    elif top.word_class is KhojaClass.NOUN:
        features = NounFeatures(
            case_mark=detect_case(candidate.stem_surface or candidate.stem),
            determiner=any(p in ("ال", "لل") for p in candidate.proclitics),
        )
    else:
        features = None
    alternatives = tuple((r.word_class, r.subclass) for r in readings[1:])
    return Classification(top.word_class, top.subclass, features, alternatives)


def word_class_of(word: str, lexicon):
    """(class, subclass) the lexicon machinery assigns a standalone word.

    Resolves exactly like token classification: headword, agreement
    suffix, or fully voweled template.  None when nothing resolves.
    """
    bare = strip_diacritics(word)
    readings = stem_readings(bare, word, lexicon)
    if not readings:
        return None
    return (readings[0].word_class.value, readings[0].subclass)


def classify_token(candidates, lexicon):
    """First candidate (in segmentation order) that classifies, with its result.

    Returns (candidate, classification) or (None, None) when nothing
    resolves; the caller then falls back to Residual.
    """
    for candidate in candidates:
        classification = classify_candidate(candidate, lexicon)
        if classification is not None:
            return candidate, classification
    return None, None
