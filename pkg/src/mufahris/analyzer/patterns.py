"""Triliteral form-I verb templates and the stem matcher.

The bare triliteral verb conjugates on a shared past template with three
imperfect-vowel variants in the present:

    form-I-u   فَعَلَ / يَفْعُلُ   (e.g. نَصَرَ - يَنْصُرُ)
    form-I-i   فَعَلَ / يَفْعِلُ   (e.g. جَلَسَ - يَجْلِسُ)
    form-I-a   فَعَلَ / يَفْعَلُ   (e.g. مَنَعَ - يَمْنَعُ)

Templates are diacritized strings over the placeholder radicals ف ع ل.
Weak stems (containing alef/waw/yaa) never match; the analyzer records
them as pattern-unknown instead of guessing.
"""

from dataclasses import dataclass

from ..errors import NoMatch
from .chars import DIACRITICS, WEAK_LETTERS, strip_diacritics
from .lexicon import KhojaClass

PLACEHOLDERS = "فعل"


@dataclass(frozen=True)
class VerbPattern:
    pattern_id: str
    past_template: str
    present_template: str
    # Indices of the three radical slots within past_template.
    root_slots: tuple

    def past_form(self, root: str) -> str:
        return instantiate(self.past_template, root)

    def present_form(self, root: str) -> str:
        return instantiate(self.present_template, root)


def _slots(template: str) -> tuple:
    return tuple(i for i, ch in enumerate(template) if ch in PLACEHOLDERS)


FORM_I_U = VerbPattern("form-I-u", "فَعَلَ", "يَفْعُلُ", _slots("فَعَلَ"))
FORM_I_I = VerbPattern("form-I-i", "فَعَلَ", "يَفْعِلُ", _slots("فَعَلَ"))
FORM_I_A = VerbPattern("form-I-a", "فَعَلَ", "يَفْعَلُ", _slots("فَعَلَ"))

FORM_I_VARIANTS = (FORM_I_A, FORM_I_I, FORM_I_U)

PATTERNS_BY_ID = {p.pattern_id: p for p in FORM_I_VARIANTS}


def instantiate(template: str, root: str) -> str:
    """Substitute the three radicals into a template's placeholder slots."""
    if len(root) != 3:
        raise ValueError("root must have exactly 3 consonants")
    radicals = iter(root)
    return "".join(next(radicals) if ch in PLACEHOLDERS else ch for ch in template)


def is_strong(ch: str) -> bool:
    return ch not in WEAK_LETTERS and ch not in DIACRITICS


def _align(stem: str, template: str):
    """Align a (possibly partially voweled) stem against a template.

    Returns (root, complete) or None.  Template vowels may be absent from
    the stem; any vowel the stem does carry must agree.  ``complete`` is
    True when the stem realizes every template vowel.
    """
    root = []
    complete = True
    ti = si = 0
    while ti < len(template):
        tc = template[ti]
        if tc in DIACRITICS:
            if si < len(stem) and stem[si] == tc:
                si += 1
            elif si < len(stem) and stem[si] in DIACRITICS:
                return None  # conflicting vowel
            else:
                complete = False  # vowel omitted in the stem
            ti += 1
            continue
        if si >= len(stem):
            return None
        sc = stem[si]
        if sc in DIACRITICS:
            return None  # stem carries a mark where the template has none
        if tc in PLACEHOLDERS:
            if not is_strong(sc):
                return None
            root.append(sc)
        elif sc != tc:
            return None
        ti += 1
        si += 1
    if si != len(stem):
        return None
    return "".join(root), complete


@dataclass(frozen=True)
class PatternMatch:
    pattern: VerbPattern
    tense: str          # "past" or "present"
    root: str
    complete: bool      # stem carried every template vowel


def match_verb_pattern(stem: str, lexicon=None) -> tuple:
    """Every form-I variant compatible with the stem's skeleton and vowels.

    A bare past skeleton is compatible with all three variants; when a
    lexicon is supplied and attests the root with a pattern, the result is
    filtered down to the attested variant (e.g. منع -> form-I-a only).

    Raises NoMatch when no template fits.
    """
    matches = []
    seen = set()
    for pattern in FORM_I_VARIANTS:
        for tense, template in (("past", pattern.past_template),
                                ("present", pattern.present_template)):
            aligned = _align(stem, template)
            if aligned is None:
                continue
            root, complete = aligned
            key = (pattern.pattern_id, tense)
            if key in seen:
                continue
            seen.add(key)
            matches.append(PatternMatch(pattern, tense, root, complete))
    if lexicon is not None and matches:
        attested = set()
        for match in matches:
            for entry in lexicon.lookup(match.root):
                if entry.word_class is KhojaClass.VERB:
                    pattern_id = entry.feature("pattern")
                    if pattern_id:
                        attested.add(pattern_id)
        if attested:
            matches = [m for m in matches if m.pattern.pattern_id in attested]
    if not matches:
        skeleton = strip_diacritics(stem)
        raise NoMatch(f"no form-I template fits stem {stem!r} (skeleton {skeleton!r})")
    matches.sort(key=lambda m: (m.tense, m.pattern.pattern_id))
    return tuple(matches)
