"""Sentence detection: nominal vs verbal units and their role bindings.

Sentences split at sentence-final punctuation or at a newline.  A sentence
is verbal iff its first token that is neither a particle nor punctuation
is a verb.  The subject of a verbal sentence is the first NOM-marked noun
after the verb, searched up to the next verb or punctuation mark; none
found means the subject pronoun is dropped and agreement lives on the verb.
"""

from dataclasses import dataclass
from typing import Optional

from .chars import SENTENCE_FINAL
from .lexicon import KhojaClass


@dataclass(frozen=True)
class Complement:
    kind: str          # place / time / other
    span: tuple


@dataclass(frozen=True)
class SentenceUnit:
    span: tuple
    kind: str                       # "nominal" | "verbal"
    token_indexes: tuple            # indexes into the token list
    mobtada_span: Optional[tuple] = None
    khabar_span: Optional[tuple] = None
    verb_index: Optional[int] = None
    subject_span: Optional[tuple] = None
    object_span: Optional[tuple] = None
    complements: tuple = ()

    @property
    def pro_drop(self) -> bool:
        return self.kind == "verbal" and self.subject_span is None


def _split_sentences(tokens, content):
    groups = []
    current = []
    for i, tok in enumerate(tokens):
        if current:
            prev = tokens[current[-1]]
            if "\n" in content[prev.span[1] : tok.span[0]]:
                groups.append(current)
                current = []
        current.append(i)
        if tok.is_punctuation and tok.surface in SENTENCE_FINAL:
            groups.append(current)
            current = []
    if current:
        groups.append(current)
    return [g for g in groups if any(not tokens[i].is_punctuation for i in g)]


def _noun_case(token) -> Optional[str]:
    features = token.features
    return getattr(features, "case_mark", None)


def detect_sentences(tokens, content: str) -> tuple:
    """Build sentence units over classified tokens.

    ``tokens`` are ArabicToken-like objects exposing ``word_class``,
    ``subclass``, ``features``, ``span``, ``is_punctuation``.
    """
    units = []
    for group in _split_sentences(tokens, content):
        words = [i for i in group if not tokens[i].is_punctuation]
        span = (tokens[group[0]].span[0], tokens[group[-1]].span[1])
        head = None
        for i in words:
            if tokens[i].word_class is not KhojaClass.PARTICLE:
                head = i
                break
        if head is not None and tokens[head].word_class is KhojaClass.VERB:
            units.append(_verbal_unit(tokens, group, words, span, head))
        else:
            units.append(_nominal_unit(tokens, group, words, span))
    return tuple(units)


def _verbal_unit(tokens, group, words, span, verb_index):
    subject_span = None
    object_span = None
    complements = []
    window_closed = False
    for i in group:
        if i <= verb_index:
            continue
        tok = tokens[i]
        if tok.is_punctuation or tok.word_class is KhojaClass.VERB:
            window_closed = True
        if tok.word_class is KhojaClass.NOUN:
            if tok.subclass == "adverbial":
                kind = "other"
                if tok.stem_entry is not None:
                    kind = tok.stem_entry.feature("adv", "other")
                complements.append(Complement(kind, tok.span))
                continue
            if window_closed:
                continue
            case = _noun_case(tok)
            if case == "NOM" and subject_span is None:
                subject_span = tok.span
            elif case == "ACC" and object_span is None:
                object_span = tok.span
    return SentenceUnit(
        span=span,
        kind="verbal",
        token_indexes=tuple(group),
        verb_index=verb_index,
        subject_span=subject_span,
        object_span=object_span,
        complements=tuple(complements),
    )


def _nominal_unit(tokens, group, words, span):
    mobtada_span = None
    khabar_span = None
    mobtada_index = None
    for i in words:
        if tokens[i].word_class is KhojaClass.NOUN:
            mobtada_index = i
            mobtada_span = tokens[i].span
            break
    if mobtada_index is not None:
        rest = [
            i for i in group if i > mobtada_index and not tokens[i].is_punctuation
        ]
        if rest:
            khabar_span = (tokens[rest[0]].span[0], tokens[rest[-1]].span[1])
    return SentenceUnit(
        span=span,
        kind="nominal",
        token_indexes=tuple(group),
        mobtada_span=mobtada_span,
        khabar_span=khabar_span,
    )
