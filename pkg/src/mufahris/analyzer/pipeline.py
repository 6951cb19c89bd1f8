"""Full analysis pipeline: normalize, tokenize, segment, classify, structure.

``analyze_text`` is a pure function of (body, lexicon); identical inputs
produce identical annotations, which golden-file tests rely on.
"""

from dataclasses import dataclass
from typing import Optional

from ..errors import UnknownToken
from ..profile import GrammaticalProfile
from .chars import strip_diacritics
from .classify import Classification, NounFeatures, VerbFeatures, classify_token
from .composites import CompositeConstruct, detect_composites
from .lexicon import KhojaClass, Lexicon
from .normalize import NormalizedText, normalize
from .segment import segment
from .sentences import SentenceUnit, detect_sentences
from .tokenize import tokenize


@dataclass(frozen=True)
class ArabicToken:
    surface: str
    bare: str
    span: tuple
    proclitics: tuple = ()
    stem: str = ""
    enclitics: tuple = ()
    stem_surface: str = ""
    word_class: KhojaClass = KhojaClass.RESIDUAL
    subclass: str = ""
    features: object = None           # VerbFeatures | NounFeatures | None
    alternatives: tuple = ()
    stem_entry: object = None         # LexEntry backing the committed reading

    @property
    def is_punctuation(self) -> bool:
        return self.word_class is KhojaClass.PUNCTUATION


@dataclass(frozen=True)
class AnnotatedText:
    text_id: str
    normalized: NormalizedText
    tokens: tuple
    sentences: tuple
    composites: tuple
    profile: GrammaticalProfile


def _annotate_raw_token(raw, lexicon: Lexicon) -> ArabicToken:
    bare = strip_diacritics(raw.text)
    if raw.is_punctuation:
        return ArabicToken(
            surface=raw.text,
            bare=bare,
            span=(raw.start, raw.end),
            stem=bare,
            stem_surface=raw.text,
            word_class=KhojaClass.PUNCTUATION,
        )
    try:
        candidates = segment(raw.text, lexicon)
    except UnknownToken:
        candidates = ()
    candidate, classification = classify_token(candidates, lexicon)
    if classification is None:
        return ArabicToken(
            surface=raw.text,
            bare=bare,
            span=(raw.start, raw.end),
            stem=bare,
            stem_surface=raw.text,
            word_class=KhojaClass.RESIDUAL,
        )
    reading_entry = None
    if candidate.stem in lexicon.entries:
        for entry in lexicon.lookup(candidate.stem):
            if (
                entry.word_class is classification.word_class
                and entry.subclass == classification.subclass
            ):
                reading_entry = entry
                break
    return ArabicToken(
        surface=raw.text,
        bare=bare,
        span=(raw.start, raw.end),
        proclitics=candidate.proclitics,
        stem=candidate.stem,
        enclitics=candidate.enclitics,
        stem_surface=candidate.stem_surface,
        word_class=classification.word_class,
        subclass=classification.subclass,
        features=classification.features,
        alternatives=classification.alternatives,
        stem_entry=reading_entry,
    )


def _sentence_has_roles(unit: SentenceUnit) -> bool:
    if unit.kind == "nominal":
        return unit.mobtada_span is not None and unit.khabar_span is not None
    return (
        unit.subject_span is not None
        or unit.object_span is not None
        or bool(unit.complements)
    )


def compute_profile(normalized, tokens, sentences, composites) -> GrammaticalProfile:
    lines = [ln for ln in normalized.content.split("\n") if ln.strip()]
    words = [t for t in tokens if not t.is_punctuation]
    by_tense = {}
    by_pattern = {}
    particle_by_subclass = {}
    verb_count = noun_count = 0
    for tok in words:
        if tok.word_class is KhojaClass.VERB:
            verb_count += 1
            tense = tok.features.tense if isinstance(tok.features, VerbFeatures) else ""
            if tense:
                by_tense[tense] = by_tense.get(tense, 0) + 1
            pattern = getattr(tok.features, "pattern", None)
            if pattern is not None:
                by_pattern[pattern.pattern_id] = by_pattern.get(pattern.pattern_id, 0) + 1
        elif tok.word_class is KhojaClass.NOUN:
            noun_count += 1
        elif tok.word_class is KhojaClass.PARTICLE:
            particle_by_subclass[tok.subclass] = particle_by_subclass.get(tok.subclass, 0) + 1
    by_kind = {}
    for comp in composites:
        by_kind[comp.kind] = by_kind.get(comp.kind, 0) + 1
    if composites:
        level = 3
    elif any(_sentence_has_roles(u) for u in sentences):
        level = 2
    else:
        level = 1
    return GrammaticalProfile(
        line_count=len(lines),
        token_count=len(words),
        verb_count=verb_count,
        verb_count_by_tense=by_tense,
        verb_count_by_pattern=by_pattern,
        noun_count=noun_count,
        particle_count_by_subclass=particle_by_subclass,
        nominal_sentence_count=sum(1 for u in sentences if u.kind == "nominal"),
        verbal_sentence_count=sum(1 for u in sentences if u.kind == "verbal"),
        composite_count_by_kind=by_kind,
        level=level,
    )


def analyze_text(text_id: str, body, lexicon: Lexicon) -> AnnotatedText:
    """Run the whole pipeline over a UTF-8 body.

    Raises InvalidEncoding for undecodable input; every other token-level
    failure degrades to the Residual class.
    """
    normalized = normalize(body)
    raw_tokens = tokenize(normalized)
    tokens = tuple(_annotate_raw_token(raw, lexicon) for raw in raw_tokens)
    sentences = detect_sentences(tokens, normalized.content)
    composites = detect_composites(tokens)
    profile = compute_profile(normalized, tokens, sentences, composites)
    return AnnotatedText(
        text_id=text_id,
        normalized=normalized,
        tokens=tokens,
        sentences=sentences,
        composites=composites,
        profile=profile,
    )


_FEATURE_ORDER = ("tense", "person", "number", "gender")


def _features_field(tok: ArabicToken) -> str:
    feats = tok.features
    if isinstance(feats, VerbFeatures):
        parts = []
        for name in _FEATURE_ORDER:
            value = getattr(feats, name)
            if value is not None and value != "":
                parts.append(f"{name}={value}")
        if feats.pattern is not None:
            parts.append(f"pattern={feats.pattern.pattern_id}")
        return ";".join(parts)
    if isinstance(feats, NounFeatures):
        parts = []
        if feats.case_mark:
            parts.append(f"case={feats.case_mark}")
        if feats.determiner:
            parts.append("det=1")
        return ";".join(parts)
    return ""


def dump_tokens(annotated: AnnotatedText) -> str:
    """Line-oriented token dump: one tab-separated record per token.

    Columns: index, surface, bare, start, end, class, subclass,
    proclitics (+-joined), stem, enclitics (+-joined), features (k=v;...).
    Stable across runs for identical input; documented in docs/formats.md.
    """
    lines = []
    for i, tok in enumerate(annotated.tokens):
        lines.append(
            "\t".join(
                (
                    str(i),
                    tok.surface,
                    tok.bare,
                    str(tok.span[0]),
                    str(tok.span[1]),
                    tok.word_class.value,
                    tok.subclass,
                    "+".join(tok.proclitics),
                    tok.stem,
                    "+".join(tok.enclitics),
                    _features_field(tok),
                )
            )
        )
    return "\n".join(lines) + ("\n" if lines else "")


def dump_profile(profile: GrammaticalProfile) -> str:
    """Deterministic key<TAB>value dump of every profile count."""
    flat = profile.as_dict()
    return "".join(f"{key}\t{flat[key]}\n" for key in flat)
