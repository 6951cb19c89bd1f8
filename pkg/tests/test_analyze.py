from fractions import Fraction

from mufahris.analyzer import KhojaClass, analyze_text, dump_profile, dump_tokens
from mufahris.analyzer.classify import VerbFeatures


def recount_oracle(annotated):
    """Recompute every profile count by direct iteration."""
    words = [t for t in annotated.tokens if not t.is_punctuation]
    counts = {
        "line_count": len([ln for ln in annotated.normalized.content.split("\n") if ln.strip()]),
        "token_count": len(words),
        "verb_count": sum(1 for t in words if t.word_class is KhojaClass.VERB),
        "noun_count": sum(1 for t in words if t.word_class is KhojaClass.NOUN),
        "nominal_sentence_count": sum(1 for s in annotated.sentences if s.kind == "nominal"),
        "verbal_sentence_count": sum(1 for s in annotated.sentences if s.kind == "verbal"),
    }
    by_tense = {}
    by_pattern = {}
    for t in words:
        if t.word_class is KhojaClass.VERB and isinstance(t.features, VerbFeatures):
            by_tense[t.features.tense] = by_tense.get(t.features.tense, 0) + 1
            if t.features.pattern is not None:
                pid = t.features.pattern.pattern_id
                by_pattern[pid] = by_pattern.get(pid, 0) + 1
    particles = {}
    for t in words:
        if t.word_class is KhojaClass.PARTICLE:
            particles[t.subclass] = particles.get(t.subclass, 0) + 1
    by_kind = {}
    for c in annotated.composites:
        by_kind[c.kind] = by_kind.get(c.kind, 0) + 1
    counts.update(
        verb_count_by_tense=by_tense,
        verb_count_by_pattern=by_pattern,
        particle_count_by_subclass=particles,
        composite_count_by_kind=by_kind,
    )
    return counts


def assert_profile_matches_recount(annotated):
    expected = recount_oracle(annotated)
    p = annotated.profile
    for name, value in expected.items():
        assert getattr(p, name) == value, name


def test_rain_text_seed_counts(lexicon, rain_text):
    p = analyze_text("0001", rain_text, lexicon).profile
    assert p.line_count == 17
    assert p.verb_count == 17
    assert p.verbs_per_line == Fraction(1)


def test_bell_text_seed_counts(lexicon, bell_text):
    p = analyze_text("0002", bell_text, lexicon).profile
    assert p.line_count == 17
    assert p.verb_count == 13
    assert p.verbs_per_line == Fraction(13, 17)


def test_empty_input_zero_profile(lexicon):
    p = analyze_text("t", "", lexicon).profile
    assert p.line_count == 0
    assert p.token_count == 0
    assert p.verb_count == 0
    assert p.verbs_per_line is None
    assert p.is_zero()


def test_nominal_example_profile(lexicon):
    p = analyze_text("t", "المطرُ غزيرٌ", lexicon).profile
    assert p.line_count == 1
    assert p.verb_count == 0
    assert p.nominal_sentence_count == 1


def test_profile_equals_recount(lexicon, rain_text, bell_text):
    for body in (rain_text, bell_text, "المطرُ غزيرٌ", "أكلوا", ""):
        assert_profile_matches_recount(analyze_text("t", body, lexicon))


def test_profile_map_sums_bounded(lexicon, rain_text, bell_text):
    for body in (rain_text, bell_text):
        p = analyze_text("t", body, lexicon).profile
        assert sum(p.verb_count_by_tense.values()) <= p.verb_count
        assert sum(p.verb_count_by_pattern.values()) <= p.verb_count
        assert not p.issues()


def test_analysis_is_deterministic(lexicon, rain_text):
    a1 = analyze_text("x", rain_text, lexicon)
    a2 = analyze_text("x", rain_text, lexicon)
    assert a1 == a2
    assert dump_tokens(a1) == dump_tokens(a2)
    assert dump_profile(a1.profile) == dump_profile(a2.profile)


def test_token_spans_ordered_nonoverlapping(lexicon, rain_text, bell_text):
    for body in (rain_text, bell_text):
        a = analyze_text("t", body, lexicon)
        last_end = 0
        for tok in a.tokens:
            start, end = tok.span
            assert start >= last_end
            assert end > start
            assert a.normalized.content[start:end] == tok.surface
            last_end = end


def test_levels(lexicon):
    assert analyze_text("t", "كتاب", lexicon).profile.level == 1
    assert analyze_text("t", "المطرُ غزيرٌ", lexicon).profile.level == 2
    assert analyze_text("t", "على الأولادِ", lexicon).profile.level == 3


def test_token_dump_recounts_to_profile(lexicon, bell_text):
    """Re-parse the token dump and recount verbs; must equal the profile."""
    a = analyze_text("t", bell_text, lexicon)
    dump = dump_tokens(a)
    rows = [line.split("\t") for line in dump.splitlines()]
    assert len(rows) == len(a.tokens)
    verbs = sum(1 for r in rows if r[5] == "verb")
    assert verbs == a.profile.verb_count
    nouns = sum(1 for r in rows if r[5] == "noun")
    assert nouns == a.profile.noun_count
