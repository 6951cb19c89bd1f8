import random
from fractions import Fraction

import pytest

from mufahris.analyzer import analyze_text
from mufahris.config import EngineConfig
from mufahris.errors import InvalidContext, ZeroLines
from mufahris.index import (
    DocumentModel,
    Facet,
    FacetSet,
    PedagogicalContext,
    SearchResult,
    build_model,
    compute_facets,
    feature,
    rank_by_verb_density,
    search,
    similarity,
)
from mufahris.lom import EducationalCategory, GeneralInfo, LomRecord, empty_record


def ctx(**kw):
    defaults = dict(
        level=1,
        category="morphology-conjugation",
        target_feature=feature("verb-tense", "past"),
        role="teacher",
    )
    defaults.update(kw)
    return PedagogicalContext(**defaults)


def make_model(text_id, lines, verbs, past=None, level=3, difficulty_rank=3, extra=None):
    attrs = {
        "lineCount": lines,
        "verbCount": verbs,
        "verbCountByTense.past": verbs if past is None else past,
        "level": level,
        "difficultyRank": difficulty_rank,
    }
    if extra:
        attrs.update(extra)
    return DocumentModel(
        text_id=text_id, title=f"t{text_id}", line_count=lines, verb_count=verbs, attributes=attrs
    )


# --- build_model ---


def test_build_model_exposes_profile_counts(lexicon, rain_text):
    a = analyze_text("0001", rain_text, lexicon)
    m = build_model(a, empty_record())
    assert m.attribute("verbCount") == 17
    assert m.attribute("lineCount") == 17
    assert m.attribute("verbCountByTense.past") == 15
    # 8 composites put the text past the very-difficult threshold
    assert m.attribute("difficulty") == "very difficult"


def test_build_model_empty_text(lexicon):
    a = analyze_text("x", "", lexicon)
    m = build_model(a, empty_record())
    assert m.attribute("verbCount") == 0
    assert m.attribute("interactivityType") == 0  # absent -> default 0
    assert m.attribute("difficulty") == "very easy"


def test_build_model_deterministic_rebuild(lexicon, bell_text):
    a1 = analyze_text("0002", bell_text, lexicon)
    a2 = analyze_text("0002", bell_text, lexicon)
    r = LomRecord(general=GeneralInfo(title="x", language="ar"))
    assert build_model(a1, r) == build_model(a2, r)


def test_build_model_prefers_record_difficulty(lexicon, rain_text):
    a = analyze_text("0001", rain_text, lexicon)
    r = LomRecord(educational=EducationalCategory(difficulty="easy"))
    assert build_model(a, r).attribute("difficulty") == "easy"


# --- compute_facets ---


def test_hard_facet_from_feature():
    fs = compute_facets(ctx())
    hard_attrs = {(f.attribute, f.operator, f.value) for f in fs.hard}
    assert ("verbCountByTense.past", ">=", 3) in hard_attrs
    assert ("level", ">=", 1) in hard_attrs


def test_difficulty_max_facet():
    fs = compute_facets(ctx(difficulty_max="medium"))
    assert ("difficultyRank", "<=", 2) in {(f.attribute, f.operator, f.value) for f in fs.hard}


def test_soft_weights_sum_to_one():
    fs = compute_facets(ctx())
    assert sum(f.weight for f in fs.soft) == 1


def test_invalid_level():
    with pytest.raises(InvalidContext):
        compute_facets(ctx(level=7))


def test_feature_level_mismatch():
    with pytest.raises(InvalidContext):
        compute_facets(ctx(level=1, target_feature=feature("composite-kind", "MourakebJar")))


def test_level3_composite_feature_ok():
    fs = compute_facets(
        ctx(level=3, category="sentence-composition", target_feature=feature("composite-kind", "MourakebJar"))
    )
    assert ("compositeCountByKind.MourakebJar", ">=", 3) in {
        (f.attribute, f.operator, f.value) for f in fs.hard
    }


def test_pattern_family_aggregates():
    m = make_model(
        "01", 10, 6,
        extra={"verbCountByPattern.form-I-u": 2, "verbCountByPattern.form-I-a": 3},
    )
    assert m.attribute("verbCountByPattern.form-I*") == 5


# --- similarity ---


def test_hard_facet_failure_excludes():
    fs = compute_facets(ctx())
    m = make_model("01", 10, 2, past=2)  # fewer than minOccurrences past verbs
    assert similarity(fs, m) is None


def test_full_soft_satisfaction_scores_one():
    fs = compute_facets(ctx())
    m = make_model("01", 5, 20, past=20)  # short text, dense feature
    assert similarity(fs, m) == Fraction(1)


def test_weighted_sum_direct_computation():
    # two facets with weights 1/2 each, satisfactions 1 and 1/2 -> 3/4
    facets = FacetSet(
        hard=(),
        soft=(
            Facet("soft", "a", ">=", 10, weight=Fraction(1, 2)),
            Facet("soft", "b", "<=", 10, weight=Fraction(1, 2)),
        ),
    )
    m = DocumentModel("01", "t", 20, 0, {"a": 10, "b": 20})
    # oracle: 1/2 * min(1, 10/10) + 1/2 * (10/max(20,10)) = 1/2 + 1/4
    assert similarity(facets, m) == Fraction(3, 4)


def test_similarity_monotone_in_satisfaction():
    fs = compute_facets(ctx())
    lo = make_model("01", 10, 5, past=5)
    hi = make_model("01", 10, 8, past=8)
    assert similarity(fs, hi) >= similarity(fs, lo)


# --- ranking ---


def result(text_id, lines, verbs):
    return SearchResult(
        text_id=text_id,
        title="",
        line_count=lines,
        verb_count=verbs,
        verbs_per_line=Fraction(verbs, lines),
        score=Fraction(1),
    )


def test_fig10_order():
    rows = [result("0002", 17, 13), result("0001", 17, 17)]
    ranked = rank_by_verb_density(rows)
    assert [r.text_id for r in ranked] == ["0001", "0002"]
    assert ranked[0].verbs_per_line == Fraction(17, 17)
    assert ranked[1].verbs_per_line == Fraction(13, 17)


def test_tie_breaks_by_text_id():
    rows = [result("0009", 20, 10), result("0002", 10, 5)]
    ranked = rank_by_verb_density(rows)
    assert [r.text_id for r in ranked] == ["0002", "0009"]


def test_zero_lines_raises():
    bad = SearchResult("x", "", 0, 1, Fraction(0), Fraction(1))
    with pytest.raises(ZeroLines):
        rank_by_verb_density([bad])


def cross_multiplication_sort(rows):
    """Independent oracle: insertion sort with explicit a*d vs c*b tests."""
    out = []
    for row in rows:
        i = 0
        while i < len(out):
            a, b = row.verb_count, row.line_count
            c, d = out[i].verb_count, out[i].line_count
            # row ranks before out[i] iff a/b > c/d, i.e. a*d > c*b,
            # or equal ratio with smaller text id
            if a * d > c * b or (a * d == c * b and row.text_id < out[i].text_id):
                break
            i += 1
        out.insert(i, row)
    return out


def test_ranking_matches_cross_multiplication_oracle():
    rng = random.Random(42)
    rows = [
        result(f"{i:04d}", rng.randrange(1, 40), rng.randrange(0, 60)) for i in range(50)
    ]
    ranked = rank_by_verb_density(rows)
    oracle = cross_multiplication_sort(rows)
    assert [r.text_id for r in ranked] == [r.text_id for r in oracle]
    assert sorted(r.text_id for r in ranked) == sorted(r.text_id for r in rows)
    ratios = [Fraction(r.verb_count, r.line_count) for r in ranked]
    assert all(ratios[i] >= ratios[i + 1] for i in range(len(ratios) - 1))


# --- search ---


def brute_force_search(cp, corpus, config):
    """Oracle: evaluate every hard predicate directly, then sort with the
    cross-multiplication comparator."""
    facets = compute_facets(cp, config)
    kept = []
    for m in corpus:
        if all(f.holds(m) for f in facets.hard):
            kept.append(result(m.text_id, m.line_count, m.verb_count))
    return [r.text_id for r in cross_multiplication_sort(kept)]


def test_search_fig10_corpus(lexicon, rain_text, bell_text):
    models = []
    for tid, title, body in (
        ("0001", "تحت المطر", rain_text),
        ("0002", "دم الشهيد قصة من الصين", bell_text),
    ):
        a = analyze_text(tid, body, lexicon)
        models.append(build_model(a, LomRecord(general=GeneralInfo(title=title, language="ar"))))
    results = search(ctx(), models)
    assert [r.text_id for r in results] == ["0001", "0002"]
    assert [r.rank for r in results] == [1, 2]
    assert results[0].verbs_per_line == Fraction(17, 17)
    assert results[1].verbs_per_line == Fraction(13, 17)
    assert (results[0].line_count, results[0].verb_count) == (17, 17)
    assert (results[1].line_count, results[1].verb_count) == (17, 13)


def test_search_empty_corpus():
    assert search(ctx(), []) == ()


def test_search_matches_brute_force_oracle():
    config = EngineConfig()
    rng = random.Random(99)
    for _ in range(30):
        corpus = [
            make_model(
                f"{i:04d}",
                rng.randrange(1, 30),
                rng.randrange(0, 40),
                past=rng.randrange(0, 12),
                level=rng.choice((1, 2, 3)),
                difficulty_rank=rng.randrange(0, 5),
            )
            for i in range(rng.randrange(0, 10))
        ]
        cp = ctx(difficulty_max=rng.choice((None, "easy", "medium", "difficult")))
        got = [r.text_id for r in search(cp, corpus, config)]
        assert got == brute_force_search(cp, corpus, config)


def test_collection_members_satisfy_hard_facets():
    config = EngineConfig()
    rng = random.Random(5)
    corpus = [
        make_model(f"{i:04d}", rng.randrange(1, 30), rng.randrange(0, 40), past=rng.randrange(0, 12))
        for i in range(20)
    ]
    cp = ctx()
    facets = compute_facets(cp, config)
    kept = {r.text_id for r in search(cp, corpus, config)}
    for m in corpus:
        if m.text_id in kept:
            assert all(f.holds(m) for f in facets.hard)
        else:
            assert not all(f.holds(m) for f in facets.hard)


def test_search_deterministic():
    corpus = [make_model(f"{i:04d}", i + 1, i) for i in range(5)]
    assert search(ctx(), corpus) == search(ctx(), corpus)
