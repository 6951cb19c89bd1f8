import random

import pytest

from mufahris.analyzer import KhojaClass, analyze_text, strip_diacritics
from mufahris.errors import (
    CollectionExhausted,
    InsufficientDistractors,
    InvalidRequest,
    NoTargetTokens,
    SubclassAbsent,
    UnknownItemId,
)
from mufahris.exercises import (
    JUSSIVE_DISTRACTOR,
    MCQ_OPTION_SET,
    Exercise,
    ExerciseItem,
    Session,
    blank_marker,
    exercise_to_json,
    generate_cloze_bank,
    generate_cloze_select,
    generate_mcq,
    generate_qa,
    grade,
    report_to_json,
)
from mufahris.index import feature


@pytest.fixture(scope="module")
def rain(lexicon, rain_text):
    return analyze_text("0001", rain_text, lexicon)


@pytest.fixture(scope="module")
def bell(lexicon, bell_text):
    return analyze_text("0002", bell_text, lexicon)


# --- cloze bank ---


def test_bank_has_answers_plus_distractors(rain, lexicon):
    ex = generate_cloze_bank(rain, lexicon, feature("token-class", "verb"), max_blanks=5, bank_extras=2, seed=3)
    assert len(ex.items) == 5
    assert len(ex.bank) == 7
    answers = [item.answer_key for item in ex.items]
    bank = list(ex.bank)
    for answer in answers:
        assert answer in bank
        bank.remove(answer)    # multiset containment
    assert all(blank_marker(n) in ex.rendered_body for n in range(1, 6))


def test_single_target_caps_items(lexicon):
    a = analyze_text("t", "كتب الأولادُ دروسَهم", lexicon)
    ex = generate_cloze_bank(a, lexicon, feature("token-class", "verb"), max_blanks=5)
    assert len(ex.items) == 1


def test_cloze_bank_deterministic(rain, lexicon):
    e1 = generate_cloze_bank(rain, lexicon, feature("verb-tense", "past"), seed=11)
    e2 = generate_cloze_bank(rain, lexicon, feature("verb-tense", "past"), seed=11)
    assert e1 == e2
    assert exercise_to_json(e1, with_keys=True) == exercise_to_json(e2, with_keys=True)


def test_cloze_bank_no_targets(lexicon):
    a = analyze_text("t", "المطرُ غزيرٌ", lexicon)
    with pytest.raises(NoTargetTokens):
        generate_cloze_bank(a, lexicon, feature("token-class", "verb"))


def test_cloze_inverse_property(rain, bell, lexicon):
    """Re-inserting the answers reconstructs the normalized source text."""
    for annotated in (rain, bell):
        ex = generate_cloze_bank(annotated, lexicon, feature("token-class", "verb"), max_blanks=20, seed=5)
        body = ex.rendered_body
        for n, item in enumerate(ex.items, 1):
            body = body.replace(blank_marker(n), item.answer_key, 1)
        assert body == annotated.normalized.content


# --- cloze select ---


def test_demonstrative_options_all_demonstratives(bell, lexicon):
    ex = generate_cloze_select(bell, lexicon, feature("noun-subclass", "demonstrative"), options_per_blank=4, seed=1)
    assert ex.items
    for item in ex.items:
        assert item.target_class == ("noun", "demonstrative")
        assert item.answer_key in item.options
        assert len(item.options) == 4
        assert len(set(item.options)) == 4
        for option in item.options:
            entries = lexicon.lookup(strip_diacritics(option))
            assert any(
                e.word_class is KhojaClass.NOUN and e.subclass == "demonstrative" for e in entries
            )


def test_preposition_options_all_prepositions(rain, lexicon):
    ex = generate_cloze_select(rain, lexicon, feature("particle-subclass", "preposition"), options_per_blank=4, seed=2)
    for item in ex.items:
        for option in item.options:
            entries = lexicon.lookup(strip_diacritics(option))
            assert any(
                e.word_class is KhojaClass.PARTICLE and e.subclass == "preposition"
                for e in entries
            )


def test_options_per_blank_one_degenerate(rain, lexicon):
    ex = generate_cloze_select(rain, lexicon, feature("token-class", "verb"), options_per_blank=1, seed=0)
    for item in ex.items:
        assert item.options == (item.answer_key,)


def test_insufficient_distractors_names_class(bell, lexicon):
    with pytest.raises(InsufficientDistractors) as err:
        generate_cloze_select(bell, lexicon, feature("noun-subclass", "demonstrative"), options_per_blank=99)
    assert err.value.subclass == "demonstrative"


# --- MCQ ---


def test_mcq_past_and_present_keys(bell, lexicon):
    ex = generate_mcq(bell, max_items=4, seed=0)
    assert len(ex.items) == 4
    # first verb of the bell text is رأيتم (past), third is... order is leftmost
    assert ex.items[0].answer_key == "فعل ماضي"
    keys = [i.answer_key for i in ex.items]
    assert "فعل مضارع" in keys  # ينتصب
    for item in ex.items:
        assert set(item.options) == set(MCQ_OPTION_SET)
        assert item.answer_key in item.options
        assert item.answer_key != JUSSIVE_DISTRACTOR


def test_mcq_prompt_highlights_verb(bell):
    ex = generate_mcq(bell, max_items=1, seed=0)
    assert "«رأيتم»" in ex.items[0].prompt


def test_mcq_on_verbless_text(lexicon):
    a = analyze_text("t", "المطرُ غزيرٌ", lexicon)
    with pytest.raises(NoTargetTokens):
        generate_mcq(a)


# --- QA ---


def test_qa_fig9_sentence(lexicon):
    a = analyze_text("t", "أنا الآن مشغولٌ بهذا", lexicon)
    ex = generate_qa(a, ["pronoun", "adverbial", "demonstrative"], seed=0)
    keys = {item.target_class[1]: item.answer_key for item in ex.items}
    assert keys["pronoun"] == "أنا"
    assert keys["adverbial"] == "الآن"
    assert keys["demonstrative"] == "هذا"


def test_qa_empty_targets_rejected(bell):
    with pytest.raises(InvalidRequest):
        generate_qa(bell, [])


def test_qa_missing_subclass(lexicon):
    a = analyze_text("t", "المطرُ غزيرٌ", lexicon)
    with pytest.raises(SubclassAbsent) as err:
        generate_qa(a, ["demonstrative"])
    assert err.value.subclass == "demonstrative"


# --- grading ---


def make_exercise(n_items, sensitive=False):
    items = tuple(
        ExerciseItem(item_id=f"item{i+1}", answer_key=key, target_class=("verb", "past"))
        for i, key in enumerate(["نَصَرَ", "جَلَسَ", "مَنَعَ", "كَتَبَ"][:n_items])
    )
    return Exercise(
        exercise_id="x", source_text_id="t", type="MultipleChoice",
        rendered_body="", items=items, diacritic_sensitive=sensitive,
    )


def test_three_of_four_scores_3_4():
    ex = make_exercise(4)
    report = grade(ex, {"item1": "نصر", "item2": "جلس", "item3": "منع", "item4": "خطأ"})
    assert report.score == (3, 4)
    hints = [v.color_hint for v in report.per_item]
    assert hints.count("green") == 3
    assert hints.count("red") == 1


def test_all_correct():
    ex = make_exercise(2)
    report = grade(ex, {"item1": "نَصَرَ", "item2": "جَلَسَ"})
    assert report.score == (2, 2)
    assert all(v.correct for v in report.per_item)


def test_diacritic_insensitive_by_default():
    ex = make_exercise(1)
    assert grade(ex, {"item1": "نصر"}).score == (1, 1)


def test_diacritic_sensitive_flag():
    ex = make_exercise(1, sensitive=True)
    assert grade(ex, {"item1": "نصر"}).score == (0, 1)
    assert grade(ex, {"item1": "نَصَرَ"}).score == (1, 1)


def test_missing_response_is_incorrect():
    ex = make_exercise(2)
    report = grade(ex, {"item1": "نصر"})
    assert report.score == (1, 2)
    assert report.per_item[1].given == ""
    assert not report.per_item[1].correct


def test_unknown_item_id():
    ex = make_exercise(1)
    with pytest.raises(UnknownItemId):
        grade(ex, {"nosuch": "x"})


def test_grade_pure_function():
    ex = make_exercise(4)
    responses = {"item1": "نصر", "item2": "", "item3": "مَنَعَ", "item4": "n/a"}
    assert grade(ex, responses) == grade(ex, responses)


def test_report_json_shape():
    ex = make_exercise(2)
    data = report_to_json(grade(ex, {"item1": "نصر"}))
    assert data["score"] == {"numerator": 1, "denominator": 2}
    assert data["perItem"][0]["colorHint"] == "green"
    assert data["perItem"][1]["colorHint"] == "red"


# --- sessions ---


def dummy_exercise(i):
    return Exercise(
        exercise_id=f"ex{i}", source_text_id="t", type="MultipleChoice",
        rendered_body="", items=(ExerciseItem(item_id="item1", answer_key="x"),),
    )


def test_single_exercise_session():
    s = Session("s", None, [dummy_exercise(1)], seed=0)
    assert s.next_exercise().exercise_id == "ex1"
    with pytest.raises(CollectionExhausted):
        s.next_exercise()


def test_second_draw_avoids_first():
    s = Session("s", None, [dummy_exercise(1), dummy_exercise(2)], seed=0)
    first = s.next_exercise().exercise_id
    second = s.next_exercise().exercise_id
    assert {first, second} == {"ex1", "ex2"}
    with pytest.raises(CollectionExhausted):
        s.next_exercise()


def test_no_repeat_property():
    rng = random.Random(1234)
    for _ in range(50):
        n = rng.randrange(1, 51)
        s = Session("s", None, [dummy_exercise(i) for i in range(n)], seed=rng.randrange(10**6))
        seen = []
        for _ in range(n):
            seen.append(s.next_exercise().exercise_id)
        assert len(set(seen)) == n
        with pytest.raises(CollectionExhausted):
            s.next_exercise()


def test_session_deterministic_given_seed():
    draws1 = []
    draws2 = []
    for target in (draws1, draws2):
        s = Session("s", None, [dummy_exercise(i) for i in range(10)], seed=77)
        for _ in range(10):
            target.append(s.next_exercise().exercise_id)
    assert draws1 == draws2


# --- shared invariants ---


def test_seeds_never_change_answer_keys(rain, bell, lexicon):
    """Different seeds may vary options and bank order, never the keys."""
    for annotated in (rain, bell):
        for make in (
            lambda seed: generate_cloze_bank(annotated, lexicon, feature("token-class", "verb"), seed=seed),
            lambda seed: generate_cloze_select(annotated, lexicon, feature("verb-tense", "past"), seed=seed),
            lambda seed: generate_mcq(annotated, seed=seed),
        ):
            keys = None
            for seed in (0, 1, 99, 12345):
                ex = make(seed)
                got = [(i.item_id, i.answer_key, i.target_class) for i in ex.items]
                if keys is None:
                    keys = got
                else:
                    assert got == keys


def test_keys_withheld_in_default_json(rain, lexicon):
    ex = generate_cloze_bank(rain, lexicon, feature("token-class", "verb"), seed=0)
    payload = exercise_to_json(ex)
    assert "answerKey" not in str(payload)
    with_keys = exercise_to_json(ex, with_keys=True)
    assert all("answerKey" in item for item in with_keys["items"])


def test_answer_key_class_matches_target(rain, bell, lexicon):
    for annotated in (rain, bell):
        for make in (
            lambda: generate_cloze_bank(annotated, lexicon, feature("verb-tense", "past"), seed=1),
            lambda: generate_mcq(annotated, seed=1),
        ):
            ex = make()
            for item in ex.items:
                tok = next(
                    t for t in annotated.tokens if t.span == item.prompt_span
                )
                assert (tok.word_class.value, tok.subclass) == item.target_class
