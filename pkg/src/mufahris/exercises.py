"""Exercise generation, grading, and student sessions.

Four exercise types: cloze with a shared word bank, cloze with per-blank
options, verb-tense multiple choice, and extract-the-word question/answer.
Distractors always share the target's lexicon class (and subclass for
per-blank options), so every option list is type-homogeneous.  Generation
is deterministic for a fixed (text, parameters, seed); answer keys stay
server-side until grading.
"""

import hashlib
import random
import threading
from dataclasses import dataclass
from functools import partial
from typing import Optional

from .analyzer import KhojaClass, normalize, strip_diacritics
from .analyzer.classify import VerbFeatures
from .config import EngineConfig
from .errors import (
    CollectionExhausted,
    InsufficientDistractors,
    InvalidRequest,
    NoTargetTokens,
    SubclassAbsent,
    UnknownItemId,
)
from .index import FeatureSelector, feature

CLOZE_BANK = "ClozeBank"
CLOZE_SELECT = "ClozeSelect"
MULTIPLE_CHOICE = "MultipleChoice"
QUESTION_ANSWER = "QuestionAnswer"

EXERCISE_TYPES = (CLOZE_BANK, CLOZE_SELECT, MULTIPLE_CHOICE, QUESTION_ANSWER)

# Fixed verb-tense labels; the jussive label is a permanent distractor and
# never an answer key.
TENSE_LABELS = {"past": "فعل ماضي", "present": "فعل مضارع", "imperative": "فعل أمر"}
JUSSIVE_DISTRACTOR = "فعل مجزوم"
MCQ_OPTION_SET = ("فعل ماضي", "فعل مضارع", "فعل أمر", JUSSIVE_DISTRACTOR)

# Arabic prompt names for extractable subclasses (Fig-9 style prompts).
SUBCLASS_PROMPTS = {
    "pronoun": "الضمير",
    "demonstrative": "اسم الإشارة",
    "adverbial": "الظرف",
    "relative": "الاسم الموصول",
    "adjective": "الصفة",
    "preposition": "حرف الجر",
    "conjunction": "حرف العطف",
}


@dataclass(frozen=True)
class ExerciseItem:
    item_id: str
    prompt: str = ""
    prompt_span: Optional[tuple] = None
    options: tuple = ()
    answer_key: str = ""
    target_class: tuple = ("", "")     # (class value, subclass)


@dataclass(frozen=True)
class Exercise:
    exercise_id: str
    source_text_id: str
    type: str
    rendered_body: str
    items: tuple
    bank: tuple = ()
    diacritic_sensitive: bool = False


@dataclass(frozen=True)
class ItemVerdict:
    item_id: str
    given: str
    expected: str
    correct: bool

    @property
    def color_hint(self) -> str:
        return "green" if self.correct else "red"


@dataclass(frozen=True)
class GradingReport:
    per_item: tuple
    score: tuple               # (numerator, denominator)


def _exercise_id(*parts) -> str:
    digest = hashlib.sha256("\x1f".join(str(p) for p in parts).encode("utf-8"))
    return digest.hexdigest()[:12]


def blank_marker(n: int) -> str:
    return f"«___{n}»"


def _matches(token, selector: FeatureSelector) -> bool:
    for kind, value in selector.conditions:
        if kind == "token-class":
            if token.word_class.value != value:
                return False
        elif kind == "verb-tense":
            if token.word_class is not KhojaClass.VERB:
                return False
            if not isinstance(token.features, VerbFeatures) or token.features.tense != value:
                return False
        elif kind == "verb-pattern":
            if token.word_class is not KhojaClass.VERB:
                return False
            pattern = getattr(token.features, "pattern", None)
            if pattern is None or not pattern.pattern_id.startswith(value):
                return False
        elif kind == "noun-subclass":
            if token.word_class is not KhojaClass.NOUN or token.subclass != value:
                return False
        elif kind == "particle-subclass":
            if token.word_class is not KhojaClass.PARTICLE or token.subclass != value:
                return False
        else:
            raise InvalidRequest(f"feature kind {kind!r} does not select tokens")
    return True


def target_tokens(annotated, selector: FeatureSelector, clitic_free: bool = False):
    """Indexes of tokens matching the selector, leftmost first."""
    out = []
    for i, tok in enumerate(annotated.tokens):
        if tok.is_punctuation:
            continue
        if clitic_free and (tok.proclitics or tok.enclitics):
            continue
        if _matches(tok, selector):
            out.append(i)
    return out


def _render_with_blanks(annotated, token_indexes) -> str:
    content = annotated.normalized.content
    pieces = []
    cursor = 0
    for n, idx in enumerate(token_indexes, 1):
        start, end = annotated.tokens[idx].span
        pieces.append(content[cursor:start])
        pieces.append(blank_marker(n))
        cursor = end
    pieces.append(content[cursor:])
    return "".join(pieces)


def _distractor_pool(lexicon, word_class: KhojaClass, subclass=None, exclude=()):
    """Deterministically ordered distinct surface forms of a class."""
    excluded = {strip_diacritics(e) for e in exclude}
    pool = []
    seen = set()
    for entry in lexicon.entries_of(word_class, subclass):
        form = entry.forms[0] if entry.forms else entry.bare
        bare = strip_diacritics(form)
        if bare in excluded or bare in seen:
            continue
        seen.add(bare)
        pool.append(form)
    pool.sort()
    return pool


def generate_cloze_bank(
    annotated,
    lexicon,
    selector: FeatureSelector,
    max_blanks: int = 5,
    bank_extras: int = 2,
    seed: int = 0,
) -> Exercise:
    """Cloze with a shared word bank: answers plus same-class distractors."""
    targets = target_tokens(annotated, selector)[:max_blanks]
    if not targets:
        raise NoTargetTokens(f"no token matches {selector.describe()}")
    rng = random.Random(seed)
    items = []
    answers = []
    for n, idx in enumerate(targets, 1):
        tok = annotated.tokens[idx]
        answers.append(tok.surface)
        items.append(
            ExerciseItem(
                item_id=f"item{n}",
                prompt=blank_marker(n),
                prompt_span=tok.span,
                answer_key=tok.surface,
                target_class=(tok.word_class.value, tok.subclass),
            )
        )
    word_class = annotated.tokens[targets[0]].word_class
    pool = _distractor_pool(lexicon, word_class, exclude=answers)
    extras = rng.sample(pool, min(bank_extras, len(pool)))
    bank = answers + extras
    rng.shuffle(bank)
    return Exercise(
        exercise_id=_exercise_id(annotated.text_id, CLOZE_BANK, selector.describe(), max_blanks, bank_extras, seed),
        source_text_id=annotated.text_id,
        type=CLOZE_BANK,
        rendered_body=_render_with_blanks(annotated, targets),
        items=tuple(items),
        bank=tuple(bank),
    )


def generate_cloze_select(
    annotated,
    lexicon,
    selector: FeatureSelector,
    options_per_blank: int = 4,
    max_blanks: int = 5,
    seed: int = 0,
) -> Exercise:
    """Cloze where each blank carries its own options, all of the answer's
    (class, subclass); e.g. a demonstrative blank offers only demonstratives."""
    if options_per_blank < 1:
        raise InvalidRequest("options_per_blank must be >= 1")
    targets = target_tokens(annotated, selector, clitic_free=True)[:max_blanks]
    if not targets:
        raise NoTargetTokens(f"no clitic-free token matches {selector.describe()}")
    rng = random.Random(seed)
    items = []
    for n, idx in enumerate(targets, 1):
        tok = annotated.tokens[idx]
        needed = options_per_blank - 1
        pool = _distractor_pool(lexicon, tok.word_class, tok.subclass, exclude=[tok.surface])
        if len(pool) < needed:
            raise InsufficientDistractors(
                f"lexicon has {len(pool)} distractors of ({tok.word_class.value}, {tok.subclass}), need {needed}",
                word_class=tok.word_class.value,
                subclass=tok.subclass,
            )
        options = [tok.surface] + rng.sample(pool, needed)
        rng.shuffle(options)
        items.append(
            ExerciseItem(
                item_id=f"item{n}",
                prompt=blank_marker(n),
                prompt_span=tok.span,
                options=tuple(options),
                answer_key=tok.surface,
                target_class=(tok.word_class.value, tok.subclass),
            )
        )
    return Exercise(
        exercise_id=_exercise_id(
            annotated.text_id, CLOZE_SELECT, selector.describe(), options_per_blank, max_blanks, seed
        ),
        source_text_id=annotated.text_id,
        type=CLOZE_SELECT,
        rendered_body=_render_with_blanks(annotated, targets),
        items=tuple(items),
    )


def _enclosing_sentence(annotated, token_index):
    for unit in annotated.sentences:
        if token_index in unit.token_indexes:
            return unit
    return None


def generate_mcq(annotated, max_items: int = 4, seed: int = 0) -> Exercise:
    """Verb-tense multiple choice: one item per verb occurrence, prompt is
    the enclosing sentence with the verb highlighted."""
    verbs = target_tokens(annotated, feature("token-class", "verb"))[:max_items]
    if not verbs:
        raise NoTargetTokens("text contains no verb")
    rng = random.Random(seed)
    content = annotated.normalized.content
    items = []
    for n, idx in enumerate(verbs, 1):
        tok = annotated.tokens[idx]
        unit = _enclosing_sentence(annotated, idx)
        if unit is not None:
            s0, s1 = unit.span
            t0, t1 = tok.span
            prompt = content[s0:t0] + "«" + content[t0:t1] + "»" + content[t1:s1]
        else:
            prompt = "«" + tok.surface + "»"
        options = list(MCQ_OPTION_SET)
        rng.shuffle(options)
        tense = tok.features.tense if isinstance(tok.features, VerbFeatures) else "past"
        items.append(
            ExerciseItem(
                item_id=f"item{n}",
                prompt=prompt,
                prompt_span=tok.span,
                options=tuple(options),
                answer_key=TENSE_LABELS[tense],
                target_class=(KhojaClass.VERB.value, tok.subclass),
            )
        )
    return Exercise(
        exercise_id=_exercise_id(annotated.text_id, MULTIPLE_CHOICE, "verb-tense", max_items, seed),
        source_text_id=annotated.text_id,
        type=MULTIPLE_CHOICE,
        rendered_body=content,
        items=tuple(items),
    )


def generate_qa(annotated, target_subclasses, seed: int = 0) -> Exercise:
    """Extract-the-word items over one sentence containing every target."""
    targets = tuple(target_subclasses)
    if not targets:
        raise InvalidRequest("no target subclasses requested")
    for sub in targets:
        if sub not in SUBCLASS_PROMPTS:
            raise InvalidRequest(f"unsupported subclass {sub!r}")
    content = annotated.normalized.content
    best_unit = None
    best_found = None
    for unit in annotated.sentences:
        found = {}
        for i in unit.token_indexes:
            tok = annotated.tokens[i]
            if tok.is_punctuation:
                continue
            if tok.subclass in targets and tok.subclass not in found:
                found[tok.subclass] = i
        if len(found) == len(targets):
            best_unit, best_found = unit, found
            break
        if best_found is None or len(found) > len(best_found):
            best_unit, best_found = unit, found
    if best_found is None or len(best_found) < len(targets):
        missing = next(s for s in targets if not best_found or s not in best_found)
        raise SubclassAbsent(f"no sentence contains a {missing}", subclass=missing)
    items = []
    for n, sub in enumerate(targets, 1):
        idx = best_found[sub]
        tok = annotated.tokens[idx]
        items.append(
            ExerciseItem(
                item_id=f"item{n}",
                prompt=f"استخرج {SUBCLASS_PROMPTS[sub]} من الجملة",
                prompt_span=tok.span,
                answer_key=tok.stem_surface or tok.surface,
                target_class=(tok.word_class.value, tok.subclass),
            )
        )
    s0, s1 = best_unit.span
    return Exercise(
        exercise_id=_exercise_id(annotated.text_id, QUESTION_ANSWER, "+".join(targets), seed),
        source_text_id=annotated.text_id,
        type=QUESTION_ANSWER,
        rendered_body=content[s0:s1],
        items=tuple(items),
    )


# ---------------------------------------------------------------------------
# Grading
# ---------------------------------------------------------------------------


def _grading_form(text: str, sensitive: bool) -> str:
    normalized = normalize(text.strip()).content
    return normalized if sensitive else strip_diacritics(normalized)


def grade(exercise: Exercise, responses: dict) -> GradingReport:
    """Compare responses to answer keys under the normalization contract.

    Missing responses count as incorrect with given "".  Matching is
    diacritic-insensitive unless the exercise is flagged sensitive.
    """
    known = {item.item_id for item in exercise.items}
    for item_id in responses:
        if item_id not in known:
            raise UnknownItemId(f"exercise has no item {item_id!r}")
    verdicts = []
    for item in exercise.items:
        given = responses.get(item.item_id, "")
        correct = _grading_form(given, exercise.diacritic_sensitive) == _grading_form(
            item.answer_key, exercise.diacritic_sensitive
        )
        verdicts.append(ItemVerdict(item.item_id, given, item.answer_key, correct))
    numerator = sum(1 for v in verdicts if v.correct)
    return GradingReport(per_item=tuple(verdicts), score=(numerator, len(verdicts)))


# ---------------------------------------------------------------------------
# Sessions
# ---------------------------------------------------------------------------


class Session:
    """Draws exercises from a fixed collection without repetition.

    Single-writer: operations on one session are serialized by its lock.
    """

    def __init__(self, session_id: str, context, collection, seed: int = 0):
        self.session_id = session_id
        self.context = context
        self.collection = tuple(collection)
        self.used = set()
        self._rng = random.Random(seed)
        self._lock = threading.Lock()

    def remaining(self):
        return [e for e in self.collection if e.exercise_id not in self.used]

    def next_exercise(self) -> Exercise:
        with self._lock:
            candidates = self.remaining()
            if not candidates:
                raise CollectionExhausted(
                    f"all {len(self.collection)} exercises used in session {self.session_id}"
                )
            chosen = self._rng.choice(candidates)
            self.used.add(chosen.exercise_id)
            return chosen

    def find(self, exercise_id: str) -> Exercise:
        for e in self.collection:
            if e.exercise_id == exercise_id:
                return e
        raise UnknownItemId(f"session has no exercise {exercise_id!r}")


def build_collection(cp, ranked_text_ids, annotated_by_id, lexicon, config=None, seed=0):
    """Collection C for a context: exercises generated over matching texts.

    Morphology contexts yield tense MCQs plus both cloze types on the
    target feature; sentence-composition contexts yield extract-the-word
    exercises.  Texts that cannot host a type are skipped silently.
    """
    config = config or EngineConfig()
    token_kinds = {"token-class", "verb-tense", "verb-pattern", "noun-subclass", "particle-subclass"}
    if all(kind in token_kinds for kind, _ in cp.target_feature.conditions):
        cloze_selector = cp.target_feature
    else:
        cloze_selector = feature("token-class", "verb")
    collection = []
    for offset, text_id in enumerate(ranked_text_ids):
        annotated = annotated_by_id[text_id]
        text_seed = seed + offset
        attempts = []
        if cp.category == "morphology-conjugation":
            attempts = [
                partial(generate_mcq, annotated, seed=text_seed),
                partial(generate_cloze_bank, annotated, lexicon, cloze_selector, seed=text_seed),
                partial(generate_cloze_select, annotated, lexicon, cloze_selector, seed=text_seed),
            ]
        else:
            present = [
                sub
                for sub in ("pronoun", "demonstrative", "adverbial", "relative")
                if any(
                    not t.is_punctuation and t.subclass == sub for t in annotated.tokens
                )
            ]
            if present:
                attempts = [partial(generate_qa, annotated, present, seed=text_seed)]
        for make in attempts:
            try:
                collection.append(make())
            except (NoTargetTokens, InsufficientDistractors, SubclassAbsent, InvalidRequest):
                continue
    return tuple(collection)


# ---------------------------------------------------------------------------
# JSON views (documented wire shapes; keys withheld unless asked)
# ---------------------------------------------------------------------------


def exercise_to_json(exercise: Exercise, with_keys: bool = False) -> dict:
    items = []
    for item in exercise.items:
        row = {"itemId": item.item_id, "prompt": item.prompt}
        if item.options:
            row["options"] = list(item.options)
        if with_keys:
            row["answerKey"] = item.answer_key
            row["targetClass"] = list(item.target_class)
        items.append(row)
    out = {
        "exerciseId": exercise.exercise_id,
        "sourceTextId": exercise.source_text_id,
        "type": exercise.type,
        "renderedBody": exercise.rendered_body,
        "diacriticSensitive": exercise.diacritic_sensitive,
        "items": items,
    }
    if exercise.type == CLOZE_BANK:
        out["bank"] = list(exercise.bank)
    return out


def exercise_from_json(data: dict) -> Exercise:
    """Rebuild an exercise from its with-keys JSON form (CLI grading)."""
    items = tuple(
        ExerciseItem(
            item_id=row["itemId"],
            prompt=row.get("prompt", ""),
            options=tuple(row.get("options", ())),
            answer_key=row.get("answerKey", ""),
            target_class=tuple(row.get("targetClass", ("", ""))),
        )
        for row in data.get("items", ())
    )
    return Exercise(
        exercise_id=data["exerciseId"],
        source_text_id=data.get("sourceTextId", ""),
        type=data["type"],
        rendered_body=data.get("renderedBody", ""),
        items=items,
        bank=tuple(data.get("bank", ())),
        diacritic_sensitive=bool(data.get("diacriticSensitive", False)),
    )


def report_to_json(report: GradingReport) -> dict:
    return {
        "perItem": [
            {
                "itemId": v.item_id,
                "given": v.given,
                "expected": v.expected,
                "correct": v.correct,
                "colorHint": v.color_hint,
            }
            for v in report.per_item
        ],
        "score": {"numerator": report.score[0], "denominator": report.score[1]},
    }
