"""Faceted retrieval: document models, context compilation, ranking.

A pedagogical context compiles to hard facets (must hold, or the text is
excluded) and soft facets (weighted satisfaction in [0,1]).  All scoring
and ranking arithmetic is exact rational; ranking follows verb density
(verbs per line) with ties broken by ascending text id.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .config import EngineConfig
from .errors import InvalidContext, ZeroLines
from .lom import DIFFICULTY_SCALE, LomRecord, difficulty_rank, infer_difficulty
from .profile import GrammaticalProfile

CATEGORIES = ("morphology-conjugation", "sentence-composition")
ROLES = ("teacher", "learner")

# Feature kinds per complexity level: token-level features are level 1,
# sentence-role features level 2, composite features level 3.
FEATURE_KINDS_BY_LEVEL = {
    1: ("token-class", "verb-tense", "verb-pattern", "noun-subclass", "particle-subclass"),
    2: ("sentence-kind",),
    3: ("composite-kind",),
}

_AGE_RANGE = re.compile(r"^(\d+)-(\d+)$")


@dataclass(frozen=True)
class FeatureSelector:
    """Conjunction of (kind, value) conditions over countable features."""

    conditions: tuple   # ((kind, value), ...)

    def __post_init__(self):
        if not self.conditions:
            raise InvalidContext("feature selector needs at least one condition")

    @property
    def primary(self):
        return self.conditions[0]

    def describe(self) -> str:
        return "&".join(f"{k}={v}" for k, v in self.conditions)


def feature(kind: str, value: str, *more) -> FeatureSelector:
    conditions = ((kind, value),) + tuple(more)
    return FeatureSelector(conditions)


_ATTRIBUTE_BY_KIND = {
    "token-class": {"verb": "verbCount", "noun": "nounCount", "particle": "particleCount"},
}


def feature_attribute(kind: str, value: str) -> str:
    """Flattened model attribute counting occurrences of a feature value."""
    if kind == "token-class":
        try:
            return _ATTRIBUTE_BY_KIND[kind][value]
        except KeyError:
            raise InvalidContext(f"unknown token class {value!r}")
    if kind == "verb-tense":
        return f"verbCountByTense.{value}"
    if kind == "verb-pattern":
        # bare family name sums its variants (form-I -> form-I-*)
        return f"verbCountByPattern.{value}*" if value.count("-") < 2 else f"verbCountByPattern.{value}"
    if kind == "noun-subclass":
        return f"nounCountBySubclass.{value}"
    if kind == "particle-subclass":
        return f"particleCountBySubclass.{value}"
    if kind == "sentence-kind":
        return {"nominal": "nominalSentenceCount", "verbal": "verbalSentenceCount"}.get(
            value
        ) or _bad_sentence_kind(value)
    if kind == "composite-kind":
        return f"compositeCountByKind.{value}"
    raise InvalidContext(f"unknown feature kind {kind!r}")


def _bad_sentence_kind(value):
    raise InvalidContext(f"unknown sentence kind {value!r}")


@dataclass(frozen=True)
class PedagogicalContext:
    level: int
    category: str
    target_feature: FeatureSelector
    role: str = "teacher"
    difficulty_max: Optional[str] = None
    age_range: Optional[str] = None


def validate_context(cp: PedagogicalContext) -> None:
    if cp.level not in (1, 2, 3):
        raise InvalidContext(f"level must be 1..3, got {cp.level!r}")
    if cp.category not in CATEGORIES:
        raise InvalidContext(f"unknown category {cp.category!r}")
    if cp.role not in ROLES:
        raise InvalidContext(f"unknown role {cp.role!r}")
    if cp.difficulty_max is not None and cp.difficulty_max not in DIFFICULTY_SCALE:
        raise InvalidContext(f"unknown difficulty {cp.difficulty_max!r}")
    if cp.age_range is not None and not _AGE_RANGE.match(cp.age_range):
        raise InvalidContext(f"bad age range {cp.age_range!r}")
    allowed = FEATURE_KINDS_BY_LEVEL[cp.level]
    for kind, value in cp.target_feature.conditions:
        if kind not in allowed:
            raise InvalidContext(
                f"feature kind {kind!r} is not a level-{cp.level} feature (allowed: {allowed})"
            )
        feature_attribute(kind, value)  # raises on unknown vocabulary


@dataclass(frozen=True)
class DocumentModel:
    """Flat attribute view of one text: profile counts + LOM educational fields."""

    text_id: str
    title: str
    line_count: int
    verb_count: int
    attributes: dict = field(default_factory=dict)

    def attribute(self, attr_id: str):
        if attr_id.endswith("*"):
            prefix = attr_id[:-1]
            return sum(v for k, v in self.attributes.items() if k.startswith(prefix))
        return self.attributes.get(attr_id, 0)


def build_model(annotated, record: LomRecord, config: EngineConfig = None) -> DocumentModel:
    """Derive the retrieval model from an annotated text plus its LOM record.

    Rebuildable at any time from those two values alone; difficulty falls
    back to the inferred value when the record does not set one.
    """
    config = config or EngineConfig()
    profile = annotated.profile
    attrs = dict(profile.as_dict())
    attrs["particleCount"] = profile.particle_count
    attrs["compositeCount"] = profile.composite_count
    noun_by_subclass = {}
    for tok in annotated.tokens:
        if tok.word_class.value == "noun":
            key = f"nounCountBySubclass.{tok.subclass}"
            noun_by_subclass[key] = noun_by_subclass.get(key, 0) + 1
    attrs.update(noun_by_subclass)
    e = record.educational
    difficulty = e.difficulty or infer_difficulty(profile, config)
    attrs["difficulty"] = difficulty
    attrs["difficultyRank"] = difficulty_rank(difficulty)
    for name, value in (
        ("interactivityType", e.interactivity_type),
        ("learningResourceType", e.learning_resource_type),
        ("interactivityLevel", e.interactivity_level),
        ("semanticDensity", e.semantic_density),
        ("intendedEndUserRole", e.intended_end_user_role),
        ("context", e.context),
        ("typicalAgeRange", e.typical_age_range),
        ("language", e.language),
    ):
        if value is not None:
            attrs[name] = value
    title = record.general.title or ""
    return DocumentModel(
        text_id=annotated.text_id,
        title=title,
        line_count=profile.line_count,
        verb_count=profile.verb_count,
        attributes=attrs,
    )


@dataclass(frozen=True)
class Facet:
    kind: str                 # "hard" | "soft"
    attribute: str
    operator: str             # ">=", "<=", "=", "contains"
    value: object
    weight: Optional[Fraction] = None   # soft facets only

    def holds(self, model: DocumentModel) -> bool:
        observed = model.attribute(self.attribute)
        if self.operator == ">=":
            return observed >= self.value
        if self.operator == "<=":
            return observed <= self.value
        if self.operator == "=":
            return observed == self.value
        if self.operator == "contains":
            return str(self.value) in str(observed)
        raise ValueError(f"unknown operator {self.operator}")

    def satisfaction(self, model: DocumentModel) -> Fraction:
        """Soft-facet satisfaction in [0,1].

        Density (>= target): min(1, observed/target).
        Brevity (<= target): target / max(observed, target).
        """
        observed = model.attribute(self.attribute)
        target = self.value
        if self.operator == ">=":
            if target <= 0:
                return Fraction(1)
            return min(Fraction(1), Fraction(observed, target))
        if self.operator == "<=":
            if observed <= target:
                return Fraction(1)
            return Fraction(target, observed)
        raise ValueError(f"no satisfaction rule for operator {self.operator}")


@dataclass(frozen=True)
class FacetSet:
    hard: tuple
    soft: tuple

    def __post_init__(self):
        total = sum(f.weight for f in self.soft) if self.soft else Fraction(1)
        if self.soft and total != 1:
            raise ValueError("soft facet weights must sum to 1")


def compute_facets(cp: PedagogicalContext, config: EngineConfig = None) -> FacetSet:
    """Compile a context into hard constraints and weighted preferences."""
    config = config or EngineConfig()
    validate_context(cp)
    hard = []
    for kind, value in cp.target_feature.conditions:
        hard.append(
            Facet("hard", feature_attribute(kind, value), ">=", config.min_occurrences)
        )
    if cp.difficulty_max is not None:
        hard.append(Facet("hard", "difficultyRank", "<=", difficulty_rank(cp.difficulty_max)))
    hard.append(Facet("hard", "level", ">=", cp.level))
    weights = config.normalized_weights()
    primary_kind, primary_value = cp.target_feature.primary
    soft = (
        Facet(
            "soft",
            feature_attribute(primary_kind, primary_value),
            ">=",
            config.density_target,
            weight=weights["featureDensity"],
        ),
        Facet("soft", "lineCount", "<=", config.brevity_target_lines, weight=weights["brevity"]),
    )
    return FacetSet(hard=tuple(hard), soft=soft)


def similarity(facets: FacetSet, model: DocumentModel) -> Optional[Fraction]:
    """Weighted facet satisfaction, or None when a hard facet excludes."""
    for facet in facets.hard:
        if not facet.holds(model):
            return None
    score = Fraction(0)
    for facet in facets.soft:
        score += facet.weight * facet.satisfaction(model)
    return score


@dataclass(frozen=True)
class SearchResult:
    text_id: str
    title: str
    line_count: int
    verb_count: int
    verbs_per_line: Fraction
    score: Fraction
    rank: int = 0


def rank_by_verb_density(results) -> list:
    """Sort by verbCount/lineCount descending with exact rational comparison.

    Ties break by ascending text id; the output is a permutation of the
    input.  Raises ZeroLines when density is undefined for a result.
    """
    for r in results:
        if r.line_count == 0:
            raise ZeroLines(f"text {r.text_id} has no lines")
    return sorted(
        results,
        key=lambda r: (-Fraction(r.verb_count, r.line_count), r.text_id),
    )


def search(cp: PedagogicalContext, corpus, config: EngineConfig = None) -> tuple:
    """Collection C: non-excluded models ranked by verb density."""
    config = config or EngineConfig()
    facets = compute_facets(cp, config)
    rows = []
    for model in corpus:
        score = similarity(facets, model)
        if score is None:
            continue
        rows.append(
            SearchResult(
                text_id=model.text_id,
                title=model.title,
                line_count=model.line_count,
                verb_count=model.verb_count,
                verbs_per_line=Fraction(model.verb_count, model.line_count)
                if model.line_count
                else Fraction(0),
                score=score,
            )
        )
    ranked = rank_by_verb_density(rows)
    return tuple(
        SearchResult(
            text_id=r.text_id,
            title=r.title,
            line_count=r.line_count,
            verb_count=r.verb_count,
            verbs_per_line=r.verbs_per_line,
            score=r.score,
            rank=i + 1,
        )
        for i, r in enumerate(ranked)
    )
