"""Grammatical profile: the feature counts embedded in LOM metadata.

The profile is the bridge between the analyzer and retrieval: it stores
per-class, per-tense, per-pattern and per-construct counts plus the line
count, and exposes the verb density used to rank search results.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

TENSES = ("past", "present", "imperative")
COMPLEXITY_LEVELS = (1, 2, 3)


@dataclass(frozen=True)
class GrammaticalProfile:
    line_count: int = 0
    token_count: int = 0
    verb_count: int = 0
    verb_count_by_tense: dict = field(default_factory=dict)
    verb_count_by_pattern: dict = field(default_factory=dict)
    noun_count: int = 0
    particle_count_by_subclass: dict = field(default_factory=dict)
    nominal_sentence_count: int = 0
    verbal_sentence_count: int = 0
    composite_count_by_kind: dict = field(default_factory=dict)
    level: int = 1

    @property
    def verbs_per_line(self) -> Optional[Fraction]:
        """Exact verb density; undefined (None) for zero lines."""
        if self.line_count == 0:
            return None
        return Fraction(self.verb_count, self.line_count)

    @property
    def particle_count(self) -> int:
        return sum(self.particle_count_by_subclass.values())

    @property
    def composite_count(self) -> int:
        return sum(self.composite_count_by_kind.values())

    @property
    def pattern_unknown_verb_count(self) -> int:
        """Past/present verbs whose template stayed unresolved."""
        tensed = self.verb_count_by_tense.get("past", 0) + self.verb_count_by_tense.get(
            "present", 0
        )
        return max(0, tensed - sum(self.verb_count_by_pattern.values()))

    def is_zero(self) -> bool:
        return self.token_count == 0 and self.line_count == 0

    def issues(self) -> list:
        """Invariant violations as (path, message) pairs; empty when valid."""
        problems = []
        for name in (
            "line_count",
            "token_count",
            "verb_count",
            "noun_count",
            "nominal_sentence_count",
            "verbal_sentence_count",
        ):
            if getattr(self, name) < 0:
                problems.append((name, "negative count"))
        for name in (
            "verb_count_by_tense",
            "verb_count_by_pattern",
            "particle_count_by_subclass",
            "composite_count_by_kind",
        ):
            mapping = getattr(self, name)
            if any(v < 0 for v in mapping.values()):
                problems.append((name, "negative count"))
        if sum(self.verb_count_by_tense.values()) > self.verb_count:
            problems.append(("verb_count_by_tense", "sums past aggregate verb count"))
        if sum(self.verb_count_by_pattern.values()) > self.verb_count:
            problems.append(("verb_count_by_pattern", "sums past aggregate verb count"))
        if self.level not in COMPLEXITY_LEVELS:
            problems.append(("level", f"level must be one of {COMPLEXITY_LEVELS}"))
        return problems

    def as_dict(self) -> dict:
        """Flat, deterministic key->value view (maps become dotted keys)."""
        out = {
            "lineCount": self.line_count,
            "tokenCount": self.token_count,
            "verbCount": self.verb_count,
            "nounCount": self.noun_count,
            "nominalSentenceCount": self.nominal_sentence_count,
            "verbalSentenceCount": self.verbal_sentence_count,
            "level": self.level,
        }
        for prefix, mapping in (
            ("verbCountByTense", self.verb_count_by_tense),
            ("verbCountByPattern", self.verb_count_by_pattern),
            ("particleCountBySubclass", self.particle_count_by_subclass),
            ("compositeCountByKind", self.composite_count_by_kind),
        ):
            for key in sorted(mapping):
                out[f"{prefix}.{key}"] = mapping[key]
        return out


def zero_profile() -> GrammaticalProfile:
    return GrammaticalProfile()
