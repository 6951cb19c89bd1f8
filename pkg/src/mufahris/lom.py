"""LOM metadata records with the embedded Arabic grammatical profile.

Models the General subset (identifier, title, language) plus the full
Educational category with its controlled vocabularies.  Every field is
optional: an empty record is valid.  Other LOM categories round-trip as
opaque XML fragments.  The grammatical profile lives as a namespaced
sub-tree inside Educational's description element (see docs/formats.md).
"""

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field, replace
from typing import Optional
from xml.sax.saxutils import escape

from .config import EngineConfig
from .errors import InvalidProfile, InvalidRecord, MalformedXml, SchemaViolation
from .profile import GrammaticalProfile

LOM_NS = "http://mufahris.dev/xml/lom"
PROFILE_NS = "http://mufahris.dev/xml/profile"

INTERACTIVITY_TYPES = ("active", "expositive", "mixed")
LEARNING_RESOURCE_TYPES = (
    "exercise",
    "simulation",
    "questionnaire",
    "diagram",
    "figure",
    "graph",
    "index",
    "slide",
    "table",
    "narrative text",
    "exam",
    "experiment",
    "problem statement",
    "self assessment",
    "presentation",
)
FIVE_SCALE = ("very low", "low", "medium", "high", "very high")
END_USER_ROLES = ("teacher", "learner")
CONTEXTS = ("school", "higher education", "training", "other")
DIFFICULTY_SCALE = ("very easy", "easy", "medium", "difficult", "very difficult")

_AGE_RANGE = re.compile(r"^(\d+)-(\d+)$")
_LANGUAGE = re.compile(r"^[A-Za-z]{2,3}(-[A-Za-z0-9]+)*$")
_DURATION = re.compile(r"^PT(?:(\d+)H)?(?:(\d+)M)?(?:(\d+)S)?$")


@dataclass(frozen=True)
class GeneralInfo:
    identifier: Optional[str] = None
    title: Optional[str] = None
    language: Optional[str] = None

    def is_empty(self):
        return self.identifier is None and self.title is None and self.language is None


@dataclass(frozen=True)
class EducationalCategory:
    interactivity_type: Optional[str] = None
    learning_resource_type: Optional[str] = None
    interactivity_level: Optional[str] = None
    semantic_density: Optional[str] = None
    intended_end_user_role: Optional[str] = None
    context: Optional[str] = None
    typical_age_range: Optional[str] = None
    difficulty: Optional[str] = None
    typical_learning_time: Optional[int] = None   # seconds
    description: Optional[GrammaticalProfile] = None
    language: Optional[str] = None

    def is_empty(self):
        return all(getattr(self, f.name) is None for f in _EDU_FIELDS)


_EDU_FIELDS = EducationalCategory.__dataclass_fields__.values()


def _canonical_fragment(fragment: str) -> str:
    """Normalize an opaque category fragment to a stable string form.

    Fragments are parsed in the LOM default namespace, so the same bytes
    always come back out of parse/serialize cycles.
    """
    try:
        wrapped = ET.fromstring(f'<lom xmlns="{LOM_NS}">{fragment}</lom>')
    except ET.ParseError as exc:
        raise MalformedXml(f"bad category fragment: {exc}") from exc
    children = list(wrapped)
    if len(children) != 1:
        raise MalformedXml("category fragment must be a single element")
    children[0].tail = None
    return ET.tostring(children[0], encoding="unicode")


@dataclass(frozen=True)
class LomRecord:
    general: GeneralInfo = field(default_factory=GeneralInfo)
    educational: EducationalCategory = field(default_factory=EducationalCategory)
    other_categories: tuple = ()

    def __post_init__(self):
        object.__setattr__(
            self,
            "other_categories",
            tuple(_canonical_fragment(f) for f in self.other_categories),
        )

    def is_empty(self):
        return (
            self.general.is_empty()
            and self.educational.is_empty()
            and not self.other_categories
        )


@dataclass(frozen=True)
class Issue:
    path: str
    code: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple = ()

    @property
    def valid(self) -> bool:
        return not self.issues


def empty_record() -> LomRecord:
    return LomRecord()


def _check_vocab(issues, path, value, vocabulary):
    if value is not None and value not in vocabulary:
        issues.append(Issue(path, "vocabulary", f"{value!r} not in {vocabulary}"))


def validate(record: LomRecord) -> ValidationReport:
    """Check vocabularies, age-range syntax and profile invariants.

    Absent fields never produce issues; an empty record is conforming.
    """
    issues = []
    g = record.general
    if g.language is not None and g.language != "ar":
        issues.append(Issue("general.language", "profile-language", "profile records are Arabic ('ar')"))
    e = record.educational
    _check_vocab(issues, "educational.interactivityType", e.interactivity_type, INTERACTIVITY_TYPES)
    _check_vocab(
        issues, "educational.learningResourceType", e.learning_resource_type, LEARNING_RESOURCE_TYPES
    )
    _check_vocab(issues, "educational.interactivityLevel", e.interactivity_level, FIVE_SCALE)
    _check_vocab(issues, "educational.semanticDensity", e.semantic_density, FIVE_SCALE)
    _check_vocab(issues, "educational.intendedEndUserRole", e.intended_end_user_role, END_USER_ROLES)
    _check_vocab(issues, "educational.context", e.context, CONTEXTS)
    _check_vocab(issues, "educational.difficulty", e.difficulty, DIFFICULTY_SCALE)
    if e.typical_age_range is not None:
        m = _AGE_RANGE.match(e.typical_age_range)
        if not m:
            issues.append(Issue("educational.typicalAgeRange", "syntax", "expected 'min-max'"))
        elif int(m.group(1)) > int(m.group(2)):
            issues.append(Issue("educational.typicalAgeRange", "order", "min exceeds max"))
    if e.typical_learning_time is not None and e.typical_learning_time < 0:
        issues.append(Issue("educational.typicalLearningTime", "negative", "duration must be >= 0"))
    if e.language is not None and not _LANGUAGE.match(e.language):
        issues.append(Issue("educational.language", "language-code", f"bad language code {e.language!r}"))
    if e.description is not None:
        for path, message in e.description.issues():
            issues.append(Issue(f"educational.description.{path}", "profile", message))
    return ValidationReport(tuple(issues))


def format_duration(seconds: int) -> str:
    h, rest = divmod(int(seconds), 3600)
    m, s = divmod(rest, 60)
    return f"PT{h}H{m}M{s}S"


def parse_duration(text: str) -> int:
    m = _DURATION.match(text.strip())
    if not m:
        raise MalformedXml(f"bad duration {text!r}")
    h, mi, s = (int(g) if g else 0 for g in m.groups())
    return h * 3600 + mi * 60 + s


# ---------------------------------------------------------------------------
# Serialization (hand-built for deterministic bytes)
# ---------------------------------------------------------------------------

_EDU_ELEMENTS = (
    ("interactivityType", "interactivity_type"),
    ("learningResourceType", "learning_resource_type"),
    ("interactivityLevel", "interactivity_level"),
    ("semanticDensity", "semantic_density"),
    ("intendedEndUserRole", "intended_end_user_role"),
    ("context", "context"),
    ("typicalAgeRange", "typical_age_range"),
    ("difficulty", "difficulty"),
)

_PROFILE_SCALARS = (
    ("lineCount", "line_count"),
    ("tokenCount", "token_count"),
    ("verbCount", "verb_count"),
    ("nounCount", "noun_count"),
    ("nominalSentenceCount", "nominal_sentence_count"),
    ("verbalSentenceCount", "verbal_sentence_count"),
    ("level", "level"),
)

_PROFILE_MAPS = (
    ("verbCountByTense", "verb_count_by_tense"),
    ("verbCountByPattern", "verb_count_by_pattern"),
    ("particleCountBySubclass", "particle_count_by_subclass"),
    ("compositeCountByKind", "composite_count_by_kind"),
)


def _profile_xml(profile: GrammaticalProfile, indent: str) -> list:
    lines = [f'{indent}<profile xmlns="{PROFILE_NS}">']
    inner = indent + "  "
    for tag, attr in _PROFILE_SCALARS:
        lines.append(f"{inner}<{tag}>{getattr(profile, attr)}</{tag}>")
    for tag, attr in _PROFILE_MAPS:
        mapping = getattr(profile, attr)
        if not mapping:
            lines.append(f"{inner}<{tag}/>")
            continue
        lines.append(f"{inner}<{tag}>")
        for key in sorted(mapping):
            lines.append(
                f'{inner}  <entry key="{escape(key, {chr(34): "&quot;"})}">{mapping[key]}</entry>'
            )
        lines.append(f"{inner}</{tag}>")
    lines.append(f"{indent}</profile>")
    return lines


def serialize_xml(record: LomRecord) -> bytes:
    """Deterministic UTF-8 LOM document; equal records yield equal bytes.

    Raises InvalidRecord when validation fails.
    """
    report = validate(record)
    if not report.valid:
        raise InvalidRecord("; ".join(f"{i.path}: {i.message}" for i in report.issues))
    lines = ['<?xml version="1.0" encoding="UTF-8"?>', f'<lom xmlns="{LOM_NS}">']
    g = record.general
    if not g.is_empty():
        lines.append("  <general>")
        for tag, value in (
            ("identifier", g.identifier),
            ("title", g.title),
            ("language", g.language),
        ):
            if value is not None:
                lines.append(f"    <{tag}>{escape(value)}</{tag}>")
        lines.append("  </general>")
    e = record.educational
    if not e.is_empty():
        lines.append("  <educational>")
        for tag, attr in _EDU_ELEMENTS:
            value = getattr(e, attr)
            if value is not None:
                lines.append(f"    <{tag}>{escape(value)}</{tag}>")
        if e.typical_learning_time is not None:
            lines.append(
                f"    <typicalLearningTime>{format_duration(e.typical_learning_time)}</typicalLearningTime>"
            )
        if e.description is not None:
            lines.append("    <description>")
            lines.extend(_profile_xml(e.description, "      "))
            lines.append("    </description>")
        if e.language is not None:
            lines.append(f"    <language>{escape(e.language)}</language>")
        lines.append("  </educational>")
    for fragment in record.other_categories:
        lines.append(f"  {fragment}")
    lines.append("</lom>")
    return ("\n".join(lines) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _parse_profile(elem, issues) -> GrammaticalProfile:
    values = {}
    maps = {}
    known_scalars = dict((tag, attr) for tag, attr in _PROFILE_SCALARS)
    known_maps = dict((tag, attr) for tag, attr in _PROFILE_MAPS)
    for child in elem:
        name = _local(child.tag)
        if name in known_scalars:
            values[known_scalars[name]] = int(child.text or 0)
        elif name in known_maps:
            counts = {}
            for entry in child:
                key = entry.get("key", "")
                counts[key] = int(entry.text or 0)
            maps[known_maps[name]] = counts
        else:
            issues.append(Issue(f"profile.{name}", "unknown-element", "unrecognized profile element"))
    return GrammaticalProfile(**values, **maps)


def parse_xml_with_issues(document) -> tuple:
    """Parse a LOM document; returns (record, issues).

    Unknown elements inside modeled categories are reported as issues,
    never fatal.  Unknown top-level categories are preserved opaquely.
    """
    if isinstance(document, bytes):
        document = document.decode("utf-8")
    try:
        root = ET.fromstring(document)
    except ET.ParseError as exc:
        raise MalformedXml(str(exc)) from exc
    if root.tag != f"{{{LOM_NS}}}lom":
        raise SchemaViolation(f"expected {{{LOM_NS}}}lom root, got {root.tag}")
    issues = []
    general = {}
    educational = {}
    fragments = []
    for category in root:
        name = _local(category.tag)
        if name == "general":
            for child in category:
                tag = _local(child.tag)
                if tag in ("identifier", "title", "language"):
                    general[tag] = child.text or ""
                else:
                    issues.append(Issue(f"general.{tag}", "unknown-element", "unrecognized element"))
        elif name == "educational":
            edu_tags = {tag: attr for tag, attr in _EDU_ELEMENTS}
            for child in category:
                tag = _local(child.tag)
                if tag in edu_tags:
                    educational[edu_tags[tag]] = child.text or ""
                elif tag == "typicalLearningTime":
                    educational["typical_learning_time"] = parse_duration(child.text or "")
                elif tag == "language":
                    educational["language"] = child.text or ""
                elif tag == "description":
                    profiles = [c for c in child if _local(c.tag) == "profile"]
                    if profiles:
                        educational["description"] = _parse_profile(profiles[0], issues)
                else:
                    issues.append(
                        Issue(f"educational.{tag}", "unknown-element", "unrecognized element")
                    )
        else:
            category.tail = None
            fragments.append(ET.tostring(category, encoding="unicode"))
    record = LomRecord(
        general=GeneralInfo(**general),
        educational=EducationalCategory(**educational),
        other_categories=tuple(fragments),
    )
    return record, issues


def parse_xml(document) -> LomRecord:
    record, _ = parse_xml_with_issues(document)
    return record


# ---------------------------------------------------------------------------
# Profile embedding and difficulty inference
# ---------------------------------------------------------------------------


def embed_profile(record: LomRecord, profile: GrammaticalProfile) -> LomRecord:
    """Return a copy with educational.description set to the profile."""
    problems = profile.issues()
    if problems:
        raise InvalidProfile("; ".join(f"{p}: {m}" for p, m in problems))
    return replace(record, educational=replace(record.educational, description=profile))


def extract_profile(record: LomRecord) -> Optional[GrammaticalProfile]:
    return record.educational.description


def infer_difficulty(profile: GrammaticalProfile, config: EngineConfig = None) -> str:
    """Monotone difficulty mapping from profile complexity.

    Empty text -> very easy; plain token-level text whose verbs all carry a
    known form-I pattern -> easy; sentence-role structure -> medium;
    composites or pattern-unknown verbs -> difficult, escalating to very
    difficult at the configured composite count.
    """
    config = config or EngineConfig()
    if profile.is_zero():
        return "very easy"
    if profile.pattern_unknown_verb_count > 0 or profile.composite_count > 0 or profile.level == 3:
        if profile.composite_count >= config.very_difficult_composites:
            return "very difficult"
        return "difficult"
    if profile.level == 2:
        return "medium"
    return "easy"


def difficulty_rank(value: str) -> int:
    return DIFFICULTY_SCALE.index(value)
