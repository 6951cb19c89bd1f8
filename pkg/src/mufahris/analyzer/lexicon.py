"""Lexicon: bare-form lookup table plus the clitic inventories.

File format (UTF-8, tab-separated, ``#`` starts a comment line):

    bare<TAB>class<TAB>subclass<TAB>features<TAB>diacritized forms

``features`` is ``key=value`` pairs joined by ``;`` (may be empty); the
diacritized-forms column is a comma-separated list (may be empty).  Clitic
inventories are declared with directive rows::

    @proclitics<TAB>و ف ب ك ل ال س لل
    @enclitics<TAB>ه ها هم هن هما ك كم كن ي نا
"""

import importlib.resources
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path


class KhojaClass(str, Enum):
    """Five-way lexical taxonomy: noun, verb, particle, residual, punctuation."""

    NOUN = "noun"
    VERB = "verb"
    PARTICLE = "particle"
    RESIDUAL = "residual"
    PUNCTUATION = "punctuation"


SUBCLASSES = {
    KhojaClass.VERB: frozenset({"past", "present", "imperative"}),
    KhojaClass.NOUN: frozenset(
        {"common", "proper", "pronoun", "demonstrative", "relative", "adjective", "adverbial"}
    ),
    KhojaClass.PARTICLE: frozenset(
        {"preposition", "conjunction", "interrogative", "negation", "other"}
    ),
    KhojaClass.RESIDUAL: frozenset(),
    KhojaClass.PUNCTUATION: frozenset(),
}


@dataclass(frozen=True)
class LexEntry:
    bare: str
    word_class: KhojaClass
    subclass: str
    features: tuple = ()          # sorted (key, value) pairs
    forms: tuple = ()             # diacritized attested forms

    def feature(self, key: str, default=None):
        for k, v in self.features:
            if k == key:
                return v
        return default


@dataclass(frozen=True)
class Lexicon:
    entries: dict = field(default_factory=dict)   # bare -> tuple[LexEntry]
    proclitics: frozenset = frozenset()
    enclitics: frozenset = frozenset()

    def lookup(self, bare: str) -> tuple:
        return self.entries.get(bare, ())

    def entries_of(self, word_class: KhojaClass, subclass: str = None):
        """All entries of a class (optionally a subclass), in file order."""
        for group in self.entries.values():
            for entry in group:
                if entry.word_class is word_class and (
                    subclass is None or entry.subclass == subclass
                ):
                    yield entry

    def __len__(self):
        return sum(len(v) for v in self.entries.values())


def parse_lexicon(text: str) -> Lexicon:
    entries = {}
    proclitics = set()
    enclitics = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.split("\t")
        if cols[0] == "@proclitics":
            proclitics.update(cols[1].split())
            continue
        if cols[0] == "@enclitics":
            enclitics.update(cols[1].split())
            continue
        if len(cols) < 3:
            raise ValueError(f"lexicon line {lineno}: expected at least 3 columns")
        bare, cls_name, subclass = cols[0].strip(), cols[1].strip(), cols[2].strip()
        word_class = KhojaClass(cls_name)
        allowed = SUBCLASSES[word_class]
        if allowed and subclass not in allowed:
            raise ValueError(f"lexicon line {lineno}: bad subclass {subclass!r} for {cls_name}")
        features = ()
        if len(cols) > 3 and cols[3].strip():
            pairs = []
            for item in cols[3].split(";"):
                if not item.strip():
                    continue
                key, _, value = item.partition("=")
                pairs.append((key.strip(), value.strip()))
            features = tuple(sorted(pairs))
        forms = ()
        if len(cols) > 4 and cols[4].strip():
            forms = tuple(f.strip() for f in cols[4].split(",") if f.strip())
        entry = LexEntry(bare, word_class, subclass, features, forms)
        entries.setdefault(bare, []).append(entry)
    return Lexicon(
        entries={k: tuple(v) for k, v in entries.items()},
        proclitics=frozenset(proclitics),
        enclitics=frozenset(enclitics),
    )


def load_lexicon(path) -> Lexicon:
    return parse_lexicon(Path(path).read_text(encoding="utf-8"))


_BUNDLED = None


def bundled_lexicon() -> Lexicon:
    """The lexicon shipped with the package (cached; immutable)."""
    global _BUNDLED
    if _BUNDLED is None:
        data = importlib.resources.files("mufahris.data").joinpath("lexicon.tsv")
        _BUNDLED = parse_lexicon(data.read_text(encoding="utf-8"))
    return _BUNDLED
