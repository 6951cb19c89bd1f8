"""Composite constructs over adjacent classified tokens.

Rules apply left to right, longest match first, and constructs never
overlap.  Adjacency means consecutive word tokens with no punctuation
in between.
"""

from dataclasses import dataclass

from .lexicon import KhojaClass

JAR = "MourakebJar"          # preposition + noun
IDHAFI = "MourakebIdhafi"    # head noun + genitive noun
ATFI = "MourakebAtfi"        # noun + waw conjunction + noun
NAATI = "MourakebNaati"      # noun + agreeing adjective

KINDS = (JAR, IDHAFI, ATFI, NAATI)


@dataclass(frozen=True)
class CompositeConstruct:
    kind: str
    member_spans: tuple       # ordered token spans
    token_indexes: tuple


def _case(token):
    return getattr(token.features, "case_mark", None)


def _determined(token):
    return bool(getattr(token.features, "determiner", False))


def _is_noun(token, *subclasses):
    if token.word_class is not KhojaClass.NOUN:
        return False
    return not subclasses or token.subclass in subclasses


_SUBSTANTIVE = ("common", "proper")


def _match_at(tokens, idxs, pos):
    """Try each rule at ``pos`` over the word-token index list."""
    t0 = tokens[idxs[pos]]
    nxt = tokens[idxs[pos + 1]] if pos + 1 < len(idxs) else None
    third = tokens[idxs[pos + 2]] if pos + 2 < len(idxs) else None

    # Coordination with a standalone waw token (3 members, longest first).
    if (
        third is not None
        and _is_noun(t0)
        and nxt.word_class is KhojaClass.PARTICLE
        and nxt.subclass == "conjunction"
        and nxt.bare == "و"
        and _is_noun(third)
    ):
        return ATFI, 3
    if nxt is None:
        return None
    # Coordination where the waw agglutinates to the second noun.
    if _is_noun(t0) and _is_noun(nxt) and "و" in nxt.proclitics:
        return ATFI, 2
    if t0.word_class is KhojaClass.PARTICLE and t0.subclass == "preposition" and _is_noun(nxt):
        return JAR, 2
    # Qualification: members agree in definiteness (and case when both marked).
    if _is_noun(t0, *_SUBSTANTIVE) and _is_noun(nxt, "adjective"):
        if _determined(t0) == _determined(nxt):
            c0, c1 = _case(t0), _case(nxt)
            if c0 is None or c1 is None or c0 == c1:
                return NAATI, 2
    # Annexation: bare head noun followed by a genitive noun.
    if (
        _is_noun(t0, *_SUBSTANTIVE)
        and not _determined(t0)
        and _is_noun(nxt, *_SUBSTANTIVE)
        and _case(nxt) == "GEN"
    ):
        return IDHAFI, 2
    return None


def detect_composites(tokens) -> tuple:
    constructs = []
    # Runs of word tokens uninterrupted by punctuation.
    run = []
    runs = []
    for i, tok in enumerate(tokens):
        if tok.is_punctuation:
            if run:
                runs.append(run)
                run = []
        else:
            run.append(i)
    if run:
        runs.append(run)
    for idxs in runs:
        pos = 0
        while pos < len(idxs):
            hit = _match_at(tokens, idxs, pos)
            if hit is None:
                pos += 1
                continue
            kind, width = hit
            members = idxs[pos : pos + width]
            constructs.append(
                CompositeConstruct(
                    kind=kind,
                    member_spans=tuple(tokens[i].span for i in members),
                    token_indexes=tuple(members),
                )
            )
            pos += width
    return tuple(constructs)
