"""Clitic segmentation: every admissible (proclitics, stem, enclitics) split.

A split is admissible when each clitic is in the lexicon's clitic tables
and the remaining stem is resolvable: a lexicon entry, a lexicon verb under
an agreement suffix, or a bare skeleton compatible with a form-I template.
Candidates are ordered deterministically: fewest clitics first, then
lexicographically by their parts.
"""

from dataclasses import dataclass

from ..errors import NoMatch, UnknownToken
from .chars import DIACRITICS, WEAK_LETTERS, strip_diacritics
from .classify import stem_readings
from .patterns import match_verb_pattern


@dataclass(frozen=True)
class SegmentationCandidate:
    proclitics: tuple        # bare clitic strings, outermost first
    stem: str                # bare stem
    enclitics: tuple         # bare clitic strings, innermost first
    stem_surface: str = ""   # diacritized slice of the token surface

    @property
    def clitic_count(self) -> int:
        return len(self.proclitics) + len(self.enclitics)

    def concatenated(self) -> str:
        return "".join(self.proclitics) + self.stem + "".join(self.enclitics)


def _prefix_splits(bare: str, proclitics):
    """All ways to peel proclitics off the front, as (clitics, rest) pairs."""
    results = [((), bare)]
    frontier = [((), bare)]
    while frontier:
        clitics, rest = frontier.pop()
        for p in proclitics:
            if rest.startswith(p) and len(rest) > len(p):
                nxt = (clitics + (p,), rest[len(p):])
                results.append(nxt)
                frontier.append(nxt)
    return results


def _suffix_splits(bare: str, enclitics):
    """All ways to peel enclitics off the back, as (rest, clitics) pairs."""
    results = [(bare, ())]
    frontier = [(bare, ())]
    while frontier:
        rest, clitics = frontier.pop()
        for e in enclitics:
            if rest.endswith(e) and len(rest) > len(e):
                nxt = (rest[: -len(e)], (e,) + clitics)
                results.append(nxt)
                frontier.append(nxt)
    return results


def _template_compatible(bare_stem: str) -> bool:
    """Skeleton check: 3 strong consonants, or a yaa-prefixed present shape."""
    if any(ch in DIACRITICS for ch in bare_stem):
        return False
    body = bare_stem
    if len(body) == 4 and body[0] == "ي":
        body = body[1:]
    return len(body) == 3 and all(ch not in WEAK_LETTERS for ch in body)


def _stem_resolvable(bare_stem: str, lexicon) -> bool:
    if lexicon.lookup(bare_stem):
        return True
    if stem_readings(bare_stem, bare_stem, lexicon, suffix_only=True):
        return True
    return _template_compatible(bare_stem)


def _surface_split(surface: str, bare_lengths):
    """Cut the diacritized surface at bare-character counts.

    Combining marks stay with the base character that precedes them, so a
    part's surface slice carries exactly its own diacritics.
    """
    parts = []
    pos = 0
    for length in bare_lengths:
        taken = 0
        end = pos
        while end < len(surface) and taken < length:
            if surface[end] not in DIACRITICS:
                taken += 1
            end += 1
        while end < len(surface) and surface[end] in DIACRITICS:
            end += 1
        parts.append(surface[pos:end])
        pos = end
    return parts


def segment(raw_token: str, lexicon) -> tuple:
    """All admissible splits of a (possibly diacritized) word token.

    Raises UnknownToken when no split resolves; callers fall back to the
    Residual class.
    """
    if not raw_token:
        raise ValueError("empty token")
    bare = strip_diacritics(raw_token)
    if not bare:
        raise UnknownToken(f"token {raw_token!r} has no letters")
    seen = set()
    candidates = []
    for pro, middle in _prefix_splits(bare, lexicon.proclitics):
        for stem, enc in _suffix_splits(middle, lexicon.enclitics):
            if not stem:
                continue
            key = (pro, stem, enc)
            if key in seen:
                continue
            seen.add(key)
            if not _stem_resolvable(stem, lexicon):
                continue
            lengths = [len(p) for p in pro] + [len(stem)] + [len(e) for e in enc]
            pieces = _surface_split(raw_token, lengths)
            stem_surface = pieces[len(pro)]
            candidates.append(
                SegmentationCandidate(pro, stem, enc, stem_surface=stem_surface)
            )
    if not candidates:
        raise UnknownToken(f"no segmentation for {raw_token!r}")
    candidates.sort(key=lambda c: (c.clitic_count, c.proclitics, c.stem, c.enclitics))
    return tuple(candidates)
