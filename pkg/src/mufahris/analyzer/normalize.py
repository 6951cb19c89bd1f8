"""Text normalization: NFC, tatweel removal, offset bookkeeping.

Diacritics are preserved on purpose: downstream verb-template matching and
case detection read them.  Alef/hamza variants are NOT folded for the same
reason.
"""

import unicodedata
from dataclasses import dataclass

from ..errors import InvalidEncoding
from .chars import TATWEEL, is_combining


@dataclass(frozen=True)
class NormalizedText:
    """NFC-normalized text plus a map back into the original string.

    ``offset_map[i]`` is the index in the original string of the character
    that produced normalized character ``i``.
    """

    content: str
    offset_map: tuple

    def original_offset(self, index: int) -> int:
        return self.offset_map[index]


def decode_utf8(data) -> str:
    """Decode bytes as strict UTF-8; validate str input the same way."""
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InvalidEncoding(f"not valid UTF-8: {exc}") from exc
    try:
        data.encode("utf-8")
    except UnicodeEncodeError as exc:
        raise InvalidEncoding(f"not encodable as UTF-8: {exc}") from exc
    return data


def _combining_sequences(s: str):
    """Split into (start, chunk) pairs of base char + trailing marks.

    NFC composition and reordering never cross a base-character boundary,
    so normalizing chunk by chunk equals normalizing the whole string while
    keeping per-chunk source offsets.
    """
    i, n = 0, len(s)
    while i < n:
        j = i + 1
        while j < n and is_combining(s[j]):
            j += 1
        yield i, s[i:j]
        i = j


def normalize(raw) -> NormalizedText:
    """Produce NFC-normalized, tatweel-free text with an offset map.

    Accepts str or UTF-8 bytes.  Diacritics survive; a haraka written on a
    tatweel re-attaches to the preceding letter when the tatweel goes.
    """
    text = decode_utf8(raw)
    out = []
    offsets = []
    for start, chunk in _combining_sequences(text):
        if chunk[0] == TATWEEL:
            # Drop the tatweel, keep any marks it carried.
            for k, ch in enumerate(chunk[1:], 1):
                out.append(ch)
                offsets.append(start + k)
            continue
        normed = unicodedata.normalize("NFC", chunk)
        if len(normed) == len(chunk):
            for k, ch in enumerate(normed):
                out.append(ch)
                offsets.append(start + k)
        else:
            # Composition changed the length; anchor every produced char
            # at the chunk start so offsets always land inside the source.
            for ch in normed:
                out.append(ch)
                offsets.append(start)
    return NormalizedText(content="".join(out), offset_map=tuple(offsets))
