"""Whitespace tokenizer that emits punctuation marks as their own tokens."""

from dataclasses import dataclass

from .chars import is_combining, is_punctuation
from .normalize import NormalizedText


@dataclass(frozen=True)
class RawToken:
    text: str
    start: int        # character offsets into the normalized content
    end: int
    is_punctuation: bool = False


def tokenize(normalized: NormalizedText) -> tuple:
    """Split into word and punctuation tokens.

    Spans jointly cover every non-whitespace character exactly once; each
    punctuation character is a token of its own.
    """
    tokens = []
    content = normalized.content
    start = None
    for i, ch in enumerate(content):
        if ch.isspace():
            if start is not None:
                tokens.append(RawToken(content[start:i], start, i))
                start = None
        elif is_punctuation(ch):
            if start is not None:
                tokens.append(RawToken(content[start:i], start, i))
                start = None
            tokens.append(RawToken(ch, i, i + 1, is_punctuation=True))
        else:
            if start is None:
                start = i
    if start is not None:
        tokens.append(RawToken(content[start:], start, len(content)))
    return tuple(tokens)
