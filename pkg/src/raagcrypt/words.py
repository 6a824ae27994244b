"""Words over signed group generators.

A letter is a ``(generator, sign)`` pair with sign +1 or -1; a word is a
tuple of letters. Words are plain immutable values with no attached
graph; which group a word lives in is decided at the operation that
consumes it.

Text format: whitespace-separated tokens, ``v`` for a generator and
``v^-1`` for its inverse. The empty line (or file) is the empty word.
"""

from __future__ import annotations

from typing import Iterable

Letter = tuple[str, int]
Word = tuple[Letter, ...]

__all__ = [
    "Letter",
    "Word",
    "WordError",
    "letter",
    "word",
    "free_reduce",
    "invert",
    "concat",
    "exponent_sums",
    "parse_word",
    "format_word",
]


class WordError(ValueError):
    """Raised for malformed letters, tokens, or unknown generators."""


def letter(generator: str, sign: int) -> Letter:
    if sign not in (1, -1):
        raise WordError(f"letter sign must be +1 or -1, got {sign!r}")
    if not generator:
        raise WordError("empty generator label")
    return (generator, sign)


def word(letters: Iterable[Letter]) -> Word:
    return tuple(letter(g, s) for g, s in letters)


def free_reduce(w: Word) -> Word:
    """Delete adjacent inverse pairs until none remain."""
    out: list[Letter] = []
    for g, s in w:
        if out and out[-1][0] == g and out[-1][1] == -s:
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


def invert(w: Word) -> Word:
    """The group inverse: reversed sequence with all signs flipped."""
    return tuple((g, -s) for g, s in reversed(w))


def concat(*ws: Word) -> Word:
    """Syntactic concatenation; performs no reduction."""
    out: list[Letter] = []
    for w in ws:
        out.extend(w)
    return tuple(out)


def exponent_sums(w: Word) -> dict[str, int]:
    """Signed occurrence count of each generator (the abelianized image)."""
    sums: dict[str, int] = {}
    for g, s in w:
        sums[g] = sums.get(g, 0) + s
    return sums


def parse_word(text: str) -> Word:
    out: list[Letter] = []
    for token in text.split():
        if token.endswith("^-1"):
            base = token[:-3]
            sign = -1
        else:
            base = token
            sign = 1
        if not base or "^" in base or "#" in base:
            raise WordError(f"malformed word token {token!r}")
        out.append((base, sign))
    return tuple(out)


def format_word(w: Word) -> str:
    return " ".join(g if s == 1 else f"{g}^-1" for g, s in w)
