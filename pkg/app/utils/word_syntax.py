# app/utils/word_syntax.py
import re
from typing import List, Sequence, Tuple

from app.core.errors import ParseError

SYLLABLE = re.compile(r"([A-Za-z][A-Za-z0-9_]*)(?:\^(-?[0-9]+))?$")


def parse_syllables(text: str) -> List[Tuple[str, int]]:
    """`a b^2 a^-1` -> [("a", 1), ("b", 2), ("a", -1)]; `e` alone is the empty word."""
    syllables = []
    pos = 0
    for chunk in text.split():
        pos = text.index(chunk, pos)
        if chunk == "e":
            continue
        match = SYLLABLE.match(chunk)
        if not match:
            raise ParseError(f"Bad syllable '{chunk}'", pos)
        syllables.append((match.group(1), int(match.group(2) or 1)))
    return syllables


def format_syllables(syllables: Sequence[Tuple[str, int]]) -> str:
    if not syllables:
        return "e"
    return " ".join(v if k == 1 else f"{v}^{k}" for v, k in syllables)


def parse_vector(text: str) -> Tuple[int, ...]:
    """`(2,-1)` -> (2, -1)"""
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ParseError(f"Expected a vector like (2,-1), got '{text}'")
    try:
        return tuple(int(part) for part in body[1:-1].split(","))
    except ValueError:
        raise ParseError(f"Vector coordinates must be integers: '{text}'")


def format_vector(v: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"
