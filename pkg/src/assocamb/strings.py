"""Bitstring arithmetic: shortlex ranking, Cantor pairing, multiset codec.

Bitstrings are plain ``str`` values over ``"0"``/``"1"``; the empty string
is the empty word.  Ordering everywhere is shortlex (length first, then
left to right with 0 < 1), which gives every string a finite rank.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Iterable, Iterator

EMPTY_TOKEN = "@e"


class DecodeError(ValueError):
    """Malformed multiset encoding.  ``position`` is the first bad index."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def is_bitstring(s: str) -> bool:
    return all(c in "01" for c in s)


def check_bitstring(s: str) -> str:
    if not isinstance(s, str) or not is_bitstring(s):
        raise ValueError(f"not a bitstring: {s!r}")
    return s


def shortlex_key(s: str) -> tuple[int, str]:
    return (len(s), s)


def rank(s: str) -> int:
    """Shortlex index of ``s``: the binary numeral ``1s`` minus one."""
    return int("1" + s, 2) - 1


def unrank(n: int) -> str:
    if n < 0:
        raise ValueError("rank must be non-negative")
    return bin(n + 1)[3:]


def strings_upto(max_rank: int) -> Iterator[str]:
    """All bitstrings with rank <= max_rank, in shortlex order."""
    for n in range(max_rank + 1):
        yield unrank(n)


def strings_of_length(n: int) -> Iterator[str]:
    start = (1 << n) - 1
    for r in range(start, start + (1 << n)):
        yield unrank(r)


def max_rank_of_length(n: int) -> int:
    """Rank of the last string of length ``n`` (``"1" * n``)."""
    return (1 << (n + 1)) - 2


def cantor_pair(m: int, n: int) -> int:
    return (m + n) * (m + n + 1) // 2 + n


def cantor_unpair(z: int) -> tuple[int, int]:
    w = (isqrt(8 * z + 1) - 1) // 2
    n = z - w * (w + 1) // 2
    return w - n, n


def pair_encode(a: str, b: str) -> str:
    return unrank(cantor_pair(rank(a), rank(b)))


def pair_decode(s: str) -> tuple[str, str]:
    m, n = cantor_unpair(rank(s))
    return unrank(m), unrank(n)


@dataclass(frozen=True, order=False)
class Multiset:
    """Finite multiset of bitstrings, stored sorted in shortlex order."""

    elements: tuple[str, ...] = ()

    @classmethod
    def of(cls, *items: str) -> "Multiset":
        return cls.from_iter(items)

    @classmethod
    def from_iter(cls, items: Iterable[str]) -> "Multiset":
        return cls(tuple(sorted(items, key=shortlex_key)))

    def __post_init__(self):
        els = self.elements
        for a, b in zip(els, els[1:]):
            if shortlex_key(a) > shortlex_key(b):
                raise ValueError("multiset elements must be in shortlex order")

    def __or__(self, other: "Multiset") -> "Multiset":
        return Multiset(tuple(sorted(self.elements + other.elements, key=shortlex_key)))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[str]:
        return iter(self.elements)

    def __contains__(self, s: object) -> bool:
        return s in self.elements

    def __repr__(self) -> str:
        inner = ", ".join(format_bitstring(e) for e in self.elements)
        return "{" + inner + "}_M"


def _encode_element(s: str) -> str:
    if s == "":
        return "10"
    return "".join(c + c for c in s)


def multiset_encode(m: Multiset) -> str:
    """Double every character, spell the empty word as ``10``, join with ``01``."""
    if len(m) == 0:
        raise ValueError("cannot encode the empty multiset")
    return "01".join(_encode_element(e) for e in m.elements)


def multiset_decode(s: str) -> Multiset:
    if len(s) % 2:
        raise DecodeError("odd length", len(s) - 1)
    if not s:
        raise DecodeError("empty encoding", 0)
    elements: list[str] = []
    current: list[str] = []
    saw_empty = False
    start = 0
    for pos in range(0, len(s), 2):
        block = s[pos:pos + 2]
        if block == "01":
            if not current and not saw_empty:
                raise DecodeError("empty element", pos)
            elements.append("".join(current))
            current, saw_empty, start = [], False, pos + 2
        elif block == "10":
            if current or saw_empty:
                raise DecodeError("empty-word marker inside element", pos)
            saw_empty = True
        elif block in ("00", "11"):
            if saw_empty:
                raise DecodeError("character after empty-word marker", pos)
            current.append(block[0])
        else:
            raise DecodeError(f"bad block {block!r}", pos)
    if not current and not saw_empty:
        raise DecodeError("trailing separator", start - 2)
    elements.append("".join(current))
    for i, (a, b) in enumerate(zip(elements, elements[1:])):
        if shortlex_key(a) > shortlex_key(b):
            raise DecodeError("elements not in canonical order", _element_offset(elements, i + 1))
    return Multiset(tuple(elements))


def _element_offset(elements: list[str], index: int) -> int:
    return sum(len(_encode_element(e)) + 2 for e in elements[:index])


def parse_bitstring(token: str) -> str:
    """CLI/CSV literal: ``@e`` is the empty word."""
    if token == EMPTY_TOKEN:
        return ""
    return check_bitstring(token)


def format_bitstring(s: str) -> str:
    return s if s else EMPTY_TOKEN
