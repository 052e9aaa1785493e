"""A g(n)-to-one, total, commutative, associative function by table replay.

The machine keeps one append-only table K mapping strings to their factor
multisets.  Evaluating the operation on ``(a, b)`` means processing every
input pair in pair-code order up to ``(a, b)``; each processed pair keys
its two arguments (if new) and keys a product string for the union of
their factor multisets (if new).  Because entries are never changed, the
table after processing pairs ``0..r`` is unique, and a value read from any
prefix of it is final.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .ambiguity import AmbiguityBound, BinaryOperation, LINEAR
from .errors import BudgetError, InvariantViolation, NonTerminationError
from .strings import (
    Multiset,
    cantor_pair,
    cantor_unpair,
    format_bitstring,
    multiset_encode,
    rank,
    unrank,
)

log = logging.getLogger(__name__)

DEFAULT_SEARCH_CEILING = 1 << 20
DEFAULT_PAIR_BUDGET = 5_000_000
LONG_OUTPUT_WARNING = 1 << 16


class KTable:
    """Append-only, key-functional, value-injective string -> multiset table."""

    def __init__(self):
        self.entries: list[tuple[str, Multiset]] = []
        self.key_index: dict[str, Multiset] = {}
        self.value_index: dict[Multiset, str] = {}

    def __len__(self):
        return len(self.entries)

    def __contains__(self, key):
        return key in self.key_index

    def get(self, key: str) -> Optional[Multiset]:
        return self.key_index.get(key)

    def key_of(self, value: Multiset) -> Optional[str]:
        return self.value_index.get(value)

    def append(self, key: str, value: Multiset) -> None:
        if key in self.key_index:
            raise InvariantViolation(f"key {key!r} already in table")
        if value in self.value_index:
            raise InvariantViolation(
                f"value {value!r} already held by {self.value_index[value]!r}")
        self.entries.append((key, value))
        self.key_index[key] = value
        self.value_index[value] = key

    def dump(self) -> str:
        return "".join(
            f"{i},{format_bitstring(k)},{multiset_encode(v)}\n"
            for i, (k, v) in enumerate(self.entries))


@dataclass
class GMachine:
    g: AmbiguityBound = LINEAR
    search_ceiling: int = DEFAULT_SEARCH_CEILING
    pair_budget: int = DEFAULT_PAIR_BUDGET
    table: KTable = field(default_factory=KTable)
    replay_cursor: int = 0
    # image -> number of processed pairs mapping to it
    outputs: Counter = field(default_factory=Counter)
    _free: dict[int, int] = field(default_factory=dict, repr=False)
    _min_len: dict[int, int] = field(default_factory=dict, repr=False)

    def get_factors(self, s: str) -> Multiset:
        value = self.table.get(s)
        if value is None:
            value = Multiset((s,))
            self.table.append(s, value)
        return value

    def _length_for(self, size: int) -> tuple[int, int]:
        """Least n with g(n) > 2**size - 2, and the candidates it cost."""
        if size in self._min_len:
            return self._min_len[size], 0
        threshold = (1 << size) - 2
        n = 0
        while self.g(n) <= threshold:
            n += 1
            if n >= self.search_ceiling:
                raise NonTerminationError(
                    f"g={self.g.name} never exceeds {threshold} within "
                    f"{self.search_ceiling} candidate lengths")
        self._min_len[size] = n
        return n, n

    def get_product(self, factors: Multiset) -> str:
        if len(factors) == 0:
            raise ValueError("get_product needs a nonempty multiset")
        key = self.table.key_of(factors)
        if key is not None:
            return key
        n, spent = self._length_for(len(factors))
        if n > LONG_OUTPUT_WARNING:
            log.warning("product of %d factors forces output length %d", len(factors), n)
        # shortlex-least unkeyed string of length >= n; per-length cursors
        # only move forward because keys are never removed
        while True:
            first = (1 << n) - 1
            r = max(self._free.get(n, first), first)
            end = first + (1 << n)
            while r < end and unrank(r) in self.table:
                r += 1
                spent += 1
                if spent > self.search_ceiling:
                    raise NonTerminationError(
                        f"no free product key found within {self.search_ceiling} candidates")
            self._free[n] = r
            if r < end:
                y = unrank(r)
                self.table.append(y, factors)
                return y
            n += 1
            spent += 1

    def _process(self, code: int) -> str:
        m, n = cantor_unpair(code)
        a, b = unrank(m), unrank(n)
        out = self.get_product(self.get_factors(a) | self.get_factors(b))
        self.outputs[out] += 1
        return out

    def step(self) -> str:
        if self.replay_cursor >= self.pair_budget:
            raise BudgetError(f"replay exceeds pair budget {self.pair_budget}")
        out = self._process(self.replay_cursor)
        self.replay_cursor += 1
        return out

    def replay_to(self, cursor: int) -> None:
        """Process pairs until ``replay_cursor == cursor``."""
        if cursor > self.pair_budget:
            raise BudgetError(f"cursor {cursor} exceeds pair budget {self.pair_budget}")
        while self.replay_cursor < cursor:
            self.step()

    def _known(self, a: str, b: str) -> Optional[str]:
        fa, fb = self.table.get(a), self.table.get(b)
        if fa is None or fb is None:
            return None
        return self.table.key_of(fa | fb)

    def eval(self, a: str, b: str) -> str:
        """Value of the operation on ``(a, b)``.

        Replays forward until the answer is already determined by the table
        (both arguments keyed and their union keyed) or until the pair
        itself has been processed, whichever comes first.
        """
        target = cantor_pair(rank(a), rank(b))
        while True:
            known = self._known(a, b)
            if known is not None:
                return known
            if self.replay_cursor > target:
                raise InvariantViolation(f"pair ({a!r}, {b!r}) processed but not keyed")
            self.step()

    def prfact(self, s: str) -> Multiset:
        """Factor multiset of ``s``; replays until ``s`` is keyed."""
        while s not in self.table:
            self.step()
        return self.table.get(s)

    def as_operation(self) -> BinaryOperation:
        return BinaryOperation(
            f"gfun:{self.g.name}",
            self.eval,
            associative=True,
            commutative=True,
            preimage_rank_bound=self.preimage_rank_bound,
            ambiguity_bound=self.g,
        )

    def keyed_splits(self, image: str) -> Iterator[tuple[str, str]]:
        """Ordered pairs of current keys whose factor union is ``prfact(image)``."""
        whole = self.prfact(image)
        for left, right in _splits(whole):
            ka, kb = self.table.key_of(left), self.table.key_of(right)
            if ka is not None and kb is not None:
                yield ka, kb

    def preimage_rank_bound(self, image: str) -> Optional[int]:
        """Largest component rank over all preimages of ``image``.

        ``None`` if some proper sub-multiset of its factors is still unkeyed:
        its key will be chosen later and is unknown now.
        """
        whole = self.prfact(image)
        worst = -1
        for left, right in _splits(whole):
            for part in (left, right):
                k = self.table.key_of(part)
                if k is None:
                    return None
                worst = max(worst, rank(k))
        return worst if worst >= 0 else None


def _splits(whole: Multiset) -> Iterator[tuple[Multiset, Multiset]]:
    """All ordered (left, right) with both nonempty and left | right == whole."""
    counts: dict[str, int] = {}
    for e in whole.elements:
        counts[e] = counts.get(e, 0) + 1
    keys = list(counts)

    def rec(i, chosen):
        if i == len(keys):
            yield chosen
            return
        for c in range(counts[keys[i]] + 1):
            yield from rec(i + 1, chosen + [keys[i]] * c)

    total = len(whole)
    for chosen in rec(0, []):
        if 0 < len(chosen) < total:
            left = Multiset.from_iter(chosen)
            rest = list(whole.elements)
            for e in chosen:
                rest.remove(e)
            yield left, Multiset.from_iter(rest)


def fresh_machine(g: AmbiguityBound = LINEAR, **kw) -> GMachine:
    return GMachine(g=g, **kw)


def gfun_operation(g: AmbiguityBound = LINEAR, **kw) -> BinaryOperation:
    return GMachine(g=g, **kw).as_operation()
