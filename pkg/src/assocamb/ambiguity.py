"""Ambiguity bounds, brute-force preimage census, and growth profiles.

A census evaluates an operation on every pair in the rank box
``rank(x), rank(y) <= max_rank`` and groups the pairs by output.  A report
is only trusted for verdicts when it is *complete*: the operation must be
able to certify that no preimage of the image lies outside the box.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from math import isqrt
from typing import Callable, Iterable, Optional

from .errors import BudgetError
from .strings import (
    format_bitstring,
    max_rank_of_length,
    rank,
    shortlex_key,
    unrank,
)

DEFAULT_CENSUS_BUDGET = 4_000_000


@dataclass(frozen=True)
class AmbiguityBound:
    name: str
    evaluate: Callable[[int], int]
    unbounded: bool = True

    def __call__(self, n: int) -> int:
        return self.evaluate(n)


def _ceil_log2_plus2(n: int) -> int:
    # ceil(log2(n + 2))
    return (n + 1).bit_length()


def _ceil_sqrt(n: int) -> int:
    r = isqrt(n)
    return r + (r * r < n)


LINEAR = AmbiguityBound("linear", lambda n: n)
LOG = AmbiguityBound("log", _ceil_log2_plus2)
SQRT = AmbiguityBound("sqrt", _ceil_sqrt)

G_BOUNDS = {b.name: b for b in (LINEAR, LOG, SQRT)}


def constant_bound(c: int) -> AmbiguityBound:
    return AmbiguityBound(f"const{c}", lambda n: c, unbounded=False)


@dataclass(frozen=True)
class BinaryOperation:
    """A total operation on bitstrings plus what it declares about itself.

    ``preimage_rank_bound(image)`` returns a rank that no component of any
    preimage of ``image`` exceeds, or ``None`` when no such bound is known.
    ``output_bound`` is the ``(m, i)`` pair of the polynomial output-length
    premise: ``max(|x|,|y|) > m`` implies ``|op(x,y)| < max(|x|,|y|)**i``.
    """

    name: str
    apply: Callable[[str, str], str]
    associative: bool = False
    commutative: bool = False
    output_bound: Optional[tuple[int, int]] = None
    preimage_rank_bound: Optional[Callable[[str], Optional[int]]] = None
    ambiguity_bound: Optional[AmbiguityBound] = None

    def __call__(self, x: str, y: str) -> str:
        return self.apply(x, y)


def _length_bounded(image: str) -> int:
    # |op(x,y)| >= max(|x|,|y|): components are no longer than the image
    return max_rank_of_length(len(image))


concatenation = BinaryOperation(
    "concat",
    lambda x, y: x + y,
    associative=True,
    output_bound=(1, 2),
    preimage_rank_bound=_length_bounded,
    ambiguity_bound=AmbiguityBound("n+1", lambda n: n + 1),
)


def _shortlex_max(x: str, y: str) -> str:
    return x if shortlex_key(x) >= shortlex_key(y) else y


shortlex_max = BinaryOperation(
    "max",
    _shortlex_max,
    associative=True,
    commutative=True,
    output_bound=(1, 2),
    preimage_rank_bound=rank,
    # (x, t) and (t, x) for every x <= t, counted once for (t, t)
    ambiguity_bound=AmbiguityBound("2^(n+2)-3", lambda n: (1 << (n + 2)) - 3),
)

left_projection = BinaryOperation(
    "proj",
    lambda x, y: x,
    associative=True,
    output_bound=(1, 2),
    preimage_rank_bound=lambda image: None,
)

BUILTIN_OPS = {op.name: op for op in (concatenation, shortlex_max, left_projection)}


@dataclass(frozen=True)
class PreimageReport:
    image: str
    preimages: tuple[tuple[str, str], ...]
    search_bound: int
    complete: bool

    @property
    def count(self) -> int:
        return len(self.preimages)

    @classmethod
    def verified(cls, op: BinaryOperation, image: str, pairs: Iterable[tuple[str, str]],
                 search_bound: int, complete: bool) -> "PreimageReport":
        pairs = tuple(pairs)
        if len(set(pairs)) != len(pairs):
            raise ValueError(f"duplicate preimages for {image!r}")
        for x, y in pairs:
            if op(x, y) != image:
                raise ValueError(f"{op.name}({x!r}, {y!r}) does not map to {image!r}")
        return cls(image, pairs, search_bound, complete)


Census = dict  # image -> PreimageReport, in shortlex order of images


def is_complete(op: BinaryOperation, image: str, max_rank: int) -> bool:
    if op.preimage_rank_bound is None:
        return False
    bound = op.preimage_rank_bound(image)
    return bound is not None and bound <= max_rank


def _build_census(op, groups, max_rank, truncated):
    out = {}
    for image in sorted(groups, key=shortlex_key):
        complete = not truncated and is_complete(op, image, max_rank)
        out[image] = PreimageReport.verified(op, image, groups[image], max_rank, complete)
    return out


def preimage_census(op: BinaryOperation, max_rank: int,
                    budget: int = DEFAULT_CENSUS_BUDGET) -> Census:
    """Evaluate ``op`` on the whole rank box and group pairs by output.

    Raises ``BudgetError`` (with the completed prefix as ``partial``, every
    report marked incomplete) when the box holds more than ``budget`` pairs.
    """
    if max_rank < 0:
        raise ValueError("max_rank must be non-negative")
    inputs = [unrank(r) for r in range(max_rank + 1)]
    groups: dict[str, list[tuple[str, str]]] = {}
    done = 0
    for x in inputs:
        for y in inputs:
            if done >= budget:
                partial = _build_census(op, groups, max_rank, truncated=True)
                raise BudgetError(
                    f"census of {(max_rank + 1) ** 2} pairs exceeds budget {budget}", partial)
            groups.setdefault(op(x, y), []).append((x, y))
            done += 1
    return _build_census(op, groups, max_rank, truncated=False)


@dataclass(frozen=True)
class Verdict:
    passed: bool
    counterexample: Optional[str] = None
    count: Optional[int] = None
    bound: Optional[int] = None
    checked: int = 0


def check_h_to_one(census: Census, h: Callable[[int], int]) -> Verdict:
    """PASS iff every complete report has ``count <= h(len(image))``."""
    checked = 0
    for image in sorted(census, key=shortlex_key):
        report = census[image]
        if not report.complete:
            continue
        checked += 1
        limit = h(len(image))
        if report.count > limit:
            return Verdict(False, image, report.count, limit, checked)
    return Verdict(True, checked=checked)


@dataclass(frozen=True)
class ProfileRow:
    length: int
    max_count: int
    complete: bool


def profile_from_census(census: Census) -> list[ProfileRow]:
    by_len: dict[int, list[PreimageReport]] = {}
    for report in census.values():
        by_len.setdefault(len(report.image), []).append(report)
    rows = []
    for n in sorted(by_len):
        reports = by_len[n]
        full = [r.count for r in reports if r.complete]
        if full:
            rows.append(ProfileRow(n, max(full), True))
        else:
            rows.append(ProfileRow(n, max(r.count for r in reports), False))
    return rows


def ambiguity_profile(op: BinaryOperation, max_rank: int,
                      budget: int = DEFAULT_CENSUS_BUDGET) -> list[ProfileRow]:
    """Maximum preimage count per output length.

    Rows built from complete reports are flagged complete; a length with no
    complete report falls back to the largest partial count.
    """
    return profile_from_census(preimage_census(op, max_rank, budget))


def census_csv(census: Census, extra: Optional[dict[str, dict[str, object]]] = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    extra_cols = sorted({k for cols in (extra or {}).values() for k in cols})
    w.writerow(["output", "length", "count", "complete", *extra_cols])
    for image, r in census.items():
        cols = (extra or {}).get(image, {})
        w.writerow([format_bitstring(image), len(image), r.count, int(r.complete),
                    *(cols.get(c, "") for c in extra_cols)])
    return buf.getvalue()


def profile_csv(rows: list[ProfileRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["length", "max_count", "complete"])
    for row in rows:
        w.writerow([row.length, row.max_count, int(row.complete)])
    return buf.getvalue()
