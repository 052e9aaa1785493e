"""Strong, total, associative function over a witness relation.

``sigma(s, t) = alpha(beta(s), beta(t))`` where ``beta`` routes strings
that start with 1 through the gate ``gamma``: a valid (instance, witness)
pair collapses to ``1 + instance``, anything else is tagged with a 0.
All hardness of inversion sits in the gate; the relations shipped here
are decidable in polynomial time, so only the algebra is being exercised.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Optional

from .ambiguity import AmbiguityBound, BinaryOperation, PreimageReport
from .errors import BudgetError
from .strings import (
    format_bitstring,
    max_rank_of_length,
    pair_decode,
    pair_encode,
    rank,
    strings_of_length,
)

DEFAULT_WIT_CEILING = 24


@dataclass(frozen=True)
class WitnessRelation:
    """Verifier, witness length ``rho`` (strictly increasing, rho(n) > n)
    and cap ``f`` on the number of witnesses per instance."""

    name: str
    verify: Callable[[str, str], bool]
    rho: Callable[[int], int]
    f: AmbiguityBound
    wit_ceiling: int = DEFAULT_WIT_CEILING
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def accepts(self, x: str, w: str) -> bool:
        return len(w) == self.rho(len(x)) and self.verify(x, w)

    def wit(self, x: str) -> frozenset[str]:
        """All witnesses for ``x`` by exhaustive search over length rho(|x|)."""
        hit = self._cache.get(x)
        if hit is not None:
            return hit
        n = self.rho(len(x))
        if n > self.wit_ceiling:
            raise BudgetError(f"witness length {n} exceeds ceiling {self.wit_ceiling}")
        found = frozenset(w for w in strings_of_length(n) if self.verify(x, w))
        self._cache[x] = found
        return found


def _parity_up_verify(x: str, w: str) -> bool:
    return w == x + "1" and x.count("1") % 2 == 1


PARITY_UP = WitnessRelation(
    "parity-up",
    _parity_up_verify,
    rho=lambda n: n + 1,
    f=AmbiguityBound("one", lambda n: 1, unbounded=False),
)


def _mod3_few_verify(x: str, w: str) -> bool:
    if len(w) != len(x) + 2 or not w.startswith(x):
        return False
    suffix = w[len(x):]
    if suffix == "11":
        return False
    return int(suffix, 2) < x.count("1") % 3 + 1


MOD3_FEW = WitnessRelation(
    "mod3-few",
    _mod3_few_verify,
    rho=lambda n: n + 2,
    f=AmbiguityBound("three", lambda n: 3, unbounded=False),
)

RELATIONS = {r.name: r for r in (PARITY_UP, MOD3_FEW)}


def wit(rel: WitnessRelation, x: str) -> frozenset[str]:
    return rel.wit(x)


def gamma(rel: WitnessRelation, d: str) -> str:
    x, w = pair_decode(d)
    if rel.accepts(x, w):
        return "1" + x
    return "0" + d


def beta(rel: WitnessRelation, c: str) -> str:
    if c == "":
        return "111"
    if c[0] == "1":
        return "0" + gamma(rel, c[1:])
    return "00" + c[3:]


def alpha(a: str, b: str) -> str:
    if len(a) < 2 or len(b) < 2:
        raise ValueError(f"alpha needs operands of length >= 2, got {a!r}, {b!r}")
    return ("0" + ("1" if b[0] == a[1] == "1" else "0")
            + ("1" if a[0] == b[1] == "1" else "0") + a[2:] + b[2:])


@dataclass(frozen=True)
class SigmaAOWF:
    relation: WitnessRelation

    def beta(self, c: str) -> str:
        return beta(self.relation, c)

    def __call__(self, s: str, t: str) -> str:
        return alpha(self.beta(s), self.beta(t))

    def as_operation(self) -> BinaryOperation:
        return BinaryOperation(
            f"aowf:{self.relation.name}",
            self,
            associative=True,
            preimage_rank_bound=self.preimage_rank_bound,
            ambiguity_bound=ambiguity_cap(self.relation),
        )

    def preimages(self, y: str) -> list[tuple[str, str]]:
        return sigma_preimages(self, y)

    def preimage_rank_bound(self, y: str) -> Optional[int]:
        pre = sigma_preimages(self, y)
        if not pre:
            return None
        return max(max(rank(s), rank(t)) for s, t in pre)


def sigma(machine: SigmaAOWF, s: str, t: str) -> str:
    return machine(s, t)


def ambiguity_cap(rel: WitnessRelation) -> AmbiguityBound:
    """(n - 2)(f(n - 2) + 9)^2, the per-image preimage cap."""
    return AmbiguityBound(
        f"(n-2)(f(n-2)+9)^2[{rel.name}]",
        lambda n: max(n - 2, 0) * (rel.f(max(n - 2, 0)) + 9) ** 2,
    )


def z_set(e_tail: str) -> set[str]:
    """The candidate set Z for a beta-image ``00 + e_tail``."""
    return ({"0", "00", "01"}
            | {"0" + x + y + e_tail for x in "01" for y in "01"}
            | {"1" + e_tail})


def beta_inverse(rel: WitnessRelation, e: str) -> set[str]:
    """Exact beta preimages of ``e``, from the three output shapes."""
    if len(e) < 2:
        return set()
    head, tail = e[:2], e[2:]
    if head == "11":
        return {""} if e == "111" else set()
    if head == "01":
        return {"1" + pair_encode(tail, w) for w in rel.wit(tail)}
    if head == "00":
        if tail:
            out = {"0" + x + y + tail for x in "01" for y in "01"}
        else:
            out = {"0", "00", "01", "000", "001", "010", "011"}
        if gamma(rel, tail) == "0" + tail:
            out.add("1" + tail)
        return out
    return set()


def beta_preimages(rel: WitnessRelation, e: str, len_cap: int) -> set[str]:
    """Brute force: every ``c`` with ``|c| <= len_cap`` and ``beta(c) == e``."""
    if len_cap > 22:
        raise BudgetError(f"len_cap {len_cap} too large for brute force")
    out = set()
    for n in range(len_cap + 1):
        for c in strings_of_length(n):
            if beta(rel, c) == e:
                out.add(c)
    return out


def _alpha_splits(y: str):
    """All (a, b) with alpha(a, b) == y."""
    if len(y) < 3 or y[0] != "0":
        return
    rest = y[3:]
    for cut in range(len(rest) + 1):
        a_tail, b_tail = rest[:cut], rest[cut:]
        for a1, a2, b1, b2 in product("01", repeat=4):
            if (b1 == a2 == "1") == (y[1] == "1") and (a1 == b2 == "1") == (y[2] == "1"):
                yield a1 + a2 + a_tail, b1 + b2 + b_tail


def sigma_preimages(machine: SigmaAOWF, y: str) -> list[tuple[str, str]]:
    """Exact preimage set of ``y`` via the structure of alpha and beta."""
    rel = machine.relation
    out = set()
    for a, b in _alpha_splits(y):
        left = beta_inverse(rel, a)
        if not left:
            continue
        for s in left:
            for t in beta_inverse(rel, b):
                out.add((s, t))
    return sorted(out, key=lambda p: (rank(p[0]), rank(p[1])))


# Rows of the preimage case table, keyed by the two-bit prefixes of
# (beta(s), beta(t)).  Each row names the set s and t must come from:
# Z (the eight-element candidate set), W (gate preimages of a witness
# pair) or E (only the empty string).
CASE_ROWS = {
    ("00", "00"): ("00", "Z", "Z"),
    ("00", "01"): ("00", "Z", "W"),
    ("01", "00"): ("00", "W", "Z"),
    ("01", "01"): ("00", "W", "W"),
    ("00", "11"): ("00", "Z", "E"),
    ("11", "00"): ("00", "E", "Z"),
    ("01", "11"): ("10", "W", "E"),
    ("11", "01"): ("01", "E", "W"),
    ("11", "11"): ("11", "E", "E"),
}


def case_label(a_head: str, b_head: str) -> str:
    y23, s_kind, t_kind = CASE_ROWS[(a_head, b_head)]
    return f"{y23}:{s_kind}{t_kind}"


def _in_kind(rel: WitnessRelation, kind: str, s: str, image: str) -> bool:
    tail = image[2:]
    if kind == "E":
        return s == ""
    if kind == "Z":
        return s in z_set(tail)
    return s.startswith("1") and any(s == "1" + pair_encode(tail, w) for w in rel.wit(tail))


@dataclass(frozen=True)
class CaseListing:
    image: str
    classes: dict[str, tuple[tuple[str, str], ...]]
    len_cap: int
    complete: bool

    @property
    def count(self) -> int:
        return sum(len(v) for v in self.classes.values())


class UnclassifiedPreimage(AssertionError):
    pass


def case_table_check(machine: SigmaAOWF, y: str, len_cap: int) -> CaseListing:
    """Brute-force the preimages of ``y`` up to ``len_cap`` and file each
    under exactly one row of the case table."""
    if len(y) < 3 or y[0] != "0":
        raise ValueError("case table needs an image starting with 0 of length >= 3")
    if len_cap > 11:
        raise BudgetError(f"len_cap {len_cap} too large for pairwise brute force")
    rel = machine.relation
    candidates = [c for n in range(len_cap + 1) for c in strings_of_length(n)]
    betas = {c: machine.beta(c) for c in candidates}
    classes: dict[str, list[tuple[str, str]]] = {}
    for s in candidates:
        a = betas[s]
        for t in candidates:
            b = betas[t]
            if alpha(a, b) != y:
                continue
            row = CASE_ROWS.get((a[:2], b[:2]))
            if row is None or row[0] != y[1:3]:
                raise UnclassifiedPreimage(f"({s!r}, {t!r}) matches no row for {y!r}")
            _, s_kind, t_kind = row
            if not (_in_kind(rel, s_kind, s, a) and _in_kind(rel, t_kind, t, b)):
                raise UnclassifiedPreimage(f"({s!r}, {t!r}) outside its row's sets for {y!r}")
            classes.setdefault(case_label(a[:2], b[:2]), []).append((s, t))
    bound = machine.preimage_rank_bound(y)
    complete = bound is not None and bound <= max_rank_of_length(len_cap)
    return CaseListing(y, {k: tuple(v) for k, v in sorted(classes.items())}, len_cap, complete)


def case_table_csv(listings: list[CaseListing]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["output", "length", "count", "complete", "case"])
    for lst in listings:
        for label, pairs in lst.classes.items():
            w.writerow([format_bitstring(lst.image), len(lst.image), len(pairs),
                        int(lst.complete), label])
    return buf.getvalue()


def honest_preimage(report: PreimageReport) -> Optional[tuple[str, str]]:
    """A listed preimage with ``|s| + |t| <= 2|y|``, if any."""
    for s, t in report.preimages:
        if len(s) + len(t) <= 2 * len(report.image):
            return s, t
    return None
