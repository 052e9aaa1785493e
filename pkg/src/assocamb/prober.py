"""Constructive search for highly ambiguous images of associative operations.

``find_witness`` runs the pigeonhole induction: from an image ``t`` with
``k`` left factors, multiply ``t`` on the right by ``k*k + k + 1`` fresh
strings.  Either some product escapes the old factor set (and the old
factors plus ``t`` are ``k + 1`` left factors of it), or the products all
land back in that set and one of them is hit ``k + 1`` times, giving
``k + 1`` right factors.  Right-side witnesses are handled by mirroring.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import reduce
from math import ceil, log2
from typing import Optional

from .ambiguity import BinaryOperation, is_complete
from .errors import BudgetError
from .strings import format_bitstring, max_rank_of_length, rank, unrank

LEFT = "LEFT"
RIGHT = "RIGHT"

DEFAULT_APPLY_BUDGET = 2_000_000
ASSOC_SPOT_CHECKS = 32


class NotAssociative(ValueError):
    pass


@dataclass(frozen=True)
class AmbiguityWitness:
    """``t`` together with distinct factors on one side, their partners, and
    a chain of strings whose product is ``t``.

    On the LEFT side ``op(factor, partner) == t``; on the RIGHT side
    ``op(partner, factor) == t``.
    """

    t: str
    side: str
    factors: tuple[str, ...]
    partners: tuple[str, ...]
    chain: tuple[str, ...]

    def pairs(self) -> list[tuple[str, str]]:
        if self.side == LEFT:
            return list(zip(self.factors, self.partners))
        return list(zip(self.partners, self.factors))

    def to_json(self) -> str:
        return json.dumps({
            "t": format_bitstring(self.t),
            "side": self.side,
            "factors": [format_bitstring(f) for f in self.factors],
            "partners": [format_bitstring(p) for p in self.partners],
            "chain": [format_bitstring(c) for c in self.chain],
        })


class _Counter:
    def __init__(self, op, budget):
        self.op, self.budget, self.used = op, budget, 0
        self.best: Optional[AmbiguityWitness] = None

    def __call__(self, x, y):
        self.used += 1
        if self.used > self.budget:
            raise BudgetError(f"{self.op.name}: more than {self.budget} applications", self.best)
        return self.op(x, y)


def spot_check_associativity(op: BinaryOperation, trials: int = ASSOC_SPOT_CHECKS,
                             seed: int = 0, max_len: int = 6) -> None:
    if not op.associative:
        raise NotAssociative(f"{op.name} is not declared associative")
    rng = random.Random(seed)
    for _ in range(trials):
        s, t, u = ("".join(rng.choice("01") for _ in range(rng.randint(0, max_len)))
                   for _ in range(3))
        if op(op(s, t), u) != op(s, op(t, u)):
            raise NotAssociative(f"{op.name} fails associativity on {(s, t, u)!r}")


def chain_product(op: BinaryOperation, chain) -> str:
    return reduce(op, chain)


def _fresh(exclude: set[str], count: int) -> list[str]:
    """The ``count`` shortlex-first strings not in ``exclude``."""
    out, r = [], 0
    while len(out) < count:
        s = unrank(r)
        if s not in exclude:
            out.append(s)
        r += 1
    return out


def _check(apply, w: AmbiguityWitness) -> None:
    for x, y in w.pairs():
        if apply(x, y) != w.t:
            raise NotAssociative(f"witness pair ({x!r}, {y!r}) does not re-apply to {w.t!r}")
    if any(f == w.t for f in w.factors) or len(set(w.factors)) != len(w.factors):
        raise NotAssociative("witness factors must be distinct and differ from t")


def _base(apply, x: str, y: str) -> AmbiguityWitness:
    t = apply(x, y)
    if x != t:
        return AmbiguityWitness(t, LEFT, (x,), (y,), (x, y))
    return AmbiguityWitness(t, RIGHT, (y,), (x,), (x, y))


def _step(apply, w: AmbiguityWitness) -> AmbiguityWitness:
    k = len(w.factors)
    taken = set(w.factors) | {w.t}
    fresh = _fresh(taken, k * k + k + 1)
    hits: dict[str, list[str]] = {}
    for s in fresh:
        u = apply(w.t, s) if w.side == LEFT else apply(s, w.t)
        if u not in taken:
            # old factors and t are all factors of u on the same side
            if w.side == LEFT:
                partners = tuple(apply(p, s) for p in w.partners) + (s,)
                chain = w.chain + (s,)
            else:
                partners = tuple(apply(s, p) for p in w.partners) + (s,)
                chain = (s,) + w.chain
            return AmbiguityWitness(u, w.side, w.factors + (w.t,), partners, chain)
        hits.setdefault(u, []).append(s)
    # every product fell back into the old factor set: pigeonhole
    t2, sources = max(hits.items(), key=lambda kv: (len(kv[1]), -rank(kv[0])))
    if len(sources) < k + 1:
        raise NotAssociative("pigeonhole failed; operation is not associative")
    s0 = sources[0]
    if w.side == LEFT:
        return AmbiguityWitness(t2, RIGHT, tuple(sources), (w.t,) * len(sources), w.chain + (s0,))
    return AmbiguityWitness(t2, LEFT, tuple(sources), (w.t,) * len(sources), (s0,) + w.chain)


def _drive(op: BinaryOperation, k: int, base: tuple[str, str], budget: int) -> AmbiguityWitness:
    spot_check_associativity(op)
    apply = _Counter(op, budget)
    if k <= 0:
        return AmbiguityWitness("", LEFT, (), (), ("",))
    w = _base(apply, *base)
    apply.best = w
    _check(apply, w)
    while len(w.factors) < k:
        w = _step(apply, w)
        _check(apply, w)
        apply.best = w
    if chain_product(op, w.chain) != w.t:
        raise NotAssociative("factor chain does not multiply out to t")
    return w


def find_witness(op: BinaryOperation, k: int, budget: int = DEFAULT_APPLY_BUDGET) -> AmbiguityWitness:
    """An image with at least ``k`` distinct factors on one side."""
    return _drive(op, k, ("0", "1"), budget)


def find_short_witness(op: BinaryOperation, k: int,
                       budget: int = DEFAULT_APPLY_BUDGET) -> AmbiguityWitness:
    """As ``find_witness``, starting from ``(empty, "00")`` so that every chain
    string has length at most ``ceil(2 log2(k + 1))``."""
    return _drive(op, k, ("", "00"), budget)


def short_length_window(k: int) -> tuple[int, int]:
    return 2, ceil(2 * log2(k + 1))


PASS = "PASS"
PASS_UNVERIFIED = "PASS-UNVERIFIED-COUNT"
FAIL = "FAIL"


@dataclass(frozen=True)
class WitnessVerdict:
    status: str
    census_count: int = 0
    complete: bool = False
    failures: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return self.status != FAIL


def target_count(op: BinaryOperation, image: str, max_rank: int, budget: int) -> int:
    """Number of pairs in the rank box that map to ``image``."""
    if (max_rank + 1) ** 2 > budget:
        raise BudgetError(f"rank box {max_rank} exceeds budget {budget}")
    inputs = [unrank(r) for r in range(max_rank + 1)]
    return sum(1 for x in inputs for y in inputs if op(x, y) == image)


def verify_witness(op: BinaryOperation, w: AmbiguityWitness, max_rank: int,
                   budget: int = 4_000_000) -> WitnessVerdict:
    """Re-check a witness and cross-check its size against a census.

    PASS needs every pair to re-apply and the census to find at least as
    many preimages of ``t`` as there are factors.  When the census box is
    too small to see that many and cannot rule more out, the verdict is
    PASS-UNVERIFIED-COUNT.
    """
    failures = []
    if w.chain and chain_product(op, w.chain) != w.t:
        failures.append(f"chain product is not {format_bitstring(w.t)}")
    for x, y in w.pairs():
        if op(x, y) != w.t:
            failures.append(f"({format_bitstring(x)}, {format_bitstring(y)}) does not map to t")
    if any(f == w.t for f in w.factors):
        failures.append("a factor equals t")
    if failures:
        return WitnessVerdict(FAIL, failures=tuple(failures))
    count = target_count(op, w.t, max_rank, budget)
    complete = is_complete(op, w.t, max_rank)
    if count >= len(w.factors):
        return WitnessVerdict(PASS, count, complete)
    if complete:
        return WitnessVerdict(FAIL, count, complete,
                              (f"census finds {count} preimages, witness claims {len(w.factors)}",))
    return WitnessVerdict(PASS_UNVERIFIED, count, complete)


@dataclass(frozen=True)
class LengthBoundParams:
    m: int
    i: int


def derive_j(op: BinaryOperation, params: LengthBoundParams) -> int:
    """max(i + 1, 1 + ceil(log2(longest output over inputs of length <= m)))."""
    small = [unrank(r) for r in range(max_rank_of_length(params.m) + 1)]
    longest = max(len(op(x, y)) for x in small for y in small)
    return max(params.i + 1, 1 + (max(longest, 1) - 1).bit_length())


def _random_product(op, strings, rng):
    # random full parenthesization by recursive split
    if len(strings) == 1:
        return strings[0]
    cut = rng.randint(1, len(strings) - 1)
    return op(_random_product(op, strings[:cut], rng), _random_product(op, strings[cut:], rng))


@dataclass
class BoundReport:
    op: str
    m: int
    i: int
    j: int
    samples: int
    violations: list = field(default_factory=list)
    premise_counterexample: Optional[tuple[str, str]] = None

    def to_dict(self) -> dict:
        return {
            "op": self.op, "m": self.m, "i": self.i, "j": self.j, "samples": self.samples,
            "violations": [[format_bitstring(s) for s in tup] for tup in self.violations],
            "premise_counterexample": (None if self.premise_counterexample is None else
                                       [format_bitstring(s) for s in self.premise_counterexample]),
        }


def _premise_counterexample(op, params, max_len=4):
    strings = [unrank(r) for r in range(max_rank_of_length(max_len) + 1)]
    for x in strings:
        for y in strings:
            top = max(len(x), len(y))
            if top > params.m and not len(op(x, y)) < top ** params.i:
                return x, y
    return None


def measure_output_bound(op: BinaryOperation, params: LengthBoundParams, k_max: int,
                         samples: int, seed: int = 0, max_len: int = 8) -> BoundReport:
    """Sample k-fold products (k = 2..k_max, random lengths and bracketing)
    and test ``|product| < max(2, |s_1|, ..., |s_k|) ** (j ** ceil(log2 k))``."""
    if op.output_bound is None:
        raise ValueError(f"{op.name} does not declare a polynomial output bound")
    j = derive_j(op, params)
    rng = random.Random(seed)
    report = BoundReport(op.name, params.m, params.i, j, samples,
                         premise_counterexample=_premise_counterexample(op, params))
    if k_max < 2:
        return report
    for n in range(samples):
        k = 2 + n % (k_max - 1)
        strings = ["".join(rng.choice("01") for _ in range(rng.randint(0, max_len)))
                   for _ in range(k)]
        out = _random_product(op, strings, rng)
        top = max(2, *(len(s) for s in strings))
        if not len(out) < top ** (j ** (k - 1).bit_length()):
            report.violations.append(tuple(strings))
    return report


def census_max_upto(op: BinaryOperation, N: int, budget: int = 4_000_000) -> tuple[int, int]:
    """Largest preimage count over images of length <= N, and the box used.

    The box is sized from the operation's own preimage bounds so every
    image of length <= N is counted completely.
    """
    if op.preimage_rank_bound is None:
        raise ValueError(f"{op.name} cannot bound its preimages")
    box = 0
    for r in range(max_rank_of_length(N) + 1):
        b = op.preimage_rank_bound(unrank(r))
        if b is None:
            continue
        box = max(box, b)
    if (box + 1) ** 2 > budget:
        raise BudgetError(f"census box {box} for N={N} exceeds budget {budget}")
    inputs = [unrank(r) for r in range(box + 1)]
    counts: dict[str, int] = {}
    for x in inputs:
        for y in inputs:
            out = op(x, y)
            if len(out) <= N:
                counts[out] = counts.get(out, 0) + 1
    for image in counts:
        if not is_complete(op, image, box):
            raise ValueError(f"image {image!r} not completely counted")
    return max(counts.values(), default=0), box


def inverse_growth(l: int, m: int) -> int:
    """Largest n >= 1 with ceil(2 log2 n) ** (l ** ceil(log2 n)) <= m."""
    def f(n):
        return _ceil_2log(n) ** (l ** (n - 1).bit_length())

    n = 1
    while f(n + 1) <= m:
        n += 1
    return n


def _ceil_2log(n: int) -> int:
    # ceil(2 log2 n) = ceil(log2 n^2)
    return (n * n - 1).bit_length() if n > 1 else 0


@dataclass
class LowerBoundDemo:
    op: str
    N: int
    census_box: int
    census_max: int
    n: int
    j: int
    l: int
    witness: AmbiguityWitness
    m: int
    verified_preimages: int
    g_of_m: int

    @property
    def ratio(self) -> float:
        return self.verified_preimages / self.g_of_m

    def to_dict(self) -> dict:
        return {
            "op": self.op, "N": self.N, "census_box": self.census_box,
            "census_max": self.census_max, "n": self.n, "j": self.j, "l": self.l,
            "m": self.m, "verified_preimages": self.verified_preimages,
            "g_of_m": self.g_of_m, "ratio": self.ratio,
            "witness": json.loads(self.witness.to_json()),
        }


def lower_bound_demo(op: BinaryOperation, params: LengthBoundParams, N: int,
                     budget: int = 4_000_000) -> LowerBoundDemo:
    """Finite run of the lower-bound argument.

    n = 8 + (largest census count over images of length <= N); a short
    witness for k = n - 1 then yields an image of length m with at least
    n - 1 preimages, compared against g(m) for l = ceil(j^2).  The ratio is
    reported, not judged.
    """
    census_max, box = census_max_upto(op, N, budget)
    n = 8 + census_max
    j = derive_j(op, params)
    l = j * j
    w = find_short_witness(op, n - 1)
    verified = sum(1 for x, y in w.pairs() if op(x, y) == w.t)
    m = len(w.t)
    return LowerBoundDemo(op.name, N, box, census_max, n, j, l, w, m, verified,
                          inverse_growth(l, m))
