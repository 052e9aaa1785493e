from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from assocamb.strings import (
    DecodeError,
    Multiset,
    multiset_decode,
    multiset_encode,
    pair_decode,
    pair_encode,
    parse_bitstring,
    format_bitstring,
    rank,
    unrank,
)

bits = st.text(alphabet="01", max_size=40)


def shortlex_oracle(limit):
    """Shortlex listing built by length, independent of integer arithmetic."""
    out, n = [], 0
    while len(out) < limit:
        out.extend("".join(p) for p in product("01", repeat=n))
        n += 1
    return out[:limit]


def cantor_oracle(limit):
    """Walk the diagonals m + n = d, n ascending, recording visit order."""
    order = {}
    d = 0
    while len(order) < limit:
        for n in range(d + 1):
            order[(d - n, n)] = len(order)
        d += 1
    return order


@pytest.mark.parametrize("s,r", [("", 0), ("0", 1), ("11", 6)])
def test_rank_examples(s, r):
    assert rank(s) == r


@pytest.mark.parametrize("r,s", [(0, ""), (2, "1"), (7, "000")])
def test_unrank_examples(r, s):
    assert unrank(r) == s


def test_rank_matches_shortlex_listing():
    listing = shortlex_oracle(2047)
    assert [rank(s) for s in listing] == list(range(2047))


@given(bits)
def test_unrank_rank(s):
    assert unrank(rank(s)) == s


def test_rank_unrank_first_million():
    assert all(rank(unrank(n)) == n for n in range(10 ** 6))


@pytest.mark.parametrize("a,b,out", [("", "", ""), ("0", "", "0"), ("", "0", "1")])
def test_pair_encode_examples(a, b, out):
    assert pair_encode(a, b) == out


@pytest.mark.parametrize("s,ab", [("", ("", "")), ("1", ("", "0")), ("01011", ("1", "11"))])
def test_pair_decode_examples(s, ab):
    assert pair_decode(s) == ab


def test_pairing_matches_diagonal_walk():
    order = cantor_oracle(5000)
    for (m, n), code in order.items():
        assert rank(pair_encode(unrank(m), unrank(n))) == code


def test_pair_roundtrip_exhaustive():
    strings = [unrank(r) for r in range(512)]
    for a in strings:
        for b in strings:
            assert pair_decode(pair_encode(a, b)) == (a, b)


def test_pair_strictly_monotone():
    strings = [unrank(r) for r in range(64)]
    for b in strings:
        codes = [rank(pair_encode(a, b)) for a in strings]
        assert codes == sorted(set(codes))
        codes = [rank(pair_encode(b, a)) for a in strings]
        assert codes == sorted(set(codes))


@given(bits, bits)
def test_pair_roundtrip_random(a, b):
    assert pair_decode(pair_encode(a, b)) == (a, b)


@pytest.mark.parametrize("m,enc", [
    (Multiset.of(""), "10"),
    (Multiset.of("1"), "11"),
    (Multiset.of("0", ""), "100100"),
])
def test_multiset_encode_examples(m, enc):
    assert multiset_encode(m) == enc
    assert multiset_decode(enc) == m


def test_multiset_decode_odd_length():
    with pytest.raises(DecodeError) as exc:
        multiset_decode("0")
    assert exc.value.position == 0


@pytest.mark.parametrize("bad,pos", [
    ("01", 0),        # element with no characters
    ("1000", 2),      # character after the empty-word marker
    ("0010", 2),      # empty-word marker inside an element
    ("1001", 2),      # trailing separator
    ("000110", 4),    # "0" before "" breaks canonical order
])
def test_multiset_decode_errors(bad, pos):
    with pytest.raises(DecodeError) as exc:
        multiset_decode(bad)
    assert exc.value.position == pos


def test_multiset_encode_empty():
    with pytest.raises(ValueError):
        multiset_encode(Multiset())


small = st.text(alphabet="01", max_size=4)


@given(st.lists(small, min_size=1, max_size=6))
def test_multiset_roundtrip(items):
    m = Multiset.from_iter(items)
    assert multiset_decode(multiset_encode(m)) == m


@given(st.lists(small, min_size=1, max_size=6), st.lists(small, min_size=1, max_size=6))
def test_union_order_independent(xs, ys):
    a, b = Multiset.from_iter(xs), Multiset.from_iter(ys)
    assert multiset_encode(a | b) == multiset_encode(b | a)
    assert a | b == Multiset.from_iter(xs + ys)


def test_encoding_injective_small():
    seen = {}
    strings = [unrank(r) for r in range(7)]
    for size in (1, 2, 3):
        for combo in product(strings, repeat=size):
            m = Multiset.from_iter(combo)
            enc = multiset_encode(m)
            assert seen.setdefault(enc, m) == m


def test_literal_format():
    assert parse_bitstring("@e") == ""
    assert format_bitstring("") == "@e"
    assert parse_bitstring("0101") == "0101"
    with pytest.raises(ValueError):
        parse_bitstring("012")
