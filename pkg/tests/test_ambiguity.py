import pytest

from assocamb.ambiguity import (
    LINEAR,
    LOG,
    SQRT,
    ambiguity_profile,
    census_csv,
    check_h_to_one,
    concatenation,
    constant_bound,
    left_projection,
    preimage_census,
    profile_csv,
    shortlex_max,
)
from assocamb.errors import BudgetError
from assocamb.strings import cantor_unpair, rank, unrank


def diagonal_census(op, max_rank):
    """Second enumeration: walk pair codes instead of rows of the box."""
    groups = {}
    box = max_rank + 1
    code = 0
    seen = 0
    while seen < box * box:
        m, n = cantor_unpair(code)
        code += 1
        if m > max_rank or n > max_rank:
            continue
        seen += 1
        x, y = unrank(m), unrank(n)
        groups.setdefault(op(x, y), set()).add((x, y))
    return groups


def test_concat_small_box():
    census = preimage_census(concatenation, 2)
    assert set(census["01"].preimages) == {("0", "1")}


def test_concat_all_splits():
    census = preimage_census(concatenation, 6)
    assert set(census["01"].preimages) == {("", "01"), ("0", "1"), ("01", "")}
    assert census["01"].complete


def test_projection_counts():
    census = preimage_census(left_projection, 2)
    assert {img: r.count for img, r in census.items()} == {"": 3, "0": 3, "1": 3}
    assert not any(r.complete for r in census.values())


@pytest.mark.parametrize("op", [concatenation, shortlex_max, left_projection])
@pytest.mark.parametrize("max_rank", [0, 5, 30, 64])
def test_census_order_independent(op, max_rank):
    census = preimage_census(op, max_rank)
    assert {img: set(r.preimages) for img, r in census.items()} == diagonal_census(op, max_rank)


def test_reports_reapply():
    for r in preimage_census(shortlex_max, 20).values():
        assert all(shortlex_max(x, y) == r.image for x, y in r.preimages)
        assert len(set(r.preimages)) == r.count


def test_shortlex_max_complete_counts():
    census = preimage_census(shortlex_max, 14)
    for image, r in census.items():
        assert r.complete
        # (x, t) and (t, x) for all x <= t, minus the doubled (t, t)
        assert r.count == 2 * rank(image) + 1


def test_h_to_one_examples():
    census = preimage_census(concatenation, 6)
    assert check_h_to_one(census, lambda n: n + 1).passed
    v = check_h_to_one(census, lambda n: 2)
    assert not v.passed
    assert v.count == 3
    assert check_h_to_one({}, lambda n: 0).passed


def test_h_to_one_smallest_counterexample():
    # "00" precedes "01" in shortlex and also has three splits
    v = check_h_to_one(preimage_census(concatenation, 6), lambda n: 2)
    assert v.counterexample == "00"


def test_incomplete_reports_ignored():
    census = preimage_census(left_projection, 10)
    assert check_h_to_one(census, lambda n: 0).passed


def test_profile_concat():
    rows = {r.length: r for r in ambiguity_profile(concatenation, 14)}
    assert (rows[2].max_count, rows[2].complete) == (3, True)
    assert (rows[3].max_count, rows[3].complete) == (4, True)
    assert not rows[4].complete


def test_profile_concat_is_length_plus_one():
    for row in ambiguity_profile(concatenation, 64):
        if row.complete:
            assert row.max_count == row.length + 1


def test_profile_projection_constant():
    rows = ambiguity_profile(left_projection, 20)
    assert {r.max_count for r in rows} == {21}


def test_budget_partial():
    with pytest.raises(BudgetError) as exc:
        preimage_census(concatenation, 10, budget=50)
    partial = exc.value.partial
    assert sum(r.count for r in partial.values()) == 50
    assert not any(r.complete for r in partial.values())


def test_csv_formats():
    census = preimage_census(concatenation, 2)
    text = census_csv(census)
    assert text.splitlines()[0] == "output,length,count,complete"
    assert text.splitlines()[1] == "@e,0,1,1"
    assert profile_csv(ambiguity_profile(concatenation, 2)).splitlines()[0] == "length,max_count,complete"


@pytest.mark.parametrize("g", [LINEAR, LOG, SQRT])
def test_bounds_nondecreasing(g):
    values = [g(n) for n in range(10 ** 4 + 1)]
    assert all(a <= b for a, b in zip(values, values[1:]))
    assert values[-1] > values[0]


def test_bound_values():
    assert [LOG(n) for n in (0, 1, 2, 3, 6, 7)] == [1, 2, 2, 3, 3, 4]
    assert [SQRT(n) for n in (0, 1, 2, 4, 5, 9, 10)] == [0, 1, 2, 2, 3, 3, 4]
    assert constant_bound(3)(100) == 3
