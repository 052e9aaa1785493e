import pytest

from assocamb.ambiguity import BinaryOperation, concatenation, left_projection, shortlex_max
from assocamb.aowf import MOD3_FEW, PARITY_UP, SigmaAOWF
from assocamb.gconstruct import GMachine
from assocamb.keyagree import random_sessions, run_session
from assocamb.strings import unrank


def test_concat_example():
    r = run_session(concatenation, "1", "0", "1")
    assert r.alice_key == r.bob_key == "101"
    assert r.transcript == ("0", "10", "01")


def test_refuses_non_associative():
    op = BinaryOperation("undeclared", lambda x, y: x + y)
    with pytest.raises(ValueError):
        run_session(op, "0", "0", "0")


def _ops():
    yield "concat", concatenation, None
    yield "max", shortlex_max, None
    yield "proj", left_projection, None
    yield "aowf:parity-up", SigmaAOWF(PARITY_UP).as_operation(), None
    yield "aowf:mod3-few", SigmaAOWF(MOD3_FEW).as_operation(), None
    yield "gfun:linear", GMachine().as_operation(), [unrank(r) for r in range(9)]


@pytest.mark.parametrize("name,op,pool", list(_ops()), ids=lambda v: v if isinstance(v, str) else "")
def test_thousand_sessions_agree(name, op, pool):
    results = list(random_sessions(op, 1000, seed=11, pool=pool))
    assert len(results) == 1000
    assert all(r.agreed for _, r in results)


def test_sessions_are_seeded():
    a = [t for t, _ in random_sessions(concatenation, 20, seed=5)]
    b = [t for t, _ in random_sessions(concatenation, 20, seed=5)]
    assert a == b
