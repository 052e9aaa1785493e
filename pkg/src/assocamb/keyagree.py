"""Two-party key agreement whose correctness is nothing but associativity.

Alice holds ``x``, Bob holds ``z``, ``y`` is public.  Alice publishes
``op(x, y)``, Bob publishes ``op(y, z)``; each folds in their own secret.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .ambiguity import BinaryOperation


@dataclass(frozen=True)
class SessionResult:
    alice_key: str
    bob_key: str
    transcript: tuple[str, str, str]  # y, op(x, y), op(y, z)

    @property
    def agreed(self) -> bool:
        return self.alice_key == self.bob_key


def run_session(op: BinaryOperation, x: str, y: str, z: str) -> SessionResult:
    if not op.associative:
        raise ValueError(f"{op.name} is not declared associative")
    from_alice = op(x, y)
    from_bob = op(y, z)
    return SessionResult(op(x, from_bob), op(from_alice, z), (y, from_alice, from_bob))


def random_sessions(op: BinaryOperation, count: int, seed: int = 0, max_len: int = 6,
                    pool: list[str] | None = None):
    """Seeded sessions; secrets come from ``pool`` when given, else random strings."""
    rng = random.Random(seed)

    def draw():
        if pool is not None:
            return rng.choice(pool)
        return "".join(rng.choice("01") for _ in range(rng.randint(0, max_len)))

    for _ in range(count):
        x, y, z = draw(), draw(), draw()
        yield (x, y, z), run_session(op, x, y, z)
