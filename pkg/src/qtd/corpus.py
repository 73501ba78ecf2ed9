"""Seeded random cyclic groups for property tests and the ``corpus`` command."""

from __future__ import annotations

import random

from .action import GroupPresentation, SemilinearMap, element_order, power
from .field import build_field
from .subspace import _rref_coords


def random_invertible(v: int, q: int, rng: random.Random) -> SemilinearMap:
    F = build_field(q)
    while True:
        rows = [[rng.randrange(q) for _ in range(v)] for _ in range(v)]
        if len(_rref_coords(rows, F)) == v:
            return SemilinearMap(tuple(tuple(r) for r in rows), q)


def random_cyclic_group(v: int, q: int, rng: random.Random, max_order: int = 21):
    """A cyclic group of order in [2, max_order] (on points), and its order."""
    while True:
        g = random_invertible(v, q, rng)
        n = element_order(g)
        divisors = [d for d in range(2, min(n, max_order) + 1) if n % d == 0]
        if divisors:
            d = rng.choice(divisors)
            return GroupPresentation(v, q, (power(g, n // d),)), d


def cyclic_corpus(v: int, q: int, count: int, seed: int, max_order: int = 21):
    rng = random.Random(f"{seed}:{v}:{q}")
    return [random_cyclic_group(v, q, rng, max_order) for _ in range(count)]
