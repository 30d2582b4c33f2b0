"""Deterministic generators shared by the test modules."""

from __future__ import annotations

import random

from deltacalc import GroupRingElement, Polyfract, delta, identity


def random_point(rng: random.Random, dimension: int, bound: int) -> tuple[int, ...]:
    return tuple(rng.randint(-bound, bound) for _ in range(dimension))


def random_element(
    rng: random.Random,
    dimension: int,
    max_terms: int = 6,
    coord_bound: int = 4,
    coeff_bound: int = 9,
) -> GroupRingElement:
    pairs = [
        (random_point(rng, dimension, coord_bound), rng.randint(-coeff_bound, coeff_bound))
        for _ in range(rng.randint(0, max_terms))
    ]
    return GroupRingElement(dimension, pairs)


def random_polyfract(
    rng: random.Random,
    dimension: int,
    max_count: int = 5,
    max_terms: int = 5,
    coeff_bound: int = 9,
) -> Polyfract:
    pairs = []
    for _ in range(rng.randint(1, max_terms)):
        while True:
            n = tuple(rng.randint(0, max_count) for _ in range(dimension))
            if sum(n) <= max_count:
                break
        coeff = rng.choice([c for c in range(-coeff_bound, coeff_bound + 1) if c])
        pairs.append((n, coeff))
    return Polyfract(dimension, pairs)


def nonzero_polyfract(rng: random.Random, dimension: int, **kwargs) -> Polyfract:
    while True:
        poly = random_polyfract(rng, dimension, **kwargs)
        if poly:
            return poly


def unit_step(dimension: int, k: int) -> tuple[int, ...]:
    point = [0] * dimension
    point[k - 1] = 1
    return tuple(point)


def standard_word_element(dimension: int, q) -> GroupRingElement:
    """delta(e_1)^q_1 * ... * delta(e_N)^q_N as a ring element."""
    out = identity(dimension)
    for axis, mult in enumerate(q):
        out = out * delta(unit_step(dimension, axis + 1)) ** mult
    return out
