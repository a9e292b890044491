"""Shared fixtures and independent reference oracles.

The oracles here recompute everything from the raw definitions with the
dumbest possible loops (tuples, sets, no bitmasks, no linearity or
translation tricks) so that the library's vectorized engines are checked
against a genuinely different computation path.
"""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from posetcodes import LinearCode, Poset, span


@pytest.fixture(scope="session")
def p0():
    return Poset.from_relations(3, [(2, 3)])


@pytest.fixture(scope="session")
def p1():
    return Poset.from_relations(3, [(1, 3), (2, 3)])


@pytest.fixture(scope="session")
def p2():
    return Poset.from_relations(3, [(1, 2), (1, 3)])


@pytest.fixture(scope="session")
def p3():
    return Poset.from_relations(3, [(1, 2), (1, 3), (2, 3)])


@pytest.fixture(scope="session")
def hamming74():
    return LinearCode(
        2,
        7,
        [
            [1, 0, 0, 0, 0, 1, 1],
            [0, 1, 0, 0, 1, 0, 1],
            [0, 0, 1, 0, 1, 1, 0],
            [0, 0, 0, 1, 1, 1, 1],
        ],
    )


# -- naive reference oracles -------------------------------------------------


def all_vectors(q: int, n: int):
    return itertools.product(range(q), repeat=n)


def naive_ideal(P: Poset, A) -> frozenset:
    """Downward closure by fixpoint iteration over leq queries."""
    S = set(A)
    changed = True
    while changed:
        changed = False
        for x in range(1, P.n + 1):
            if x not in S and any(P.leq(x, a) for a in S):
                S.add(x)
                changed = True
    return frozenset(S)


def naive_weight(P: Poset, v) -> int:
    supp = {i + 1 for i, x in enumerate(v) if x}
    return len(naive_ideal(P, supp))


def naive_distance(P: Poset, q: int, u, v) -> int:
    return naive_weight(P, tuple((a - b) % q for a, b in zip(u, v)))


def naive_ball(P: Poset, q: int, center, r: int) -> set:
    return {v for v in all_vectors(q, P.n) if naive_distance(P, q, v, center) <= r}


def naive_packing(P: Poset, q: int, C: LinearCode) -> int:
    """Literal definition: largest r with pairwise disjoint codeword balls."""
    words = list(C.codewords())
    if len(words) == 1:
        return P.n
    best = -1
    for r in range(P.n + 1):
        balls = [naive_ball(P, q, c, r) for c in words]
        ok = all(
            balls[i].isdisjoint(balls[j])
            for i in range(len(words))
            for j in range(i + 1, len(words))
        )
        if ok:
            best = r
        else:
            break
    return best


def naive_covering(P: Poset, q: int, C: LinearCode) -> int:
    words = list(C.codewords())
    return max(
        min(naive_distance(P, q, v, c) for c in words) for v in all_vectors(q, P.n)
    )


def naive_chebyshev(P: Poset, q: int, C: LinearCode) -> int:
    words = list(C.codewords())
    return min(
        max(naive_distance(P, q, u, c) for c in words) for u in all_vectors(q, P.n)
    )


def hamming_distance(u, v) -> int:
    return sum(a != b for a, b in zip(u, v))


def embed_direct_sum(q: int, blocks) -> LinearCode:
    """Concatenate component codes into one code on the disjoint coordinates."""
    n = sum(B.n for B in blocks)
    rows = []
    offset = 0
    for B in blocks:
        for row in B.generator:
            full = [0] * n
            full[offset:offset + B.n] = [int(x) for x in row]
            rows.append(full)
        offset += B.n
    return LinearCode(q, n, rows)


def seeded_codes(q: int, n: int, count: int, seed_key) -> list[LinearCode]:
    """Deterministic random codes for corpus tests."""
    from posetcodes import random_code

    rng = np.random.default_rng(seed_key)
    return [random_code(rng, q, n) for _ in range(count)]
