"""Poset weights, distances, balls/spheres, and brute-force invariants.

This module is the oracle side of the library: everything here computes
straight from the definitions by exhaustive scan (vectorized, but with no
structure theory behind it), so the hierarchical closed forms can be
checked against it.  Exhaustive engines iterate vectors in lexicographic
order, which makes every reported witness deterministic.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from . import gfq
from .code import LinearCode
from .errors import CapacityError
from .poset import Poset

MAX_SPACE = 2**16
MAX_ENUM = 2**20


def support(v) -> frozenset[int]:
    """1-based coordinates of the nonzero entries."""
    return frozenset(i + 1 for i, x in enumerate(v) if x)


def p_weight(P: Poset, u) -> int:
    """|ideal generated by supp(u)|; zero iff u is the zero vector."""
    u = tuple(u)
    if len(u) != P.n:
        raise ValueError(f"vector length {len(u)} != n = {P.n}")
    m = 0
    for i, x in enumerate(u):
        if x:
            m |= P.down_mask(i + 1)
    return m.bit_count()


def p_distance(P: Poset, u, v, q: int) -> int:
    """The poset metric d_P(u, v) = wt_P(u - v)."""
    u, v = tuple(u), tuple(v)
    if len(u) != len(v):
        raise ValueError("dimension mismatch")
    return p_weight(P, tuple((a - b) % q for a, b in zip(u, v)))


class PSpace:
    """Exhaustive weight table for the metric space (F_q^n, d_P).

    Row index doubles as a vector id (lexicographic order); ``weights[i]``
    is the P-weight of vector i.  Shared read-only by the brute engines.
    """

    def __init__(self, P: Poset, q: int):
        q = gfq.check_field(q)
        size = q**P.n
        if size > MAX_SPACE:
            raise CapacityError(f"space scan capped at q^n = {MAX_SPACE}")
        self.poset = P
        self.q = q
        self.size = size
        self.digits = gfq.all_vectors_array(q, P.n)
        self.radix = gfq.radix_powers(q, P.n)
        masks = np.array([P.down_mask(j + 1) for j in range(P.n)], dtype=np.int64)
        sel = np.where(self.digits != 0, masks[None, :], 0)
        ideal = np.bitwise_or.reduce(sel, axis=1) if P.n else np.zeros(size, dtype=np.int64)
        self.weights = np.bitwise_count(ideal).astype(np.int16)
        self.weights.setflags(write=False)

    def index_of(self, v) -> int:
        v = gfq.as_vector(v, self.q)
        if len(v) != self.poset.n:
            raise ValueError("dimension mismatch")
        return int(np.dot(np.array(v, dtype=np.int64), self.radix))

    def vector_at(self, i: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.digits[i])

    def shifted_weights(self, c_index: int) -> np.ndarray:
        """wt_P(v - c) for every vector v, as one array."""
        if self.q == 2:
            return self.weights[np.arange(self.size) ^ c_index]
        diff = (self.digits.astype(np.int64) - self.digits[c_index]) % self.q
        return self.weights[diff @ self.radix]

    def code_indices(self, C: LinearCode) -> np.ndarray:
        if C.q != self.q or C.n != self.poset.n:
            raise ValueError("code does not live in this space")
        words = C.codeword_matrix().astype(np.int64)
        return words @ self.radix


@functools.lru_cache(maxsize=128)
def space(P: Poset, q: int) -> PSpace:
    return PSpace(P, q)


def ball(P: Poset, q: int, center, r: int) -> list[tuple[int, ...]]:
    """All vectors at P-distance <= r from the center, lexicographic."""
    sp = space(P, q)
    w = sp.shifted_weights(sp.index_of(center))
    return [sp.vector_at(i) for i in np.nonzero(w <= r)[0]]


def sphere(P: Poset, q: int, center, r: int) -> list[tuple[int, ...]]:
    """All vectors at P-distance exactly r from the center."""
    sp = space(P, q)
    w = sp.shifted_weights(sp.index_of(center))
    return [sp.vector_at(i) for i in np.nonzero(w == r)[0]]


@dataclass(frozen=True)
class PInvariants:
    """Brute-force metric invariants of a code.

    ``d`` is None for the zero code.  Conventions for degenerate cases:
    the packing radius of a single-codeword set is n (balls never
    collide), and the covering radius of {0} is the maximum P-weight in
    the space.
    """

    d: int | None
    packing: int
    covering: int
    chebyshev: int
    center: tuple[int, ...]


def brute_invariants(P: Poset, C: LinearCode, q: int | None = None) -> PInvariants:
    """All four invariants straight from the definitions.

    d_P is translation invariant, so ball disjointness for a pair of
    codewords depends only on their difference, which is again a
    codeword; the pairwise scan therefore reduces to one scan per nonzero
    codeword c, minimizing max(wt(x), wt(x - c)) over the space.
    """
    sp = space(P, C.q)
    cw = sp.code_indices(C)
    wts = sp.weights

    cw_weights = wts[cw]
    d = int(cw_weights[cw_weights > 0].min()) if not C.is_zero else None

    dmin = np.full(sp.size, np.iinfo(np.int16).max, dtype=np.int16)
    dmax = np.zeros(sp.size, dtype=np.int16)
    rho_min = None
    for c in cw:
        arr = sp.shifted_weights(int(c))
        np.minimum(dmin, arr, out=dmin)
        np.maximum(dmax, arr, out=dmax)
        if c != 0:
            rho = int(np.maximum(wts, arr).min())
            rho_min = rho if rho_min is None else min(rho_min, rho)

    covering = int(dmin.max())
    center_idx = int(dmax.argmin())
    chebyshev = int(dmax[center_idx])
    packing = P.n if rho_min is None else rho_min - 1
    return PInvariants(
        d=d,
        packing=packing,
        covering=covering,
        chebyshev=chebyshev,
        center=sp.vector_at(center_idx),
    )


@dataclass(frozen=True)
class PWeightEnumerator:
    """Coefficient table of a P-weight enumerator, A_0..A_n."""

    coefficients: tuple[int, ...]

    def __call__(self, x):
        return sum(a * x**i for i, a in enumerate(self.coefficients))

    @property
    def total(self) -> int:
        return sum(self.coefficients)


def code_weights(P: Poset, C: LinearCode) -> np.ndarray:
    """P-weight of every codeword, in message order (guarded at q^k)."""
    words = C.codeword_matrix()
    masks = np.array([P.down_mask(j + 1) for j in range(P.n)], dtype=np.int64)
    sel = np.where(words != 0, masks[None, :], 0)
    ideal = np.bitwise_or.reduce(sel, axis=1) if P.n else np.zeros(len(words), dtype=np.int64)
    return np.bitwise_count(ideal).astype(np.int64)


def p_weight_enumerator(P: Poset, C: LinearCode) -> PWeightEnumerator:
    """A_i = #{c in C : wt_P(c) = i}, computed by direct count."""
    if C.n != P.n:
        raise ValueError("code length does not match the poset")
    wts = code_weights(P, C)
    counts = np.bincount(wts, minlength=P.n + 1)
    return PWeightEnumerator(tuple(int(x) for x in counts))
