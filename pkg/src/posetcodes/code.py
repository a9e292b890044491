"""Linear codes over F_q^n: enumeration, duals, puncturing, Hamming invariants.

The Hamming machinery here is deliberately self-contained (no poset in
sight): it is the base case every hierarchical closed form reduces to, and
it doubles as an independent cross-check for the general poset-metric
engine specialized to an anti-chain.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from . import gfq
from .errors import CapacityError, ZeroCodeError

MAX_ENUM = 2**20
MAX_SPACE = 2**16


class LinearCode:
    """A linear code held by its canonical reduced generator matrix.

    The constructor row-reduces the input, so two codes compare equal iff
    they have the same codeword set.  A zero-dimensional code (k = 0) is
    representable with an empty generator.
    """

    __slots__ = ("q", "n", "_G", "_pivots", "_hash")

    def __init__(self, q: int, n: int, rows=()):
        self.q = gfq.check_field(q)
        self.n = int(n)
        M = gfq.as_matrix(rows, self.q, cols=self.n)
        if M.shape[1] != self.n:
            raise ValueError(f"rows have length {M.shape[1]}, expected {self.n}")
        self._G, self._pivots = gfq.rref(M, self.q)
        self._hash = hash((self.q, self.n, self._G.tobytes()))

    @classmethod
    def zero(cls, q: int, n: int) -> "LinearCode":
        return cls(q, n)

    @classmethod
    def full_space(cls, q: int, n: int) -> "LinearCode":
        return cls(q, n, np.eye(n, dtype=np.int64))

    @property
    def k(self) -> int:
        return self._G.shape[0]

    @property
    def generator(self) -> np.ndarray:
        """Canonical k x n generator (read-only view)."""
        return self._G

    @property
    def codeword_count(self) -> int:
        return self.q**self.k

    @property
    def is_zero(self) -> bool:
        return self.k == 0

    @property
    def is_full_space(self) -> bool:
        return self.k == self.n

    def support(self) -> frozenset[int]:
        """1-based coordinates where some codeword is nonzero."""
        return frozenset(j + 1 for j in range(self.n) if self._G[:, j].any())

    def codeword_matrix(self) -> np.ndarray:
        """All q**k codewords as rows (guarded), message order."""
        if self.codeword_count > MAX_ENUM:
            raise CapacityError(f"codeword enumeration capped at {MAX_ENUM}")
        msgs = gfq.all_vectors_array(self.q, self.k).astype(np.int64)
        words = (msgs @ self._G) % self.q
        return words.astype(np.uint8)

    def codewords(self) -> Iterator[tuple[int, ...]]:
        for row in self.codeword_matrix():
            yield tuple(int(x) for x in row)

    def contains(self, v) -> bool:
        return gfq.in_row_space(self._G, self._pivots, gfq.as_vector(v, self.q), self.q)

    def dual(self) -> "LinearCode":
        """The dual code {v : c . v = 0 for all c}; dim n - k."""
        return LinearCode(self.q, self.n, gfq.kernel(self._G, self.q, cols=self.n))

    def puncture(self, keep: Iterable[int]) -> "LinearCode":
        """Delete every coordinate outside ``keep`` (1-based, sorted)."""
        cols = sorted(set(keep))
        if any(not 1 <= j <= self.n for j in cols):
            raise ValueError("keep set out of range")
        sub = self._G[:, [j - 1 for j in cols]]
        return LinearCode(self.q, len(cols), sub)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearCode)
            and self.q == other.q
            and self.n == other.n
            and bool(np.array_equal(self._G, other._G))
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        rows = ["".join(str(int(x)) for x in row) for row in self._G]
        return f"LinearCode(q={self.q}, n={self.n}, rows={rows})"


def span(q: int, *rows) -> LinearCode:
    """Convenience: the code spanned by the given rows."""
    rows = [gfq.as_vector(r, q) for r in rows]
    n = len(rows[0])
    return LinearCode(q, n, rows)


@dataclass(frozen=True)
class HammingInvariants:
    """Hamming-metric invariants with a witness Chebyshev center."""

    d: int
    packing: int
    covering: int
    chebyshev: int
    center: tuple[int, ...]


def hamming_weight_enumerator(C: LinearCode) -> tuple[int, ...]:
    """Coefficients A_0..A_n, A_i = #codewords of Hamming weight i."""
    words = C.codeword_matrix()
    wts = (words != 0).sum(axis=1)
    counts = np.bincount(wts, minlength=C.n + 1)
    return tuple(int(x) for x in counts)


def hamming_min_distance(C: LinearCode) -> int:
    if C.is_zero:
        raise ZeroCodeError("minimum distance undefined for the zero code")
    words = C.codeword_matrix()
    wts = (words != 0).sum(axis=1)
    return int(wts[wts > 0].min())


def _distance_profile(C: LinearCode) -> tuple[np.ndarray, np.ndarray]:
    """(min, max) Hamming distance from every ambient vector to C."""
    if C.q**C.n > MAX_SPACE:
        raise CapacityError(f"exhaustive Hamming scan capped at q^n = {MAX_SPACE}")
    V = gfq.all_vectors_array(C.q, C.n)
    words = C.codeword_matrix()
    size = V.shape[0]
    dmin = np.full(size, C.n + 1, dtype=np.int16)
    dmax = np.zeros(size, dtype=np.int16)
    step = max(1, (1 << 22) // max(1, size))
    for lo in range(0, words.shape[0], step):
        block = words[lo:lo + step]
        D = (V[:, None, :] != block[None, :, :]).sum(axis=2, dtype=np.int16)
        np.minimum(dmin, D.min(axis=1), out=dmin)
        np.maximum(dmax, D.max(axis=1), out=dmax)
    return dmin, dmax


def hamming_covering_radius(C: LinearCode) -> int:
    """max over the space of the distance to the nearest codeword.

    Defined for the zero code too (gives the maximum weight, n).
    """
    dmin, _ = _distance_profile(C)
    return int(dmin.max())


def hamming_chebyshev(C: LinearCode) -> tuple[int, tuple[int, ...]]:
    """Smallest enclosing-ball radius and its lexicographically least center."""
    _, dmax = _distance_profile(C)
    i = int(dmax.argmin())
    center = tuple(int(x) for x in gfq.all_vectors_array(C.q, C.n)[i])
    return int(dmax.min()), center


def hamming_invariants(C: LinearCode) -> HammingInvariants:
    """All four invariants at once (packing is floor((d-1)/2) under Hamming)."""
    d = hamming_min_distance(C)
    dmin, dmax = _distance_profile(C)
    i = int(dmax.argmin())
    center = tuple(int(x) for x in gfq.all_vectors_array(C.q, C.n)[i])
    return HammingInvariants(
        d=d,
        packing=(d - 1) // 2,
        covering=int(dmin.max()),
        chebyshev=int(dmax.min()),
        center=center,
    )


def all_one_dim_codes(q: int, n: int) -> Iterator[LinearCode]:
    """Every 1-dimensional code exactly once (projective representatives)."""
    for v in itertools.product(range(q), repeat=n):
        first = next((x for x in v if x), None)
        if first == 1:
            yield LinearCode(q, n, [v])


def all_subspaces(q: int, n: int, k: int, cap: int = MAX_ENUM) -> Iterator[LinearCode]:
    """Every k-dimensional subspace exactly once, via RREF enumeration."""
    count = 0
    for cols in itertools.combinations(range(n), k):
        free = [(i, j) for i in range(k) for j in range(n) if j > cols[i] and j not in cols]
        for vals in itertools.product(range(q), repeat=len(free)):
            M = np.zeros((k, n), dtype=np.int64)
            for i, c in enumerate(cols):
                M[i, c] = 1
            for (i, j), x in zip(free, vals):
                M[i, j] = x
            count += 1
            if count > cap:
                raise CapacityError(f"subspace enumeration capped at {cap}")
            yield LinearCode(q, n, M)


def random_code(rng: np.random.Generator, q: int, n: int, k: int | None = None) -> LinearCode:
    """A random nonzero code from uniform generator rows (dim may be < k
    if the draw is rank-deficient; all-zero draws are retried)."""
    if k is None:
        k = int(rng.integers(1, n + 1))
    while True:
        rows = rng.integers(0, q, size=(k, n))
        C = LinearCode(q, n, rows)
        if not C.is_zero:
            return C
