"""Finite posets on {1, ..., n}: closure, levels, ideals, duals, isomorphism.

Element labels are 1-based in every public argument and result (internal
arrays are 0-based).  A vector over the poset indexes coordinate j-1 of a
length-n sequence by element j.  Posets are immutable after construction
and hashable, so they are safe to share and to use as cache keys.
"""

from __future__ import annotations

import itertools
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import CapacityError, NotAPartialOrderError

MAX_IDEAL_ENUM = 24
MAX_AUTOMORPHISM_N = 12


class Defect(NamedTuple):
    """Witness that a poset is not hierarchical.

    ``a`` sits one level below ``b`` yet is incomparable to it, while ``c``
    sits on a's level with c <= b.  ``alpha`` (the level of b) is minimal;
    ties are broken by the smallest (b, a, c) lexicographically.  The
    restriction to {a, b, c} is always the 3-element poset with the single
    relation c <= b.
    """

    alpha: int
    a: int
    b: int
    c: int


class Poset:
    """Partial order on {1, ..., n} held as a full relation table."""

    __slots__ = ("n", "_leq", "_heights", "_levels", "_down_masks", "_defect", "_hash")

    def __init__(self, n: int, leq: np.ndarray, _trusted: bool = False):
        leq = np.asarray(leq, dtype=bool)
        if leq.shape != (n, n):
            raise ValueError("relation table must be n x n")
        if not _trusted:
            leq = _closed_table(n, leq)
        leq = leq.copy()
        leq.setflags(write=False)
        self.n = int(n)
        self._leq = leq
        self._heights = _heights_from_table(n, leq)
        levels: list[tuple[int, ...]] = []
        for lev in range(1, (max(self._heights) if n else 0) + 1):
            levels.append(tuple(i + 1 for i in range(n) if self._heights[i] == lev))
        self._levels = tuple(levels)
        masks = []
        for j in range(n):
            m = 0
            for i in range(n):
                if leq[i, j]:
                    m |= 1 << i
            masks.append(m)
        self._down_masks = tuple(masks)
        self._defect = _find_defect(self)
        self._hash = hash((self.n, leq.tobytes()))

    # -- construction -----------------------------------------------------

    @classmethod
    def from_relations(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Poset":
        """Poset from arbitrary relation pairs (a, b) meaning a <= b.

        The reflexive-transitive closure is computed; a cycle raises
        :class:`NotAPartialOrderError`.
        """
        n = int(n)
        if n < 0:
            raise ValueError("n must be nonnegative")
        leq = np.eye(n, dtype=bool)
        for a, b in pairs:
            if not (1 <= a <= n and 1 <= b <= n):
                raise ValueError(f"relation ({a}, {b}) out of range 1..{n}")
            leq[a - 1, b - 1] = True
        return cls(n, leq)

    @classmethod
    def antichain(cls, n: int) -> "Poset":
        return cls(n, np.eye(n, dtype=bool), _trusted=True)

    @classmethod
    def chain(cls, n: int) -> "Poset":
        return cls(n, np.triu(np.ones((n, n), dtype=bool)), _trusted=True)

    @classmethod
    def from_level_sizes(cls, sizes: Sequence[int]) -> "Poset":
        """The hierarchical poset with the given level sizes, labeled so
        that level i occupies the next ``sizes[i-1]`` consecutive labels."""
        sizes = tuple(int(s) for s in sizes)
        if any(s <= 0 for s in sizes):
            raise ValueError("level sizes must be positive")
        n = sum(sizes)
        leq = np.eye(n, dtype=bool)
        offsets = np.cumsum((0,) + sizes)
        for i in range(len(sizes)):
            for j in range(i + 1, len(sizes)):
                leq[offsets[i]:offsets[i + 1], offsets[j]:offsets[j + 1]] = True
        return cls(n, leq, _trusted=True)

    # -- basic queries ----------------------------------------------------

    def leq(self, a: int, b: int) -> bool:
        return bool(self._leq[a - 1, b - 1])

    def less(self, a: int, b: int) -> bool:
        return a != b and bool(self._leq[a - 1, b - 1])

    @property
    def height(self) -> int:
        """h(P): number of levels."""
        return len(self._levels)

    @property
    def levels(self) -> tuple[tuple[int, ...], ...]:
        """The anti-chains of elements of equal height, bottom first."""
        return self._levels

    @property
    def level_sizes(self) -> tuple[int, ...]:
        return tuple(len(g) for g in self._levels)

    def level_of(self, a: int) -> int:
        return self._heights[a - 1]

    def down_mask(self, a: int) -> int:
        """Bitmask of the prime ideal of a (bit i-1 set iff i <= a)."""
        return self._down_masks[a - 1]

    def covers(self) -> list[tuple[int, int]]:
        """Hasse pairs (a, b): b covers a."""
        strict = self._leq & ~np.eye(self.n, dtype=bool)
        two_step = _bool_matmul(strict, strict)
        out = []
        for a in range(self.n):
            for b in range(self.n):
                if strict[a, b] and not two_step[a, b]:
                    out.append((a + 1, b + 1))
        return out

    # -- ideals -----------------------------------------------------------

    def ideal_of(self, A: Iterable[int]) -> frozenset[int]:
        """Smallest ideal containing A: {x : x <= a for some a in A}."""
        m = 0
        for a in A:
            m |= self._down_masks[a - 1]
        return frozenset(i + 1 for i in range(self.n) if m >> i & 1)

    def maximal_elements(self, S: Iterable[int]) -> frozenset[int]:
        """Elements of S with nothing of S strictly above them."""
        S = set(S)
        return frozenset(a for a in S if not any(self.less(a, x) for x in S))

    def is_ideal(self, S: Iterable[int]) -> bool:
        S = frozenset(S)
        return self.ideal_of(S) == S

    def ideals(self) -> list[frozenset[int]]:
        """Every downward-closed subset exactly once (guarded at n <= 24).

        Built over a linear extension: each new element may be added to
        exactly the ideals already containing its strict down-set.
        """
        if self.n > MAX_IDEAL_ENUM:
            raise CapacityError(f"ideal enumeration capped at n = {MAX_IDEAL_ENUM}")
        order = sorted(range(self.n), key=lambda j: int(self._leq[:, j].sum()))
        found = {0}
        for j in order:
            need = self._down_masks[j] & ~(1 << j)
            found |= {m | (1 << j) for m in found if m & need == need}
        out = [frozenset(i + 1 for i in range(self.n) if m >> i & 1) for m in found]
        out.sort(key=lambda s: (len(s), sorted(s)))
        return out

    # -- structure --------------------------------------------------------

    def hierarchy_defect(self) -> Defect | None:
        """None iff hierarchical; otherwise the minimal defect triple."""
        return self._defect

    @property
    def is_hierarchical(self) -> bool:
        """True iff elements at different levels are always comparable."""
        return self._defect is None

    def dual(self) -> "Poset":
        """Same ground set with all relations reversed."""
        return Poset(self.n, self._leq.T, _trusted=True)

    def restrict(self, S: Iterable[int]) -> tuple["Poset", tuple[int, ...]]:
        """Subposet induced on any subset, relabeled to 1..|S|.

        Returns (Q, labels) where new element i corresponds to old label
        labels[i-1]; labels are sorted ascending.
        """
        labels = tuple(sorted(set(S)))
        if any(not 1 <= a <= self.n for a in labels):
            raise ValueError("subset out of range")
        idx = [a - 1 for a in labels]
        sub = self._leq[np.ix_(idx, idx)]
        return Poset(len(labels), sub, _trusted=True), labels

    def induced_subposet(self, I: Iterable[int]) -> tuple["Poset", tuple[int, ...]]:
        """Subposet on an ideal (raises if I is not downward closed)."""
        I = frozenset(I)
        if not self.is_ideal(I):
            raise ValueError(f"{sorted(I)} is not an ideal")
        return self.restrict(I)

    # -- isomorphism ------------------------------------------------------

    def isomorphism_to(self, other: "Poset") -> dict[int, int] | None:
        """An order isomorphism onto ``other`` as a dict, or None."""
        return _search_isomorphism(self, other, first_only=True)

    def automorphisms(self) -> list[tuple[int, ...]]:
        """All of Aut(P), each as a tuple phi with phi[i-1] = image of i.

        Guarded at n <= 12; backtracking prunes by height and up/down-set
        sizes, so realistic posets stay far below the worst case.
        """
        if self.n > MAX_AUTOMORPHISM_N:
            raise CapacityError(f"automorphism search capped at n = {MAX_AUTOMORPHISM_N}")
        sols = _search_isomorphism(self, self, first_only=False)
        perms = sorted(tuple(sol[i] for i in range(1, self.n + 1)) for sol in sols)
        return perms

    # -- dunder -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poset)
            and self.n == other.n
            and bool(np.array_equal(self._leq, other._leq))
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Poset(n={self.n}, covers={self.covers()})"


def are_isomorphic(P: Poset, Q: Poset) -> dict[int, int] | None:
    """Order isomorphism P -> Q as a dict, or None if none exists."""
    return P.isomorphism_to(Q)


# -- internals -------------------------------------------------------------


def _bool_matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return (A.astype(np.uint8) @ B.astype(np.uint8)) > 0


def _closed_table(n: int, leq: np.ndarray) -> np.ndarray:
    leq = leq | np.eye(n, dtype=bool)
    for k in range(n):  # Warshall
        leq |= np.outer(leq[:, k], leq[k, :])
    bad = leq & leq.T & ~np.eye(n, dtype=bool)
    if bad.any():
        i, j = np.argwhere(bad)[0]
        raise NotAPartialOrderError(
            f"cycle detected: {i + 1} ≤ {j + 1} and {j + 1} ≤ {i + 1}"
        )
    return leq


def _heights_from_table(n: int, leq: np.ndarray) -> tuple[int, ...]:
    # Strict down-sets grow along the order, so sorting by down-set size
    # yields a linear extension.
    h = [0] * n
    order = sorted(range(n), key=lambda j: int(leq[:, j].sum()))
    for j in order:
        below = [i for i in range(n) if leq[i, j] and i != j]
        h[j] = 1 + max((h[i] for i in below), default=0)
    return tuple(h)


def _find_defect(P: Poset) -> Defect | None:
    for alpha in range(2, P.height + 1):
        upper = P._levels[alpha - 1]
        lower = P._levels[alpha - 2]
        best = None
        for b in upper:
            for a in lower:
                if not P.leq(a, b):
                    c = min(c for c in lower if P.leq(c, b))
                    best = Defect(alpha, a, b, c)
                    break
            if best is not None:
                break
        if best is not None:
            return best
    return None


def _signatures(P: Poset) -> list[tuple]:
    n = P.n
    leq = P._leq
    sig = []
    for x in range(n):
        down = int(leq[:, x].sum())
        up = int(leq[x, :].sum())
        below_heights = tuple(sorted(P._heights[i] for i in range(n) if leq[i, x] and i != x))
        sig.append((P._heights[x], down, up, below_heights))
    return sig


def _search_isomorphism(P: Poset, Q: Poset, first_only: bool):
    """Backtracking isomorphism search; returns dict / None when
    ``first_only``, else the list of all solutions."""
    none = None if first_only else []
    if P.n != Q.n or P.level_sizes != Q.level_sizes:
        return none
    sig_p = _signatures(P)
    sig_q = _signatures(Q)
    if sorted(sig_p) != sorted(sig_q):
        return none

    candidates = [[y for y in range(Q.n) if sig_q[y] == sig_p[x]] for x in range(P.n)]
    order = sorted(range(P.n), key=lambda x: (len(candidates[x]), x))
    mapping = [-1] * P.n
    used = [False] * Q.n
    solutions: list[dict[int, int]] = []

    def extend(pos: int) -> bool:
        if pos == P.n:
            solutions.append({i + 1: mapping[i] + 1 for i in range(P.n)})
            return first_only
        x = order[pos]
        for y in candidates[x]:
            if used[y]:
                continue
            ok = True
            for z in order[:pos]:
                w = mapping[z]
                if P._leq[x, z] != Q._leq[y, w] or P._leq[z, x] != Q._leq[w, y]:
                    ok = False
                    break
            if ok:
                mapping[x] = y
                used[y] = True
                if extend(pos + 1):
                    return True
                mapping[x] = -1
                used[y] = False
        return False

    extend(0)
    if first_only:
        return solutions[0] if solutions else None
    return solutions


# -- catalogues -------------------------------------------------------------


def compositions(n: int):
    """All ordered tuples of positive integers summing to n."""
    if n == 0:
        yield ()
        return
    for cuts in itertools.product([False, True], repeat=n - 1):
        parts = []
        size = 1
        for cut in cuts:
            if cut:
                parts.append(size)
                size = 1
            else:
                size += 1
        parts.append(size)
        yield tuple(parts)


def all_hierarchical_posets(n: int) -> list[Poset]:
    """Every hierarchical poset on [n] up to isomorphism (one per
    composition of n into level sizes)."""
    return [Poset.from_level_sizes(c) for c in compositions(n)]


def all_posets(n: int) -> list[Poset]:
    """Every poset on [n] up to isomorphism (guarded at n <= 6).

    Enumerates naturally labeled strict orders (a < b only for a < b as
    integers, which loses no isomorphism class) and deduplicates.
    """
    if n > 6:
        raise CapacityError("poset catalogue capped at n = 6")
    if n == 0:
        return [Poset.antichain(0)]
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    found: list[Poset] = []
    buckets: dict[tuple, list[Poset]] = {}
    for mask in range(1 << len(slots)):
        rel = np.eye(n, dtype=bool)
        for s, (i, j) in enumerate(slots):
            if mask >> s & 1:
                rel[i, j] = True
        ok = True
        for i in range(n):
            for j in range(i + 1, n):
                if not rel[i, j]:
                    continue
                for k in range(j + 1, n):
                    if rel[j, k] and not rel[i, k]:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if not ok:
            continue
        P = Poset(n, rel, _trusted=True)
        key = (P.level_sizes, tuple(sorted(_signatures(P))))
        group = buckets.setdefault(key, [])
        if not any(are_isomorphic(P, Q) for Q in group):
            group.append(P)
            found.append(P)
    return found
