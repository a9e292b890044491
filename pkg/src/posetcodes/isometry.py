"""The group GL_P(F_q) of linear isometries of a poset-metric space.

Every linear isometry factors as a poset automorphism composed with a
poset-triangular map T_U, where T_U(e_j) = sum_{i <= j} u_ij e_i with
u_jj != 0.  Isometries are stored in that factored form; the group is
enumerated as the product of the independent parameter choices, and its
order is |Aut(P)| * prod_j (q-1) q^(|<j>|-1).
"""

from __future__ import annotations

import itertools
import math
from typing import Iterator, Sequence

import numpy as np

from . import gfq
from .code import LinearCode
from .errors import CapacityError
from .poset import Poset

MAX_GROUP = 2**20


class TriangularMap:
    """Invertible map whose matrix is supported on the order relation:
    U[i-1, j-1] != 0 only if i <= j in P, with a nonzero diagonal."""

    __slots__ = ("poset", "q", "U")

    def __init__(self, P: Poset, q: int, U):
        q = gfq.check_field(q)
        U = gfq.as_matrix(U, q)
        n = P.n
        if U.shape != (n, n):
            raise ValueError("matrix must be n x n")
        for j in range(n):
            if U[j, j] == 0:
                raise ValueError(f"diagonal entry u_{j+1}{j+1} must be nonzero")
            for i in range(n):
                if U[i, j] and not P.leq(i + 1, j + 1):
                    raise ValueError(
                        f"entry u_{i+1}{j+1} is nonzero but {i+1} is not below {j+1}"
                    )
        U = U.copy()
        U.setflags(write=False)
        self.poset = P
        self.q = q
        self.U = U

    @classmethod
    def identity(cls, P: Poset, q: int) -> "TriangularMap":
        return cls(P, q, np.eye(P.n, dtype=np.int64))

    def apply(self, v) -> tuple[int, ...]:
        v = gfq.as_vector(v, self.q)
        out = (self.U @ np.array(v, dtype=np.int64)) % self.q
        return tuple(int(x) for x in out)


class LinearIsometry:
    """phi after T_U: v -> permute(U v), the general element of GL_P(F_q)."""

    __slots__ = ("poset", "q", "phi", "tri", "_hash")

    def __init__(self, P: Poset, q: int, phi: Sequence[int], tri: TriangularMap):
        if tri.poset is not P and tri.poset != P:
            raise ValueError("triangular part belongs to a different poset")
        phi = tuple(int(x) for x in phi)
        if sorted(phi) != list(range(1, P.n + 1)):
            raise ValueError("phi must be a permutation of 1..n")
        for a in range(1, P.n + 1):
            for b in range(1, P.n + 1):
                if P.leq(a, b) != P.leq(phi[a - 1], phi[b - 1]):
                    raise ValueError("phi is not a poset automorphism")
        self.poset = P
        self.q = tri.q
        self.phi = phi
        self.tri = tri
        self._hash = hash((phi, tri.U.tobytes()))

    @classmethod
    def identity(cls, P: Poset, q: int) -> "LinearIsometry":
        return cls(P, q, range(1, P.n + 1), TriangularMap.identity(P, q))

    @classmethod
    def from_triangular(cls, tri: TriangularMap) -> "LinearIsometry":
        return cls(tri.poset, tri.q, range(1, tri.poset.n + 1), tri)

    @property
    def matrix(self) -> np.ndarray:
        """Dense matrix M with action v -> M v."""
        n = self.poset.n
        Pm = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            Pm[self.phi[i] - 1, i] = 1
        return (Pm @ self.tri.U) % self.q

    def apply(self, v) -> tuple[int, ...]:
        w = self.tri.apply(v)
        out = [0] * self.poset.n
        for i in range(self.poset.n):
            out[self.phi[i] - 1] = w[i]
        return tuple(out)

    def apply_code(self, C: LinearCode) -> LinearCode:
        if C.q != self.q or C.n != self.poset.n:
            raise ValueError("code does not live in this space")
        rows = (C.generator @ self.matrix.T) % self.q
        return LinearCode(self.q, C.n, rows)

    def compose(self, other: "LinearIsometry") -> "LinearIsometry":
        """self after other (apply ``other`` first)."""
        P, q, n = self.poset, self.q, self.poset.n
        phi = tuple(self.phi[other.phi[i] - 1] for i in range(n))
        # Conjugating the triangular part by other's automorphism keeps the
        # support pattern inside the order relation.
        conj = np.empty((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                conj[i, j] = self.tri.U[other.phi[i] - 1, other.phi[j] - 1]
        U = (conj @ other.tri.U) % q
        return LinearIsometry(P, q, phi, TriangularMap(P, q, U))

    def inverse(self) -> "LinearIsometry":
        P, q, n = self.poset, self.q, self.poset.n
        inv_phi = [0] * n
        for i in range(n):
            inv_phi[self.phi[i] - 1] = i + 1
        Uinv = gfq.inv_matrix(self.tri.U, q)
        conj = np.empty((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                conj[i, j] = Uinv[inv_phi[i] - 1, inv_phi[j] - 1]
        return LinearIsometry(P, q, inv_phi, TriangularMap(P, q, conj))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearIsometry)
            and self.phi == other.phi
            and bool(np.array_equal(self.tri.U, other.tri.U))
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"LinearIsometry(phi={self.phi}, U={self.tri.U.tolist()})"


def group_order(P: Poset, q: int) -> int:
    """|GL_P(F_q)| = |Aut(P)| * prod_j (q-1) q^(|<j>|-1)."""
    q = gfq.check_field(q)
    aut = len(P.automorphisms())
    tri = math.prod((q - 1) * q ** (P.down_mask(j).bit_count() - 1) for j in range(1, P.n + 1))
    return aut * tri


def enumerate_group(P: Poset, q: int, max_size: int = MAX_GROUP) -> Iterator[LinearIsometry]:
    """Every element of GL_P(F_q) exactly once (factorization is unique)."""
    order = group_order(P, q)
    if order > max_size:
        raise CapacityError(f"group of order {order} exceeds the cap {max_size}")
    n = P.n
    below = [[i for i in range(n) if P.less(i + 1, j + 1)] for j in range(n)]
    col_choices = []
    for j in range(n):
        offs = list(itertools.product(range(q), repeat=len(below[j])))
        col_choices.append([(d, o) for d in range(1, q) for o in offs])
    for phi in P.automorphisms():
        for cols in itertools.product(*col_choices):
            U = np.zeros((n, n), dtype=np.int64)
            for j, (d, offs) in enumerate(cols):
                U[j, j] = d
                for i, x in zip(below[j], offs):
                    U[i, j] = x
            yield LinearIsometry(P, q, phi, TriangularMap(P, q, U))


def generators(P: Poset, q: int) -> list[LinearIsometry]:
    """A generating set of GL_P(F_q): all automorphism maps, the diagonal
    scalings, and the elementary triangular maps e_j -> e_j + mu e_i."""
    q = gfq.check_field(q)
    n = P.n
    gens = []
    ident = list(range(1, n + 1))
    for phi in P.automorphisms():
        if list(phi) != ident:
            gens.append(LinearIsometry(P, q, phi, TriangularMap.identity(P, q)))
    for j in range(n):
        for lam in range(2, q):
            U = np.eye(n, dtype=np.int64)
            U[j, j] = lam
            gens.append(LinearIsometry.from_triangular(TriangularMap(P, q, U)))
        for i in range(n):
            if P.less(i + 1, j + 1):
                for mu in range(1, q):
                    U = np.eye(n, dtype=np.int64)
                    U[i, j] = mu
                    gens.append(LinearIsometry.from_triangular(TriangularMap(P, q, U)))
    return gens


def clean_vector(P: Poset, q: int, u) -> tuple[LinearIsometry, tuple[int, ...]]:
    """A triangular isometry T and v = T(u) with supp(v) the maximal
    elements of supp(u), agreeing with u there.

    Each non-maximal support coordinate i is cancelled through the column
    of its smallest maximal element above it.
    """
    q = gfq.check_field(q)
    u = gfq.as_vector(u, q)
    if len(u) != P.n:
        raise ValueError("dimension mismatch")
    supp = [i + 1 for i, x in enumerate(u) if x]
    maximal = P.maximal_elements(supp)
    U = np.eye(P.n, dtype=np.int64)
    for i in supp:
        if i in maximal:
            continue
        s = min(s for s in maximal if P.less(i, s))
        U[i - 1, s - 1] = (-u[i - 1] * gfq.f_inv(u[s - 1], q)) % q
    T = LinearIsometry.from_triangular(TriangularMap(P, q, U))
    return T, T.apply(u)


def codes_equivalent(
    P: Poset, C: LinearCode, C2: LinearCode, max_size: int = MAX_GROUP
) -> LinearIsometry | None:
    """A witness T in GL_P with T(C) = C2, or None if no element works."""
    if C.q != C2.q or C.n != C2.n or C.n != P.n:
        raise ValueError("codes must share q and the poset's ground set")
    if C.k != C2.k:
        return None
    for T in enumerate_group(P, C.q, max_size=max_size):
        if T.apply_code(C) == C2:
            return T
    return None
