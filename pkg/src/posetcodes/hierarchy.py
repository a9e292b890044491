"""Everything that needs the poset to be hierarchical.

A hierarchical poset splits F_q^n into its levels, and every linear code
is isometric to a direct sum of per-level subcodes (the canonical
decomposition).  That structure yields closed forms for the minimum
distance and the packing, covering and Chebyshev radii, a product formula
for the weight enumerator, and an explicit MacWilliams identity relating
a code's enumerator to its dual's enumerator under the dual poset.  Each
closed form here is contract-bound to equal the brute-force oracles in
:mod:`posetcodes.pmetric`.

A note on the MacWilliams transform: the substitution used is the
classical one, X -> (1 - X) / (1 + (q - 1) X) with the (1 + (q-1)X)^n
prefactor, and each per-level auxiliary term is normalized so that it
equals (dual Hamming enumerator of that component) - 1.  The variant with
denominator 1 - (q-1)X, which sometimes appears in print, fails the
brute-force cross-check for every q = 3 test case, as does normalizing
the auxiliary polynomial by subtracting 1 instead of the component's
codeword count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import gfq
from .code import (
    LinearCode,
    hamming_chebyshev,
    hamming_covering_radius,
    hamming_min_distance,
    hamming_weight_enumerator,
)
from .errors import FieldError, InternalCheckError, NonHierarchicalError, ZeroCodeError
from .isometry import LinearIsometry, TriangularMap
from .pmetric import PWeightEnumerator
from .poset import Poset


def _require_hierarchical(P: Poset) -> None:
    if not P.is_hierarchical:
        d = P.hierarchy_defect()
        raise NonHierarchicalError(
            f"poset is not hierarchical (defect a={d.a}, b={d.b} at level {d.alpha}); "
            "see posetcodes.characterize for the failure analysis"
        )


@dataclass(frozen=True)
class CanonicalDecomposition:
    """A code rewritten, up to isometry, as a direct sum over levels.

    ``components[i]`` is a code of length n_{i+1} living on the
    coordinates ``level_coords[i]``; the certificate satisfies
    T(C) = the embedded direct sum.
    """

    poset: Poset
    code: LinearCode
    components: tuple[LinearCode, ...]
    certificate: LinearIsometry
    level_coords: tuple[tuple[int, ...], ...]
    level_offsets: tuple[int, ...]

    def assembled(self) -> LinearCode:
        """The direct sum embedded back into F_q^n."""
        rows = []
        for comp, coords in zip(self.components, self.level_coords):
            for row in comp.generator:
                full = np.zeros(self.poset.n, dtype=np.int64)
                for x, j in zip(row, coords):
                    full[j - 1] = x
                rows.append(full)
        return LinearCode(self.code.q, self.poset.n, rows)

    @property
    def dimensions(self) -> tuple[int, ...]:
        return tuple(c.k for c in self.components)


def canonical_decompose(P: Poset, C: LinearCode) -> CanonicalDecomposition:
    """Split C, up to a poset isometry, into per-level component codes.

    The generator is row-reduced with column priority running down the
    levels (highest level first, largest index first inside a level), so
    each row's pivot is a poset-maximal coordinate of that row and the
    unique nonzero entry of its column.  Each pivot's column of a
    triangular map then cancels the row's entries below the pivot level;
    because pivot columns are standard-basis columns, cleaning one row
    never spoils another.  Grouping the cleaned rows by pivot level gives
    the components.
    """
    _require_hierarchical(P)
    if C.n != P.n:
        raise ValueError("code length does not match the poset")
    q = C.q
    by_level = sorted(range(1, P.n + 1), key=lambda j: (P.level_of(j), j))
    priority = [j - 1 for j in reversed(by_level)]
    R, pivots = gfq.rref_under_order(C.generator, q, priority)

    U = np.eye(P.n, dtype=np.int64)
    for row, p in zip(R, pivots):
        lev = P.level_of(p + 1)
        for i in range(P.n):
            if row[i] and P.level_of(i + 1) < lev:
                U[i, p] = (-row[i]) % q  # row[p] == 1 after reduction
    tri = TriangularMap(P, q, U)
    certificate = LinearIsometry.from_triangular(tri)
    cleaned = (R @ U.T) % q

    level_coords = tuple(P.levels)
    offsets = []
    total = 0
    for g in P.levels:
        offsets.append(total)
        total += len(g)
    components = []
    for lev, coords in enumerate(level_coords, start=1):
        rows = [
            cleaned[r][[j - 1 for j in coords]]
            for r, p in enumerate(pivots)
            if P.level_of(p + 1) == lev
        ]
        components.append(LinearCode(q, len(coords), rows))
    return CanonicalDecomposition(
        poset=P,
        code=C,
        components=tuple(components),
        certificate=certificate,
        level_coords=level_coords,
        level_offsets=tuple(offsets),
    )


@dataclass(frozen=True)
class HierarchicalInvariants:
    """Closed-form invariants; contract: equal to brute_invariants."""

    d: int
    packing: int
    covering: int
    chebyshev: int
    t1: int
    h: int
    r: int


def closed_invariants(P: Poset, C: LinearCode) -> HierarchicalInvariants:
    """The four metric invariants from the canonical decomposition.

    With t1 / r the lowest / highest level carrying a nonzero component
    and h the lowest level from which everything above is a full space:

        d         = N_{t1} + d_H(C_{t1})
        packing   = N_{t1} + floor((d_H(C_{t1}) - 1) / 2)
        covering  = N_h    + Cov_H(C_h)
        chebyshev = N_r    + R_H(C_r)

    where N_i sums the level sizes below level i.  When C is the whole
    space the h-rule degenerates to h = 1 and the covering radius is 0,
    the limit of the definition (confirmed by the brute oracle).
    """
    _require_hierarchical(P)
    if C.is_zero:
        raise ZeroCodeError("invariant formulas need a nonzero code")
    dec = canonical_decompose(P, C)
    dims = dec.dimensions
    sizes = P.level_sizes
    l = P.height
    N = dec.level_offsets

    t1 = next(i for i in range(1, l + 1) if dims[i - 1] > 0)
    r = max(i for i in range(1, l + 1) if dims[i - 1] > 0)
    h = l
    while h > 1 and dims[h - 1] == sizes[h - 1]:
        h -= 1

    d_top = hamming_min_distance(dec.components[t1 - 1])
    cov_h = hamming_covering_radius(dec.components[h - 1])
    cheb_r, _ = hamming_chebyshev(dec.components[r - 1])
    return HierarchicalInvariants(
        d=N[t1 - 1] + d_top,
        packing=N[t1 - 1] + (d_top - 1) // 2,
        covering=N[h - 1] + cov_h,
        chebyshev=N[r - 1] + cheb_r,
        t1=t1,
        h=h,
        r=r,
    )


def is_p_perfect(P: Poset, C: LinearCode) -> bool:
    """Whether the packing and covering radii coincide.

    Computed twice: from the radii, and structurally (everything above
    the lowest nonzero component is a full space and that component is
    Hamming-perfect).  The two routes must agree.
    """
    inv = closed_invariants(P, C)
    by_radii = inv.packing == inv.covering

    dec = canonical_decompose(P, C)
    dims = dec.dimensions
    sizes = P.level_sizes
    t1 = inv.t1
    above_full = all(dims[i] == sizes[i] for i in range(t1, P.height))
    comp = dec.components[t1 - 1]
    ham_perfect = hamming_covering_radius(comp) == (hamming_min_distance(comp) - 1) // 2
    structural = above_full and ham_perfect

    if by_radii != structural:
        raise InternalCheckError(
            f"perfection routes disagree: radii say {by_radii}, structure says {structural}"
        )
    return by_radii


def chebyshev_binary(P: Poset, C: LinearCode) -> int:
    """Binary-only shortcut: sum of level sizes up to r minus Cov_H(C_r).

    Valid because complements of balls are balls in F_2^n, which ties the
    Hamming covering and Chebyshev radii as Cov = n - R.  Rejected for
    q != 2: the code {00, 11, 22} over F_3 has Cov_H = 1 but R_H = 2.
    """
    if C.q != 2:
        raise FieldError("the covering-radius shortcut only holds over F_2")
    _require_hierarchical(P)
    if C.is_zero:
        raise ZeroCodeError("invariant formulas need a nonzero code")
    dec = canonical_decompose(P, C)
    dims = dec.dimensions
    r = max(i for i in range(1, P.height + 1) if dims[i - 1] > 0)
    prefix = sum(P.level_sizes[:r])
    return prefix - hamming_covering_radius(dec.components[r - 1])


def hierarchical_weight_enumerator(P: Poset, C: LinearCode) -> PWeightEnumerator:
    """Product formula for the P-weight enumerator.

    A codeword whose highest nonzero component sits at level j has weight
    (levels below j) + (Hamming weight at level j), and the components
    below are free, so level j contributes X^{s_{j-1}} (W_j - 1) times the
    codeword counts below.
    """
    _require_hierarchical(P)
    dec = canonical_decompose(P, C)
    q = C.q
    out = [0] * (P.n + 1)
    out[0] = 1
    shift = 0
    mult = 1
    for comp, coords in zip(dec.components, dec.level_coords):
        W = hamming_weight_enumerator(comp)
        for w in range(1, len(W)):
            out[shift + w] += W[w] * mult
        shift += len(coords)
        mult *= comp.codeword_count
    return PWeightEnumerator(tuple(out))


def classical_macwilliams_transform(W, q: int, n: int, k: int) -> tuple[int, ...]:
    """Hamming enumerator of the dual code from the code's enumerator.

    Exact integer evaluation of q^{-k} sum_i A_i (1-X)^i (1+(q-1)X)^{n-i};
    a non-integral or negative coefficient means the input was not the
    enumerator it claimed to be and raises InternalCheckError.
    """
    q = gfq.check_field(q)
    W = tuple(int(x) for x in W)
    if len(W) != n + 1:
        raise ValueError(f"expected {n + 1} coefficients, got {len(W)}")
    if sum(W) != q**k:
        raise InternalCheckError(f"enumerator sums to {sum(W)}, expected q^k = {q ** k}")
    acc = [0] * (n + 1)
    for i, a in enumerate(W):
        if a == 0:
            continue
        term = _poly_mul(_binomial_poly(1, -1, i), _binomial_poly(1, q - 1, n - i))
        for j, c in enumerate(term):
            acc[j] += a * c
    scale = q**k
    out = []
    for c in acc:
        if c % scale or c < 0:
            raise InternalCheckError("transform produced a non-enumerator; bad input table")
        out.append(c // scale)
    return tuple(out)


def macwilliams_dual_enumerator(P: Poset, C: LinearCode) -> PWeightEnumerator:
    """Enumerator of the dual code under the dual poset, by formula.

    The dual code decomposes over the dual poset with the level order
    reversed, level i carrying the Hamming dual of component i.  Walking
    levels from the top: the term for level i is shifted by the sizes of
    the levels above it and multiplied by the dual-component counts
    q^{n_j - k_j} accumulated so far; its enumerator part is the
    MacWilliams transform of component i's enumerator, minus its constant
    term 1.
    """
    _require_hierarchical(P)
    dec = canonical_decompose(P, C)
    q = C.q
    out = [0] * (P.n + 1)
    out[0] = 1
    shift = 0
    mult = 1
    for comp, coords in zip(reversed(dec.components), reversed(dec.level_coords)):
        n_i = len(coords)
        Wd = classical_macwilliams_transform(
            hamming_weight_enumerator(comp), q, n_i, comp.k
        )
        for w in range(1, n_i + 1):
            out[shift + w] += Wd[w] * mult
        shift += n_i
        mult *= q ** (n_i - comp.k)
    return PWeightEnumerator(tuple(out))


def _binomial_poly(a: int, b: int, e: int) -> list[int]:
    """Coefficients of (a + b X)^e as exact integers."""
    return [math.comb(e, j) * a ** (e - j) * b**j for j in range(e + 1)]


def _poly_mul(p: list[int], r: list[int]) -> list[int]:
    out = [0] * (len(p) + len(r) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(r):
                out[i + j] += x * y
    return out
