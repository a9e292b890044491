"""Exact arithmetic in prime fields F_q and dense linear algebra over them.

Residues are canonical representatives in [0, q).  Matrices are numpy
integer arrays; with q <= 251 every intermediate product stays far below
2**63, so plain integer arithmetic mod q is exact.  All returned arrays
are marked read-only; operations are pure functions.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import FieldError

MAX_PRIME = 251


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


def check_field(q: int) -> int:
    """Validate a field order: prime and at most 251."""
    q = int(q)
    if not is_prime(q):
        raise FieldError(f"q = {q} is not prime (prime-power fields are not supported)")
    if q > MAX_PRIME:
        raise FieldError(f"q = {q} exceeds the supported maximum {MAX_PRIME}")
    return q


def f_add(a: int, b: int, q: int) -> int:
    return (a + b) % q


def f_sub(a: int, b: int, q: int) -> int:
    return (a - b) % q


def f_mul(a: int, b: int, q: int) -> int:
    return (a * b) % q


def f_neg(a: int, q: int) -> int:
    return (-a) % q


def f_inv(a: int, q: int) -> int:
    if a % q == 0:
        raise FieldError("zero has no multiplicative inverse")
    return pow(a, q - 2, q)  # Fermat; q prime


_OPS = {"add": f_add, "sub": f_sub, "mul": f_mul}
_UNARY_OPS = {"neg": f_neg, "inv": f_inv}


def field_arith(a: int, b: int | None, op: str, q: int) -> int:
    """Dispatch a single field operation; b is ignored for neg/inv."""
    q = check_field(q)
    if op in _OPS:
        return _OPS[op](int(a) % q, int(b) % q, q)
    if op in _UNARY_OPS:
        return _UNARY_OPS[op](int(a) % q, q)
    raise FieldError(f"unknown op {op!r}")


def as_matrix(rows, q: int, cols: int | None = None) -> np.ndarray:
    """Build a validated 2-D int64 array of residues in [0, q)."""
    M = np.array(rows, dtype=np.int64)
    if M.ndim == 1:
        M = M.reshape((0, cols if cols is not None else 0)) if M.size == 0 else M.reshape((1, -1))
    if M.ndim != 2:
        raise ValueError("matrix input must be 2-dimensional")
    if M.size and (M.min() < 0 or M.max() >= q):
        raise ValueError(f"entries must be residues in [0, {q})")
    return M


def as_vector(v, q: int) -> tuple[int, ...]:
    """Canonical tuple of residues in [0, q)."""
    out = tuple(int(x) for x in v)
    if any(x < 0 or x >= q for x in out):
        raise ValueError(f"entries must be residues in [0, {q})")
    return out


def rref_under_order(M, q: int, column_order: Sequence[int] | None = None):
    """Reduced row echelon form with a custom pivot-column priority.

    ``column_order`` lists column indices from highest to lowest priority
    (default: natural order).  The pivot of each surviving row is its
    highest-priority nonzero column, normalized to 1 and eliminated from
    every other row, so each pivot column is a standard-basis column.
    Zero rows are dropped.

    Returns ``(R, pivots)`` where pivots appear in scan order, i.e. at
    strictly increasing positions of ``column_order``.  The row space is
    preserved exactly.
    """
    q = check_field(q)
    A = as_matrix(M, q).copy()
    k, n = A.shape
    if column_order is None:
        column_order = range(n)
    r = 0
    pivots: list[int] = []
    for col in column_order:
        if r == k:
            break
        hit = None
        for i in range(r, k):
            if A[i, col]:
                hit = i
                break
        if hit is None:
            continue
        if hit != r:
            A[[r, hit]] = A[[hit, r]]
        A[r] = (A[r] * f_inv(int(A[r, col]), q)) % q
        for i in range(k):
            if i != r and A[i, col]:
                A[i] = (A[i] - A[i, col] * A[r]) % q
        pivots.append(int(col))
        r += 1
    R = A[:r]
    R.setflags(write=False)
    return R, pivots


def rref(M, q: int):
    """RREF with natural (leftmost-first) column priority."""
    return rref_under_order(M, q)


def rank(M, q: int) -> int:
    return rref(M, q)[0].shape[0]


def kernel(M, q: int, cols: int | None = None) -> np.ndarray:
    """Basis of the right kernel {v : M v^T = 0}, one row per basis vector.

    Row count is n - rank(M); kernel of a 0-row matrix is the full space.
    """
    q = check_field(q)
    A = as_matrix(M, q, cols=cols)
    n = A.shape[1]
    R, pivots = rref(A, q)
    free = [j for j in range(n) if j not in pivots]
    B = np.zeros((len(free), n), dtype=np.int64)
    for row, f in enumerate(free):
        B[row, f] = 1
        for i, p in enumerate(pivots):
            B[row, p] = (-R[i, f]) % q
    B.setflags(write=False)
    return B


def in_row_space(R: np.ndarray, pivots: Sequence[int], v, q: int) -> bool:
    """Membership test against a reduced (RREF) basis."""
    w = np.array(as_vector(v, q), dtype=np.int64)
    if w.shape[0] != R.shape[1]:
        raise ValueError("dimension mismatch")
    for i, p in enumerate(pivots):
        if w[p]:
            w = (w - w[p] * R[i]) % q
    return not w.any()


def inv_matrix(M, q: int) -> np.ndarray:
    """Inverse of a square matrix mod q (raises if singular)."""
    q = check_field(q)
    A = as_matrix(M, q)
    n = A.shape[0]
    if A.shape[1] != n:
        raise ValueError("matrix must be square")
    aug = np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1)
    R, pivots = rref(aug, q)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    out = np.ascontiguousarray(R[:, n:])
    out.setflags(write=False)
    return out


def all_vectors_array(q: int, n: int) -> np.ndarray:
    """All q**n vectors as rows of digits, in lexicographic order.

    Row i holds the big-endian base-q digits of i, so the array index
    doubles as a vector id.
    """
    size = q**n
    idx = np.arange(size, dtype=np.int64)
    digits = np.empty((size, n), dtype=np.uint8)
    for j in range(n):
        digits[:, j] = (idx // q ** (n - 1 - j)) % q
    digits.setflags(write=False)
    return digits


def radix_powers(q: int, n: int) -> np.ndarray:
    """Big-endian place values matching :func:`all_vectors_array`."""
    out = np.array([q ** (n - 1 - j) for j in range(n)], dtype=np.int64)
    out.setflags(write=False)
    return out
