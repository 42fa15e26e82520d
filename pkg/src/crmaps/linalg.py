"""Exact linear algebra over Gaussian rationals and rational-function fields."""
from __future__ import annotations

from itertools import combinations
from typing import Callable, Sequence

from .algebra.scalars import ONE, ZERO, conj, real_sign


def _is_zero(x) -> bool:
    z = getattr(x, "is_zero", None)
    if z is not None and not callable(z):
        return bool(z)
    return not x


def det(M: Sequence[Sequence], one=None):
    """Determinant by fraction-free (Bareiss) elimination.

    Entries may be scalars or :class:`RationalFn`; the division in each step
    is exact.
    """
    n = len(M)
    if n == 0:
        return ONE if one is None else one
    A = [list(r) for r in M]
    sign = 1
    prev = ONE if one is None else one
    for k in range(n - 1):
        if _is_zero(A[k][k]):
            swap = next((i for i in range(k + 1, n) if not _is_zero(A[i][k])), None)
            if swap is None:
                return A[k][k] * 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev
        prev = A[k][k]
    return A[n - 1][n - 1] if sign > 0 else -A[n - 1][n - 1]


def rank(M: Sequence[Sequence]) -> int:
    """Rank of a scalar matrix by Gaussian elimination."""
    A = [list(r) for r in M]
    if not A:
        return 0
    rows, cols = len(A), len(A[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = ONE / A[r][c]
        for i in range(r + 1, rows):
            if A[i][c]:
                f = A[i][c] * inv
                for j in range(c, cols):
                    A[i][j] = A[i][j] - f * A[r][j]
        r += 1
        if r == rows:
            break
    return r


def minors(M: Sequence[Sequence], k: int):
    n, m = len(M), len(M[0]) if M else 0
    for rows in combinations(range(n), k):
        for cols in combinations(range(m), k):
            yield rows, cols, [[M[i][j] for j in cols] for i in rows]


def function_rank(M: Sequence[Sequence], samples: Sequence[Callable[[object], object]] = ()) -> int:
    """Generic rank of a matrix of rational functions.

    ``samples`` are evaluators (entry -> scalar); a nonzero evaluated minor
    certifies a nonzero minor, otherwise the symbolic determinant decides.
    """
    if not M:
        return 0
    size = min(len(M), len(M[0]))
    best = 0
    if samples:
        for ev in samples:
            try:
                best = max(best, rank([[ev(x) for x in row] for row in M]))
            except ZeroDivisionError:
                continue
        if best == size:
            return size
    for k in range(size, best, -1):
        for _, _, sub in minors(M, k):
            if not _is_zero(det(sub)):
                return k
    return best


def inertia(M: Sequence[Sequence]) -> tuple[int, int, int]:
    """``(positive, negative, zero)`` counts of a Hermitian scalar matrix.

    Uses Sylvester's criterion on leading principal minors when they are all
    nonzero, and a pivoted congruence (LDL*) otherwise.
    """
    n = len(M)
    prev = ONE
    signs = []
    for k in range(1, n + 1):
        d = det([row[:k] for row in M[:k]])
        if not d:
            break
        signs.append(real_sign(d) * real_sign(prev))
        prev = d
    else:
        pos = sum(1 for s in signs if s > 0)
        return pos, n - pos, 0
    return _ldl_inertia(M)


def _ldl_inertia(M) -> tuple[int, int, int]:
    A = [list(r) for r in M]
    n = len(A)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if A[i][i]), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i < j and A[i][j]), None)
            if pair is None:
                break
            # congruence row_i += c*row_j, col_i += conj(c)*col_j makes A[i][i] = 2|c|^2
            i, j = pair
            c = A[i][j]
            cc = conj(c)
            for k in range(n):
                A[i][k] = A[i][k] + c * A[j][k]
            for k in range(n):
                A[k][i] = A[k][i] + cc * A[k][j]
            continue
        d = A[piv][piv]
        s = real_sign(d)
        pos += s > 0
        neg += s < 0
        active.remove(piv)
        for i in active:
            if A[i][piv]:
                f = A[i][piv] / d
                for k in active:
                    A[i][k] = A[i][k] - f * A[piv][k]
                A[i][piv] = ZERO
    return pos, neg, n - pos - neg


def mat_eval(M, ev):
    return [[ev(x) for x in row] for row in M]


def is_hermitian(M, conj=lambda x: x.conj()) -> bool:
    n = len(M)
    return all(M[i][j] == conj(M[j][i]) for i in range(n) for j in range(n))


__all__ = ["det", "function_rank", "inertia", "is_hermitian", "mat_eval", "minors", "rank"]
