"""Smith normal form over the integers by gcd-pivot elimination.

The pivot is re-chosen as the smallest nonzero absolute value of the
working submatrix (ties by row-major position) after every Euclidean
step, so each round either finishes the stage or strictly shrinks the
pivot; this both guarantees termination and keeps intermediate entries
from compounding.  Python integers keep the arithmetic exact no matter
how large entries grow.
"""

from __future__ import annotations


def smith_normal_form(matrix) -> list[int]:
    """Invariant factors d_1 | d_2 | ... | d_r of an integer matrix.

    All factors are positive and the rank is their count.

    >>> smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    [1, 1, 1]
    >>> smith_normal_form([[2, -2]])
    [2]
    >>> smith_normal_form([[2, 4], [6, 8]])
    [2, 4]
    """
    m = [[int(x) for x in row] for row in matrix]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    if any(len(row) != ncols for row in m):
        raise ValueError("matrix rows have unequal lengths")

    factors: list[int] = []
    for t in range(min(nrows, ncols)):
        if not _stage(m, t, nrows, ncols):
            break
        factors.append(m[t][t])
    return factors


def _stage(m, t, nrows, ncols) -> bool:
    """Diagonalize position t; False when the submatrix is all zero."""
    while True:
        pivot = _smallest_nonzero(m, t, nrows, ncols)
        if pivot is None:
            return False
        pi, pj = pivot
        if pi != t:
            m[t], m[pi] = m[pi], m[t]
        if pj != t:
            _swap_cols(m, t, pj)
        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
        d = m[t][t]

        # One Euclidean step on a non-multiple leaves a remainder smaller
        # than the submatrix minimum, so re-pivoting strictly progresses.
        reduced = False
        for i in range(t + 1, nrows):
            if m[i][t] % d:
                q = m[i][t] // d
                m[i] = [a - q * b for a, b in zip(m[i], m[t])]
                reduced = True
                break
        if reduced:
            continue
        for i in range(t + 1, nrows):
            if m[i][t]:
                q = m[i][t] // d
                m[i] = [a - q * b for a, b in zip(m[i], m[t])]

        # Column t is now d, 0, ..., 0, so clearing row t only changes row t.
        for j in range(t + 1, ncols):
            if m[t][j] % d:
                _add_col(m, j, t, -(m[t][j] // d))
                _swap_cols(m, t, j)
                reduced = True
                break
        if reduced:
            continue
        for j in range(t + 1, ncols):
            if m[t][j]:
                _add_col(m, j, t, -(m[t][j] // d))

        stray = _non_multiple(m, t, nrows, ncols)
        if stray is None:
            return True
        # Fold the offending row into row t and shrink the pivot to the
        # nonzero remainder of the non-multiple entry.
        i, j = stray
        m[t] = [a + b for a, b in zip(m[t], m[i])]
        _add_col(m, j, t, -(m[t][j] // d))
        _swap_cols(m, t, j)


def _smallest_nonzero(m, t, nrows, ncols):
    best = None
    for i in range(t, nrows):
        for j in range(t, ncols):
            v = m[i][j]
            if v and (best is None or abs(v) < abs(m[best[0]][best[1]])):
                best = (i, j)
    return best


def _swap_cols(m, a, b):
    for row in m:
        row[a], row[b] = row[b], row[a]


def _add_col(m, dst, src, mult):
    for row in m:
        row[dst] += mult * row[src]


def _non_multiple(m, t, nrows, ncols):
    d = m[t][t]
    for i in range(t + 1, nrows):
        for j in range(t + 1, ncols):
            if m[i][j] % d:
                return (i, j)
    return None
