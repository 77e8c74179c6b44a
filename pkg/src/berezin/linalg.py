"""Exact Gaussian elimination over the rationals."""

from .errors import NotInvertible
from .scalars import to_exact


def rank(rows):
    """Rank of a rational matrix given as a list of rows."""
    m = [[to_exact(x) for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][col]
        prow = m[r]
        for i in range(r + 1, len(m)):
            f = m[i][col]
            if f != 0:
                f = f / p
                row = m[i]
                for j in range(col, ncols):
                    if prow[j] != 0:
                        row[j] -= f * prow[j]
        r += 1
        if r == len(m):
            break
    return r


def inverse(rows):
    """Inverse of a square rational matrix; raises NotInvertible if singular."""
    n = len(rows)
    m = [[to_exact(x) for x in row] + [to_exact(int(i == j)) for j in range(n)]
         for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if m[i][col] != 0), None)
        if pivot is None:
            raise NotInvertible("singular body matrix")
        m[col], m[pivot] = m[pivot], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return [row[n:] for row in m]


def solve(rows, rhs):
    """Solve ``A x = b`` for one exact solution; raises ValueError if inconsistent."""
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    m = [[to_exact(x) for x in row] + [to_exact(b)] for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(nc):
        pivot = next((i for i in range(r, nr) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][col]
        m[r] = [x / p for x in m[r]]
        for i in range(nr):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    if any(row[-1] != 0 for row in m[r:]):
        raise ValueError("inconsistent linear system")
    x = [to_exact(0)] * nc
    for i, col in enumerate(pivots):
        x[col] = m[i][-1]
    return x
