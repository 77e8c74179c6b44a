"""Supermatrices over a finite-rank Grassmann algebra.

A supermatrix of type ``(n|m)`` is an ``(n+m) x (n+m)`` grid with blocks
``L1`` (n x n), ``L2`` (n x m), ``L3`` (m x n), ``L4`` (m x m).  It is even
when ``L1``, ``L4`` hold even entries and ``L2``, ``L3`` odd ones; odd when
the roles are swapped.

The Berezinian satisfies ``Sdet(exp L) = exp(Str L)``.  Note the supertrace
on the right: ``exp(Sdet L)`` would be wrong already for ``L = diag(t | t)``,
where ``Sdet(exp L) = 1`` but ``Sdet L = 1``.
"""

import itertools
import math

from . import linalg
from .errors import DimMismatch, ExactModeBodyNonzero, ModeMismatch, NotInvertible, OddMatrix, ParityViolation, RankMismatch
from .grassmann import GrassmannElement
from .scalars import EXACT, FLOAT, to_exact

G = GrassmannElement


# -- plain matrices over the Grassmann algebra ---------------------------

def mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    if rows == 0 or cols == 0:
        return [[None] * cols for _ in range(rows)]
    rank, mode = a[0][0].rank, a[0][0].mode
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = G.zero(rank, mode)
            for t in range(inner):
                x, y = a[i][t], b[t][j]
                if x.terms and y.terms:
                    acc = acc + x * y
            row.append(acc)
        out.append(row)
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_identity(size, rank, mode=EXACT):
    return [[G.scalar(rank, int(i == j), mode) for j in range(size)] for i in range(size)]


def _is_zero_matrix(a):
    return all(x.is_zero() for row in a for x in row)


def _body_matrix(a):
    return [[x.body() for x in row] for row in a]


def mat_inverse(a):
    """Inverse of a square matrix over the Grassmann algebra with invertible body.

    The body is inverted by exact elimination, the soul by a finite Neumann
    series (soul products of length N+1 vanish).
    """
    size = len(a)
    if size == 0:
        return []
    rank, mode = a[0][0].rank, a[0][0].mode
    body = _body_matrix(a)
    binv_exact = linalg.inverse([[to_exact(x) for x in row] for row in body])
    binv = [[G.scalar(rank, x, mode) for x in row] for row in binv_exact]
    soul = [[x.soul() for x in row] for row in a]
    k = mat_mul(binv, soul)
    neg_k = [[-x for x in row] for row in k]
    acc = mat_identity(size, rank, mode)
    power = acc
    for _ in range(rank + 1):
        power = mat_mul(power, neg_k)
        if _is_zero_matrix(power):
            break
        acc = mat_add(acc, power)
    return mat_mul(acc, binv)


def even_det(a):
    """Determinant of a square matrix with even (hence commuting) entries."""
    size = len(a)
    if size == 0:
        return None
    rank, mode = a[0][0].rank, a[0][0].mode
    if size <= 6:
        total = G.zero(rank, mode)
        for perm in itertools.permutations(range(size)):
            term = G.one(rank, mode)
            for i, j in enumerate(perm):
                term = term * a[i][j]
                if term.is_zero():
                    break
            if term.is_zero():
                continue
            total = total + term if _perm_sign(perm) > 0 else total - term
        return total
    # elimination with body-invertible pivots; entries commute
    m = [list(row) for row in a]
    det = G.one(rank, mode)
    for col in range(size):
        pivot = next((i for i in range(col, size) if m[i][col].body() != 0), None)
        if pivot is None:
            raise NotInvertible("no body-invertible pivot; determinant not computed by elimination")
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        p = m[col][col]
        det = det * p
        pinv = p.inv()
        for i in range(col + 1, size):
            f = m[i][col] * pinv
            if f.is_zero():
                continue
            m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return det


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# -- supermatrices ----------------------------------------------------

class Supermatrix:
    """Square supermatrix of type ``(n|m)`` with a declared parity.

    Construction does not check the block-parity rule; call :meth:`validate`.
    """

    __slots__ = ("n", "m", "entries", "parity", "rank", "mode")

    def __init__(self, n, m, entries, parity=0, rank=None, mode=None):
        size = n + m
        if len(entries) != size or any(len(row) != size for row in entries):
            raise DimMismatch(f"expected a {size}x{size} grid")
        if size:
            first = next((x for row in entries for x in row if isinstance(x, G)), None)
            rank = first.rank if rank is None and first is not None else rank
            mode = first.mode if mode is None and first is not None else mode
        if rank is None:
            raise ValueError("rank is required when no entry is a GrassmannElement")
        mode = mode or EXACT
        grid = []
        for row in entries:
            out = []
            for x in row:
                if not isinstance(x, G):
                    x = G.scalar(rank, x, mode)
                elif x.rank != rank:
                    raise RankMismatch(f"entry rank {x.rank} vs {rank}")
                elif x.mode != mode:
                    raise ModeMismatch(f"entry mode {x.mode} vs {mode}")
                out.append(x)
            grid.append(tuple(out))
        self.n, self.m = n, m
        self.entries = tuple(grid)
        self.parity = parity % 2
        self.rank, self.mode = rank, mode

    @property
    def size(self):
        return self.n + self.m

    @classmethod
    def identity(cls, n, m, rank, mode=EXACT):
        return cls(n, m, mat_identity(n + m, rank, mode), 0, rank, mode)

    @classmethod
    def zeros(cls, n, m, rank, parity=0, mode=EXACT):
        size = n + m
        return cls(n, m, [[G.zero(rank, mode)] * size for _ in range(size)], parity, rank, mode)

    def slot_parity(self, i):
        return 0 if i < self.n else 1

    def expected_parity(self, i, j):
        return (self.parity + self.slot_parity(i) + self.slot_parity(j)) % 2

    def validate(self):
        for i, row in enumerate(self.entries):
            for j, x in enumerate(row):
                want = self.expected_parity(i, j)
                if x.is_zero():
                    continue
                if (want == 0 and not x.is_even()) or (want == 1 and not x.is_odd()):
                    raise ParityViolation(i, j)
        return True

    def is_valid(self):
        try:
            return self.validate()
        except ParityViolation:
            return False

    def blocks(self):
        n = self.n
        e = self.entries
        l1 = [list(r[:n]) for r in e[:n]]
        l2 = [list(r[n:]) for r in e[:n]]
        l3 = [list(r[:n]) for r in e[n:]]
        l4 = [list(r[n:]) for r in e[n:]]
        return l1, l2, l3, l4

    @classmethod
    def from_blocks(cls, l1, l2, l3, l4, parity=0, rank=None, mode=None):
        n, m = len(l1), len(l4)
        rows = [list(l1[i]) + list(l2[i]) for i in range(n)] + [list(l3[i]) + list(l4[i]) for i in range(m)]
        return cls(n, m, rows, parity, rank, mode)

    def _check_compatible(self, other):
        if (self.n, self.m) != (other.n, other.m):
            raise DimMismatch(f"({self.n}|{self.m}) vs ({other.n}|{other.m})")
        if self.rank != other.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")
        if self.mode != other.mode:
            raise ModeMismatch(f"mode {self.mode} vs {other.mode}")

    def _like(self, entries, parity=None):
        return Supermatrix(self.n, self.m, entries, self.parity if parity is None else parity, self.rank, self.mode)

    def __add__(self, other):
        self._check_compatible(other)
        return self._like(mat_add(self.entries, other.entries))

    def __sub__(self, other):
        self._check_compatible(other)
        return self._like(mat_sub(self.entries, other.entries))

    def __neg__(self):
        return self._like([[-x for x in row] for row in self.entries])

    def scale(self, s):
        """Multiply every entry on the left by ``s`` (scalar or even element)."""
        return self._like([[s * x for x in row] for row in self.entries])

    def __matmul__(self, other):
        return sm_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, Supermatrix):
            return NotImplemented
        return (self.n, self.m, self.rank, self.mode) == (other.n, other.m, other.rank, other.mode) \
            and self.entries == other.entries

    def __hash__(self):
        return hash((self.n, self.m, self.entries))

    def body(self):
        return _body_matrix(self.entries)

    def is_zero(self):
        return _is_zero_matrix(self.entries)

    def __repr__(self):
        rows = "; ".join(", ".join(str(x) for x in row) for row in self.entries)
        return f"Supermatrix(({self.n}|{self.m}), parity={self.parity}, [{rows}])"

    def to_dict(self):
        return {"n": self.n, "m": self.m, "parity": self.parity,
                "entries": [[x.to_dict() for x in row] for row in self.entries]}

    @classmethod
    def from_dict(cls, data):
        # scalar entries are shorthand for constants and need a top-level rank
        rank = data.get("rank")
        mode = data.get("mode", EXACT)
        if rank is None and any(not isinstance(x, dict) for row in data["entries"] for x in row):
            raise ValueError("scalar entries need a top-level 'rank'")
        entries = [[G.from_dict(x) if isinstance(x, dict) else G.scalar(int(rank), x, mode) for x in row]
                   for row in data["entries"]]
        if entries:
            rank, mode = entries[0][0].rank, entries[0][0].mode
        rank = int(rank or 0)
        return cls(int(data["n"]), int(data["m"]), entries, int(data.get("parity", 0)), rank, mode)


def sm_validate(L):
    return L.validate()


def sm_mul(a, b):
    a._check_compatible(b)
    return Supermatrix(a.n, a.m, mat_mul(a.entries, b.entries), a.parity + b.parity, a.rank, a.mode)


def sm_str(L):
    L.validate()
    acc = G.zero(L.rank, L.mode)
    for i in range(L.n):
        acc = acc + L.entries[i][i]
    tr4 = G.zero(L.rank, L.mode)
    for i in range(L.n, L.size):
        tr4 = tr4 + L.entries[i][i]
    return acc - tr4 if L.parity == 0 else acc + tr4


def sm_st(L):
    """Supertranspose ``[[L1^t, s L3^t], [-s L2^t, L4^t]]`` with ``s = (-1)^[L]``."""
    L.validate()
    s = -1 if L.parity else 1
    size, n = L.size, L.n
    out = [[None] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            x = L.entries[j][i]
            if i < n and j >= n:        # upper-right block holds L3^t
                x = x * s
            elif i >= n and j < n:      # lower-left block holds L2^t
                x = x * (-s)
            out[i][j] = x
    return L._like(out)


def sm_supercommutator(a, b):
    ab, ba = sm_mul(a, b), sm_mul(b, a)
    if a.parity * b.parity:
        return ab + ba
    return ab - ba


def _require_even(L):
    if L.parity != 0:
        raise OddMatrix("odd supermatrices are never invertible")
    L.validate()


def sm_inv(L):
    _require_even(L)
    if L.size == 0:
        return L
    return L._like(mat_inverse(L.entries))


def sm_sdet(L):
    """Berezinian ``det(L1 - L2 L4^-1 L3) / det(L4)``."""
    _require_even(L)
    rank, mode = L.rank, L.mode
    l1, l2, l3, l4 = L.blocks()
    if L.m == 0:
        d = even_det(l1)
        if d is None:
            return G.one(rank, mode)
        if d.body() == 0:
            raise NotInvertible("singular body")
        return d
    l4inv = mat_inverse(l4)
    if L.n:
        schur = mat_sub(l1, mat_mul(mat_mul(l2, l4inv), l3))
        d1 = even_det(schur)
        if d1.body() == 0:
            raise NotInvertible("singular body")
    else:
        d1 = G.one(rank, mode)
    return d1 * even_det(l4).inv()


def sm_exp(L):
    size, rank, mode = L.size, L.rank, L.mode
    ident = mat_identity(size, rank, mode)
    if mode == EXACT:
        if any(x.body() != 0 for row in L.entries for x in row):
            raise ExactModeBodyNonzero("exact supermatrix exp needs zero-body entries")
        acc, power = ident, ident
        for k in range(1, (rank + 1) * max(size, 1) + 1):
            power = [[x * to_exact(1) / k for x in row] for row in mat_mul(power, L.entries)]
            if _is_zero_matrix(power):
                break
            acc = mat_add(acc, power)
        return L._like(acc)
    # scaling and squaring
    norm = max((sum(x.norm() for x in row) for row in L.entries), default=0.0)
    squarings = max(0, int(math.ceil(math.log2(norm / 0.25)))) if norm > 0.25 else 0
    scaled = [[x * (0.5 ** squarings) for x in row] for row in L.entries]
    acc, power = ident, ident
    for k in range(1, 30):
        power = [[x * (1.0 / k) for x in row] for row in mat_mul(power, scaled)]
        acc = mat_add(acc, power)
        if max((x.norm() for row in power for x in row), default=0.0) < 1e-18:
            break
    for _ in range(squarings):
        acc = mat_mul(acc, acc)
    return L._like(acc)
