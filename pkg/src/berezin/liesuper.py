"""Lie superalgebras by structure constants and their Chevalley-Eilenberg complex.

Basis indices are 0-based.  ``bracket[(i, j)]`` maps ``k`` to ``f^k_{ij}``.

Cochains with trivial coefficients are graded-alternating: swapping two
adjacent arguments ``x, y`` multiplies the value by ``-(-1)^([x][y])``.
They are stored on canonical tuples (nondecreasing indices, no repeated
even index).  The coboundary is

    (dc)(x_1..x_{k+1}) = sum_{i<j} (-1)^(i+j) K_ij c([x_i, x_j], x_1..^i..^j..x_{k+1})

where ``K_ij`` is the Koszul sign of moving ``x_i`` and then ``x_j`` to the
front past the arguments that precede them.
"""

import os
from functools import lru_cache
from itertools import combinations_with_replacement

from .errors import (AntisymmetryViolation, DegreeOverflow, DimMismatch, IndexOutOfRange,
                     JacobiViolation, ParityViolation)
from .linalg import rank as rational_rank
from .linalg import solve
from .scalars import format_exact, to_exact

DEFAULT_ODD_CAP = 6


def odd_cap():
    env = os.environ.get("BEREZIN_ODD_CAP")
    return int(env) if env else DEFAULT_ODD_CAP


class LieSuperalgebra:
    __slots__ = ("parities", "bracket", "_valid")

    def __init__(self, parities, bracket=None, fill=True):
        self.parities = tuple(int(p) % 2 for p in parities)
        d = len(self.parities)
        table = {}
        for (i, j), out in (bracket or {}).items():
            if not (0 <= i < d and 0 <= j < d):
                raise IndexOutOfRange(f"bracket index ({i}, {j}) outside 0..{d - 1}")
            clean = {}
            for k, c in out.items():
                if not 0 <= k < d:
                    raise IndexOutOfRange(f"bracket output {k} outside 0..{d - 1}")
                c = to_exact(c)
                if c:
                    clean[k] = clean.get(k, 0) + c
            table[(i, j)] = {k: c for k, c in clean.items() if c}
        if fill:
            for (i, j), out in list(table.items()):
                if (j, i) not in table:
                    s = -1 if self.parities[i] * self.parities[j] else 1
                    table[(j, i)] = {k: -s * c for k, c in out.items()}
        self.bracket = {k: v for k, v in table.items() if v}
        self._valid = False

    @property
    def dim(self):
        return (self.parities.count(0), self.parities.count(1))

    def __len__(self):
        return len(self.parities)

    def br(self, i, j):
        return self.bracket.get((i, j), {})

    def br_vec(self, x, y):
        """Bracket of two elements given as ``{index: coeff}`` (homogeneous parts handled per basis pair)."""
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.br(i, j).items():
                    out[k] = out.get(k, 0) + a * b * c
        return {k: v for k, v in out.items() if v}

    def to_dict(self):
        return {"parities": list(self.parities),
                "brackets": [{"i": i, "j": j,
                              "out": [{"k": k, "coeff": format_exact(c)} for k, c in sorted(out.items())]}
                             for (i, j), out in sorted(self.bracket.items()) if i <= j]}

    @classmethod
    def from_dict(cls, data):
        parities = data["parities"]
        table = {}
        for entry in data.get("brackets", []):
            key = (int(entry["i"]), int(entry["j"]))
            out = table.setdefault(key, {})
            for o in entry.get("out", []):
                k = int(o["k"])
                out[k] = out.get(k, 0) + to_exact(o["coeff"])
        return cls(parities, table)

    def __eq__(self, other):
        return isinstance(other, LieSuperalgebra) and self.parities == other.parities and self.bracket == other.bracket

    def __hash__(self):
        return hash((self.parities, frozenset((k, frozenset(v.items())) for k, v in self.bracket.items())))

    def __repr__(self):
        return f"LieSuperalgebra{self.dim}"


def lsa_validate(g):
    """Check parity, graded antisymmetry and super-Jacobi on all basis triples."""
    p = g.parities
    d = len(p)
    for (i, j), out in g.bracket.items():
        for k in out:
            if p[k] != (p[i] + p[j]) % 2:
                raise ParityViolation(i, j, f"[e{i}, e{j}] has a component along e{k} of the wrong parity")
    for i in range(d):
        for j in range(i, d):
            s = -1 if p[i] * p[j] else 1
            a, b = g.br(i, j), g.br(j, i)
            if a != {k: -s * c for k, c in b.items()}:
                raise AntisymmetryViolation(i, j)
    for i in range(d):
        for j in range(d):
            for k in range(d):
                # (-1)^([x][z]) [x,[y,z]] + cyclic
                total = {}
                for (x, y, z) in ((i, j, k), (j, k, i), (k, i, j)):
                    inner = g.br(y, z)
                    if not inner:
                        continue
                    s = -1 if p[x] * p[z] else 1
                    for t, c in g.br_vec({x: 1}, inner).items():
                        total[t] = total.get(t, 0) + s * c
                if any(total.values()):
                    raise JacobiViolation(i, j, k)
    g._valid = True
    return True


def _ensure_valid(g):
    if not g._valid:
        lsa_validate(g)


# -- cochains ----------------------------------------------------------

def canonical_tuples(parities, k):
    out = []
    for t in combinations_with_replacement(range(len(parities)), k):
        if any(t[a] == t[a + 1] and parities[t[a]] == 0 for a in range(k - 1)):
            continue
        out.append(t)
    return out


def canonicalize(parities, args):
    """Sort ``args`` with the graded-alternating sign; returns ``(sign, tuple)`` or ``(0, None)``."""
    args = list(args)
    sign = 1
    # insertion sort tracking adjacent transpositions
    for a in range(1, len(args)):
        b = a
        while b > 0 and args[b - 1] > args[b]:
            x, y = args[b - 1], args[b]
            if not (parities[x] and parities[y]):
                sign = -sign
            args[b - 1], args[b] = y, x
            b -= 1
    for a in range(len(args) - 1):
        if args[a] == args[a + 1] and parities[args[a]] == 0:
            return 0, None
    return sign, tuple(args)


class Cochain:
    __slots__ = ("parities", "degree", "values")

    def __init__(self, parities, degree, values=None):
        self.parities = tuple(parities)
        self.degree = degree
        clean = {}
        for args, v in (values or {}).items():
            args = tuple(args)
            if len(args) != degree:
                raise DimMismatch(f"cochain of degree {degree} given {len(args)} arguments")
            if any(not 0 <= a < len(self.parities) for a in args):
                raise IndexOutOfRange(f"argument outside 0..{len(self.parities) - 1}")
            sign, key = canonicalize(self.parities, args)
            v = to_exact(v)
            if sign == 0:
                if v:
                    raise DimMismatch(f"value on {args} must vanish (repeated even argument)")
                continue
            clean[key] = clean.get(key, 0) + sign * v
        self.values = {k: v for k, v in clean.items() if v}

    def __call__(self, *args):
        sign, key = canonicalize(self.parities, args)
        if sign == 0:
            return to_exact(0)
        return sign * self.values.get(key, to_exact(0))

    def __add__(self, other):
        out = dict(self.values)
        for k, v in other.values.items():
            out[k] = out.get(k, 0) + v
        return Cochain(self.parities, self.degree, out)

    def __mul__(self, s):
        s = to_exact(s)
        return Cochain(self.parities, self.degree, {k: v * s for k, v in self.values.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, Cochain) and self.parities == other.parities
                and self.degree == other.degree and self.values == other.values)

    def __hash__(self):
        return hash((self.parities, self.degree, frozenset(self.values.items())))

    def is_zero(self):
        return not self.values

    def __repr__(self):
        return f"Cochain(k={self.degree}, {dict(sorted(self.values.items()))})"

    def to_dict(self):
        return {"degree": self.degree,
                "values": [{"args": list(k), "value": format_exact(v)} for k, v in sorted(self.values.items())]}

    @classmethod
    def from_dict(cls, data, parities):
        vals = {tuple(e["args"]): e["value"] for e in data.get("values", [])}
        return cls(parities, int(data["degree"]), vals)


def _check_degree(g, k):
    r, s = g.dim
    if s > 0 and k > r + odd_cap():
        raise DegreeOverflow(f"cochain degree {k} exceeds {r} + odd cap {odd_cap()}")


def _koszul_terms(g, args):
    """Yield ``(coeff, new_args)`` for the coboundary evaluated at ``args``."""
    p = g.parities
    n = len(args)
    for i in range(n):
        pre_i = sum(p[args[a]] for a in range(i))
        for j in range(i + 1, n):
            br = g.br(args[i], args[j])
            if not br:
                continue
            pre_j = sum(p[args[a]] for a in range(j) if a != i)
            e = (i + j) + p[args[i]] * pre_i + p[args[j]] * pre_j
            sign = -1 if e & 1 else 1
            rest = args[:i] + args[i + 1:j] + args[j + 1:]
            for k, c in br.items():
                yield sign * c, (k,) + rest


def ce_d(g, c):
    """Coboundary of a cochain with trivial coefficients."""
    _ensure_valid(g)
    if tuple(c.parities) != g.parities:
        raise DimMismatch("cochain and algebra have different bases")
    k = c.degree
    _check_degree(g, k + 1)
    out = {}
    for args in canonical_tuples(g.parities, k + 1):
        total = 0
        for coeff, new in _koszul_terms(g, args):
            v = c(*new)
            if v:
                total += coeff * v
        if total:
            out[args] = total
    return Cochain(g.parities, k + 1, out)


def coboundary_matrix(g, k):
    """Matrix of ``delta: C^k -> C^(k+1)`` in the canonical tuple bases (rows: C^(k+1))."""
    _ensure_valid(g)
    _check_degree(g, k + 1)
    return _coboundary_matrix(g, k)


def _coboundary_matrix(g, k):
    cols = canonical_tuples(g.parities, k)
    index = {t: a for a, t in enumerate(cols)}
    rows = []
    for args in canonical_tuples(g.parities, k + 1):
        row = [0] * len(cols)
        for coeff, new in _koszul_terms(g, args):
            sign, key = canonicalize(g.parities, new)
            if sign:
                row[index[key]] += sign * coeff
        rows.append(row)
    return rows, cols


def cochain_dim(g, k):
    return len(canonical_tuples(g.parities, k))


def ce_cohomology_dims(g, k_max):
    """``dim H^k`` for ``k = 0..k_max``."""
    _ensure_valid(g)
    _check_degree(g, k_max + 1)

    @lru_cache(maxsize=None)
    def rk(k):
        if k < 0:
            return 0
        rows, cols = _coboundary_matrix(g, k)
        if not rows or not cols:
            return 0
        return rational_rank(rows)

    return [cochain_dim(g, k) - rk(k) - rk(k - 1) for k in range(k_max + 1)]


# -- catalog -----------------------------------------------------------

def abelian(r, s=0):
    return LieSuperalgebra([0] * r + [1] * s, {})


def susy():
    """Even ``P`` (index 0), odd ``Q`` (index 1), ``[Q, Q] = 2P``."""
    return LieSuperalgebra([0, 1], {(1, 1): {0: 2}})


def _supercommutator(X, Y, px, py):
    n = len(X)
    xy = [[sum(X[i][t] * Y[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
    yx = [[sum(Y[i][t] * X[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
    s = -1 if px * py else 1
    return [[xy[i][j] - s * yx[i][j] for j in range(n)] for i in range(n)]


def from_matrices(mats, parities):
    """Structure constants of the span of homogeneous real supermatrices under the supercommutator."""
    flat = [[to_exact(x) for row in M for x in row] for M in mats]
    cols = list(zip(*flat))  # one row per entry, one column per basis matrix
    table = {}
    for i, X in enumerate(mats):
        for j, Y in enumerate(mats):
            Z = _supercommutator(X, Y, parities[i], parities[j])
            rhs = [to_exact(x) for row in Z for x in row]
            if not any(rhs):
                continue
            try:
                coeffs = solve([list(c) for c in cols], rhs)
            except ValueError as exc:
                raise DimMismatch("matrices do not span a subalgebra") from exc
            table[(i, j)] = {k: c for k, c in enumerate(coeffs) if c}
    return LieSuperalgebra(parities, table, fill=False)


def _unit(n, i, j):
    M = [[0] * n for _ in range(n)]
    M[i][j] = 1
    return M


def gl11():
    """``gl(1|1)``: ``E11, E22`` even, ``E12, E21`` odd."""
    mats = [_unit(2, 0, 0), _unit(2, 1, 1), _unit(2, 0, 1), _unit(2, 1, 0)]
    return from_matrices(mats, [0, 0, 1, 1])


def osp12():
    """``osp(1|2)`` realised as the infinitesimal isometries of the form on ``B^{1|2}``."""
    from .osp import osp_algebra_basis
    mats, parities = osp_algebra_basis(1, 1)
    return from_matrices(mats, parities)


CATALOG = {"abelian_2_1": lambda: abelian(2, 1), "susy": susy, "gl11": gl11, "osp12": osp12}
