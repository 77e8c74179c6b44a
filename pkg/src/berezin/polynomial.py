"""Exact multivariate polynomials with rational coefficients.

Used as the coefficient carrier of superfunctions and graded functions.
Variables are numbered from 1 in the public API.
"""

from math import factorial

from .errors import DimMismatch, IndexOutOfRange
from .scalars import format_exact, to_exact


class Polynomial:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None, *, _raw=False):
        self.nvars = nvars
        if _raw:
            self.terms = terms
            return
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for {nvars} variables")
            clean[exps] = clean.get(exps, 0) + to_exact(c)
        self.terms = {e: c for e, c in clean.items() if c != 0}

    @classmethod
    def zero(cls, nvars):
        return cls(nvars, {}, _raw=True)

    @classmethod
    def const(cls, nvars, c):
        c = to_exact(c)
        return cls(nvars, {(0,) * nvars: c} if c != 0 else {}, _raw=True)

    @classmethod
    def var(cls, nvars, i):
        if not 1 <= i <= nvars:
            raise IndexOutOfRange(f"variable {i} outside 1..{nvars}")
        e = [0] * nvars
        e[i - 1] = 1
        return cls(nvars, {tuple(e): to_exact(1)}, _raw=True)

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise DimMismatch(f"{self.nvars} vs {other.nvars} variables")
            return other
        return Polynomial.const(self.nvars, other)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.nvars, out, _raw=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()}, _raw=True)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                s = to_exact(other)
            except TypeError:
                return NotImplemented
            if s == 0:
                return Polynomial.zero(self.nvars)
            return Polynomial(self.nvars, {e: c * s for e, c in self.terms.items()}, _raw=True)
        other = self._coerce(other)
        out = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return Polynomial(self.nvars, {e: c for e, c in out.items() if c}, _raw=True)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Polynomial.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            return self == Polynomial.const(self.nvars, other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, to_exact(0))

    def degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def derivative(self, i, times=1):
        if not 1 <= i <= self.nvars:
            raise IndexOutOfRange(f"variable {i} outside 1..{self.nvars}")
        k = i - 1
        out = {}
        for e, c in self.terms.items():
            if e[k] < times:
                continue
            f = factorial(e[k]) // factorial(e[k] - times)
            ne = e[:k] + (e[k] - times,) + e[k + 1:]
            out[ne] = c * f
        return Polynomial(self.nvars, out, _raw=True)

    def derivative_multi(self, alpha):
        """Mixed partial derivative with multi-index ``alpha`` (one order per variable)."""
        out = {}
        for e, c in self.terms.items():
            if any(x < a for x, a in zip(e, alpha)):
                continue
            f = 1
            for x, a in zip(e, alpha):
                f *= factorial(x) // factorial(x - a)
            out[tuple(x - a for x, a in zip(e, alpha))] = c * f
        return Polynomial(self.nvars, out, _raw=True)

    def __call__(self, *values):
        return self.evaluate(values)

    def evaluate(self, values, one=None):
        """Evaluate at ``values`` in any commutative ring supporting ``+``, ``*``.

        ``one`` is the ring unit (defaults to the scalar 1).
        """
        if len(values) != self.nvars:
            raise DimMismatch(f"expected {self.nvars} values, got {len(values)}")
        unit = 1 if one is None else one
        powers = [[unit] for _ in values]
        total = unit * 0
        for e, c in self.terms.items():
            term = unit * c
            for k, p in enumerate(e):
                if p:
                    cache = powers[k]
                    while len(cache) <= p:
                        cache.append(cache[-1] * values[k])
                    term = term * cache[p]
            total = total + term
        return total

    def compose(self, polys):
        """Substitute polynomial ``polys[k]`` for variable ``k + 1``."""
        if len(polys) != self.nvars:
            raise DimMismatch(f"expected {self.nvars} substitutions, got {len(polys)}")
        nv = polys[0].nvars if polys else 0
        return self.evaluate(list(polys), one=Polynomial.const(nv, 1))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), [-x for x in kv[0]]))

    def format(self, names=None):
        from .grassmann import format_coeff_term, join_terms
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"{names[k]}^{p}" if p > 1 else names[k]
                            for k, p in enumerate(e) if p)
            pieces.append(format_coeff_term(c, mono, "exact"))
        return join_terms(pieces)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Polynomial({self.nvars}, {self.format()!r})"

    def to_dict(self, names=None):
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        return {"vars": list(names),
                "terms": [{"exps": list(e), "coeff": format_exact(c)} for e, c in self.sorted_terms()]}

    @classmethod
    def from_dict(cls, data):
        nvars = len(data["vars"])
        terms = {}
        for t in data.get("terms", []):
            e = tuple(t["exps"])
            terms[e] = terms.get(e, 0) + to_exact(t["coeff"])
        return cls(nvars, terms)


def poly_matrix_mul(a, b):
    """Product of two matrices (lists of rows) of polynomials."""
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    if any(len(row) != k for row in a):
        raise DimMismatch("inner dimensions differ")
    nv = a[0][0].nvars
    return [[sum((a[i][t] * b[t][j] for t in range(k)), Polynomial.zero(nv)) for j in range(m)]
            for i in range(n)]
