"""Superfunctions on the superspace B^{n,m} with polynomial coefficient data.

A superfunction is ``F(x, y) = sum_J f_J(x) y^J`` over strictly increasing
odd multi-indices ``J``.  It is evaluated at a point ``q = (x, y)`` of the
superspace by prolonging each ``f_J`` through its (terminating) Taylor
series around the body of ``x``.
"""

from itertools import product
from math import factorial

from . import kernel
from .errors import DimMismatch, IndexOutOfRange, NonHomogeneous, OddDerivativeUndefined, RankMismatch
from .grassmann import GrassmannElement, format_coeff_term, indices_to_mask, join_terms, mask_to_indices, monomial_order
from .polynomial import Polynomial
from .scalars import EXACT, coerce

G = GrassmannElement


class SuperPoint:
    """A point of B^{n,m}: n even and m odd Grassmann coordinates."""

    __slots__ = ("rank", "mode", "even", "odd")

    def __init__(self, even, odd=(), rank=None, mode=None):
        coords = list(even) + list(odd)
        if coords:
            rank = coords[0].rank if rank is None else rank
            mode = coords[0].mode if mode is None else mode
        if rank is None:
            raise ValueError("rank is required for an empty point")
        for x in coords:
            if x.rank != rank:
                raise RankMismatch(f"coordinate rank {x.rank} vs {rank}")
        for i, x in enumerate(even):
            if not x.is_even():
                raise NonHomogeneous(f"even coordinate x{i + 1} is not even")
        for j, y in enumerate(odd):
            if not y.is_odd():
                raise NonHomogeneous(f"odd coordinate y{j + 1} is not odd")
        self.rank, self.mode = rank, mode or EXACT
        self.even, self.odd = tuple(even), tuple(odd)

    @property
    def n(self):
        return len(self.even)

    @property
    def m(self):
        return len(self.odd)

    def body(self):
        return [x.body() for x in self.even]

    def soul(self):
        return [x.soul() for x in self.even]

    def to_dict(self):
        return {"rank": self.rank, "even": [x.to_dict() for x in self.even],
                "odd": [y.to_dict() for y in self.odd]}

    @classmethod
    def from_dict(cls, data):
        even = [G.from_dict(x) for x in data.get("even", [])]
        odd = [G.from_dict(y) for y in data.get("odd", [])]
        return cls(even, odd, rank=data.get("rank"))


def _mask_order(kv):
    return monomial_order(kv[0])


class SuperFunction:
    """Polynomial superfunction; ``terms`` maps odd-index masks to polynomials.

    ``symbols`` only affects printing (``("x", "y")`` for superspace
    coordinates, ``("z", "c")`` for graded functions on a chart).
    """

    __slots__ = ("n", "m", "terms", "symbols")

    def __init__(self, n, m, terms=None, symbols=("x", "y"), *, _raw=False):
        self.n, self.m = n, m
        self.symbols = symbols
        if _raw:
            self.terms = terms
            return
        full = (1 << m) - 1
        clean = {}
        for key, p in (terms or {}).items():
            mask = indices_to_mask(key) if isinstance(key, (tuple, list)) else key
            if mask & ~full:
                raise IndexOutOfRange(f"odd index {mask_to_indices(mask)} exceeds m={m}")
            if not isinstance(p, Polynomial):
                p = Polynomial.const(n, p)
            elif p.nvars != n:
                raise DimMismatch(f"coefficient has {p.nvars} variables, expected {n}")
            clean[mask] = clean[mask] + p if mask in clean else p
        self.terms = {k: v for k, v in clean.items() if v}

    # -- constructors -------------------------------------------------
    def _new(self, terms):
        return SuperFunction(self.n, self.m, {k: v for k, v in terms.items() if v}, self.symbols, _raw=True)

    @classmethod
    def zero(cls, n, m, symbols=("x", "y")):
        return cls(n, m, {}, symbols, _raw=True)

    @classmethod
    def const(cls, n, m, c, symbols=("x", "y")):
        return cls(n, m, {0: Polynomial.const(n, c)}, symbols)

    @classmethod
    def even_var(cls, n, m, i, symbols=("x", "y")):
        return cls(n, m, {0: Polynomial.var(n, i)}, symbols)

    @classmethod
    def odd_var(cls, n, m, j, symbols=("x", "y")):
        if not 1 <= j <= m:
            raise IndexOutOfRange(f"odd variable {j} outside 1..{m}")
        return cls(n, m, {1 << (j - 1): Polynomial.const(n, 1)}, symbols)

    @classmethod
    def from_poly(cls, p, m, symbols=("x", "y")):
        return cls(p.nvars, m, {0: p}, symbols)

    def with_symbols(self, symbols):
        return SuperFunction(self.n, self.m, self.terms, symbols, _raw=True)

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, SuperFunction):
            if (other.n, other.m) != (self.n, self.m):
                raise DimMismatch(f"({self.n},{self.m}) vs ({other.n},{other.m})")
            return other
        if isinstance(other, Polynomial):
            return SuperFunction(self.n, self.m, {0: other}, self.symbols)
        return SuperFunction.const(self.n, self.m, other, self.symbols)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for k, p in other.terms.items():
            out[k] = out[k] + p if k in out else p
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -p for k, p in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (SuperFunction, Polynomial)):
            other = self._coerce(other)
            return self._new(kernel.mul_terms(self.terms, other.terms))
        try:
            coerce(other, EXACT)
        except TypeError:
            return NotImplemented
        return self._new({k: p * other for k, p in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, Polynomial):
            return self._coerce(other) * self
        return self.__mul__(other)

    def __eq__(self, other):
        if isinstance(other, SuperFunction):
            return (self.n, self.m) == (other.n, other.m) and self.terms == other.terms
        try:
            return self == self._coerce(other)
        except (TypeError, DimMismatch):
            return NotImplemented

    def __hash__(self):
        return hash((self.n, self.m, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    # -- grading ------------------------------------------------------
    def parity(self):
        """Parity of a homogeneous function (0 for zero); ``None`` if mixed."""
        ps = {kernel.popcount(k) & 1 for k in self.terms}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def require_parity(self):
        p = self.parity()
        if p is None:
            raise NonHomogeneous("superfunction is not homogeneous")
        return p

    def parity_parts(self):
        even, odd = kernel.parity_split(self.terms)
        return self._new(even), self._new(odd)

    def involution(self):
        return self._new(kernel.involution_terms(self.terms))

    def is_even_only(self):
        """True when there is no dependence on odd variables."""
        return all(k == 0 for k in self.terms)

    def body_poly(self):
        return self.terms.get(0, Polynomial.zero(self.n))

    # -- derivatives --------------------------------------------------
    def even_deriv(self, i):
        if not 1 <= i <= self.n:
            raise IndexOutOfRange(f"even index {i} outside 1..{self.n}")
        return self._new({k: p.derivative(i) for k, p in self.terms.items()})

    def odd_deriv(self, j):
        """Left derivative along the odd variable ``j``."""
        if not 1 <= j <= self.m:
            raise IndexOutOfRange(f"odd index {j} outside 1..{self.m}")
        return self._new(kernel.left_derivative_terms(self.terms, 1 << (j - 1)))

    # -- evaluation ---------------------------------------------------
    def __call__(self, point):
        return sf_eval(self, point)

    # -- presentation -------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=_mask_order)

    def format(self):
        xs, ys = self.symbols
        names = [f"{xs}{i + 1}" for i in range(self.n)]
        pieces = []
        for mask, p in self.sorted_terms():
            odd = "*".join(f"{ys}{j}" for j in mask_to_indices(mask))
            for e, c in p.sorted_terms():
                mono = "*".join(f"{names[k]}^{q}" if q > 1 else names[k] for k, q in enumerate(e) if q)
                full = "*".join(s for s in (mono, odd) if s)
                pieces.append(format_coeff_term(c, full, EXACT))
        return join_terms(pieces)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"SuperFunction(n={self.n}, m={self.m}, {self.format()!r})"

    def to_dict(self):
        xs = self.symbols[0]
        names = [f"{xs}{i + 1}" for i in range(self.n)]
        return {"n": self.n, "m": self.m,
                "coeffs": [{"odd_index": mask_to_indices(k), "poly": p.to_dict(names)}
                           for k, p in self.sorted_terms()]}

    @classmethod
    def from_dict(cls, data, symbols=("x", "y")):
        n, m = int(data["n"]), int(data["m"])
        terms = {}
        for entry in data.get("coeffs", []):
            p = Polynomial.from_dict(entry["poly"])
            if p.nvars != n and not p.terms:
                p = Polynomial.zero(n)
            mask = indices_to_mask(entry.get("odd_index", []))
            terms[mask] = terms[mask] + p if mask in terms else p
        return cls(n, m, terms, symbols)


# -- evaluation by Taylor prolongation ----------------------------------

def taylor_prolong(p, point_even, rank, mode):
    """Value of the polynomial ``p`` at even Grassmann coordinates.

    Expands around the body: ``sum_alpha d^alpha p(body) / alpha! * soul^alpha``.
    Even souls have degree >= 2, so only ``|alpha| <= rank // 2`` contributes.
    """
    n = len(point_even)
    body = [x.body() for x in point_even]
    souls = [x.soul() for x in point_even]
    one = G.one(rank, mode)
    if not p.terms:
        return G.zero(rank, mode)
    max_order = rank // 2
    per_var = [min(max_order, max((e[k] for e in p.terms), default=0)) if not souls[k].is_zero() else 0
               for k in range(n)]
    powers = []
    for k in range(n):
        row = [one]
        for _ in range(per_var[k]):
            row.append(row[-1] * souls[k])
        powers.append(row)
    total = G.zero(rank, mode)
    for alpha in product(*(range(b + 1) for b in per_var)):
        if sum(alpha) > max_order:
            continue
        d = p.derivative_multi(alpha) if any(alpha) else p
        if not d.terms:
            continue
        value = d.evaluate([coerce(b, mode) for b in body]) if n else d.constant_term()
        if value == 0:
            continue
        denom = 1
        for a in alpha:
            denom *= factorial(a)
        mono = one
        for k, a in enumerate(alpha):
            if a:
                mono = mono * powers[k][a]
        if mono.is_zero():
            continue
        total = total + mono * (coerce(value, mode) / denom)
    return total


def sf_eval(F, q):
    if (F.n, F.m) != (q.n, q.m):
        raise DimMismatch(f"function on B^({F.n},{F.m}) evaluated at a point of B^({q.n},{q.m})")
    rank, mode = q.rank, q.mode
    total = G.zero(rank, mode)
    for mask, p in F.terms.items():
        value = taylor_prolong(p, q.even, rank, mode)
        if value.is_zero():
            continue
        for j in mask_to_indices(mask):
            value = value * q.odd[j - 1]
        total = total + value
    return total


def sf_mul(F, Gf):
    return F * Gf


def sf_even_deriv(F, i):
    return F.even_deriv(i)


def odd_derivative_defined(rank, m, n_prime=0):
    """Whether odd derivatives are well defined: rank - n_prime >= m."""
    return rank - n_prime >= m


def sf_odd_deriv(F, j, rank=None, n_prime=0):
    """Left odd derivative.

    When ``rank`` is given the function is regarded as living on a
    superspace over a rank-``rank`` algebra with coefficient algebra of rank
    ``n_prime``; if ``rank - n_prime < m`` the representation is not unique
    and the derivative is refused.
    """
    if rank is not None and not odd_derivative_defined(rank, F.m, n_prime):
        raise OddDerivativeUndefined(
            f"odd derivative ill-defined: rank {rank} - {n_prime} < m = {F.m}")
    return F.odd_deriv(j)
