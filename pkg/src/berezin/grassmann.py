"""Grassmann algebras of finite rank.

An element of the rank-``N`` algebra is a finite sum of monomials
``c_{i1} c_{i2} ... c_{ik}`` with ``i1 < i2 < ... < ik``.  Monomials are
stored as bit masks (bit ``i - 1`` for ``c_i``), so the product sign is the
parity of the number of index inversions between the two masks.
"""

import math
import os

from . import kernel
from .errors import ExactModeBodyNonzero, ModeMismatch, NotInvertible, RankMismatch, RankTooLarge
from .scalars import EXACT, FLOAT, FLOAT_EPS, MODES, coerce, format_scalar, parse_scalar

MAX_RANK = 16


def rank_cap():
    """Largest admissible rank; ``BEREZIN_RANK_CAP`` may lower it."""
    env = os.environ.get("BEREZIN_RANK_CAP")
    if env:
        try:
            return max(0, min(MAX_RANK, int(env)))
        except ValueError:
            pass
    return MAX_RANK


def mask_to_indices(mask):
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def indices_to_mask(indices):
    """Mask of a strictly increasing index list (1-based)."""
    mask = 0
    prev = 0
    for i in indices:
        if i <= prev:
            raise ValueError(f"indices must be strictly increasing: {list(indices)}")
        mask |= 1 << (i - 1)
        prev = i
    return mask


def monomial_order(mask):
    """Canonical order: by degree, then lexicographically by indices."""
    return (kernel.popcount(mask), mask_to_indices(mask))


def _prune(terms, mode):
    if mode == EXACT:
        return {m: c for m, c in terms.items() if c != 0}
    return {m: c for m, c in terms.items() if abs(c) >= FLOAT_EPS}


class GrassmannElement:
    """Immutable element of a rank-``N`` Grassmann algebra.

    ``terms`` maps monomial masks to coefficients.  Treat it as read-only.
    """

    __slots__ = ("rank", "mode", "terms")

    def __init__(self, rank, terms=None, mode=EXACT, *, _raw=False):
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}")
        if not _raw:
            if not 0 <= rank <= rank_cap():
                raise RankTooLarge(f"rank {rank} outside 0..{rank_cap()}")
            full = (1 << rank) - 1
            clean = {}
            for mask, c in (terms or {}).items():
                if isinstance(mask, frozenset):
                    mask = indices_to_mask(sorted(mask))
                elif isinstance(mask, (tuple, list)):
                    mask = indices_to_mask(mask)
                if mask & ~full:
                    raise ValueError(f"monomial {mask_to_indices(mask)} exceeds rank {rank}")
                clean[mask] = clean.get(mask, 0) + coerce(c, mode)
            terms = _prune(clean, mode)
        self.rank = rank
        self.mode = mode
        self.terms = terms

    # -- constructors -------------------------------------------------
    @classmethod
    def _new(cls, rank, terms, mode):
        return cls(rank, _prune(terms, mode), mode, _raw=True)

    @classmethod
    def zero(cls, rank, mode=EXACT):
        return cls(rank, {}, mode)

    @classmethod
    def one(cls, rank, mode=EXACT):
        return cls(rank, {0: 1}, mode)

    @classmethod
    def scalar(cls, rank, value, mode=EXACT):
        return cls(rank, {0: value}, mode)

    @classmethod
    def generator(cls, rank, i, mode=EXACT):
        if not 1 <= i <= rank:
            raise ValueError(f"generator c{i} outside rank {rank}")
        return cls(rank, {1 << (i - 1): 1}, mode)

    @classmethod
    def from_indices(cls, rank, mapping, mode=EXACT):
        """Build from ``{(i1, ..., ik): coeff}``; indices are reordered with sign."""
        out = cls.zero(rank, mode)
        for idx, c in mapping.items():
            term = cls.scalar(rank, c, mode)
            for i in idx:
                term = term * cls.generator(rank, i, mode)
            out = out + term
        return out

    # -- coercion helpers ---------------------------------------------
    def _coerce(self, other):
        if isinstance(other, GrassmannElement):
            if other.rank != self.rank:
                raise RankMismatch(f"rank {self.rank} vs {other.rank}")
            if other.mode != self.mode:
                raise ModeMismatch(f"mode {self.mode} vs {other.mode}")
            return other
        return GrassmannElement(self.rank, {0: other}, self.mode)

    def with_mode(self, mode):
        if mode == self.mode:
            return self
        return GrassmannElement(self.rank, dict(self.terms), mode)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return GrassmannElement._new(self.rank, out, self.mode)

    __radd__ = __add__

    def __neg__(self):
        return GrassmannElement(self.rank, {m: -c for m, c in self.terms.items()}, self.mode, _raw=True)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GrassmannElement):
            other = self._coerce(other)
            terms = kernel.mul_terms(self.terms, other.terms)
            if self.mode == FLOAT:
                terms = _prune(terms, FLOAT)
            return GrassmannElement(self.rank, terms, self.mode, _raw=True)
        try:
            s = coerce(other, self.mode)
        except TypeError:
            return NotImplemented
        return GrassmannElement._new(self.rank, {m: c * s for m, c in self.terms.items()}, self.mode)

    def __rmul__(self, other):
        # scalars are central
        return self.__mul__(other)

    def __truediv__(self, other):
        if isinstance(other, GrassmannElement):
            return self * other.inv()
        s = coerce(other, self.mode)
        return self * (1 / s)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = GrassmannElement.one(self.rank, self.mode)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, GrassmannElement):
            return self.rank == other.rank and self.mode == other.mode and self.terms == other.terms
        try:
            return self == self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.rank, self.mode, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- structure ----------------------------------------------------
    def is_zero(self):
        return not self.terms

    def body(self):
        return self.terms.get(0, coerce(0, self.mode))

    def soul(self):
        return GrassmannElement(self.rank, {m: c for m, c in self.terms.items() if m}, self.mode, _raw=True)

    def body_soul(self):
        return self.body(), self.soul()

    def parity_parts(self):
        even, odd = kernel.parity_split(self.terms)
        return (GrassmannElement(self.rank, even, self.mode, _raw=True),
                GrassmannElement(self.rank, odd, self.mode, _raw=True))

    def parity(self):
        """0 or 1 for a nonzero homogeneous element, 0 for zero, ``None`` otherwise."""
        ps = {kernel.popcount(m) & 1 for m in self.terms}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def is_homogeneous(self):
        return self.parity() is not None

    def is_even(self):
        return all(kernel.popcount(m) % 2 == 0 for m in self.terms)

    def is_odd(self):
        return all(kernel.popcount(m) % 2 == 1 for m in self.terms)

    def involution(self):
        """The grading automorphism a0 + a1 -> a0 - a1."""
        return GrassmannElement(self.rank, kernel.involution_terms(self.terms), self.mode, _raw=True)

    def degree(self):
        return max((kernel.popcount(m) for m in self.terms), default=0)

    def norm(self):
        return sum((abs(c) for c in self.terms.values()), coerce(0, self.mode))

    def inv(self):
        b = self.body()
        if b == 0:
            raise NotInvertible("element with zero body has no inverse")
        binv = 1 / b
        step = -(self.soul() * binv)
        out = GrassmannElement.one(self.rank, self.mode)
        power = out
        # s^(N+1) = 0 so the Neumann series is finite
        for _ in range(self.rank):
            power = power * step
            if power.is_zero():
                break
            out = out + power
        return out * binv

    def exp(self):
        b = self.body()
        if self.mode == EXACT and b != 0:
            raise ExactModeBodyNonzero("exact exp needs a zero-body argument")
        s = self.soul()
        out = GrassmannElement.one(self.rank, self.mode)
        power = out
        for k in range(1, self.rank + 1):
            power = power * s * (coerce(1, self.mode) / k)
            if power.is_zero():
                break
            out = out + power
        if self.mode == FLOAT and b != 0:
            out = out * math.exp(b)
        return out

    # -- presentation -------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: monomial_order(kv[0]))

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"GrassmannElement(rank={self.rank}, {str(self)!r}, mode={self.mode!r})"

    def to_dict(self):
        return {
            "rank": self.rank,
            "mode": self.mode,
            "terms": [{"indices": mask_to_indices(m), "coeff": format_scalar(c, self.mode)}
                      for m, c in self.sorted_terms()],
        }

    @classmethod
    def from_dict(cls, data):
        mode = data.get("mode", EXACT)
        rank = int(data["rank"])
        terms = {}
        for t in data.get("terms", []):
            mask = indices_to_mask(t.get("indices", []))
            terms[mask] = terms.get(mask, 0) + parse_scalar(t["coeff"], mode)
        return cls(rank, terms, mode)


def format_monomial(indices, symbol="c"):
    return "*".join(f"{symbol}{i}" for i in indices)


def format_coeff_term(c, mono, mode):
    """Render ``c * mono`` without the sign; returns (negative, text)."""
    neg = c < 0
    a = -c if neg else c
    if mode == EXACT:
        num = format_scalar(a, mode)
    else:
        num = repr(float(format(float(a), ".15g")))
    if not mono:
        return neg, num
    if a == 1:
        return neg, mono
    return neg, f"{num}*{mono}"


def join_terms(pieces):
    if not pieces:
        return "0"
    out = []
    for k, (neg, text) in enumerate(pieces):
        if k == 0:
            out.append(f"-{text}" if neg else text)
        else:
            out.append(f" - {text}" if neg else f" + {text}")
    return "".join(out)


def format_element(a, symbol="c"):
    pieces = [format_coeff_term(c, format_monomial(mask_to_indices(m), symbol), a.mode)
              for m, c in a.sorted_terms()]
    return join_terms(pieces)


# -- module-level operations ------------------------------------------

def g_mul(a, b):
    if not isinstance(a, GrassmannElement) or not isinstance(b, GrassmannElement):
        raise TypeError("g_mul expects two GrassmannElements")
    return a * b


def g_body_soul(a):
    return a.body_soul()


def g_inv(a):
    return a.inv()


def g_exp(a):
    return a.exp()


def g_norm(a):
    return a.norm()


def g_parity_parts(a):
    return a.parity_parts()
