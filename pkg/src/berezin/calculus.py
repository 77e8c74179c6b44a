"""Chart-local graded exterior calculus on a simple graded manifold.

Local basis: even coordinates ``z1..zn`` and odd generators ``c1..cm``.
Graded functions are :class:`~berezin.superfunction.SuperFunction` objects
printed with the symbols ``z`` and ``c``.

Forms are stored in the normal form ``f * dz^I ^ dc^J`` with the
coefficient on the left, ``I`` a strictly increasing set and ``J`` a sorted
multiset.  ``dz^A`` has bidegree (1, even) and ``dc^a`` has bidegree
(1, odd), so for homogeneous forms

    phi ^ psi = (-1)^(|phi||psi| + [phi][psi]) psi ^ phi.

In particular ``dz`` anticommutes with ``dz`` and ``dc``, while the ``dc``
commute among themselves.  Interior products follow the antiderivation law

    u _| (phi ^ psi) = (u _| phi) ^ psi + (-1)^(|phi| + [phi][u]) phi ^ (u _| psi)

with ``u _| dz^A = u^A`` and ``u _| dc^a = u^a``.
"""

from . import kernel
from .errors import DegreeZero, DimMismatch, IndexOutOfRange, InvalidTransition, MissingTransition, NonHomogeneous
from .grassmann import mask_to_indices
from .linalg import inverse as rational_inverse
from .polynomial import Polynomial, poly_matrix_mul
from .scalars import format_exact, to_exact
from .superfunction import SuperFunction

SYMBOLS = ("z", "c")


def GradedFunction(n, m, terms=None):
    return SuperFunction(n, m, terms, SYMBOLS)


def gf_const(n, m, value):
    return SuperFunction.const(n, m, value, SYMBOLS)


def gf_z(n, m, A):
    return SuperFunction.even_var(n, m, A, SYMBOLS)


def gf_c(n, m, a):
    return SuperFunction.odd_var(n, m, a, SYMBOLS)


def gf_zero(n, m):
    return SuperFunction.zero(n, m, SYMBOLS)


def _as_function(f, n, m):
    if isinstance(f, SuperFunction):
        if (f.n, f.m) != (n, m):
            raise DimMismatch(f"function on ({f.n},{f.m}) used on chart ({n},{m})")
        return f.with_symbols(SYMBOLS)
    if isinstance(f, Polynomial):
        return SuperFunction(n, m, {0: f}, SYMBOLS)
    return gf_const(n, m, f)


# -- vector fields -----------------------------------------------------

class GradedVectorField:
    """``u = u^A d/dz^A + u^a d/dc^a`` on an (n, m) chart."""

    __slots__ = ("n", "m", "even", "odd", "parity")

    def __init__(self, n, m, even, odd, parity=None):
        if len(even) != n or len(odd) != m:
            raise DimMismatch(f"expected {n} even and {m} odd components")
        self.n, self.m = n, m
        self.even = tuple(_as_function(f, n, m) for f in even)
        self.odd = tuple(_as_function(f, n, m) for f in odd)
        inferred = self._infer_parity()
        if parity is None:
            if inferred is None:
                raise NonHomogeneous("vector field is not homogeneous")
            parity = inferred
        elif inferred is not None and inferred != parity and not self.is_zero():
            raise NonHomogeneous(f"components have parity {inferred}, declared {parity}")
        elif inferred is None:
            raise NonHomogeneous("vector field is not homogeneous")
        self.parity = parity % 2

    def _infer_parity(self):
        seen = set()
        for f in self.even:
            p = f.parity()
            if p is None:
                return None
            if f:
                seen.add(p)
        for f in self.odd:
            p = f.parity()
            if p is None:
                return None
            if f:
                seen.add((p + 1) % 2)
        if len(seen) > 1:
            return None
        return seen.pop() if seen else 0

    @classmethod
    def d_even(cls, n, m, A):
        if not 1 <= A <= n:
            raise IndexOutOfRange(f"even index {A} outside 1..{n}")
        return cls(n, m, [gf_const(n, m, int(B == A)) for B in range(1, n + 1)],
                   [gf_zero(n, m)] * m, 0)

    @classmethod
    def d_odd(cls, n, m, a):
        if not 1 <= a <= m:
            raise IndexOutOfRange(f"odd index {a} outside 1..{m}")
        return cls(n, m, [gf_zero(n, m)] * n,
                   [gf_const(n, m, int(b == a)) for b in range(1, m + 1)], 1)

    @classmethod
    def zero(cls, n, m, parity=0):
        return cls(n, m, [gf_zero(n, m)] * n, [gf_zero(n, m)] * m, parity)

    def components(self):
        return self.even + self.odd

    def is_zero(self):
        return all(f.is_zero() for f in self.even + self.odd)

    def _check(self, other):
        if (self.n, self.m) != (other.n, other.m):
            raise DimMismatch(f"chart ({self.n},{self.m}) vs ({other.n},{other.m})")

    def __add__(self, other):
        self._check(other)
        return GradedVectorField(self.n, self.m, [a + b for a, b in zip(self.even, other.even)],
                                 [a + b for a, b in zip(self.odd, other.odd)])

    def __sub__(self, other):
        self._check(other)
        return GradedVectorField(self.n, self.m, [a - b for a, b in zip(self.even, other.even)],
                                 [a - b for a, b in zip(self.odd, other.odd)])

    def __neg__(self):
        return GradedVectorField(self.n, self.m, [-a for a in self.even], [-a for a in self.odd], self.parity)

    def __rmul__(self, f):
        """Left multiplication by a graded function or scalar."""
        if isinstance(f, (SuperFunction, Polynomial)):
            f = _as_function(f, self.n, self.m)
            p = (f.require_parity() + self.parity) % 2
        else:
            p = self.parity
        return GradedVectorField(self.n, self.m, [f * a for a in self.even], [f * a for a in self.odd], p)

    def __eq__(self, other):
        if not isinstance(other, GradedVectorField):
            return NotImplemented
        return (self.n, self.m) == (other.n, other.m) and self.even == other.even and self.odd == other.odd \
            and (self.parity == other.parity or self.is_zero())

    def __hash__(self):
        return hash((self.n, self.m, self.even, self.odd))

    def __call__(self, f):
        return gv_apply(self, f)

    def __repr__(self):
        parts = [f"({f})*d/dz{A + 1}" for A, f in enumerate(self.even) if f]
        parts += [f"({f})*d/dc{a + 1}" for a, f in enumerate(self.odd) if f]
        return f"GradedVectorField[{self.parity}](" + " + ".join(parts or ["0"]) + ")"

    def to_dict(self):
        return {"even": [f.to_dict() for f in self.even], "odd": [f.to_dict() for f in self.odd],
                "parity": self.parity}

    @classmethod
    def from_dict(cls, data, n=None, m=None):
        even = [SuperFunction.from_dict(f, SYMBOLS) for f in data.get("even", [])]
        odd = [SuperFunction.from_dict(f, SYMBOLS) for f in data.get("odd", [])]
        if n is None:
            n = len(even)
        if m is None:
            m = len(odd)
        return cls(n, m, even, odd, data.get("parity"))


def gv_apply(u, f):
    """Action of a graded vector field on a graded function."""
    f = _as_function(f, u.n, u.m)
    out = gf_zero(u.n, u.m)
    for A, ua in enumerate(u.even, start=1):
        if ua:
            out = out + ua * f.even_deriv(A)
    for a, ua in enumerate(u.odd, start=1):
        if ua:
            out = out + ua * f.odd_deriv(a)
    return out


def gv_bracket(u, v):
    """Superbracket ``[u, v] = u o v - (-1)^([u][v]) v o u``."""
    u._check(v)
    sign = -1 if u.parity * v.parity else 1
    even = [gv_apply(u, vb) - sign * gv_apply(v, ub) for ub, vb in zip(u.even, v.even)]
    odd = [gv_apply(u, vb) - sign * gv_apply(v, ub) for ub, vb in zip(u.odd, v.odd)]
    return GradedVectorField(u.n, u.m, even, odd, (u.parity + v.parity) % 2)


# -- forms -------------------------------------------------------------

def _dz_sign(i_mask, k_mask):
    return kernel.reorder_sign(i_mask, k_mask)


class GradedForm:
    """Finite sum of ``f * dz^I ^ dc^J``; ``terms`` maps ``(I_mask, J_tuple)`` to ``f``."""

    __slots__ = ("n", "m", "terms")

    def __init__(self, n, m, terms=None, *, _raw=False):
        self.n, self.m = n, m
        if _raw:
            self.terms = terms
            return
        clean = {}
        for (dz, dc), f in (terms or {}).items():
            if isinstance(dz, (tuple, list)):
                if list(dz) != sorted(set(dz)):
                    raise ValueError(f"dz indices must be strictly increasing: {dz}")
                mask = 0
                for A in dz:
                    if not 1 <= A <= n:
                        raise IndexOutOfRange(f"dz index {A} outside 1..{n}")
                    mask |= 1 << (A - 1)
                dz = mask
            dc = tuple(sorted(dc))
            if any(not 1 <= a <= m for a in dc):
                raise IndexOutOfRange(f"dc index outside 1..{m}")
            f = _as_function(f, n, m)
            key = (dz, dc)
            clean[key] = clean[key] + f if key in clean else f
        self.terms = {k: v for k, v in clean.items() if v}

    def _new(self, terms):
        return GradedForm(self.n, self.m, {k: v for k, v in terms.items() if v}, _raw=True)

    @classmethod
    def zero(cls, n, m):
        return cls(n, m, {}, _raw=True)

    @classmethod
    def function(cls, f, n=None, m=None):
        n = f.n if n is None else n
        m = f.m if m is None else m
        return cls(n, m, {(0, ()): f})

    @classmethod
    def dz(cls, n, m, A):
        return cls(n, m, {((A,), ()): 1})

    @classmethod
    def dc(cls, n, m, a):
        return cls(n, m, {((), (a,)): 1})

    @classmethod
    def generator(cls, n, m, dz_mask, dc):
        return cls(n, m, {(dz_mask, tuple(dc)): gf_const(n, m, 1)}, _raw=True)

    def _check(self, other):
        if (self.n, self.m) != (other.n, other.m):
            raise DimMismatch(f"chart ({self.n},{self.m}) vs ({other.n},{other.m})")

    def _coerce(self, other):
        if isinstance(other, GradedForm):
            self._check(other)
            return other
        return GradedForm.function(_as_function(other, self.n, self.m), self.n, self.m)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, f in other.terms.items():
            out[k] = out[k] + f if k in out else f
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -f for k, f in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __xor__(self, other):
        return gf_wedge(self, self._coerce(other))

    def __rxor__(self, other):
        return gf_wedge(self._coerce(other), self)

    def __mul__(self, other):
        if isinstance(other, (GradedForm, SuperFunction, Polynomial)):
            return gf_wedge(self, self._coerce(other))
        return self._new({k: f * other for k, f in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, (SuperFunction, Polynomial)):
            return gf_wedge(self._coerce(other), self)
        return self._new({k: f * other for k, f in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, GradedForm):
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

    def coefficient(self, dz=(), dc=()):
        mask = 0
        for A in dz:
            mask |= 1 << (A - 1)
        return self.terms.get((mask, tuple(sorted(dc))), gf_zero(self.n, self.m))

    def degrees(self):
        return {kernel.popcount(dz) + len(dc) for dz, dc in self.terms}

    def degree(self):
        ds = self.degrees()
        if len(ds) > 1:
            raise NonHomogeneous("form mixes degrees")
        return ds.pop() if ds else 0

    def parity(self):
        ps = set()
        for (dz, dc), f in self.terms.items():
            p = f.parity()
            if p is None:
                return None
            ps.add((p + len(dc)) % 2)
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def require_parity(self):
        p = self.parity()
        if p is None:
            raise NonHomogeneous("form is not homogeneous in parity")
        return p

    def is_homogeneous(self):
        return len(self.degrees()) <= 1 and self.parity() is not None

    def sorted_terms(self):
        return sorted(self.terms.items(),
                      key=lambda kv: (kernel.popcount(kv[0][0]) + len(kv[0][1]),
                                      mask_to_indices(kv[0][0]), kv[0][1]))

    def __repr__(self):
        parts = []
        for (dz, dc), f in self.sorted_terms():
            gens = [f"dz{A}" for A in mask_to_indices(dz)] + [f"dc{a}" for a in dc]
            parts.append(f"({f})" + ("*" + "^".join(gens) if gens else ""))
        return "GradedForm(" + " + ".join(parts or ["0"]) + ")"

    def to_dict(self):
        return {"n": self.n, "m": self.m,
                "terms": [{"dz": mask_to_indices(dz), "dc": list(dc), "coeff": f.to_dict()}
                          for (dz, dc), f in self.sorted_terms()]}

    @classmethod
    def from_dict(cls, data):
        if isinstance(data, list):
            data = {"terms": data}
        terms = data.get("terms", [])
        coeffs = [SuperFunction.from_dict(t["coeff"], SYMBOLS) for t in terms]
        n = data.get("n", coeffs[0].n if coeffs else 0)
        m = data.get("m", coeffs[0].m if coeffs else 0)
        out = {}
        for t, f in zip(terms, coeffs):
            key = (tuple(t.get("dz", [])), tuple(t.get("dc", [])))
            out[key] = out[key] + f if key in out else f
        return cls(int(n), int(m), out)


def gf_wedge(phi, psi):
    phi._check(psi)
    out = {}
    for (i_mask, j), f in phi.terms.items():
        nj = len(j)
        for (k_mask, l), g in psi.terms.items():
            if i_mask & k_mask:
                continue
            sign = _dz_sign(i_mask, k_mask)
            if (kernel.popcount(k_mask) * nj) & 1:
                sign = -sign
            gg = g.involution() if nj & 1 else g
            coeff = f * gg
            if not coeff:
                continue
            if sign < 0:
                coeff = -coeff
            key = (i_mask | k_mask, tuple(sorted(j + l)))
            out[key] = out[key] + coeff if key in out else coeff
    return phi._new(out)


def _d_function(f, n, m):
    out = {}
    for A in range(1, n + 1):
        g = f.even_deriv(A)
        if g:
            out[(1 << (A - 1), ())] = g
    for a in range(1, m + 1):
        g = f.odd_deriv(a)
        if g:
            # dc^a ^ g = g' dc^a with g' the grading involution of g
            out[(0, (a,))] = g.involution()
    return GradedForm(n, m, out, _raw=True)


def gf_d(phi):
    """Exterior differential ``d phi = dz^A ^ d_A phi + dc^a ^ d/dc^a phi``."""
    n, m = phi.n, phi.m
    total = GradedForm.zero(n, m)
    for (dz, dc), f in phi.terms.items():
        df = _d_function(f, n, m)
        if not df:
            continue
        if dz == 0 and not dc:
            total = total + df
        else:
            total = total + gf_wedge(df, GradedForm.generator(n, m, dz, dc))
    return total


def _interior(u, phi):
    n, m = phi.n, phi.m
    up = u.parity
    out = {}

    def add(key, coeff):
        if coeff:
            out[key] = out[key] + coeff if key in out else coeff

    for (dz, dc), f in phi.terms.items():
        gens = [(0, A) for A in mask_to_indices(dz)] + [(1, a) for a in dc]
        if not gens:
            continue
        f_even, f_odd = f.parity_parts()
        prefix_sign = 0       # exponent of (-1) accumulated over generators before t
        prefix_odd = 0        # number of dc generators before t
        for t, (kind, idx) in enumerate(gens):
            h = u.even[idx - 1] if kind == 0 else u.odd[idx - 1]
            if h:
                hp = (up + kind) % 2
                # move h to the front past the earlier generators
                exp_ = prefix_sign + hp * prefix_odd
                rest_dz = dz & ~(1 << (idx - 1)) if kind == 0 else dz
                if kind == 1:
                    k = list(dc)
                    k.remove(idx)
                    rest_dc = tuple(k)
                else:
                    rest_dc = dc
                key = (rest_dz, rest_dc)
                for fpart, fp in ((f_even, 0), (f_odd, 1)):
                    if not fpart:
                        continue
                    c = fpart * h
                    if (exp_ + fp * up) & 1:
                        c = -c
                    add(key, c)
            prefix_sign += 1 + kind * up
            prefix_odd += kind
    return GradedForm(n, m, {k: v for k, v in out.items() if v}, _raw=True)


def gf_interior(u, phi):
    """Graded interior product ``u _| phi``; degree drops by one."""
    if (u.n, u.m) != (phi.n, phi.m):
        raise DimMismatch("vector field and form live on different charts")
    if phi.terms and all(dz == 0 and not dc for dz, dc in phi.terms):
        raise DegreeZero("interior product of a function")
    return _interior(u, phi)


def gf_lie(u, phi):
    """Graded Lie derivative ``L_u = u _| d + d (u _| .)``."""
    if (u.n, u.m) != (phi.n, phi.m):
        raise DimMismatch("vector field and form live on different charts")
    return _interior(u, gf_d(phi)) + gf_d(_interior(u, phi))


# -- charts ------------------------------------------------------------

class Chart:
    """Transition to a new local basis ``z' = M z + b``, ``c'^a = rho^a_b(z) c^b``.

    ``rho`` and ``rho_inv`` are m x m matrices of polynomials in the old
    even coordinates; their product is checked to be the identity.
    """

    def __init__(self, n, m, even_matrix=None, even_shift=None, rho=None, rho_inv=None):
        self.n, self.m = n, m
        self.has_transition = even_matrix is not None or even_shift is not None or rho is not None
        M = even_matrix if even_matrix is not None else [[int(i == j) for j in range(n)] for i in range(n)]
        b = even_shift if even_shift is not None else [0] * n
        self.M = [[to_exact(x) for x in row] for row in M]
        self.b = [to_exact(x) for x in b]
        if len(self.M) != n or any(len(r) != n for r in self.M) or len(self.b) != n:
            raise DimMismatch("even transition has the wrong shape")
        try:
            self.M_inv = rational_inverse(self.M) if n else []
        except Exception as exc:
            raise InvalidTransition("even transition matrix is singular") from exc
        if rho is None:
            rho = [[Polynomial.const(n, int(i == j)) for j in range(m)] for i in range(m)]
            rho_inv = rho
        elif rho_inv is None:
            rho = [[_poly(x, n) for x in row] for row in rho]
            if all(x.is_constant() for row in rho for x in row):
                inv = rational_inverse([[x.constant_term() for x in row] for row in rho])
                rho_inv = [[Polynomial.const(n, x) for x in row] for row in inv]
            else:
                raise InvalidTransition("a polynomial inverse of rho must be supplied")
        self.rho = [[_poly(x, n) for x in row] for row in rho]
        self.rho_inv = [[_poly(x, n) for x in row] for row in rho_inv]
        if len(self.rho) != m or any(len(r) != m for r in self.rho):
            raise DimMismatch("odd transition has the wrong shape")
        ident = [[Polynomial.const(n, int(i == j)) for j in range(m)] for i in range(m)]
        if m and (poly_matrix_mul(self.rho, self.rho_inv) != ident or
                  poly_matrix_mul(self.rho_inv, self.rho) != ident):
            raise InvalidTransition("rho * rho_inv is not the identity")
        self._build()

    def _build(self):
        n, m = self.n, self.m
        # old even coordinates as polynomials in the new ones: z = M^-1 (z' - b)
        self.z_old = []
        for A in range(n):
            p = Polynomial.zero(n)
            for B in range(n):
                if self.M_inv[A][B]:
                    p = p + (Polynomial.var(n, B + 1) - self.b[B]) * self.M_inv[A][B]
            self.z_old.append(p)
        rho_inv_new = [[x.compose(self.z_old) if n else x for x in row] for row in self.rho_inv]
        self.c_old = []
        for a in range(m):
            f = gf_zero(n, m)
            for b_ in range(m):
                if rho_inv_new[a][b_]:
                    f = f + gf_c(n, m, b_ + 1) * rho_inv_new[a][b_]
            self.c_old.append(f)
        self.dz_old = []
        for A in range(n):
            form = GradedForm.zero(n, m)
            for B in range(n):
                if self.M_inv[A][B]:
                    form = form + GradedForm.dz(n, m, B + 1) * self.M_inv[A][B]
            self.dz_old.append(form)
        self.dc_old = [gf_d(GradedForm.function(f, n, m)) for f in self.c_old]

    @classmethod
    def constant_rho(cls, matrix, n=0):
        m = len(matrix)
        return cls(n, m, rho=[[Polynomial.const(n, x) for x in row] for row in matrix])

    def new_even_coordinates(self):
        """``z'^A`` as polynomials in the old coordinates."""
        out = []
        for A in range(self.n):
            p = Polynomial.const(self.n, self.b[A])
            for B in range(self.n):
                if self.M[A][B]:
                    p = p + Polynomial.var(self.n, B + 1) * self.M[A][B]
            out.append(p)
        return out

    def new_odd_coordinates(self):
        """``c'^a = rho^a_b c^b`` as graded functions of the old coordinates."""
        n, m = self.n, self.m
        out = []
        for a in range(m):
            f = gf_zero(n, m)
            for b_ in range(m):
                if self.rho[a][b_]:
                    f = f + gf_c(n, m, b_ + 1) * self.rho[a][b_]
            out.append(f)
        return out

    def to_dict(self):
        def pm(rows):
            return [[p.to_dict([f"z{i + 1}" for i in range(self.n)]) for p in row] for row in rows]
        return {"n": self.n, "m": self.m,
                "even_matrix": [[format_exact(x) for x in row] for row in self.M],
                "even_shift": [format_exact(x) for x in self.b],
                "rho": pm(self.rho), "rho_inv": pm(self.rho_inv)}

    @classmethod
    def from_dict(cls, data):
        n, m = int(data["n"]), int(data["m"])

        def pm(rows):
            if rows is None:
                return None
            return [[Polynomial.from_dict(p) if isinstance(p, dict) else Polynomial.const(n, p)
                     for p in row] for row in rows]
        return cls(n, m, data.get("even_matrix"), data.get("even_shift"),
                   pm(data.get("rho")), pm(data.get("rho_inv")))


def _poly(x, n):
    if isinstance(x, Polynomial):
        if x.nvars != n:
            if not x.terms:
                return Polynomial.zero(n)
            raise DimMismatch("transition entry has the wrong number of variables")
        return x
    return Polynomial.const(n, x)


def _require_chart(chart):
    if chart is None or not getattr(chart, "has_transition", False):
        raise MissingTransition("chart carries no transition data")


def transform_function(f, chart):
    n, m = chart.n, chart.m
    f = _as_function(f, n, m)
    out = gf_zero(n, m)
    for mask, p in f.terms.items():
        term = SuperFunction(n, m, {0: p.compose(chart.z_old) if n else p}, SYMBOLS)
        for a in mask_to_indices(mask):
            term = term * chart.c_old[a - 1]
        out = out + term
    return out


def transform_field(u, chart):
    n, m = chart.n, chart.m
    even = []
    for A in range(n):
        comp = gf_zero(n, m)
        for B in range(n):
            if chart.M[A][B]:
                comp = comp + u.even[B] * chart.M[A][B]
        even.append(transform_function(comp, chart))
    odd = [transform_function(gv_apply(u, cp), chart) for cp in chart.new_odd_coordinates()]
    return GradedVectorField(n, m, even, odd, u.parity)


def transform_form(phi, chart):
    n, m = chart.n, chart.m
    total = GradedForm.zero(n, m)
    for (dz, dc), f in phi.terms.items():
        term = GradedForm.function(transform_function(f, chart), n, m)
        for A in mask_to_indices(dz):
            term = gf_wedge(term, chart.dz_old[A - 1])
        for a in dc:
            term = gf_wedge(term, chart.dc_old[a - 1])
        total = total + term
    return total


def chart_transform(obj, chart):
    """Express a graded function, vector field or form in the chart's new basis."""
    _require_chart(chart)
    if isinstance(obj, GradedVectorField):
        return transform_field(obj, chart)
    if isinstance(obj, GradedForm):
        return transform_form(obj, chart)
    return transform_function(obj, chart)
