"""Graded connections and linear superconnections on a chart.

A graded connection on an (n, m) chart is the splitting
``d_A -> d_A + gamma^a_A d/dc^a``; the ``gamma^a_A`` are odd graded
functions so that the lifted fields are even.

A linear superconnection on the free module with basis ``eps_1..eps_{r+s}``
(first ``r`` even) over an (n, m) chart acts by
``nabla_i eps_b = nabla_i^a_b eps_a`` where ``i`` runs over the ``n + m``
chart coordinates (even ``z`` first, then odd ``c``).  Sections are written
``s = s^a eps_a`` with coefficients on the left, and

    nabla_i (f s) = (d_i f) s + (-1)^([i][f]) f nabla_i s.
"""

from .calculus import (SYMBOLS, Chart, GradedVectorField, _as_function, _require_chart, gf_c,
                       gf_zero, gv_apply, gv_bracket, transform_function)
from .errors import DimMismatch, IndexOutOfRange, ParityViolation
from .polynomial import Polynomial
from .superfunction import SuperFunction


class GradedConnection:
    __slots__ = ("n", "m", "gamma")

    def __init__(self, n, m, gamma):
        """``gamma[A][a]`` holds ``gamma^{a+1}_{A+1}``."""
        if len(gamma) != n or any(len(row) != m for row in gamma):
            raise DimMismatch(f"gamma must be {n} x {m}")
        self.n, self.m = n, m
        self.gamma = tuple(tuple(_as_function(g, n, m) for g in row) for row in gamma)
        for A, row in enumerate(self.gamma):
            for a, g in enumerate(row):
                if g and g.parity() != 1:
                    raise ParityViolation(A + 1, a + 1, "connection coefficients must be odd")

    @classmethod
    def zero(cls, n, m):
        return cls(n, m, [[gf_zero(n, m)] * m for _ in range(n)])

    def component(self, a, A):
        return self.gamma[A - 1][a - 1]

    def lift(self, A):
        """Horizontal lift ``d_A + gamma^a_A d/dc^a`` as an even vector field."""
        n, m = self.n, self.m
        even = [SuperFunction.const(n, m, int(B == A), SYMBOLS) for B in range(1, n + 1)]
        return GradedVectorField(n, m, even, list(self.gamma[A - 1]), 0)

    def lift_field(self, tau):
        n, m = self.n, self.m
        coeffs = _base_field(tau, n, m)
        odd = [gf_zero(n, m)] * m
        for A, t in enumerate(coeffs):
            if t:
                odd = [o + t * g for o, g in zip(odd, self.gamma[A])]
        return GradedVectorField(n, m, coeffs, odd, 0)

    def __eq__(self, other):
        return isinstance(other, GradedConnection) and (self.n, self.m, self.gamma) == (other.n, other.m, other.gamma)

    def __hash__(self):
        return hash((self.n, self.m, self.gamma))

    def __repr__(self):
        return f"GradedConnection({self.n},{self.m},{[[str(g) for g in r] for r in self.gamma]})"

    def to_dict(self):
        return {"n": self.n, "m": self.m, "gamma": [[g.to_dict() for g in row] for row in self.gamma]}

    @classmethod
    def from_dict(cls, data):
        gamma = [[SuperFunction.from_dict(g, SYMBOLS) for g in row] for row in data["gamma"]]
        n = data.get("n", len(gamma))
        if "m" in data:
            m = data["m"]
        elif gamma and gamma[0]:
            m = gamma[0][0].m
        else:
            m = 0
        return cls(int(n), int(m), gamma)


class CurvatureTensor:
    """Components ``R^a_{AB}`` for ``A < B``; ``R^a_{BA} = -R^a_{AB}``."""

    __slots__ = ("n", "m", "components")

    def __init__(self, n, m, components):
        self.n, self.m = n, m
        self.components = dict(components)

    def __call__(self, a, A, B):
        if A == B:
            return gf_zero(self.n, self.m)
        if A > B:
            return -self.components[(a, B, A)]
        return self.components[(a, A, B)]

    def is_zero(self):
        return all(not f for f in self.components.values())

    def __eq__(self, other):
        return isinstance(other, CurvatureTensor) and self.components == other.components

    def __hash__(self):
        return hash(frozenset(self.components.items()))

    def __repr__(self):
        body = ", ".join(f"R^{a}_{A}{B}={f}" for (a, A, B), f in sorted(self.components.items()) if f)
        return f"CurvatureTensor({body or '0'})"

    def to_dict(self):
        return {"n": self.n, "m": self.m,
                "components": [{"a": a, "A": A, "B": B, "value": f.to_dict()}
                               for (a, A, B), f in sorted(self.components.items())]}


def _base_field(tau, n, m):
    """Coefficients ``tau^A`` of a base field, each a function of ``z`` only."""
    if isinstance(tau, GradedVectorField):
        if (tau.n, tau.m) != (n, m):
            raise DimMismatch("base field lives on a different chart")
        if any(tau.odd):
            raise DimMismatch("base field must have no odd components")
        coeffs = list(tau.even)
    else:
        if len(tau) != n:
            raise DimMismatch(f"base field needs {n} components")
        coeffs = [_as_function(t, n, m) for t in tau]
    for t in coeffs:
        if any(mask for mask in t.terms):
            raise DimMismatch("base field components must depend on z only")
    return coeffs


def conn_nabla(conn, tau, f):
    """Covariant derivative ``tau^A (d_A f + gamma^a_A d/dc^a f)``."""
    return gv_apply(conn.lift_field(tau), _as_function(f, conn.n, conn.m))


def conn_curvature(conn):
    n, m = conn.n, conn.m
    comps = {}
    for A in range(1, n + 1):
        for B in range(A + 1, n + 1):
            for a in range(1, m + 1):
                gA, gB = conn.gamma[A - 1], conn.gamma[B - 1]
                val = gB[a - 1].even_deriv(A) - gA[a - 1].even_deriv(B)
                for k in range(1, m + 1):
                    if gA[k - 1]:
                        val = val + gA[k - 1] * gB[a - 1].odd_deriv(k)
                    if gB[k - 1]:
                        val = val - gB[k - 1] * gA[a - 1].odd_deriv(k)
                comps[(a, A, B)] = val
    return CurvatureTensor(n, m, comps)


def conn_curvature_oracle(conn, tau, tau2, f):
    """``[nabla_tau, nabla_tau2] f - nabla_[tau, tau2] f`` by direct composition."""
    n, m = conn.n, conn.m
    f = _as_function(f, n, m)
    t1 = _base_field(tau, n, m)
    t2 = _base_field(tau2, n, m)
    zero_odd = [gf_zero(n, m)] * m
    bracket = gv_bracket(GradedVectorField(n, m, t1, zero_odd, 0), GradedVectorField(n, m, t2, zero_odd, 0))
    return (conn_nabla(conn, t1, conn_nabla(conn, t2, f))
            - conn_nabla(conn, t2, conn_nabla(conn, t1, f))
            - conn_nabla(conn, list(bracket.even), f))


def curvature_contract(R, tau, tau2, f):
    """``tau^A tau2^B R^a_{AB} d/dc^a f``."""
    n, m = R.n, R.m
    f = _as_function(f, n, m)
    t1 = _base_field(tau, n, m)
    t2 = _base_field(tau2, n, m)
    out = gf_zero(n, m)
    for A in range(1, n + 1):
        for B in range(1, n + 1):
            if A == B or not t1[A - 1] or not t2[B - 1]:
                continue
            w = t1[A - 1] * t2[B - 1]
            for a in range(1, m + 1):
                r = R(a, A, B)
                if r:
                    out = out + w * r * f.odd_deriv(a)
    return out


# -- linear connections ------------------------------------------------

def _poly_grid(Gamma, n, m):
    if len(Gamma) != n:
        raise DimMismatch(f"need {n} coefficient matrices")
    out = []
    for mat in Gamma:
        if len(mat) != m or any(len(row) != m for row in mat):
            raise DimMismatch(f"coefficient matrices must be {m} x {m}")
        out.append([[x if isinstance(x, Polynomial) else Polynomial.const(n, x) for x in row] for row in mat])
    return out


def conn_from_linear(Gamma, n=None, m=None):
    """Lift ``Gamma_A^a_b(z)`` (``Gamma[A][a][b]``) to ``gamma^a_A = Gamma_A^a_b c^b``."""
    n = len(Gamma) if n is None else n
    m = (len(Gamma[0]) if Gamma else 0) if m is None else m
    G = _poly_grid(Gamma, n, m)
    gamma = []
    for A in range(n):
        row = []
        for a in range(m):
            g = gf_zero(n, m)
            for b in range(m):
                if G[A][a][b]:
                    g = g + gf_c(n, m, b + 1) * G[A][a][b]
            row.append(g)
        gamma.append(row)
    return GradedConnection(n, m, gamma)


def linear_curvature(Gamma, n=None, m=None):
    """``F_{AB}^a_b`` of a linear connection in the fibre-coordinate convention.

    The lift acts on the fibre coordinates ``c^a``, so the quadratic term
    enters as ``-[Gamma_A, Gamma_B]``; with this convention the lifted
    curvature is exactly ``F_{AB}^a_b c^b``.  Returned as ``{(A, B): matrix}``
    for ``A < B``.
    """
    n = len(Gamma) if n is None else n
    m = (len(Gamma[0]) if Gamma else 0) if m is None else m
    G = _poly_grid(Gamma, n, m)
    out = {}
    for A in range(1, n + 1):
        for B in range(A + 1, n + 1):
            GA, GB = G[A - 1], G[B - 1]
            mat = []
            for a in range(m):
                row = []
                for b in range(m):
                    v = GB[a][b].derivative(A) - GA[a][b].derivative(B)
                    for k in range(m):
                        v = v + GB[a][k] * GA[k][b] - GA[a][k] * GB[k][b]
                    row.append(v)
                mat.append(row)
            out[(A, B)] = mat
    return out


def lift_curvature(F, n, m):
    """Turn ``F_{AB}^a_b`` into the graded curvature ``F_{AB}^a_b c^b``."""
    comps = {}
    for A in range(1, n + 1):
        for B in range(A + 1, n + 1):
            mat = F[(A, B)]
            for a in range(1, m + 1):
                g = gf_zero(n, m)
                for b in range(m):
                    if mat[a - 1][b]:
                        g = g + gf_c(n, m, b + 1) * mat[a - 1][b]
                comps[(a, A, B)] = g
    return CurvatureTensor(n, m, comps)


# -- transformation laws -----------------------------------------------

def conn_transform_general(conn, rho):
    """``gamma'^a_A = gamma^b_A d/dc^b rho^a + d_A rho^a`` for new odd generators ``rho^a(z, c)``.

    Even coordinates are unchanged and the result is expressed in the old
    generators (no inversion of ``rho`` is attempted).
    """
    n, m = conn.n, conn.m
    if len(rho) != m:
        raise DimMismatch(f"need {m} transition functions")
    rho = [_as_function(r, n, m) for r in rho]
    gamma = []
    for A in range(1, n + 1):
        row = []
        for a in range(m):
            g = rho[a].even_deriv(A)
            for b in range(1, m + 1):
                gb = conn.gamma[A - 1][b - 1]
                if gb:
                    g = g + gb * rho[a].odd_deriv(b)
            row.append(g)
        gamma.append(row)
    return GradedConnection(n, m, gamma)


def conn_transform(conn, chart):
    """Connection coefficients in the chart's new basis.

    For ``c'^a = rho^a_b(z) c^b`` this is
    ``rho^a_b gamma^b_A + d_A rho^a_b c^b``, contracted with the inverse
    Jacobian of the affine even transition and rewritten in the new
    coordinates.
    """
    _require_chart(chart)
    n, m = conn.n, conn.m
    if (chart.n, chart.m) != (n, m):
        raise DimMismatch("chart and connection dimensions differ")
    old = conn_transform_general(conn, chart.new_odd_coordinates())
    gamma = []
    for A2 in range(n):
        row = []
        for a in range(m):
            g = gf_zero(n, m)
            for A in range(n):
                w = chart.M_inv[A][A2]
                if w:
                    g = g + old.gamma[A][a] * w
            row.append(transform_function(g, chart))
        gamma.append(row)
    return GradedConnection(n, m, gamma)


def transform_curvature(R, chart):
    """Tensorial law ``R'^a_{A'B'} = J^A_{A'} J^B_{B'} rho^a_b R^b_{AB}`` with ``J = M^-1``."""
    n, m = R.n, R.m
    rho = chart.rho
    comps = {}
    for A2 in range(1, n + 1):
        for B2 in range(A2 + 1, n + 1):
            for a in range(1, m + 1):
                g = gf_zero(n, m)
                for A in range(1, n + 1):
                    for B in range(1, n + 1):
                        w = chart.M_inv[A - 1][A2 - 1] * chart.M_inv[B - 1][B2 - 1]
                        if not w or A == B:
                            continue
                        for b in range(1, m + 1):
                            r = R(b, A, B)
                            if r and rho[a - 1][b - 1]:
                                g = g + r * rho[a - 1][b - 1] * w
                comps[(a, A2, B2)] = transform_function(g, chart)
    return CurvatureTensor(n, m, comps)


# -- linear superconnections -------------------------------------------

class LinearSuperconnection:
    """Coefficients ``coeffs[i][a][b] = nabla_{i+1}^{a+1}_{b+1}`` on an (n, m) chart."""

    __slots__ = ("n", "m", "r", "s", "coeffs")

    def __init__(self, n, m, r, s, coeffs):
        self.n, self.m, self.r, self.s = n, m, r, s
        size = r + s
        grid = []
        for i in range(n + m):
            mat = coeffs[i] if i < len(coeffs) and coeffs[i] is not None else None
            if mat is None:
                grid.append(tuple(tuple(gf_zero(n, m) for _ in range(size)) for _ in range(size)))
                continue
            if len(mat) != size or any(len(row) != size for row in mat):
                raise DimMismatch(f"coefficient matrix {i + 1} must be {size} x {size}")
            grid.append(tuple(tuple(_as_function(x, n, m) for x in row) for row in mat))
        self.coeffs = tuple(grid)

    def coord_parity(self, i):
        return 0 if i <= self.n else 1

    def basis_parity(self, a):
        return 0 if a <= self.r else 1

    def validate(self):
        size = self.r + self.s
        for i in range(1, self.n + self.m + 1):
            for a in range(1, size + 1):
                for b in range(1, size + 1):
                    f = self.coeffs[i - 1][a - 1][b - 1]
                    want = (self.coord_parity(i) + self.basis_parity(a) + self.basis_parity(b)) % 2
                    if f and f.parity() != want:
                        raise ParityViolation(a, b, f"coefficient {i} has the wrong parity")
        return True

    def coefficient(self, i, a, b):
        return self.coeffs[i - 1][a - 1][b - 1]

    def coord_deriv(self, f, i):
        return f.even_deriv(i) if i <= self.n else f.odd_deriv(i - self.n)

    def apply(self, i, section):
        """``nabla_i`` of a section given by its left coefficients ``s^a``."""
        n, m = self.n, self.m
        if not 1 <= i <= n + m:
            raise IndexOutOfRange(f"coordinate {i} outside 1..{n + m}")
        section = [_as_function(x, n, m) for x in section]
        pi = self.coord_parity(i)
        out = [self.coord_deriv(x, i) for x in section]
        for b, sb in enumerate(section):
            if not sb:
                continue
            for part, p in zip(sb.parity_parts(), (0, 1)):
                if not part:
                    continue
                sign = -1 if pi * p else 1
                for a in range(len(section)):
                    c = self.coeffs[i - 1][a][b]
                    if c:
                        out[a] = out[a] + part * c * sign
        return out

    def to_dict(self):
        return {"n": self.n, "m": self.m, "r": self.r, "s": self.s,
                "coeffs": {str(i + 1): [[f.to_dict() for f in row] for row in mat]
                           for i, mat in enumerate(self.coeffs) if any(f for row in mat for f in row)}}

    @classmethod
    def from_dict(cls, data):
        r, s = int(data["r"]), int(data["s"])
        raw = data.get("coeffs", {})
        mats = {int(k): [[SuperFunction.from_dict(f, SYMBOLS) for f in row] for row in v] for k, v in raw.items()}
        sample = next((f for mat in mats.values() for row in mat for f in row), None)
        n = int(data.get("n", sample.n if sample else 0))
        m = int(data.get("m", sample.m if sample else 0))
        coeffs = [mats.get(i + 1) for i in range(n + m)]
        return cls(n, m, r, s, coeffs)


def sconn_curvature(S):
    """``R_{ij}^a_b`` with ``R_{ij} eps_b = R_{ij}^a_b eps_a``, ``R_{ij} = [nabla_i, nabla_j}``.

    Returned as ``{(i, j): matrix}`` over all coordinate pairs.
    """
    S.validate()
    N, size = S.n + S.m, S.r + S.s
    pc, pb = S.coord_parity, S.basis_parity
    out = {}
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            eij = pc(i) * pc(j)
            mat = []
            for a in range(1, size + 1):
                row = []
                for b in range(1, size + 1):
                    v = S.coord_deriv(S.coefficient(j, a, b), i)
                    w = S.coord_deriv(S.coefficient(i, a, b), j)
                    v = v - w if eij == 0 else v + w
                    for k in range(1, size + 1):
                        t1 = S.coefficient(i, a, k) * S.coefficient(j, k, b)
                        if t1:
                            e = (pc(j) + pb(k) + pb(b)) * (pb(a) + pb(k))
                            v = v - t1 if e & 1 else v + t1
                        t2 = S.coefficient(j, a, k) * S.coefficient(i, k, b)
                        if t2:
                            e = eij + (pc(i) + pb(k) + pb(b)) * (pb(a) + pb(k))
                            v = v + t2 if e & 1 else v - t2
                    row.append(v)
                mat.append(row)
            out[(i, j)] = mat
    return out


def sconn_curvature_oracle(S, i, j, section):
    """``nabla_i nabla_j s - (-1)^([i][j]) nabla_j nabla_i s`` by repeated application."""
    sign = -1 if S.coord_parity(i) * S.coord_parity(j) else 1
    first = S.apply(i, S.apply(j, section))
    second = S.apply(j, S.apply(i, section))
    return [x - y if sign > 0 else x + y for x, y in zip(first, second)]


def sconn_apply_curvature(R, i, j, section, S):
    """Apply the curvature matrix to a section: ``(-1)^(([i]+[j])[s^b]) s^b R_{ij}^a_b``."""
    mat = R[(i, j)]
    n, m = S.n, S.m
    size = S.r + S.s
    pij = (S.coord_parity(i) + S.coord_parity(j)) % 2
    out = [gf_zero(n, m) for _ in range(size)]
    for b in range(size):
        sb = _as_function(section[b], n, m)
        for part, p in zip(sb.parity_parts(), (0, 1)):
            if not part:
                continue
            sign = -1 if pij * p else 1
            for a in range(size):
                if mat[a][b]:
                    out[a] = out[a] + part * mat[a][b] * sign
    return out


__all__ = ["GradedConnection", "CurvatureTensor", "LinearSuperconnection", "Chart", "conn_nabla",
           "conn_curvature", "conn_curvature_oracle", "curvature_contract", "conn_from_linear",
           "linear_curvature", "lift_curvature", "conn_transform", "conn_transform_general",
           "transform_curvature", "sconn_curvature", "sconn_curvature_oracle", "sconn_apply_curvature"]
