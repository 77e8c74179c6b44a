"""The orthogonal-symplectic form on ``B^{n|2m}`` and its isometry supergroup.

Slots are ordered ``x1..xn, y1..ym, ybar1..ybarm``.  The Gram matrix is
``Omega = diag(I_n, J)`` with ``J = [[0, I_m], [-I_m, 0]]``, so
``omega(e_y, e_ybar) = 1`` and ``omega(e_ybar, e_y) = -1``.

Vectors are right Lambda-combinations ``u = sum e_alpha u^alpha``.
Bilinearity then forces a sign when a component passes a basis vector:

    omega(u, v) = sum (-1)^([u^alpha][beta]) Omega_{alpha beta} u^alpha v^beta

with each component split into its even and odd parts.  Membership of an
even supermatrix ``L`` is decided on basis pairs:
``omega(L e_alpha, L e_beta) = Omega_{alpha beta}``.
"""

from .errors import DimMismatch, NotInfinitesimallyAntisymmetric, OddMatrix, RankMismatch
from .grassmann import GrassmannElement as G
from .scalars import EXACT, to_exact
from .supermatrix import Supermatrix, sm_exp


def omega_matrix(n, m):
    size = n + 2 * m
    W = [[0] * size for _ in range(size)]
    for i in range(n):
        W[i][i] = 1
    for j in range(m):
        W[n + j][n + m + j] = 1
        W[n + m + j][n + j] = -1
    return W


def slot_parity(n, alpha):
    return 0 if alpha < n else 1


class OmegaForm:
    __slots__ = ("n", "m", "matrix")

    def __init__(self, n, m):
        self.n, self.m = n, m
        self.matrix = omega_matrix(n, m)

    @property
    def size(self):
        return self.n + 2 * self.m

    def __call__(self, u, v):
        return omega_eval(u, v, self.n, self.m)

    def basis_vector(self, alpha, rank, mode=EXACT):
        return [G.one(rank, mode) if b == alpha else G.zero(rank, mode) for b in range(self.size)]


def _as_vector(u, rank, mode):
    return [x if isinstance(x, G) else G.scalar(rank, x, mode) for x in u]


def omega_eval(u, v, n, m):
    """``omega(u, v)`` for component lists of length ``n + 2m``."""
    size = n + 2 * m
    if len(u) != size or len(v) != size:
        raise DimMismatch(f"vectors must have {size} components")
    sample = next((x for x in list(u) + list(v) if isinstance(x, G)), None)
    rank = sample.rank if sample is not None else 0
    mode = sample.mode if sample is not None else EXACT
    u = _as_vector(u, rank, mode)
    v = _as_vector(v, rank, mode)
    for x in u + v:
        if x.rank != rank:
            raise RankMismatch(f"component rank {x.rank} vs {rank}")
    W = omega_matrix(n, m)
    total = G.zero(rank, mode)
    for a in range(size):
        if u[a].is_zero():
            continue
        ue, uo = u[a].parity_parts()
        for b in range(size):
            w = W[a][b]
            if not w or v[b].is_zero():
                continue
            sb = slot_parity(n, b)
            total = total + ue * v[b] * w
            if not uo.is_zero():
                total = total + uo * v[b] * (-w if sb else w)
    return total


def _column(L, alpha):
    return [L.entries[g][alpha] for g in range(L.size)]


def _require_shape(L):
    if L.m % 2:
        raise DimMismatch(f"odd dimension {L.m} is not even")
    return L.n, L.m // 2


def osp_violations(L):
    """Basis pairs ``(alpha, beta)`` (0-based) where ``omega(L e_alpha, L e_beta) != Omega``."""
    n, m = _require_shape(L)
    if L.parity:
        raise OddMatrix("membership is defined for even supermatrices")
    W = omega_matrix(n, m)
    cols = [_column(L, a) for a in range(L.size)]
    out = []
    for a in range(L.size):
        for b in range(L.size):
            val = omega_eval(cols[a], cols[b], n, m)
            if val != G.scalar(L.rank, W[a][b], L.mode):
                out.append((a, b))
    return out


def osp_check(L):
    return not osp_violations(L)


def osp_report(L):
    v = osp_violations(L)
    return {"member": not v, "violations": [{"alpha": a, "beta": b} for a, b in v]}


def infinitesimal_violations(X):
    n, m = _require_shape(X)
    size = X.size
    cols = [_column(X, a) for a in range(size)]
    basis = [[G.one(X.rank, X.mode) if g == a else G.zero(X.rank, X.mode) for g in range(size)]
             for a in range(size)]
    out = []
    for a in range(size):
        for b in range(size):
            val = omega_eval(cols[a], basis[b], n, m) + omega_eval(basis[a], cols[b], n, m)
            if not val.is_zero():
                out.append((a, b))
    return out


def osp_generate(X):
    """``exp(X)`` for an even, infinitesimally form-preserving supermatrix ``X``."""
    if X.parity:
        raise OddMatrix("generator must be even")
    bad = infinitesimal_violations(X)
    if bad:
        raise NotInfinitesimallyAntisymmetric(*bad[0])
    return sm_exp(X)


def osp_algebra_basis(n, m):
    """Real homogeneous matrices spanning the isometry Lie superalgebra, with parities.

    Each basis element is ``Omega^-1 Y`` with ``Y`` graded antisymmetric:
    ``Y_{ab} = -(-1)^([a][b]) Y_{ba}``.
    """
    size = n + 2 * m
    W = omega_matrix(n, m)
    # Omega is orthogonal with entries 0, +-1, so its inverse is its transpose
    Winv = [[W[j][i] for j in range(size)] for i in range(size)]
    mats, parities = [], []
    for a in range(size):
        for b in range(a, size):
            pa, pb = slot_parity(n, a), slot_parity(n, b)
            Y = [[0] * size for _ in range(size)]
            if a == b:
                if not pa:
                    continue
                Y[a][a] = 1
            else:
                Y[a][b] = 1
                Y[b][a] = 1 if pa * pb else -1
            X = [[sum(Winv[i][k] * Y[k][j] for k in range(size)) for j in range(size)] for i in range(size)]
            mats.append(X)
            parities.append((pa + pb) % 2)
    return mats, parities


def osp_algebra_element(n, m, coeffs, rank, mode=EXACT):
    """``sum coeffs[k] * basis[k]`` as a Lambda supermatrix; even basis elements take even
    coefficients and odd basis elements odd ones for an even result."""
    mats, parities = osp_algebra_basis(n, m)
    if len(coeffs) != len(mats):
        raise DimMismatch(f"need {len(mats)} coefficients")
    size = n + 2 * m
    grid = [[G.zero(rank, mode) for _ in range(size)] for _ in range(size)]
    for c, M in zip(coeffs, mats):
        if not isinstance(c, G):
            c = G.scalar(rank, c, mode)
        if c.is_zero():
            continue
        for i in range(size):
            for j in range(size):
                if M[i][j]:
                    grid[i][j] = grid[i][j] + c * to_exact(M[i][j])
    return Supermatrix(n, 2 * m, grid, 0, rank, mode)
