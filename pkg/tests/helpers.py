"""Seeded random generators shared by the test suite."""

from fractions import Fraction

from berezin.calculus import SYMBOLS, GradedForm, GradedVectorField
from berezin.connection import GradedConnection, LinearSuperconnection
from berezin.grassmann import GrassmannElement as G
from berezin.kernel import popcount
from berezin.liesuper import LieSuperalgebra
from berezin.osp import osp_algebra_basis, osp_algebra_element
from berezin.polynomial import Polynomial
from berezin.superfunction import SuperFunction
from berezin.supermatrix import Supermatrix


def rand_coeff(rng, lo=-3, hi=3, fractions=True):
    c = rng.randint(lo, hi)
    if fractions and rng.random() < 0.2:
        return Fraction(c, rng.randint(1, 4))
    return c


def rand_grassmann(rng, rank, parity=None, density=0.35, zero_body=False, body=None):
    terms = {}
    for mask in range(1 << rank):
        if parity is not None and popcount(mask) % 2 != parity:
            continue
        if mask == 0 and zero_body:
            continue
        if rng.random() < density:
            c = rand_coeff(rng)
            if c:
                terms[mask] = c
    if body is not None and (parity in (None, 0)):
        terms[0] = body
    return G(rank, terms)


def rand_nonzero_body(rng, rank, parity=None):
    b = 0
    while b == 0:
        b = rand_coeff(rng)
    return rand_grassmann(rng, rank, parity=0 if parity == 0 else None, body=b)


def rand_supermatrix(rng, n, m, rank, parity=0, zero_body=False, density=0.35):
    size = n + m
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            p = (parity + (i >= n) + (j >= n)) % 2
            row.append(rand_grassmann(rng, rank, p, density, zero_body=zero_body))
        rows.append(row)
    return Supermatrix(n, m, rows, parity, rank)


def rand_invertible_supermatrix(rng, n, m, rank):
    """Even supermatrix whose body is a random unimodular-ish integer matrix."""
    while True:
        L = rand_supermatrix(rng, n, m, rank, 0)
        size = n + m
        rows = [list(r) for r in L.entries]
        for i in range(size):
            rows[i][i] = rows[i][i] + rng.choice([1, 2, -1, 3])
        L = Supermatrix(n, m, rows, 0, rank)
        try:
            from berezin.linalg import inverse
            inverse([[x.body() for x in r[:n]] for r in L.entries[:n]]) if n else None
            inverse([[x.body() for x in r[n:]] for r in L.entries[n:]]) if m else None
            return L
        except Exception:
            continue


def rand_poly(rng, nvars, max_deg=2, max_terms=3):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        e = [0] * nvars
        if nvars:
            for _ in range(rng.randint(0, max_deg)):
                e[rng.randrange(nvars)] += 1
        terms[tuple(e)] = terms.get(tuple(e), 0) + rand_coeff(rng)
    return Polynomial(nvars, terms)


def rand_sf(rng, n, m, parity=None, symbols=("x", "y"), density=0.5, max_deg=2):
    terms = {}
    for mask in range(1 << m):
        if parity is not None and popcount(mask) % 2 != parity:
            continue
        if rng.random() < density:
            terms[mask] = rand_poly(rng, n, max_deg)
    return SuperFunction(n, m, terms, symbols)


def rand_gf(rng, n, m, parity=None, **kw):
    return rand_sf(rng, n, m, parity, SYMBOLS, **kw)


def rand_point(rng, n, m, rank):
    from berezin.superfunction import SuperPoint
    even = [rand_grassmann(rng, rank, 0, body=rand_coeff(rng)) for _ in range(n)]
    odd = [rand_grassmann(rng, rank, 1) for _ in range(m)]
    return SuperPoint(even, odd, rank)


def rand_form(rng, n, m, degree=None, parity=None, max_terms=3, max_dc=2):
    """Random form, retried a few times so that it is nonzero whenever possible."""
    for _ in range(20):
        phi = _rand_form_once(rng, n, m, degree, parity, max_terms, max_dc)
        if not phi.is_zero():
            return phi
    return phi


def _rand_form_once(rng, n, m, degree, parity, max_terms, max_dc):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        k = degree if degree is not None else rng.randint(0, 3)
        dz = []
        dc = []
        for _ in range(k):
            if m and (not n or rng.random() < 0.4) and len(dc) < max_dc:
                dc.append(rng.randint(1, m))
            elif n:
                dz.append(rng.randint(1, n))
        if len(set(dz)) != len(dz) or (not n and not m and k):
            continue
        if len(dz) + len(dc) != k:
            continue
        fp = None if parity is None else (parity + len(dc)) % 2
        key = (tuple(sorted(dz)), tuple(sorted(dc)))
        terms[key] = rand_gf(rng, n, m, fp)
    return GradedForm(n, m, terms)


def rand_field(rng, n, m, parity):
    even = [rand_gf(rng, n, m, parity) for _ in range(n)]
    odd = [rand_gf(rng, n, m, (parity + 1) % 2) for _ in range(m)]
    return GradedVectorField(n, m, even, odd, parity)


def rand_connection(rng, n, m, max_deg=2):
    return GradedConnection(n, m, [[rand_gf(rng, n, m, 1, max_deg=max_deg) for _ in range(m)]
                                   for _ in range(n)])


def rand_base_field(rng, n, m):
    return [SuperFunction(n, m, {0: rand_poly(rng, n)}, SYMBOLS) for _ in range(n)]


def rand_superconnection(rng, n, m, r, s):
    N, size = n + m, r + s

    def pc(i):
        return 0 if i < n else 1

    def pb(a):
        return 0 if a < r else 1
    coeffs = [[[rand_gf(rng, n, m, (pc(i) + pb(a) + pb(b)) % 2, density=0.4) for b in range(size)]
               for a in range(size)] for i in range(N)]
    return LinearSuperconnection(n, m, r, s, coeffs)


def two_step_nilpotent(rng, parities, central):
    """Brackets of non-central basis elements land in the central ones; Jacobi holds automatically."""
    d = len(parities)
    gens = [i for i in range(d) if i not in central]
    table = {}
    for a, i in enumerate(gens):
        for j in gens[a:]:
            if i == j and parities[i] == 0:
                continue
            out = {}
            for k in central:
                if parities[k] == (parities[i] + parities[j]) % 2 and rng.random() < 0.6:
                    c = rand_coeff(rng)
                    if c:
                        out[k] = c
            if out:
                table[(i, j)] = out
    return LieSuperalgebra(parities, table)


def direct_sum(g, h):
    off = len(g.parities)
    table = dict(g.bracket)
    for (i, j), out in h.bracket.items():
        table[(i + off, j + off)] = {k + off: c for k, c in out.items()}
    return LieSuperalgebra(list(g.parities) + list(h.parities), table, fill=False)


def rand_osp_generator(rng, n, m, rank):
    _, parities = osp_algebra_basis(n, m)
    coeffs = []
    for p in parities:
        if rng.random() < 0.5:
            coeffs.append(0)
        else:
            coeffs.append(rand_grassmann(rng, rank, p, density=0.3, zero_body=True))
    return osp_algebra_element(n, m, coeffs, rank)
