import pytest

from berezin.calculus import Chart, gf_const, gf_zero
from berezin.connection import (GradedConnection, LinearSuperconnection, conn_curvature,
                                conn_curvature_oracle, conn_from_linear, conn_nabla, conn_transform,
                                conn_transform_general, curvature_contract, lift_curvature,
                                linear_curvature, sconn_apply_curvature, sconn_curvature,
                                sconn_curvature_oracle, transform_curvature)
from berezin.errors import MissingTransition, ParityViolation
from berezin.parser import parse_expr
from berezin.polynomial import Polynomial as P
from helpers import rand_base_field, rand_connection, rand_gf, rand_poly, rand_superconnection
from test_calculus import _random_chart


def f(text, n, m):
    return parse_expr(text, "graded", n=n, m=m)


def coord(n, m, A):
    return [gf_const(n, m, int(B == A)) for B in range(1, n + 1)]


def test_nabla_examples():
    flat = GradedConnection.zero(1, 1)
    assert conn_nabla(flat, coord(1, 1, 1), f("z1*c1", 1, 1)) == f("c1", 1, 1)
    conn = GradedConnection(1, 1, [[f("c1", 1, 1)]])
    assert conn_nabla(conn, coord(1, 1, 1), f("c1", 1, 1)) == f("c1", 1, 1)


def test_nabla_leibniz(rng):
    for _ in range(30):
        n, m = rng.randint(1, 3), rng.randint(1, 3)
        conn = rand_connection(rng, n, m)
        tau = rand_base_field(rng, n, m)
        s = rand_gf(rng, n, m, density=1.0)
        s = type(s)(n, m, {0: s.terms.get(0, P.const(n, 1))}, s.symbols)
        g = rand_gf(rng, n, m)
        ds = sum((tau[A] * s.even_deriv(A + 1) for A in range(n)), gf_zero(n, m))
        assert conn_nabla(conn, tau, s * g) == ds * g + s * conn_nabla(conn, tau, g)
        h = rand_gf(rng, n, m, 0)
        lhs = conn_nabla(conn, tau, h * g)
        assert lhs == conn_nabla(conn, tau, h) * g + h * conn_nabla(conn, tau, g)


def test_curvature_examples():
    assert conn_curvature(GradedConnection.zero(2, 1)).is_zero()
    conn = GradedConnection(2, 1, [[f("z2*c1", 2, 1)], [gf_zero(2, 1)]])
    R = conn_curvature(conn)
    assert R(1, 1, 2) == f("-c1", 2, 1)
    assert R(1, 2, 1) == f("c1", 2, 1)
    const = GradedConnection(2, 2, [[f("3*c1", 2, 2), f("c2", 2, 2)], [f("c1 - c2", 2, 2), gf_zero(2, 2)]])
    R = conn_curvature(const)
    # constant coefficients linear in c give only the quadratic term; pure constants give zero
    assert not R.is_zero()
    assert conn_curvature(GradedConnection(2, 2, [[f("c1*c2*c1", 2, 2)] * 2] * 2)).is_zero()


def test_oracle_examples():
    conn = GradedConnection(2, 1, [[f("z2*c1", 2, 1)], [gf_zero(2, 1)]])
    t1, t2 = coord(2, 1, 1), coord(2, 1, 2)
    got = conn_curvature_oracle(conn, t1, t2, f("c1", 2, 1))
    assert got == f("-c1", 2, 1)
    assert got == curvature_contract(conn_curvature(conn), t1, t2, f("c1", 2, 1))
    assert conn_curvature_oracle(GradedConnection.zero(2, 1), t1, t2, f("z1*c1", 2, 1)).is_zero()


def test_gamma_must_be_odd():
    with pytest.raises(ParityViolation):
        GradedConnection(1, 1, [[f("z1", 1, 1)]])


def test_formula_matches_oracle(rng, backend):
    for _ in range(25):
        n, m = rng.randint(1, 3), rng.randint(1, 3)
        conn = rand_connection(rng, n, m)
        R = conn_curvature(conn)
        t1, t2 = rand_base_field(rng, n, m), rand_base_field(rng, n, m)
        g = rand_gf(rng, n, m)
        assert conn_curvature_oracle(conn, t1, t2, g) == curvature_contract(R, t1, t2, g)


def test_lift_examples_and_flatness(rng):
    assert conn_from_linear([[[0]]]) == GradedConnection.zero(1, 1)
    lifted = conn_from_linear([[[1]]])
    assert lifted.gamma[0][0] == f("c1", 1, 1)
    for _ in range(15):
        n, m = rng.randint(1, 3), rng.randint(1, 3)
        Gamma = [[[rand_poly(rng, n) for _ in range(m)] for _ in range(m)] for _ in range(n)]
        assert conn_curvature(conn_from_linear(Gamma)) == lift_curvature(linear_curvature(Gamma), n, m)
    # abelian constant connection is flat, and so is its lift
    Gamma = [[[2, 0], [0, 1]], [[5, 0], [0, -1]]]
    F = linear_curvature(Gamma)
    assert all(not x for mat in F.values() for row in mat for x in row)
    assert conn_curvature(conn_from_linear(Gamma)).is_zero()
    # non-commuting constant matrices give a curved lift
    Gamma = [[[0, 1], [0, 0]], [[0, 0], [1, 0]]]
    assert not conn_curvature(conn_from_linear(Gamma)).is_zero()


def test_transform_examples():
    conn = GradedConnection(2, 1, [[f("z2*c1", 2, 1)], [f("c1", 2, 1)]])
    ident = Chart(2, 1, even_matrix=[[1, 0], [0, 1]])
    assert conn_transform(conn, ident) == conn
    flat = GradedConnection.zero(2, 2)
    const = Chart.constant_rho([[2, 1], [0, 1]], n=2)
    assert conn_transform(flat, const) == flat
    one, zero, z1 = P.const(2, 1), P.const(2, 0), P.var(2, 1)
    chart = Chart(2, 2, rho=[[one, z1], [zero, one]], rho_inv=[[one, -z1], [zero, one]])
    got = conn_transform(flat, chart)
    # d_1 rho^1_2 c^2 = c^2, rewritten in the new basis where c^2 = c'^2
    assert got.gamma[0][0] == f("c2", 2, 2)
    assert got.gamma[1][0].is_zero() and got.gamma[0][1].is_zero()
    with pytest.raises(MissingTransition):
        conn_transform(flat, Chart(2, 2))


def test_general_law_reduces_to_linear(rng):
    for _ in range(10):
        n, m = rng.randint(1, 2), rng.randint(1, 3)
        chart = _random_chart(rng, n, m)
        conn = rand_connection(rng, n, m)
        general = conn_transform_general(conn, chart.new_odd_coordinates())
        expected = []
        for A in range(n):
            row = []
            for a in range(m):
                g = gf_zero(n, m)
                for b in range(m):
                    g = g + conn.gamma[A][b] * chart.rho[a][b]
                    g = g + f(f"c{b + 1}", n, m) * chart.rho[a][b].derivative(A + 1)
                row.append(g)
            expected.append(row)
        assert general.gamma == tuple(tuple(r) for r in expected)


def test_curvature_covariance(rng, backend):
    for _ in range(15):
        n, m = rng.randint(1, 3), rng.randint(1, 3)
        chart = _random_chart(rng, n, m)
        conn = rand_connection(rng, n, m)
        lhs = conn_curvature(conn_transform(conn, chart))
        assert lhs == transform_curvature(conn_curvature(conn), chart)


def test_superconnection_examples():
    S = LinearSuperconnection(2, 0, 1, 1, [None, None])
    R = sconn_curvature(S)
    assert all(not x for mat in R.values() for row in mat for x in row)
    # constant even coefficients: only the commutator term survives
    a = [[f("1", 2, 0), gf_zero(2, 0)], [gf_zero(2, 0), f("2", 2, 0)]]
    b = [[f("0", 2, 0), gf_zero(2, 0)], [gf_zero(2, 0), f("0", 2, 0)]]
    S = LinearSuperconnection(2, 0, 2, 0, [a, [[f("0", 2, 0), f("1", 2, 0)], [gf_zero(2, 0), gf_zero(2, 0)]]])
    R = sconn_curvature(S)
    # [A1, A2] with A1 = diag(1, 2), A2 = E12 is -E12
    assert R[(1, 2)][0][1] == f("-1", 2, 0)
    # mixed derivative term: nabla_1 depends on z2
    S = LinearSuperconnection(2, 0, 1, 1, [[[f("z2", 2, 0), gf_zero(2, 0)], [gf_zero(2, 0), gf_zero(2, 0)]], None])
    R = sconn_curvature(S)
    assert R[(1, 2)][0][0] == f("-1", 2, 0) and R[(2, 1)][0][0] == f("1", 2, 0)
    with pytest.raises(ParityViolation):
        sconn_curvature(LinearSuperconnection(1, 0, 1, 1, [[[gf_zero(1, 0), f("1", 1, 0)],
                                                             [gf_zero(1, 0), gf_zero(1, 0)]]]))
    assert b


def test_superconnection_formula_matches_oracle(rng, backend):
    for _ in range(25):
        n, m, r, s = rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 2)
        if n + m == 0 or r + s == 0:
            continue
        S = rand_superconnection(rng, n, m, r, s)
        R = sconn_curvature(S)
        for i in range(1, n + m + 1):
            for j in range(1, n + m + 1):
                sec = [rand_gf(rng, n, m) for _ in range(r + s)]
                assert sconn_curvature_oracle(S, i, j, sec) == sconn_apply_curvature(R, i, j, sec, S)
                sign = -1 if S.coord_parity(i) * S.coord_parity(j) else 1
                for a in range(r + s):
                    for b in range(r + s):
                        assert R[(i, j)][a][b] == -sign * R[(j, i)][a][b]


def test_json_round_trip(rng):
    conn = rand_connection(rng, 2, 2)
    assert GradedConnection.from_dict(conn.to_dict()) == conn
    S = rand_superconnection(rng, 1, 1, 1, 1)
    again = LinearSuperconnection.from_dict(S.to_dict())
    assert again.coeffs == S.coeffs
