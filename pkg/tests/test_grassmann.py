import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from berezin.errors import ExactModeBodyNonzero, ModeMismatch, NotInvertible, RankMismatch, RankTooLarge
from berezin.grassmann import GrassmannElement as G
from berezin.grassmann import g_body_soul, g_exp, g_inv, g_mul, g_norm, g_parity_parts
from berezin.parser import parse_expr
from helpers import rand_grassmann, rand_nonzero_body


def c(i, rank=4):
    return G.generator(rank, i)


def E(text, rank=4):
    return parse_expr(text, rank=rank)


# examples

def test_mul_examples(backend):
    assert g_mul(c(1), c(1)).is_zero()
    assert g_mul(c(2), c(1)) == -E("c1*c2")
    assert g_mul(E("1 + c1*c2"), E("1 - c1*c2")) == G.one(4)


def test_body_soul_examples():
    body, soul = g_body_soul(E("3 + 2*c1 + c1*c2"))
    assert body == 3 and soul == E("2*c1 + c1*c2")
    assert g_body_soul(G.zero(4)) == (0, G.zero(4))
    assert g_body_soul(E("c1*c2*c3")) == (0, E("c1*c2*c3"))


def test_inv_examples(backend):
    assert g_inv(G.scalar(4, 2)) == G.scalar(4, "1/2")
    assert g_inv(E("1 + c1*c2")) == E("1 - c1*c2")
    with pytest.raises(NotInvertible):
        g_inv(c(1))


def test_exp_examples():
    assert g_exp(G.zero(4)) == G.one(4)
    assert g_exp(E("c1*c2")) == E("1 + c1*c2")
    with pytest.raises(ExactModeBodyNonzero):
        g_exp(E("1 + c1"))
    f = g_exp(parse_expr("1 + c1*c2", rank=4, mode="float"))
    coeffs = dict(f.terms)
    assert math.isclose(coeffs[0], math.e, rel_tol=1e-12)
    assert math.isclose(coeffs[0b11], math.e, rel_tol=1e-12)


def test_norm_examples():
    assert g_norm(E("3 - 2*c1 + c1*c2")) == 6
    assert g_norm(G.zero(4)) == 0
    assert g_norm(g_mul(E("1 + c1"), E("1 + c2"))) == 4


def test_parity_parts_examples():
    assert g_parity_parts(E("3 + c1 + c1*c2")) == (E("3 + c1*c2"), E("c1"))
    assert g_parity_parts(E("c1*c2*c3")) == (G.zero(4), E("c1*c2*c3"))
    assert g_parity_parts(G.one(4)) == (G.one(4), G.zero(4))


def test_errors():
    with pytest.raises(RankMismatch):
        g_mul(c(1, 3), c(1, 4))
    with pytest.raises(ModeMismatch):
        g_mul(c(1), G.generator(4, 1, "float"))
    with pytest.raises(RankTooLarge):
        G.zero(17)


def test_rank_cap_env(monkeypatch):
    monkeypatch.setenv("BEREZIN_RANK_CAP", "5")
    with pytest.raises(RankTooLarge):
        G.zero(6)
    G.zero(5)


def test_float_pruning():
    a = G(3, {0: 1.0, 1: 1e-17}, "float")
    assert a.terms == {0: 1.0}


def test_json_round_trip(rng):
    for _ in range(50):
        a = rand_grassmann(rng, rng.randint(0, 8))
        assert G.from_dict(a.to_dict()) == a
    f = parse_expr("0.5 + c1", rank=2, mode="float")
    assert G.from_dict(f.to_dict()) == f


# properties

grassmann_terms = st.dictionaries(st.integers(0, 63), st.integers(-4, 4), max_size=8)


@settings(max_examples=200, deadline=None)
@given(grassmann_terms, grassmann_terms, grassmann_terms)
def test_associative_and_distributive(ta, tb, tc):
    a, b, d = G(6, ta), G(6, tb), G(6, tc)
    assert (a * b) * d == a * (b * d)
    assert a * (b + d) == a * b + a * d


@settings(max_examples=200, deadline=None)
@given(grassmann_terms, grassmann_terms)
def test_graded_commutative_on_parts(ta, tb):
    a, b = G(6, ta), G(6, tb)
    for x, px in zip(a.parity_parts(), (0, 1)):
        for y, py in zip(b.parity_parts(), (0, 1)):
            assert x * y == (-1) ** (px * py) * (y * x)


def test_inverse_and_exp_random(rng, backend):
    for _ in range(100):
        rank = rng.randint(0, 8)
        a = rand_nonzero_body(rng, rank)
        assert a * g_inv(a) == G.one(rank) == g_inv(a) * a
        s = rand_grassmann(rng, rank, 0, zero_body=True)
        assert g_exp(s) * g_exp(-s) == G.one(rank)


def test_soul_nilpotent(rng):
    for _ in range(30):
        rank = rng.randint(0, 7)
        s = rand_grassmann(rng, rank, zero_body=True, density=0.8)
        assert (s ** (rank + 1)).is_zero()


def test_homogeneity_queries():
    assert E("c1*c2").parity() == 0
    assert E("c1").parity() == 1
    assert E("1 + c1").parity() is None
    assert E("c1 + c1*c2*c3").is_odd()
    assert G.zero(3).is_even() and G.zero(3).is_odd()
