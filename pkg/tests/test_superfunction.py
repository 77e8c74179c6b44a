import pytest

from berezin.errors import DimMismatch, IndexOutOfRange, NonHomogeneous, OddDerivativeUndefined
from berezin.grassmann import GrassmannElement as G
from berezin.parser import parse_expr
from berezin.polynomial import Polynomial
from berezin.superfunction import (SuperFunction, SuperPoint, odd_derivative_defined, sf_eval,
                                   sf_even_deriv, sf_mul, sf_odd_deriv)
from helpers import rand_point, rand_sf


def F(text, n=1, m=2):
    return parse_expr(text, "superfunction", n=n, m=m)


def E(text, rank=4):
    return parse_expr(text, rank=rank)


def naive_eval(f, q):
    """Substitute the point into every monomial using Grassmann arithmetic only."""
    rank = q.rank
    total = G.zero(rank)
    for mask, p in f.terms.items():
        even_part = p.evaluate(list(q.even), one=G.one(rank))
        odd_part = G.one(rank)
        for j in range(f.m):
            if mask >> j & 1:
                odd_part = odd_part * q.odd[j]
        total = total + even_part * odd_part
    return total


def test_eval_examples():
    q = SuperPoint([E("2 + c1*c2")], [E("c1"), E("c2")], 4)
    assert sf_eval(F("x1"), q) == E("2 + c1*c2")
    assert sf_eval(F("x1^2"), q) == E("4 + 4*c1*c2")
    assert sf_eval(F("x1^2"), q) == q.even[0] * q.even[0]
    assert sf_eval(F("y1*y2"), q) == E("c1*c2")


def test_mul_examples():
    assert sf_mul(F("y1"), F("y1")).is_zero()
    assert sf_mul(F("y2"), F("y1")) == -F("y1*y2")
    assert sf_mul(F("x1"), F("y1")) == F("x1*y1")


def test_even_deriv_examples():
    assert sf_even_deriv(F("x1^2"), 1) == F("2*x1")
    assert sf_even_deriv(F("x1*y1*y2"), 1) == F("y1*y2")
    assert sf_even_deriv(F("5"), 1).is_zero()
    with pytest.raises(IndexOutOfRange):
        sf_even_deriv(F("x1"), 2)


def test_odd_deriv_examples():
    assert sf_odd_deriv(F("y1*y2"), 1) == F("y2")
    assert sf_odd_deriv(F("y1*y2"), 2) == -F("y1")
    assert sf_odd_deriv(F("1"), 1).is_zero()
    with pytest.raises(IndexOutOfRange):
        sf_odd_deriv(F("y1"), 3)


def test_odd_derivative_refused_when_ill_defined():
    assert odd_derivative_defined(4, 2, 0)
    assert not odd_derivative_defined(4, 2, 3)
    with pytest.raises(OddDerivativeUndefined):
        sf_odd_deriv(F("y1*y2"), 1, rank=4, n_prime=3)


def test_point_validation():
    with pytest.raises(NonHomogeneous):
        SuperPoint([E("c1")], [], 4)
    with pytest.raises(NonHomogeneous):
        SuperPoint([], [E("1 + c1")], 4)
    with pytest.raises(DimMismatch):
        sf_eval(F("x1"), SuperPoint([E("1"), E("2")], [], 4))


def test_taylor_matches_naive_substitution(rng, backend):
    for _ in range(60):
        n, m, rank = rng.randint(0, 3), rng.randint(0, 3), rng.randint(0, 6)
        f = rand_sf(rng, n, m, max_deg=3)
        q = rand_point(rng, n, m, rank)
        assert sf_eval(f, q) == naive_eval(f, q)


def test_eval_is_a_homomorphism(rng, backend):
    for _ in range(40):
        n, m, rank = rng.randint(0, 2), rng.randint(0, 3), rng.randint(1, 6)
        f, g = rand_sf(rng, n, m), rand_sf(rng, n, m)
        q = rand_point(rng, n, m, rank)
        assert sf_eval(f + g, q) == sf_eval(f, q) + sf_eval(g, q)
        assert sf_eval(sf_mul(f, g), q) == sf_eval(f, q) * sf_eval(g, q)


def test_odd_derivative_laws(rng, backend):
    for _ in range(40):
        n, m = rng.randint(0, 2), rng.randint(1, 3)
        pf = rng.randint(0, 1)
        f = rand_sf(rng, n, m, pf)
        g = rand_sf(rng, n, m)
        j = rng.randint(1, m)
        k = rng.randint(1, m)
        lhs = sf_odd_deriv(sf_mul(f, g), j)
        rhs = sf_mul(sf_odd_deriv(f, j), g) + (-1) ** pf * sf_mul(f, sf_odd_deriv(g, j))
        assert lhs == rhs
        assert sf_odd_deriv(sf_odd_deriv(g, j), j).is_zero()
        assert sf_odd_deriv(sf_odd_deriv(g, j), k) == -sf_odd_deriv(sf_odd_deriv(g, k), j)
        if n:
            assert sf_even_deriv(sf_odd_deriv(g, j), 1) == sf_odd_deriv(sf_even_deriv(g, 1), j)


def test_json_round_trip(rng):
    for _ in range(20):
        f = rand_sf(rng, 2, 3)
        assert SuperFunction.from_dict(f.to_dict()) == f
        p = Polynomial.from_dict(f.terms[next(iter(f.terms))].to_dict()) if f.terms else None
        if p is not None:
            assert p == f.terms[next(iter(f.terms))]
    q = rand_point(rng, 2, 2, 4)
    assert SuperPoint.from_dict(q.to_dict()).to_dict() == q.to_dict()
