import math
from fractions import Fraction

import pytest

from diolic.poly import (ParseError, Poly, PolyMat, PolyVec, monomials_up_to,
                         parse_poly)

from helpers import rng, rand_poly


def test_parse_basic():
    p = parse_poly("x1^2 - 1/2*x2", 2)
    assert p.terms == {(2, 0): Fraction(1), (0, 1): Fraction(-1, 2)}


def test_parse_zero():
    assert parse_poly("0", 1).terms == {}


def test_parse_rejects_index_zero():
    with pytest.raises(ParseError, match="must be >= 1"):
        parse_poly("x0", 2)


def test_parse_rejects_out_of_range_index():
    with pytest.raises(ParseError, match="out of range"):
        parse_poly("x3", 2)


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as exc:
        parse_poly("x1 + @", 1)
    assert exc.value.position == 5


def test_parse_rejects_trailing_garbage():
    with pytest.raises(ParseError):
        parse_poly("x1 x2", 2)
    with pytest.raises(ParseError):
        parse_poly("2*3", 1)
    with pytest.raises(ParseError):
        parse_poly("1/0", 1)


def test_parse_accepts_leading_sign_and_coefficients():
    assert parse_poly("-x1 + 1", 1) == Poly(1, {(1,): -1, (0,): 1})
    assert parse_poly("3/2*x1*x2^2", 2) == Poly(2, {(1, 2): Fraction(3, 2)})


def test_print_parse_round_trip_random():
    r = rng(101)
    for _ in range(200):
        n = r.randint(1, 3)
        p = rand_poly(r, n, 4, 5)
        assert parse_poly(str(p), n) == p


def test_mul_examples():
    x1 = Poly.var(1, 1)
    assert x1 * x1 == Poly(1, {(2,): 1})
    # distributive expansion: (x1+1)(x1-1) = x1^2 - 1
    assert (x1 + 1) * (x1 - 1) == Poly(1, {(2,): 1, (0,): -1})
    assert (x1 * Poly.zero(1)).is_zero()


def test_mul_degree_additivity():
    r = rng(7)
    for _ in range(50):
        p, q = rand_poly(r, 2, 3), rand_poly(r, 2, 3)
        if p.is_zero() or q.is_zero():
            continue
        assert (p * q).degree() == p.degree() + q.degree()


def test_mismatched_variable_counts():
    with pytest.raises(ValueError):
        Poly.var(1, 1) * Poly.var(2, 1)


def test_ring_axioms_random():
    r = rng(11)
    for _ in range(100):
        n = r.randint(1, 3)
        p, q, s = (rand_poly(r, n, 4) for _ in range(3))
        assert (p * q) * s == p * (q * s)
        assert p * q == q * p
        assert p * (q + s) == p * q + p * s


def test_partial_examples():
    p = Poly(2, {(2, 1): 1})  # x1^2 x2
    assert p.partial(1) == Poly(2, {(1, 1): 2})
    assert Poly.var(2, 1).partial(2).is_zero()
    assert (Fraction(3, 2) * Poly.var(1, 1)).partial(1) == Poly.const(1, Fraction(3, 2))


def test_partials_commute_random():
    r = rng(13)
    for _ in range(60):
        p = rand_poly(r, 3, 4)
        for i in range(1, 4):
            for j in range(1, 4):
                assert p.partial(i).partial(j) == p.partial(j).partial(i)


def test_partial_index_out_of_range():
    with pytest.raises(ValueError):
        Poly.var(2, 1).partial(3)


def test_monomials_up_to_order_and_count():
    assert monomials_up_to(2, 1) == [(0, 0), (1, 0), (0, 1)]
    assert len(monomials_up_to(2, 2)) == 6
    assert monomials_up_to(1, 0) == [(0,)]
    for n in range(1, 4):
        for d in range(4):
            assert len(monomials_up_to(n, d)) == math.comb(n + d, d)


def test_polyvec_and_polymat_arithmetic():
    v = PolyVec(2, [Poly.var(2, 1), Poly.one(2)])
    w = Poly.var(2, 2) * v
    assert w.comps[0] == Poly(2, {(1, 1): 1})
    g = PolyMat.identity(2, 2)
    assert g @ v == v
    h = PolyMat.unit(2, 2, 0, 1)  # e1 <- p^2
    assert (h @ v).comps[0] == Poly.one(2)
    assert (h @ h).is_zero()
    assert PolyMat.block_diag(g, h).m == 4


def test_polymat_multiplication_associative():
    r = rng(17)
    from helpers import rand_poly_mat
    for _ in range(20):
        a, b, c = (rand_poly_mat(r, 2, 2, 2) for _ in range(3))
        assert (a @ b) @ c == a @ (b @ c)
