import pytest

from diolic.poly import Poly, PolyVec, monomials_up_to
from diolic.ops import (MatrixOp, ScalarOp, commutator, delta, delta_nest,
                        verify_order)

from helpers import rng, rand_poly, rand_scalar_op, rand_matrix_op, rand_poly_vec


def d(n, i):
    return ScalarOp.partial(n, i)


def test_apply_examples():
    assert d(1, 1)(Poly(1, {(2,): 1})) == Poly(1, {(1,): 2})
    x1d1 = ScalarOp(1, {(1,): Poly.var(1, 1)})
    assert x1d1(Poly(1, {(3,): 1})) == Poly(1, {(3,): 3})
    p = rand_poly(rng(1), 2, 3)
    assert ScalarOp.identity(2)(p) == p


def test_apply_mismatch():
    with pytest.raises(ValueError):
        d(1, 1)(Poly.var(2, 1))


def test_compose_examples():
    n = 1
    x1 = Poly.var(n, 1)
    got = d(n, 1) @ ScalarOp.mult(x1)
    assert got == ScalarOp(n, {(1,): x1, (0,): Poly.one(n)})
    assert d(2, 1) @ d(2, 2) == ScalarOp(2, {(1, 1): Poly.one(2)})
    x1d1 = ScalarOp(n, {(1,): x1})
    assert (d(n, 1) @ x1d1).order() == 2


def test_compose_agrees_with_pointwise_application():
    r = rng(23)
    for _ in range(40):
        n = r.randint(1, 2)
        a = rand_scalar_op(r, n, 2)
        b = rand_scalar_op(r, n, 2)
        comp = a @ b
        for sigma in monomials_up_to(n, max(a.order() + b.order() + 1, 0)):
            probe = Poly.monomial(n, sigma)
            assert comp(probe) == a(b(probe))


def test_compose_associative():
    r = rng(29)
    for _ in range(30):
        n = r.randint(1, 2)
        a, b, c = (rand_scalar_op(r, n, 2) for _ in range(3))
        assert (a @ b) @ c == a @ (b @ c)


def test_commutator_examples():
    n = 1
    x1 = Poly.var(n, 1)
    assert commutator(d(n, 1), ScalarOp.mult(x1)) == ScalarOp.identity(n)
    assert commutator(d(2, 1), d(2, 2)).is_zero()
    x1d1 = ScalarOp(n, {(1,): x1})
    x1sqd1 = ScalarOp(n, {(1,): x1 * x1})
    assert commutator(x1d1, x1sqd1) == x1sqd1


def test_commutator_jacobi_random():
    r = rng(31)
    for _ in range(40):
        n = r.randint(1, 2)
        a, b, c = (rand_scalar_op(r, n, 2) for _ in range(3))
        jac = (commutator(a, commutator(b, c))
               + commutator(b, commutator(c, a))
               + commutator(c, commutator(a, b)))
        assert jac.is_zero()


def test_commutator_order_drop():
    r = rng(37)
    for _ in range(40):
        n = r.randint(1, 2)
        a = rand_scalar_op(r, n, 2)
        b = rand_scalar_op(r, n, 2)
        if a.is_zero() or b.is_zero():
            continue
        assert commutator(a, b).order() <= a.order() + b.order() - 1


def test_delta_examples():
    n = 1
    x1 = Poly.var(n, 1)
    assert delta(x1, d(n, 1)) == ScalarOp.mult(Poly.const(n, -1))
    a, b = rand_poly(rng(3), n, 2), rand_poly(rng(4), n, 2)
    assert delta(a, ScalarOp.mult(b)).is_zero()
    assert delta(x1, delta(x1, d(n, 1))).is_zero()


def test_delta_lowers_order():
    r = rng(41)
    for _ in range(30):
        op = rand_scalar_op(r, 2, 3)
        if op.order() < 1:
            continue
        a = rand_poly(r, 2, 2)
        assert delta(a, op).order() <= op.order() - 1


def test_deltas_commute():
    r = rng(43)
    for _ in range(20):
        op = rand_scalar_op(r, 2, 3)
        a, b = rand_poly(r, 2, 2), rand_poly(r, 2, 2)
        assert delta(a, delta(b, op)) == delta(b, delta(a, op))


def test_delta_is_derivation_of_composition():
    r = rng(47)
    for _ in range(25):
        n = r.randint(1, 2)
        a = rand_poly(r, n, 2)
        op1 = rand_scalar_op(r, n, 2)
        op2 = rand_scalar_op(r, n, 2)
        lhs = delta(a, op1 @ op2)
        rhs = delta(a, op1) @ op2 + op1 @ delta(a, op2)
        assert lhs == rhs


def test_verify_order_examples():
    d1d2 = ScalarOp(2, {(1, 1): Poly.one(2)})
    assert not verify_order(d1d2, 1)
    assert verify_order(d1d2, 2)
    assert verify_order(ScalarOp.mult(Poly.var(1, 1)), 0)
    assert verify_order(ScalarOp.zero(2), 0)


def test_verify_order_random_against_inspection():
    r = rng(53)
    for _ in range(30):
        n = r.randint(1, 2)
        op = rand_scalar_op(r, n, 3)
        for k in range(4):
            assert verify_order(op, k) == (op.order() <= k)


def test_verify_order_matrix():
    mop = MatrixOp(2, [[ScalarOp.partial(2, 1), ScalarOp.zero(2)],
                       [ScalarOp.zero(2), ScalarOp(2, {(1, 1): Poly.one(2)})]])
    assert not verify_order(mop, 1)
    assert verify_order(mop, 2)


def test_matrix_apply_examples():
    n, m = 1, 2
    x1 = Poly.var(n, 1)
    dd = MatrixOp.scalar_times_identity(d(n, 1), m)
    v = PolyVec(n, [x1, x1 * x1])
    assert dd @ v == PolyVec(n, [Poly.one(n), 2 * x1])
    e12 = MatrixOp(n, [[ScalarOp.zero(n), ScalarOp.identity(n)],
                       [ScalarOp.zero(n), ScalarOp.zero(n)]])
    assert e12 @ v == PolyVec(n, [x1 * x1, Poly.zero(n)])
    # compose(diag(d1, d1), x1*I) = x1 d1 I + I
    got = dd @ MatrixOp.scalar_times_identity(ScalarOp.mult(x1), m)
    want = MatrixOp.scalar_times_identity(ScalarOp(n, {(1,): x1, (0,): Poly.one(n)}), m)
    assert got == want


def test_matrix_compose_agrees_with_application():
    r = rng(59)
    for _ in range(15):
        a = rand_matrix_op(r, 2, 2, 1)
        b = rand_matrix_op(r, 2, 2, 1)
        v = rand_poly_vec(r, 2, 2, 2)
        assert (a @ b) @ v == a @ (b @ v)


def test_vector_field_bracket_matches_operator_commutator():
    r = rng(61)
    from helpers import rand_vector_field
    for _ in range(20):
        x = rand_vector_field(r, 2)
        y = rand_vector_field(r, 2)
        assert x.bracket(y).to_scalar_op() == commutator(x.to_scalar_op(), y.to_scalar_op())


def test_delta_nest():
    n = 1
    x1 = Poly.var(n, 1)
    op = ScalarOp(n, {(2,): Poly.one(n)})
    assert delta_nest([x1], op) == ScalarOp(n, {(1,): Poly.const(n, -2)})
