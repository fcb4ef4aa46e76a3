"""Graded differential operators on A (+) P of arbitrary finite order.

A degree-0 operator of order k is stored in split normal form
(boxA, M): boxA is a scalar operator of order <= k acting on A and
diagonally on P, while M is a matrix operator of order <= k-1.  The
split form makes the defining shared-scalar-symbol condition for raw
pairs (boxA, boxP) a representation invariant: a raw pair is accepted
iff boxP - boxA*I has order <= k-1, equivalently iff the k-fold
delta-nests of both parts agree.

Degree 1 operators of order k are columns of scalar operators A -> P;
degree -1 operators (P -> A) exist only at rank 1.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import Poly, PolyVec, monomials_up_to
from .ops import MatrixOp, ScalarOp, delta
from .derivations import DiolicElement


class DiffOp0:
    """Degree-0 operator boxA*I + M of order k in split normal form."""

    __slots__ = ("n", "m", "k", "boxA", "M")

    def __init__(self, k, boxA, M):
        if not isinstance(boxA, ScalarOp) or not isinstance(M, MatrixOp):
            raise TypeError("need (ScalarOp, MatrixOp)")
        if boxA.n != M.n:
            raise ValueError("dimension mismatch")
        if k < 0:
            raise ValueError("order must be >= 0")
        if boxA.order() > k:
            raise ValueError("scalar part exceeds order %d" % k)
        if M.order() > k - 1:
            raise ValueError("matrix part must have order <= %d" % (k - 1))
        self.n = boxA.n
        self.m = M.m
        self.k = k
        self.boxA = boxA
        self.M = M

    @classmethod
    def zero(cls, n, m, k=0):
        return cls(k, ScalarOp.zero(n), MatrixOp.zero(n, m))

    @classmethod
    def from_pair(cls, boxA, boxP, k):
        """Build from a raw pair, verifying the degree-0 operator condition."""
        if not verify_diolic_diffop(boxA, boxP, k):
            raise ValueError("pair (boxA, boxP) is not a degree-0 operator of order %d" % k)
        return cls(k, boxA, boxP - MatrixOp.scalar_times_identity(boxA, boxP.m))

    def boxP(self):
        return MatrixOp.scalar_times_identity(self.boxA, self.m) + self.M

    def __call__(self, e):
        if isinstance(e, DiolicElement):
            return DiolicElement(self.boxA(e.a), self.boxP() @ e.p)
        if isinstance(e, Poly):
            return self.boxA(e)
        if isinstance(e, PolyVec):
            return self.boxP() @ e
        raise TypeError("DiffOp0 acts on Poly, PolyVec or DiolicElement")

    def embed(self, k):
        """The same operator viewed at order k >= self.k."""
        if k < self.k:
            raise ValueError("cannot embed into a lower order")
        return DiffOp0(k, self.boxA, self.M)

    def __add__(self, other):
        self._check(other)
        return DiffOp0(max(self.k, other.k), self.boxA + other.boxA, self.M + other.M)

    def __sub__(self, other):
        self._check(other)
        return DiffOp0(max(self.k, other.k), self.boxA - other.boxA, self.M - other.M)

    def __neg__(self):
        return DiffOp0(self.k, -self.boxA, -self.M)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return DiffOp0(self.k, other * self.boxA, other * self.M)
        return NotImplemented

    __mul__ = __rmul__

    def _check(self, other):
        if self.n != other.n or self.m != other.m:
            raise ValueError("dimension mismatch")

    def __eq__(self, other):
        if not isinstance(other, DiffOp0):
            return NotImplemented
        return self.boxA == other.boxA and self.M == other.M

    __hash__ = None

    def is_zero(self):
        return self.boxA.is_zero() and self.M.is_zero()

    def __str__(self):
        return "DiffOp0(k=%d, boxA=%s, M=%s)" % (self.k, self.boxA, self.M)

    __repr__ = __str__


class DiffOp1:
    """Degree-1 operator A -> P of order k: a column of scalar operators."""

    __slots__ = ("n", "m", "k", "ops")

    def __init__(self, k, ops):
        ops = tuple(ops)
        if not ops or any(not isinstance(o, ScalarOp) for o in ops):
            raise TypeError("need a tuple of ScalarOp components")
        n = ops[0].n
        if any(o.n != n for o in ops):
            raise ValueError("dimension mismatch")
        if any(o.order() > k for o in ops):
            raise ValueError("component exceeds order %d" % k)
        self.n = n
        self.m = len(ops)
        self.k = k
        self.ops = ops

    @classmethod
    def zero(cls, n, m, k=0):
        return cls(k, [ScalarOp.zero(n)] * m)

    def __call__(self, e):
        if isinstance(e, Poly):
            return PolyVec(self.n, [o(e) for o in self.ops])
        if isinstance(e, PolyVec):
            return PolyVec.zero(self.n, self.m)
        if isinstance(e, DiolicElement):
            return DiolicElement.from_p(self(e.a))
        raise TypeError("DiffOp1 acts on Poly, PolyVec or DiolicElement")

    def order(self):
        return max((o.order() for o in self.ops), default=-1)

    def embed(self, k):
        if k < self.k:
            raise ValueError("cannot embed into a lower order")
        return DiffOp1(k, self.ops)

    def __add__(self, other):
        self._check(other)
        return DiffOp1(max(self.k, other.k), [a + b for a, b in zip(self.ops, other.ops)])

    def __sub__(self, other):
        self._check(other)
        return DiffOp1(max(self.k, other.k), [a - b for a, b in zip(self.ops, other.ops)])

    def __neg__(self):
        return DiffOp1(self.k, [-a for a in self.ops])

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return DiffOp1(self.k, [other * a for a in self.ops])
        return NotImplemented

    __mul__ = __rmul__

    def _check(self, other):
        if self.n != other.n or self.m != other.m:
            raise ValueError("dimension mismatch")

    def __eq__(self, other):
        if not isinstance(other, DiffOp1):
            return NotImplemented
        return self.ops == other.ops

    __hash__ = None

    def is_zero(self):
        return all(o.is_zero() for o in self.ops)

    def __str__(self):
        return "DiffOp1(k=%d, %s)" % (self.k, ", ".join(str(o) for o in self.ops))

    __repr__ = __str__


class DiffOpNeg1:
    """Degree -1 operator P -> A of order k; exists only at rank 1."""

    __slots__ = ("n", "m", "k", "op")

    def __init__(self, k, op, m=1):
        if m != 1:
            raise ValueError("degree -1 operators exist only at rank 1")
        if not isinstance(op, ScalarOp):
            raise TypeError("need a ScalarOp")
        if op.order() > k:
            raise ValueError("component exceeds order %d" % k)
        self.n = op.n
        self.m = 1
        self.k = k
        self.op = op

    def __call__(self, e):
        if isinstance(e, PolyVec):
            if e.m != 1:
                raise ValueError("dimension mismatch")
            return self.op(e.comps[0])
        if isinstance(e, Poly):
            return Poly.zero(self.n)
        if isinstance(e, DiolicElement):
            return DiolicElement.from_a(self(e.p), 1)
        raise TypeError("DiffOpNeg1 acts on Poly, PolyVec or DiolicElement")

    def __add__(self, other):
        if not isinstance(other, DiffOpNeg1):
            return NotImplemented
        return DiffOpNeg1(max(self.k, other.k), self.op + other.op)

    def __sub__(self, other):
        if not isinstance(other, DiffOpNeg1):
            return NotImplemented
        return DiffOpNeg1(max(self.k, other.k), self.op - other.op)

    def __neg__(self):
        return DiffOpNeg1(self.k, -self.op)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return DiffOpNeg1(self.k, other * self.op)
        return NotImplemented

    __mul__ = __rmul__

    def embed(self, k):
        if k < self.k:
            raise ValueError("cannot embed into a lower order")
        return DiffOpNeg1(k, self.op)

    def __eq__(self, other):
        if not isinstance(other, DiffOpNeg1):
            return NotImplemented
        return self.op == other.op

    __hash__ = None

    def is_zero(self):
        return self.op.is_zero()

    def __str__(self):
        return "DiffOpNeg1(k=%d, %s)" % (self.k, self.op)

    __repr__ = __str__


def verify_diolic_diffop(boxA, boxP, k):
    """True iff (boxA, boxP) form a degree-0 operator of order k.

    Two independent routes must agree: (a) boxP - boxA*I has order
    <= k-1; (b) the diagonal delta-nests of depth k agree on the two
    parts, tested for all monomials a of degree <= k+1 against all basis
    sections.
    """
    if not isinstance(boxA, ScalarOp) or not isinstance(boxP, MatrixOp):
        raise TypeError("need (ScalarOp, MatrixOp)")
    if boxA.n != boxP.n:
        raise ValueError("dimension mismatch")
    if boxA.order() > k or boxP.order() > k:
        return False
    n, m = boxA.n, boxP.m
    diff = boxP - MatrixOp.scalar_times_identity(boxA, m)
    by_order = diff.order() <= k - 1

    by_delta = True
    probes = [Poly.monomial(n, s) for s in monomials_up_to(n, max(k + 1, 1))]
    basis = [PolyVec.basis(n, m, j) for j in range(m)]
    for a in probes:
        nest_a = boxA
        nest_p = boxP
        for _ in range(k):
            nest_a = delta(a, nest_a)
            nest_p = delta(a, nest_p)
        # nest_a is order <= 0, i.e. multiplication by nest_a(1)
        mult = nest_a(Poly.one(n))
        for b in basis:
            if not ((nest_p @ b) - mult * b).is_zero():
                by_delta = False
                break
        if not by_delta:
            break
    if by_order != by_delta:
        raise AssertionError("order route and delta route disagree")
    return by_order


def diffop0_apply(b, e):
    return b(e)


def atiyah_project(b):
    """The scalar-part projection of the order-k sequence."""
    if not isinstance(b, DiffOp0):
        raise TypeError("atiyah_project expects a DiffOp0")
    return b.boxA


def atiyah_split(box, k, m):
    """Canonical diagonal section box -> (box, 0) at order k."""
    if box.order() > k:
        raise ValueError("operator order exceeds %d" % k)
    return DiffOp0(k, box, MatrixOp.zero(box.n, m))


def beta_diff(p, b):
    """Left P-action p (x) B -> the degree-1 operator a -> boxA(a) p."""
    if not isinstance(b, DiffOp0):
        raise TypeError("beta_diff expects a DiffOp0")
    if p.n != b.n or p.m != b.m:
        raise ValueError("dimension mismatch")
    return DiffOp1(b.k, [p.comps[alpha] * b.boxA for alpha in range(b.m)])


def check_k_connection(nabla, k, n, m):
    """Validate a table {sigma: DiffOp0} as an order-k connection.

    The table must cover every generator d^sigma with 1 <= |sigma| <= k;
    each value must project back onto d^sigma and kill the unit (1, 0).
    The A-linear extension to arbitrary operators is definitional, so
    only the generator conditions are checked.
    """
    table = {tuple(s): v for s, v in nabla.items()}
    for sigma in monomials_up_to(n, k):
        if sum(sigma) == 0:
            continue
        if sigma not in table:
            raise ValueError("missing generator %r" % (sigma,))
        b = table[sigma]
        if b.n != n or b.m != m:
            raise ValueError("dimension mismatch at generator %r" % (sigma,))
        if b.boxA != ScalarOp.partial_sigma(n, sigma):
            return False
        if not b(DiolicElement(Poly.one(n), PolyVec.zero(n, m))).is_zero():
            return False
    return True


def _verify(cond, what):
    if not cond:
        raise AssertionError("commutator formula disagrees with "
                             "compose-and-subtract for %s" % what)


def _degree(b):
    if isinstance(b, DiffOp0):
        return 0
    if isinstance(b, DiffOp1):
        return 1
    if isinstance(b, DiffOpNeg1):
        return -1
    raise TypeError("not a homogeneous diolic operator: %r" % (b,))


def graded_commutator_diff(b1, b2):
    """Graded commutator of homogeneous operators, split-form output.

    Degree pairs summing outside {-1, 0, 1} return the integer 0.  The
    split-coordinate formulas are used and every output is re-verified
    against compose-and-subtract of the raw operators.
    """
    if b1 == 0 or b2 == 0:
        return 0
    g1, g2 = _degree(b1), _degree(b2)
    if b1.n != b2.n or (g1 != -1 and g2 != -1 and b1.m != b2.m):
        raise ValueError("dimension mismatch")
    n = b1.n

    if (g1, g2) == (0, 0):
        k, l = b1.k, b2.k
        boxA = b1.boxA @ b2.boxA - b2.boxA @ b1.boxA
        eye1 = MatrixOp.scalar_times_identity(b1.boxA, b1.m)
        eye2 = MatrixOp.scalar_times_identity(b2.boxA, b1.m)
        mat = (eye1 @ b2.M - b2.M @ eye1) + (b1.M @ eye2 - eye2 @ b1.M) \
            + (b1.M @ b2.M - b2.M @ b1.M)
        out = DiffOp0(max(k + l - 1, 0), boxA, mat)
        raw = b1.boxP() @ b2.boxP() - b2.boxP() @ b1.boxP()
        _verify(raw == out.boxP(), "DiffOp0/DiffOp0")
        return out

    if (g1, g2) in ((0, 1), (1, 0)):
        b0, b1d, sign = (b1, b2, 1) if g1 == 0 else (b2, b1, -1)
        k, l = b0.k, b1d.k
        comps = []
        for j in range(b0.m):
            c = b0.boxA @ b1d.ops[j] - b1d.ops[j] @ b0.boxA
            for beta in range(b0.m):
                c = c + b0.M.entries[j][beta] @ b1d.ops[beta]
            comps.append(c)
        out = DiffOp1(max(k + l - 1, 0), comps)
        if sign < 0:
            out = DiffOp1(out.k, [-c for c in out.ops])
        raw = [sum((b0.boxP().entries[j][beta] @ b1d.ops[beta] for beta in range(b0.m)),
                   ScalarOp.zero(n)) - b1d.ops[j] @ b0.boxA for j in range(b0.m)]
        want = out.ops if sign > 0 else tuple(-c for c in out.ops)
        _verify(list(raw) == list(want), "DiffOp0/DiffOp1")
        return out

    if (g1, g2) in ((1, 1), (-1, -1)):
        return 0

    if (g1, g2) in ((0, -1), (-1, 0)):
        b0, bn, sign = (b1, b2, 1) if g1 == 0 else (b2, b1, -1)
        if b0.m != 1:
            raise ValueError("degree -1 requires rank 1")
        scalar_p = b0.boxP().entries[0][0]
        op = b0.boxA @ bn.op - bn.op @ scalar_p
        out = DiffOpNeg1(max(b0.k + bn.k - 1, 0), sign * op if sign > 0 else -op)
        return out

    # odd-odd mixed pair: anticommutator, degree 0
    b1d, bn = (b1, b2) if g1 == 1 else (b2, b1)
    if b1d.m != 1:
        raise ValueError("degree -1 requires rank 1")
    boxA = bn.op @ b1d.ops[0]
    boxP = MatrixOp(n, [[b1d.ops[0] @ bn.op]])
    out = DiffOp0.from_pair(boxA, boxP, b1d.k + bn.k)
    return out
