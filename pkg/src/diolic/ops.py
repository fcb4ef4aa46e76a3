"""Scalar and matrix linear differential operators on Q[x1..xn].

A scalar operator is kept in normal form sum_sigma a_sigma(x) d^sigma with
all coefficients to the left, so equality is equality of the stored maps.
Composition uses the generalized Leibniz rule

    d^sigma (b g) = sum_{rho <= sigma} C(sigma, rho) d^rho(b) d^(sigma-rho)(g).

Conventions fixed here and used throughout the package:

  * delta_a(op) = (mult by a) o op - op o (mult by a); it lowers the order
    by at least one.
  * An operator of order <= k on the polynomial ring vanishes iff it kills
    every monomial of degree <= k (its coefficients are reconstructible
    from those values), so identity checks on spanning monomial sets are
    exact, not probabilistic.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .poly import Poly, PolyMat, PolyVec, mi_add, mi_sub, monomials_up_to


def _binom(sigma, rho):
    c = 1
    for a, b in zip(sigma, rho):
        c *= math.comb(a, b)
    return c


def _subindices(sigma):
    return itertools.product(*(range(e + 1) for e in sigma))


class ScalarOp:
    """Operator sum_sigma a_sigma(x) d^sigma acting on Poly."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n, coeffs=()):
        items = coeffs.items() if isinstance(coeffs, dict) else coeffs
        acc = {}
        for sigma, a in items:
            sigma = tuple(sigma)
            if len(sigma) != n or any(e < 0 for e in sigma):
                raise ValueError("bad multi-index %r" % (sigma,))
            if not isinstance(a, Poly):
                a = Poly.const(n, a)
            if a.n != n:
                raise ValueError("coefficient variable count mismatch")
            if not a.is_zero():
                prev = acc.get(sigma)
                a = a if prev is None else prev + a
                if a.is_zero():
                    acc.pop(sigma, None)
                else:
                    acc[sigma] = a
        self.n = n
        self.coeffs = acc

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def identity(cls, n):
        return cls(n, {(0,) * n: Poly.one(n)})

    @classmethod
    def mult(cls, a):
        """Multiplication by the polynomial a (an order-0 operator)."""
        return cls(a.n, {(0,) * a.n: a})

    @classmethod
    def partial(cls, n, i):
        """The derivation d/dx_i, 1 <= i <= n."""
        if not 1 <= i <= n:
            raise ValueError("variable index out of range: %d" % i)
        sigma = tuple(1 if j == i - 1 else 0 for j in range(n))
        return cls(n, {sigma: Poly.one(n)})

    @classmethod
    def partial_sigma(cls, n, sigma):
        return cls(n, {tuple(sigma): Poly.one(n)})

    # -- queries ---------------------------------------------------------

    def order(self):
        """Max |sigma| over stored terms; -1 for the zero operator."""
        return max((sum(s) for s in self.coeffs), default=-1)

    def is_zero(self):
        return not self.coeffs

    def first_order_part(self):
        """The |sigma| = 1 coefficients as a VectorField."""
        comps = []
        for i in range(self.n):
            e = tuple(1 if j == i else 0 for j in range(self.n))
            comps.append(self.coeffs.get(e, Poly.zero(self.n)))
        return VectorField(self.n, comps)

    def constant_coeff(self):
        return self.coeffs.get((0,) * self.n, Poly.zero(self.n))

    # -- action and algebra ----------------------------------------------

    def __call__(self, p):
        if not isinstance(p, Poly) or p.n != self.n:
            raise ValueError("argument must be a Poly in %d variables" % self.n)
        out = Poly.zero(self.n)
        for sigma, a in self.coeffs.items():
            d = p.partial_sigma(sigma)
            if not d.is_zero():
                out = out + a * d
        return out

    def _check(self, other):
        if self.n != other.n:
            raise ValueError("mismatched variable counts")

    def __add__(self, other):
        if not isinstance(other, ScalarOp):
            return NotImplemented
        self._check(other)
        acc = dict(self.coeffs)
        for s, a in other.coeffs.items():
            v = acc.get(s)
            v = a if v is None else v + a
            if v.is_zero():
                acc.pop(s, None)
            else:
                acc[s] = v
        out = ScalarOp.__new__(ScalarOp)
        out.n = self.n
        out.coeffs = acc
        return out

    def __neg__(self):
        out = ScalarOp.__new__(ScalarOp)
        out.n = self.n
        out.coeffs = {s: -a for s, a in self.coeffs.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, ScalarOp):
            return NotImplemented
        return self + (-other)

    def __rmul__(self, other):
        """Left multiplication by a function or scalar: (a * op)(f) = a * op(f)."""
        if isinstance(other, (int, Fraction, Poly)):
            out = ScalarOp.__new__(ScalarOp)
            out.n = self.n
            acc = {}
            for s, a in self.coeffs.items():
                v = other * a
                if not v.is_zero():
                    acc[s] = v
            out.coeffs = acc
            return out
        return NotImplemented

    __mul__ = __rmul__

    def __matmul__(self, other):
        """Composition self o other, renormalized to coefficients-left form."""
        if not isinstance(other, ScalarOp):
            return NotImplemented
        self._check(other)
        acc = {}
        for s1, a1 in self.coeffs.items():
            for rho in _subindices(s1):
                c = _binom(s1, rho)
                tail = mi_sub(s1, rho)
                for s2, a2 in other.coeffs.items():
                    d = a2.partial_sigma(rho)
                    if d.is_zero():
                        continue
                    slot = mi_add(tail, s2)
                    term = a1 * d * c
                    prev = acc.get(slot)
                    term = term if prev is None else prev + term
                    if term.is_zero():
                        acc.pop(slot, None)
                    else:
                        acc[slot] = term
        out = ScalarOp.__new__(ScalarOp)
        out.n = self.n
        out.coeffs = acc
        return out

    def __eq__(self, other):
        if not isinstance(other, ScalarOp):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    __hash__ = None

    def __str__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for sigma in sorted(self.coeffs, key=lambda s: (sum(s), s)):
            ds = "*".join("d%d" % (i + 1) + ("^%d" % e if e > 1 else "")
                          for i, e in enumerate(sigma) if e)
            a = str(self.coeffs[sigma])
            bits.append("(%s)%s" % (a, "*" + ds if ds else ""))
        return " + ".join(bits)

    __repr__ = __str__


def commutator(op1, op2):
    """[op1, op2] = op1 o op2 - op2 o op1 (both scalar or both matrix)."""
    return op1 @ op2 - op2 @ op1


def delta(a, op):
    """delta_a(op) = (mult by a) o op - op o (mult by a).

    Works for ScalarOp and MatrixOp (entrywise, since multiplication by a
    acts diagonally).
    """
    if isinstance(op, ScalarOp):
        ma = ScalarOp.mult(a)
        return ma @ op - op @ ma
    if isinstance(op, MatrixOp):
        return op.map(lambda e: delta(a, e))
    raise TypeError("delta expects a ScalarOp or MatrixOp")


def delta_nest(args, op):
    """delta_{a_1} o ... o delta_{a_k} applied to op."""
    for a in reversed(args):
        op = delta(a, op)
    return op


def verify_order(op, k):
    """True iff op has order <= k.

    Runs two independent routes and insists that they agree: direct
    coefficient inspection, and vanishing of all coordinate delta-nests of
    depth k+1 evaluated on a spanning monomial set.  (Nests over the
    coordinate functions already separate orders on the polynomial ring:
    the nest indexed by a multiset gamma, |gamma| = k+1, maps a_sigma
    d^sigma to a nonzero multiple of a_sigma d^(sigma-gamma) precisely
    when gamma <= sigma.)
    """
    if k < 0:
        raise ValueError("order bound must be >= 0")
    by_coeff = op.order() <= k
    n = op.n
    probe_deg = max(k + 1, op.order())
    probes = [Poly.monomial(n, s) for s in monomials_up_to(n, probe_deg)]
    by_delta = True
    for combo in itertools.combinations_with_replacement(range(1, n + 1), k + 1):
        nest = delta_nest([Poly.var(n, i) for i in combo], op)
        if isinstance(nest, ScalarOp):
            if any(not nest(p).is_zero() for p in probes):
                by_delta = False
                break
        else:
            vecs = [PolyVec.basis(n, nest.m, j) * p for p in probes for j in range(nest.m)]
            if any(not (nest @ v).is_zero() for v in vecs):
                by_delta = False
                break
    if by_coeff != by_delta:
        raise AssertionError("order checks disagree; operator storage is corrupt")
    return by_coeff


class MatrixOp:
    """m x m matrix of scalar operators, acting on PolyVec."""

    __slots__ = ("n", "m", "entries")

    def __init__(self, n, entries):
        entries = tuple(tuple(r) for r in entries)
        m = len(entries)
        for r in entries:
            if len(r) != m:
                raise ValueError("matrix must be square")
            for e in r:
                if not isinstance(e, ScalarOp) or e.n != n:
                    raise ValueError("entries must be ScalarOp in %d variables" % n)
        self.n = n
        self.m = m
        self.entries = entries

    @classmethod
    def zero(cls, n, m):
        z = ScalarOp.zero(n)
        return cls(n, [[z] * m for _ in range(m)])

    @classmethod
    def scalar_times_identity(cls, op, m):
        z = ScalarOp.zero(op.n)
        return cls(op.n, [[op if i == j else z for j in range(m)] for i in range(m)])

    @classmethod
    def from_polymat(cls, g):
        return cls(g.n, [[ScalarOp.mult(a) for a in r] for r in g.rows])

    def order(self):
        return max((e.order() for r in self.entries for e in r), default=-1)

    def is_zero(self):
        return all(e.is_zero() for r in self.entries for e in r)

    def map(self, fn):
        return MatrixOp(self.n, [[fn(e) for e in r] for r in self.entries])

    def _check(self, other):
        if self.n != other.n or self.m != other.m:
            raise ValueError("dimension mismatch")

    def __add__(self, other):
        if not isinstance(other, MatrixOp):
            return NotImplemented
        self._check(other)
        return MatrixOp(self.n, [[a + b for a, b in zip(r1, r2)]
                                 for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other):
        if not isinstance(other, MatrixOp):
            return NotImplemented
        self._check(other)
        return MatrixOp(self.n, [[a - b for a, b in zip(r1, r2)]
                                 for r1, r2 in zip(self.entries, other.entries)])

    def __neg__(self):
        return self.map(lambda e: -e)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return self.map(lambda e: other * e)
        return NotImplemented

    __mul__ = __rmul__

    def __matmul__(self, other):
        if isinstance(other, PolyVec):
            if self.n != other.n or self.m != other.m:
                raise ValueError("dimension mismatch")
            out = []
            for i in range(self.m):
                acc = Poly.zero(self.n)
                for j in range(self.m):
                    acc = acc + self.entries[i][j](other.comps[j])
                out.append(acc)
            return PolyVec(self.n, out)
        if isinstance(other, MatrixOp):
            self._check(other)
            rows = []
            for i in range(self.m):
                row = []
                for j in range(self.m):
                    acc = ScalarOp.zero(self.n)
                    for l in range(self.m):
                        acc = acc + self.entries[i][l] @ other.entries[l][j]
                    row.append(acc)
                rows.append(row)
            return MatrixOp(self.n, rows)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, MatrixOp):
            return NotImplemented
        return (self.n == other.n and self.m == other.m
                and self.entries == other.entries)

    __hash__ = None

    def order_zero_polymat(self):
        """Read the order-0 part off as a PolyMat (entries must be order <= 0)."""
        rows = []
        for r in self.entries:
            row = []
            for e in r:
                if e.order() > 0:
                    raise ValueError("entry has positive order")
                row.append(e.constant_coeff())
            rows.append(row)
        return PolyMat(self.n, rows)

    def __str__(self):
        return "[" + "; ".join(", ".join(str(e) for e in r) for r in self.entries) + "]"

    __repr__ = __str__


class VectorField:
    """Derivation sum_i X_i d/dx_i of A; annihilates constants."""

    __slots__ = ("n", "comps")

    def __init__(self, n, comps):
        comps = tuple(comps)
        if len(comps) != n or any(not isinstance(p, Poly) or p.n != n for p in comps):
            raise ValueError("need %d Poly components" % n)
        self.n = n
        self.comps = comps

    @classmethod
    def zero(cls, n):
        return cls(n, [Poly.zero(n)] * n)

    @classmethod
    def coordinate(cls, n, i):
        """d/dx_i as a vector field."""
        return cls(n, [Poly.one(n) if j == i - 1 else Poly.zero(n) for j in range(n)])

    def to_scalar_op(self):
        acc = {}
        for i, a in enumerate(self.comps):
            if not a.is_zero():
                acc[tuple(1 if j == i else 0 for j in range(self.n))] = a
        return ScalarOp(self.n, acc)

    def __call__(self, p):
        if isinstance(p, Poly):
            out = Poly.zero(self.n)
            for i, a in enumerate(self.comps):
                if not a.is_zero():
                    out = out + a * p.partial(i + 1)
            return out
        if isinstance(p, PolyVec):
            return PolyVec(self.n, [self(c) for c in p.comps])
        if isinstance(p, PolyMat):
            return p.map(self)
        raise TypeError("vector field acts on Poly, PolyVec or PolyMat")

    def bracket(self, other):
        if self.n != other.n:
            raise ValueError("mismatched variable counts")
        return VectorField(self.n, [self(other.comps[i]) - other(self.comps[i])
                                    for i in range(self.n)])

    def __add__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return VectorField(self.n, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return VectorField(self.n, [a - b for a, b in zip(self.comps, other.comps)])

    def __neg__(self):
        return VectorField(self.n, [-a for a in self.comps])

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return VectorField(self.n, [other * a for a in self.comps])
        return NotImplemented

    __mul__ = __rmul__

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.n == other.n and self.comps == other.comps

    __hash__ = None

    def is_zero(self):
        return all(a.is_zero() for a in self.comps)

    def __str__(self):
        return "(" + ", ".join(str(a) for a in self.comps) + ")"

    __repr__ = __str__
