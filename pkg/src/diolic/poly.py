"""Sparse multivariate polynomials over Q, plus vector and matrix forms.

Coefficients are `fractions.Fraction`, so all arithmetic is exact.  A
multi-index is a plain tuple of non-negative ints whose length is the
ambient variable count n; variables are named x1..xn (1-based in text and
in the public API, 0-based inside exponent tuples).

Text grammar (shared with the CLI):

    poly   := ('+'|'-')? term (('+'|'-') term)*
    term   := coeff ('*' factor)* | factor ('*' factor)*
    factor := 'x'INDEX ('^'EXP)?
    coeff  := INT | INT'/'INT

Whitespace is insignificant.  Printing is canonical (descending
graded-lex), and parse(print(p)) == p.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction


class ParseError(ValueError):
    """Malformed polynomial text; `position` is the 0-based offset."""

    def __init__(self, message, position):
        super().__init__("%s (at position %d)" % (message, position))
        self.position = position


def grlex_key(sigma):
    """Sort key for ascending graded-lex order: (1,0) before (0,1)."""
    return (sum(sigma), tuple(-e for e in sigma))


def _print_key(sigma):
    # descending total degree, x1-major inside each degree block
    return (-sum(sigma), tuple(-e for e in sigma))


def monomials_up_to(n, d):
    """All multi-indices sigma with |sigma| <= d in graded-lex order.

    The list has length C(n+d, d).
    """
    if n < 1:
        raise ValueError("variable count must be >= 1")
    if d < 0:
        raise ValueError("degree bound must be >= 0")
    out = [s for s in itertools.product(range(d + 1), repeat=n) if sum(s) <= d]
    out.sort(key=grlex_key)
    return out


def mi_add(s, t):
    return tuple(a + b for a, b in zip(s, t))


def mi_sub(s, t):
    return tuple(a - b for a, b in zip(s, t))


def mi_le(s, t):
    return all(a <= b for a, b in zip(s, t))


class Poly:
    """Element of Q[x1..xn]: a finite map multi-index -> nonzero Fraction."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=()):
        items = terms.items() if isinstance(terms, dict) else terms
        acc = {}
        for sigma, c in items:
            sigma = tuple(sigma)
            if len(sigma) != n or any(e < 0 for e in sigma):
                raise ValueError("bad multi-index %r for n=%d" % (sigma, n))
            c = Fraction(c)
            if c:
                c0 = acc.get(sigma)
                c = c if c0 is None else c0 + c
                if c:
                    acc[sigma] = c
                elif sigma in acc:
                    del acc[sigma]
        self.n = n
        self.terms = acc

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def const(cls, n, c):
        return cls(n, {(0,) * n: Fraction(c)})

    @classmethod
    def one(cls, n):
        return cls.const(n, 1)

    @classmethod
    def var(cls, n, i):
        """The variable x_i, 1 <= i <= n."""
        if not 1 <= i <= n:
            raise ValueError("variable index out of range: %d" % i)
        sigma = tuple(1 if j == i - 1 else 0 for j in range(n))
        return cls(n, {sigma: Fraction(1)})

    @classmethod
    def monomial(cls, n, sigma, c=1):
        return cls(n, {tuple(sigma): Fraction(c)})

    # -- queries -----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((sum(s) for s in self.terms), default=-1)

    def coeff(self, sigma):
        return self.terms.get(tuple(sigma), Fraction(0))

    def constant_term(self):
        return self.terms.get((0,) * self.n, Fraction(0))

    # -- arithmetic --------------------------------------------------

    def _check(self, other):
        if self.n != other.n:
            raise ValueError("mismatched variable counts: %d vs %d" % (self.n, other.n))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.n, other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        acc = dict(self.terms)
        for s, c in other.terms.items():
            v = acc.get(s, Fraction(0)) + c
            if v:
                acc[s] = v
            elif s in acc:
                del acc[s]
        out = Poly.__new__(Poly)
        out.n = self.n
        out.terms = acc
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Poly.__new__(Poly)
        out.n = self.n
        out.terms = {s: -c for s, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.n, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Poly.zero(self.n)
            out = Poly.__new__(Poly)
            out.n = self.n
            out.terms = {s: v * c for s, v in self.terms.items()}
            return out
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        acc = {}
        for s1, c1 in self.terms.items():
            for s2, c2 in other.terms.items():
                s = mi_add(s1, s2)
                v = acc.get(s, Fraction(0)) + c1 * c2
                if v:
                    acc[s] = v
                elif s in acc:
                    del acc[s]
        out = Poly.__new__(Poly)
        out.n = self.n
        out.terms = acc
        return out

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power")
        out = Poly.one(self.n)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.n, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    __hash__ = None

    # -- calculus ----------------------------------------------------

    def partial(self, i):
        """Formal partial derivative with respect to x_i, 1 <= i <= n."""
        if not 1 <= i <= self.n:
            raise ValueError("variable index out of range: %d" % i)
        j = i - 1
        acc = {}
        for s, c in self.terms.items():
            e = s[j]
            if e:
                t = s[:j] + (e - 1,) + s[j + 1:]
                acc[t] = acc.get(t, Fraction(0)) + c * e
        return Poly(self.n, acc)

    def partial_sigma(self, sigma):
        """Iterated derivative d^sigma."""
        p = self
        for i, e in enumerate(sigma):
            for _ in range(e):
                p = p.partial(i + 1)
                if p.is_zero():
                    return p
        return p

    # -- printing ----------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for sigma in sorted(self.terms, key=_print_key):
            c = self.terms[sigma]
            factors = []
            for j, e in enumerate(sigma):
                if e == 1:
                    factors.append("x%d" % (j + 1))
                elif e > 1:
                    factors.append("x%d^%d" % (j + 1, e))
            mag = abs(c)
            if factors:
                body = "*".join(factors) if mag == 1 else "%s*%s" % (mag, "*".join(factors))
            else:
                body = str(mag)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return "Poly(%d, %s)" % (self.n, str(self))


# ---------------------------------------------------------------------------
# parsing


_TOKEN = re.compile(r"(?P<ws>\s+)|(?P<var>[A-Za-z]\d+)|(?P<int>\d+)|(?P<op>[-+*/^])")


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        mo = _TOKEN.match(text, pos)
        if mo is None:
            raise ParseError("unexpected character %r" % text[pos], pos)
        if mo.lastgroup == "var":
            tokens.append(("var", mo.group(), pos))
        elif mo.lastgroup == "int":
            tokens.append(("int", mo.group(), pos))
        elif mo.lastgroup == "op":
            tokens.append(("op", mo.group(), pos))
        pos = mo.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, n, letters):
        self.tokens = tokenize(text)
        self.i = 0
        self.n = n
        self.letters = letters

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_int(self, what):
        kind, val, pos = self.next()
        if kind != "int":
            raise ParseError("expected %s" % what, pos)
        return int(val)

    def parse(self):
        """Return a list of (Fraction, {letter: exponent tuple}) terms."""
        terms = []
        sign = 1
        kind, val, pos = self.peek()
        if kind == "op" and val in "+-":
            self.next()
            sign = -1 if val == "-" else 1
        terms.append(self.term(sign))
        while True:
            kind, val, pos = self.peek()
            if kind == "end":
                return terms
            if kind != "op" or val not in "+-":
                raise ParseError("expected '+' or '-'", pos)
            self.next()
            terms.append(self.term(-1 if val == "-" else 1))

    def term(self, sign):
        coeff = Fraction(sign)
        expos = {letter: [0] * self.n for letter in self.letters}
        kind, val, pos = self.peek()
        if kind == "int":
            self.next()
            num = int(val)
            kind2, val2, _ = self.peek()
            if kind2 == "op" and val2 == "/":
                self.next()
                dpos = self.peek()[2]
                den = self.expect_int("denominator")
                if den == 0:
                    raise ParseError("zero denominator", dpos)
                coeff *= Fraction(num, den)
            else:
                coeff *= num
            while True:
                kind2, val2, _ = self.peek()
                if kind2 == "op" and val2 == "*":
                    self.next()
                    self.factor(expos)
                else:
                    break
        elif kind == "var":
            self.factor(expos)
            while True:
                kind2, val2, _ = self.peek()
                if kind2 == "op" and val2 == "*":
                    self.next()
                    self.factor(expos)
                else:
                    break
        else:
            raise ParseError("expected a term", pos)
        return coeff, {letter: tuple(v) for letter, v in expos.items()}

    def factor(self, expos):
        kind, val, pos = self.next()
        if kind != "var":
            raise ParseError("expected a variable", pos)
        letter, idx = val[0], int(val[1:])
        if letter not in self.letters:
            raise ParseError("unknown variable letter %r" % letter, pos)
        if idx < 1:
            raise ParseError("variable index must be >= 1", pos)
        if idx > self.n:
            raise ParseError("variable index out of range: %d > n=%d" % (idx, self.n), pos)
        exp = 1
        kind2, val2, _ = self.peek()
        if kind2 == "op" and val2 == "^":
            self.next()
            epos = self.peek()[2]
            exp = self.expect_int("exponent")
            if exp < 0:
                raise ParseError("negative exponent", epos)
        expos[letter][idx - 1] += exp


def parse_terms(text, n, letters=("x",)):
    return _Parser(text, n, letters).parse()


def parse_poly(text, n):
    """Parse the shared polynomial grammar into a Poly."""
    acc = {}
    for coeff, expos in parse_terms(text, n, ("x",)):
        sigma = expos["x"]
        acc[sigma] = acc.get(sigma, Fraction(0)) + coeff
    return Poly(n, acc)


# ---------------------------------------------------------------------------
# vectors and matrices


class PolyVec:
    """Element of P = A^m: a tuple of m polynomials."""

    __slots__ = ("n", "m", "comps")

    def __init__(self, n, comps):
        comps = tuple(comps)
        for p in comps:
            if not isinstance(p, Poly) or p.n != n:
                raise ValueError("components must be Poly in %d variables" % n)
        self.n = n
        self.m = len(comps)
        self.comps = comps

    @classmethod
    def zero(cls, n, m):
        return cls(n, [Poly.zero(n)] * m)

    @classmethod
    def basis(cls, n, m, j):
        """Basis section e_{j+1} (j is 0-based)."""
        if not 0 <= j < m:
            raise ValueError("basis index out of range")
        return cls(n, [Poly.one(n) if i == j else Poly.zero(n) for i in range(m)])

    def _check(self, other):
        if self.n != other.n or self.m != other.m:
            raise ValueError("dimension mismatch")

    def __add__(self, other):
        self._check(other)
        return PolyVec(self.n, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other):
        self._check(other)
        return PolyVec(self.n, [a - b for a, b in zip(self.comps, other.comps)])

    def __neg__(self):
        return PolyVec(self.n, [-a for a in self.comps])

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return PolyVec(self.n, [other * a for a in self.comps])
        return NotImplemented

    __mul__ = __rmul__

    def __eq__(self, other):
        if not isinstance(other, PolyVec):
            return NotImplemented
        return self.n == other.n and self.m == other.m and self.comps == other.comps

    __hash__ = None

    def is_zero(self):
        return all(p.is_zero() for p in self.comps)

    def partial(self, i):
        return PolyVec(self.n, [p.partial(i) for p in self.comps])

    def degree(self):
        return max((p.degree() for p in self.comps), default=-1)

    def __str__(self):
        return "(" + ", ".join(str(p) for p in self.comps) + ")"

    __repr__ = __str__


class PolyMat:
    """m x m matrix over A, i.e. an endomorphism of P in the fixed basis."""

    __slots__ = ("n", "m", "rows")

    def __init__(self, n, rows):
        rows = tuple(tuple(r) for r in rows)
        m = len(rows)
        for r in rows:
            if len(r) != m:
                raise ValueError("matrix must be square")
            for p in r:
                if not isinstance(p, Poly) or p.n != n:
                    raise ValueError("entries must be Poly in %d variables" % n)
        self.n = n
        self.m = m
        self.rows = rows

    @classmethod
    def zero(cls, n, m):
        z = Poly.zero(n)
        return cls(n, [[z] * m for _ in range(m)])

    @classmethod
    def identity(cls, n, m):
        return cls.scalar(n, m, Poly.one(n))

    @classmethod
    def scalar(cls, n, m, a):
        z = Poly.zero(n)
        return cls(n, [[a if i == j else z for j in range(m)] for i in range(m)])

    @classmethod
    def unit(cls, n, m, i, j, a=None):
        """Matrix with single entry a (default 1) at 0-based (i, j)."""
        a = Poly.one(n) if a is None else a
        z = Poly.zero(n)
        return cls(n, [[a if (r, c) == (i, j) else z for c in range(m)] for r in range(m)])

    @classmethod
    def block_diag(cls, a, b):
        if a.n != b.n:
            raise ValueError("dimension mismatch")
        n, m1, m2 = a.n, a.m, b.m
        z = Poly.zero(n)
        rows = []
        for i in range(m1):
            rows.append(list(a.rows[i]) + [z] * m2)
        for i in range(m2):
            rows.append([z] * m1 + list(b.rows[i]))
        return cls(n, rows)

    def _check(self, other):
        if self.n != other.n or self.m != other.m:
            raise ValueError("dimension mismatch")

    def __add__(self, other):
        self._check(other)
        return PolyMat(self.n, [[a + b for a, b in zip(r1, r2)]
                                for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._check(other)
        return PolyMat(self.n, [[a - b for a, b in zip(r1, r2)]
                                for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        return PolyMat(self.n, [[-a for a in r] for r in self.rows])

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return PolyMat(self.n, [[other * a for a in r] for r in self.rows])
        return NotImplemented

    __mul__ = __rmul__

    def __matmul__(self, other):
        if isinstance(other, PolyVec):
            if self.n != other.n or self.m != other.m:
                raise ValueError("dimension mismatch")
            return PolyVec(self.n, [sum((self.rows[i][j] * other.comps[j]
                                         for j in range(self.m)), Poly.zero(self.n))
                                    for i in range(self.m)])
        if isinstance(other, PolyMat):
            self._check(other)
            return PolyMat(self.n, [[sum((self.rows[i][k] * other.rows[k][j]
                                          for k in range(self.m)), Poly.zero(self.n))
                                     for j in range(self.m)]
                                    for i in range(self.m)])
        return NotImplemented

    def commutator(self, other):
        return self @ other - other @ self

    def map(self, fn):
        return PolyMat(self.n, [[fn(a) for a in r] for r in self.rows])

    def __eq__(self, other):
        if not isinstance(other, PolyMat):
            return NotImplemented
        return self.n == other.n and self.m == other.m and self.rows == other.rows

    __hash__ = None

    def is_zero(self):
        return all(p.is_zero() for r in self.rows for p in r)

    def __str__(self):
        return "[" + "; ".join(", ".join(str(p) for p in r) for r in self.rows) + "]"

    __repr__ = __str__
