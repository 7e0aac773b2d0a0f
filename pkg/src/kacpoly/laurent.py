"""Exact arithmetic in v = q^(1/2): integer Laurent polynomials and the
rational-function field over them.

Every coefficient the generating-function pipeline produces (Hua summands,
plethystic intermediates, Kac polynomials) lives in this field.  Values are
immutable after construction and all operations are pure, so they can be
shared or pickled across worker processes without locking.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd


class NotAPolynomial(Exception):
    """The value is not an honest polynomial in q (integer coefficients,
    nonnegative integral powers of q)."""


def _strip(terms):
    return {e: c for e, c in terms.items() if c}


class LaurentPolynomial:
    """Integer Laurent polynomial in v, with q = v**2.

    Exponents are counted in units of v, so q**n sits at exponent 2n and
    negative exponents are allowed.  ``terms`` maps exponent to a nonzero
    integer coefficient; the zero polynomial has no terms.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        self.terms = _strip(terms) if terms else {}
        self._hash = None

    # -- ring structure -------------------------------------------------

    def __add__(self, other):
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out.terms = terms
        out._hash = None
        return out

    def __sub__(self, other):
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) - c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out.terms = terms
        out._hash = None
        return out

    def __neg__(self):
        return self.scaled(-1)

    def __mul__(self, other):
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out.terms = terms
        out._hash = None
        return out

    def scaled(self, c: int):
        if c == 0:
            return L_ZERO
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out.terms = {e: c * v for e, v in self.terms.items()}
        out._hash = None
        return out

    def shifted(self, k: int):
        """Multiply by v**k."""
        if k == 0:
            return self
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out.terms = {e + k: c for e, c in self.terms.items()}
        out._hash = None
        return out

    # -- inspection ------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self.terms.items())))
        return self._hash

    def degree(self) -> int:
        return max(self.terms)

    def valuation(self) -> int:
        return min(self.terms)

    def leading_coefficient(self) -> int:
        return self.terms[max(self.terms)]

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = _int_gcd(g, c)
        return g

    def is_polynomial_in_q(self) -> bool:
        return all(e >= 0 and e % 2 == 0 for e in self.terms)

    def constant_coefficient(self) -> int:
        return self.terms.get(0, 0)

    # -- substitutions and evaluation -------------------------------------

    def substitute_power(self, k: int):
        """Ring homomorphism v -> v**k, k a nonzero integer."""
        if k == 0:
            raise ValueError("substitution v -> v^0 is not invertible")
        if k == 1:
            return self
        return LaurentPolynomial({e * k: c for e, c in self.terms.items()})

    def substitute_negate(self):
        """Ring homomorphism v -> -v."""
        return LaurentPolynomial(
            {e: (c if e % 2 == 0 else -c) for e, c in self.terms.items()}
        )

    def eval_q(self, q: Fraction) -> Fraction:
        """Evaluate at a rational value of q; only even v-exponents allowed."""
        total = Fraction(0)
        for e, c in self.terms.items():
            if e % 2:
                raise NotAPolynomial(f"cannot evaluate v^{e} at a value of q")
            total += c * Fraction(q) ** (e // 2)
        return total

    # -- rendering ---------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                if e == 2:
                    mon = "q"
                elif e == 1:
                    mon = "v"
                elif e % 2 == 0:
                    mon = f"q^{e // 2}"
                else:
                    mon = f"v^{e}"
                body = mon if mag == 1 else f"{mag}*{mon}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPolynomial({self.terms!r})"


def _make(terms) -> LaurentPolynomial:
    out = LaurentPolynomial.__new__(LaurentPolynomial)
    out.terms = terms
    out._hash = None
    return out


L_ZERO = LaurentPolynomial()
L_ONE = LaurentPolynomial({0: 1})
L_V = LaurentPolynomial({1: 1})
L_Q = LaurentPolynomial({2: 1})


def integer(c: int) -> LaurentPolynomial:
    return LaurentPolynomial({0: c})


def monomial(exponent: int, coefficient: int = 1) -> LaurentPolynomial:
    return LaurentPolynomial({exponent: coefficient})


def q_power(n: int) -> LaurentPolynomial:
    return LaurentPolynomial({2 * n: 1})


# -- polynomial gcd over Z[v] ------------------------------------------------
#
# Dense lists indexed by exponent from 0; gcd treats v-powers as units and
# returns a genuine polynomial with positive leading coefficient whose integer
# content is gcd(content(a), content(b)).


def _dense(poly: LaurentPolynomial) -> list[int]:
    val = poly.valuation()
    out = [0] * (poly.degree() - val + 1)
    for e, c in poly.terms.items():
        out[e - val] = c
    return out


def _trim(xs: list[int]) -> list[int]:
    while xs and xs[-1] == 0:
        xs.pop()
    return xs


def _list_content(xs) -> int:
    g = 0
    for c in xs:
        g = _int_gcd(g, c)
    return g


def _primitive(xs: list[int]) -> list[int]:
    g = _list_content(xs)
    if g > 1:
        xs = [c // g for c in xs]
    if xs and xs[-1] < 0:
        xs = [-c for c in xs]
    return xs


def _prem(u: list[int], v: list[int]) -> list[int]:
    """Pseudo-remainder of u by v (both dense, v nonzero)."""
    u = list(u)
    dv = len(v) - 1
    lv = v[-1]
    while len(u) - 1 >= dv and u:
        lu = u[-1]
        shift = len(u) - 1 - dv
        u = [lv * c for c in u]
        for i, c in enumerate(v):
            u[shift + i] -= lu * c
        _trim(u)
    return u


def _dense_gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd of dense polynomials via the primitive PRS."""
    a = _primitive(list(a))
    b = _primitive(list(b))
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _primitive(_prem(a, b))
        a, b = b, r
    return a


def gcd(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    """gcd in Z[v] up to units: positive leading coefficient, valuation 0,
    integer content equal to gcd of the operand contents."""
    if not a or not b:
        raise ValueError("gcd of zero polynomial")
    c = _int_gcd(a.content(), b.content())
    prim = _dense_gcd(_dense(a), _dense(b))
    if c != 1:
        prim = [x * c for x in prim]
    return _make({e: x for e, x in enumerate(prim) if x})


def divexact(a: LaurentPolynomial, g: LaurentPolynomial) -> LaurentPolynomial:
    """Exact division a / g in the Laurent ring; g must divide a."""
    if not a:
        return L_ZERO
    aval = a.valuation()
    gval = g.valuation()
    da = _dense(a)
    dg = _dense(g)
    lg = dg[-1]
    quot = [0] * (len(da) - len(dg) + 1)
    rem = list(da)
    for i in range(len(quot) - 1, -1, -1):
        c = rem[i + len(dg) - 1]
        if c % lg:
            raise ArithmeticError("inexact polynomial division")
        qc = c // lg
        quot[i] = qc
        if qc:
            for j, gc in enumerate(dg):
                rem[i + j] -= qc * gc
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    shift = aval - gval
    return _make({e + shift: c for e, c in enumerate(quot) if c})


# -- the rational-function field ----------------------------------------------


class RationalFunction:
    """Quotient of integer Laurent polynomials in v, kept in canonical form.

    Canonical form: the denominator is a genuine polynomial with nonzero
    constant term and positive leading coefficient, numerator and denominator
    share no polynomial factor and have coprime integer contents.  Any v-power
    content sits in the numerator.  Equality and hashing are therefore
    structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=L_ONE):
        if isinstance(num, int):
            num = integer(num)
        if isinstance(den, int):
            den = integer(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num = L_ZERO
            self.den = L_ONE
            self._hash = None
            return
        shift = num.valuation() - den.valuation()
        n0 = num.shifted(-num.valuation())
        d0 = den.shifted(-den.valuation())
        g = gcd(n0, d0)
        if g.terms != {0: 1}:
            n0 = divexact(n0, g)
            d0 = divexact(d0, g)
        if d0.leading_coefficient() < 0:
            n0 = n0.scaled(-1)
            d0 = d0.scaled(-1)
        self.num = n0.shifted(shift)
        self.den = d0
        self._hash = None

    @staticmethod
    def _raw(num: LaurentPolynomial, den: LaurentPolynomial):
        """Wrap an already-canonical numerator/denominator pair."""
        out = RationalFunction.__new__(RationalFunction)
        out.num = num
        out.den = den
        out._hash = None
        return out

    @staticmethod
    def from_fraction(fr: Fraction):
        return RationalFunction._raw(integer(fr.numerator), integer(fr.denominator))

    # -- field operations -------------------------------------------------

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        if not self.num:
            return other
        if not other.num:
            return self
        da, db = self.den, other.den
        if da == db:
            return RationalFunction(self.num + other.num, da)
        g = gcd(da, db)
        if g.terms == {0: 1}:
            t = self.num * db + other.num * da
            if not t:
                return RF_ZERO
            return RationalFunction._raw(t, da * db)
        db_red = divexact(db, g)
        t = self.num * db_red + other.num * divexact(da, g)
        if not t:
            return RF_ZERO
        g2 = gcd(t, g)
        if g2.terms != {0: 1}:
            t = divexact(t, g2)
            da = divexact(da, g2)
        return RationalFunction._raw(t, da * db_red)

    def __neg__(self):
        return RationalFunction._raw(self.num.scaled(-1), self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.num or not other.num:
            return RF_ZERO
        na, da = self.num, self.den
        nb, db = other.num, other.den
        g1 = gcd(na, db)
        if g1.terms != {0: 1}:
            na = divexact(na, g1)
            db = divexact(db, g1)
        g2 = gcd(nb, da)
        if g2.terms != {0: 1}:
            nb = divexact(nb, g2)
            da = divexact(da, g2)
        return RationalFunction._raw(na * nb, da * db)

    def reciprocal(self):
        if not self.num:
            raise ZeroDivisionError("division by the zero rational function")
        val = self.num.valuation()
        n0 = self.num.shifted(-val)
        if n0.leading_coefficient() < 0:
            return RationalFunction._raw(
                self.den.scaled(-1).shifted(-val), n0.scaled(-1)
            )
        return RationalFunction._raw(self.den.shifted(-val), n0)

    def __truediv__(self, other):
        return self * other.reciprocal()

    def __pow__(self, n: int):
        if n < 0:
            return self.reciprocal() ** (-n)
        out = RF_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- structure ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num.terms == other.num.terms and self.den.terms == other.den.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def substitute_power(self, k: int):
        """Ring homomorphism v -> v**k for nonzero integer k."""
        return RationalFunction(
            self.num.substitute_power(k), self.den.substitute_power(k)
        )

    def substitute_negate(self):
        """Ring homomorphism v -> -v."""
        return RationalFunction(
            self.num.substitute_negate(), self.den.substitute_negate()
        )

    def as_integer_polynomial(self) -> LaurentPolynomial:
        """Return the numerator when the value is a polynomial in q.

        Raises NotAPolynomial when the canonical denominator is not 1 or the
        numerator carries odd or negative v-exponents; such a failure signals
        a computation bug or an insufficient truncation box upstream.
        """
        if self.den.terms != {0: 1}:
            raise NotAPolynomial(f"nontrivial denominator: {self}")
        if not self.num.is_polynomial_in_q():
            raise NotAPolynomial(f"not a polynomial in q: {self}")
        return self.num

    def eval_q(self, q) -> Fraction:
        return self.num.eval_q(Fraction(q)) / self.den.eval_q(Fraction(q))

    def has_even_exponents_only(self) -> bool:
        """True when numerator and denominator involve only integral powers of q."""
        return all(e % 2 == 0 for e in self.num.terms) and all(
            e % 2 == 0 for e in self.den.terms
        )

    def __str__(self):
        if self.den.terms == {0: 1}:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunction({self.num.terms!r}, {self.den.terms!r})"


RF_ZERO = RationalFunction._raw(L_ZERO, L_ONE)
RF_ONE = RationalFunction._raw(L_ONE, L_ONE)
RF_Q = RationalFunction._raw(L_Q, L_ONE)
