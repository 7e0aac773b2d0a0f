"""Box-truncated formal power series in commuting monomials x^gamma with
rational-function coefficients, with Adams operations, the plethystic
exponential Sym, its inverse Log, and power structures.

Truncation is exact: the grading monoid is cancellative, so no out-of-box
term can influence an in-box coefficient, and Adams operations only move mass
deeper into the box.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .laurent import RF_ONE, RF_ZERO, RationalFunction


class BoxMismatch(Exception):
    """Binary series operations require identical truncation boxes."""


class NonUnitConstantTerm(Exception):
    """Series inversion needs an invertible constant term."""


class NonzeroConstantTerm(Exception):
    """Sym requires a vanishing constant term."""


class ConstantTermNotOne(Exception):
    """Log and power structures require constant term exactly 1."""


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_scale(k, a):
    return tuple(k * x for x in a)


def vec_leq(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def box_range(box):
    """All lattice points 0 <= gamma <= box in lexicographic order."""
    return product(*(range(c + 1) for c in box))


class TruncatedSeries:
    """Immutable truncated series; ``coeffs`` maps in-box dimension vectors to
    nonzero RationalFunction coefficients, absent keys meaning zero."""

    __slots__ = ("box", "coeffs")

    def __init__(self, box, coeffs=None):
        box = tuple(int(c) for c in box)
        if any(c < 0 for c in box):
            raise ValueError("box must be componentwise nonnegative")
        clean = {}
        if coeffs:
            for gamma, c in coeffs.items():
                gamma = tuple(gamma)
                if len(gamma) != len(box) or not vec_leq(gamma, box) or any(
                    g < 0 for g in gamma
                ):
                    raise ValueError(f"support point {gamma} outside box {box}")
                if c:
                    clean[gamma] = c
        self.box = box
        self.coeffs = clean

    @staticmethod
    def zero(box):
        return TruncatedSeries(box)

    @staticmethod
    def one(box):
        return TruncatedSeries(box, {(0,) * len(box): RF_ONE})

    @staticmethod
    def monomial(box, gamma, coeff=RF_ONE):
        return TruncatedSeries(box, {tuple(gamma): coeff})

    def coefficient(self, gamma) -> RationalFunction:
        return self.coeffs.get(tuple(gamma), RF_ZERO)

    def constant_term(self) -> RationalFunction:
        return self.coeffs.get((0,) * len(self.box), RF_ZERO)

    def _check_box(self, other):
        if self.box != other.box:
            raise BoxMismatch(f"{self.box} vs {other.box}")

    def __add__(self, other):
        self._check_box(other)
        coeffs = dict(self.coeffs)
        for gamma, c in other.coeffs.items():
            s = coeffs.get(gamma, RF_ZERO) + c
            if s:
                coeffs[gamma] = s
            else:
                coeffs.pop(gamma, None)
        out = TruncatedSeries.__new__(TruncatedSeries)
        out.box = self.box
        out.coeffs = coeffs
        return out

    def __sub__(self, other):
        return self + other.scaled(-RF_ONE)

    def __mul__(self, other):
        self._check_box(other)
        box = self.box
        coeffs: dict = {}
        for g1, c1 in self.coeffs.items():
            for g2, c2 in other.coeffs.items():
                g = vec_add(g1, g2)
                if not vec_leq(g, box):
                    continue
                prod_ = c1 * c2
                s = coeffs.get(g, RF_ZERO) + prod_
                if s:
                    coeffs[g] = s
                else:
                    del coeffs[g]
        out = TruncatedSeries.__new__(TruncatedSeries)
        out.box = box
        out.coeffs = coeffs
        return out

    def scaled(self, rf: RationalFunction):
        if not rf:
            return TruncatedSeries(self.box)
        out = TruncatedSeries.__new__(TruncatedSeries)
        out.box = self.box
        out.coeffs = {g: rf * c for g, c in self.coeffs.items()}
        return out

    def map_coefficients(self, fn):
        out = TruncatedSeries.__new__(TruncatedSeries)
        out.box = self.box
        out.coeffs = {g: c2 for g, c in self.coeffs.items() if (c2 := fn(c))}
        return out

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.box == other.box and self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def invert(self):
        """Multiplicative inverse within the box; needs a nonzero constant term."""
        zero = (0,) * len(self.box)
        c0 = self.coeffs.get(zero)
        if not c0:
            raise NonUnitConstantTerm("constant term is zero")
        inv0 = c0.reciprocal()
        coeffs = {zero: inv0}
        # Fill in order of total degree: g_gamma = -c0^{-1} sum f_delta g_{gamma-delta}.
        points = sorted(box_range(self.box), key=lambda g: (sum(g), g))
        for gamma in points:
            if gamma == zero:
                continue
            acc = RF_ZERO
            for delta, c in self.coeffs.items():
                if delta == zero or not all(d <= g for d, g in zip(delta, gamma)):
                    continue
                rest = tuple(g - d for g, d in zip(gamma, delta))
                gc = coeffs.get(rest)
                if gc:
                    acc = acc + c * gc
            if acc:
                coeffs[gamma] = -(inv0 * acc)
        out = TruncatedSeries.__new__(TruncatedSeries)
        out.box = self.box
        out.coeffs = {g: c for g, c in coeffs.items() if c}
        return out

    def adams(self, k: int):
        """k-th Adams operation: x^gamma -> x^(k*gamma) with coefficients
        transported along v -> v^k; terms leaving the box are dropped."""
        if k < 1:
            raise ValueError("Adams operations are indexed by positive integers")
        if k == 1:
            return self
        coeffs = {}
        for gamma, c in self.coeffs.items():
            g = vec_scale(k, gamma)
            if vec_leq(g, self.box):
                coeffs[g] = c.substitute_power(k)
        out = TruncatedSeries.__new__(TruncatedSeries)
        out.box = self.box
        out.coeffs = coeffs
        return out

    def substitute_negate(self):
        return self.map_coefficients(lambda c: c.substitute_negate())

    def render(self) -> str:
        lines = []
        for gamma in box_range(self.box):
            c = self.coeffs.get(gamma)
            if c:
                lines.append(f"x^({','.join(map(str, gamma))}) : {c}")
        return "\n".join(lines)

    def __repr__(self):
        return f"TruncatedSeries(box={self.box}, terms={len(self.coeffs)})"


def _exp(f: TruncatedSeries) -> TruncatedSeries:
    """Formal exponential of a series with zero constant term."""
    box = f.box
    out = TruncatedSeries.one(box)
    power = TruncatedSeries.one(box)
    factorial = 1
    for m in range(1, sum(box) + 1):
        power = power * f
        if not power:
            break
        factorial *= m
        out = out + power.scaled(RationalFunction.from_fraction(Fraction(1, factorial)))
    return out


def _formal_log(f: TruncatedSeries) -> TruncatedSeries:
    """Formal logarithm of a series with constant term 1."""
    box = f.box
    u = f - TruncatedSeries.one(box)
    out = TruncatedSeries.zero(box)
    power = TruncatedSeries.one(box)
    for m in range(1, sum(box) + 1):
        power = power * u
        if not power:
            break
        out = out + power.scaled(
            RationalFunction.from_fraction(Fraction((-1) ** (m + 1), m))
        )
    return out


def _mobius(n: int) -> int:
    m = 1
    k = 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            m = -m
        k += 1
    if n > 1:
        m = -m
    return m


def sym(f: TruncatedSeries) -> TruncatedSeries:
    """Plethystic exponential: the characteristic series of the free
    supercommutative algebra on the modes of f.

    A single mode c*x^gamma*v^m contributes (1 - x^gamma v^m)^(-c) when m is
    even and (1 + x^gamma v^m)^(+c) when m is odd; general rational-function
    coefficients go through the same exp/Adams formula.  Requires a vanishing
    coefficient at gamma = 0.
    """
    if f.constant_term():
        raise NonzeroConstantTerm("sym requires zero constant term")
    g = f.substitute_negate()
    acc = TruncatedSeries.zero(f.box)
    for k in range(1, max(f.box, default=0) + 1):
        term = g.adams(k)
        if not term:
            continue
        acc = acc + term.scaled(RationalFunction.from_fraction(Fraction(1, k)))
    return _exp(acc).substitute_negate()


def log(f: TruncatedSeries) -> TruncatedSeries:
    """Plethystic logarithm, the inverse of sym on series with constant term 1."""
    one = RF_ONE
    if f.constant_term() != one:
        raise ConstantTermNotOne("log requires constant term 1")
    g = f.substitute_negate()
    base = _formal_log(g)
    acc = TruncatedSeries.zero(f.box)
    for k in range(1, max(f.box, default=0) + 1):
        mu = _mobius(k)
        if mu == 0:
            continue
        term = base.adams(k)
        if not term:
            continue
        acc = acc + term.scaled(RationalFunction.from_fraction(Fraction(mu, k)))
    return acc.substitute_negate()


def pow_structure(f: TruncatedSeries, exponent: RationalFunction) -> TruncatedSeries:
    """Power structure f^g = sym(g * log(f)); for nonnegative integer g this
    agrees with the g-fold product."""
    if f.constant_term() != RF_ONE:
        raise ConstantTermNotOne("power structure requires constant term 1")
    return sym(log(f).scaled(exponent))
