"""Hua's multipartition formula and everything extracted from it: the
characteristic series of the nilpotent stack of pairs, Kac polynomials via the
plethystic logarithm, refined DT invariants, generator weight multiplicities,
and the parity / positivity / orientation checks.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .laurent import (
    L_ONE,
    LaurentPolynomial,
    RF_ONE,
    RF_Q,
    RationalFunction,
    q_power,
)
from .partitions import b_poly, multipartitions_of, pairing
from .quiver import Quiver, check_dimension_vector, reorient
from .series import TruncatedSeries, box_range, log, pow_structure, sym


class PositivityViolation(Exception):
    """A Kac polynomial came out with a negative coefficient."""


class NegativeMultiplicity(Exception):
    """A generator multiplicity came out negative."""


RF_Q_MINUS_ONE = RationalFunction(L_ONE.scaled(-1) + q_power(1))


def n_pi_weight(pi) -> RationalFunction:
    """Weight polynomial of the stabilizer of a nilpotent endomorphism of
    Jordan type pi: prod over vertices of q^<pi(i),pi(i)> b_{pi(i)}(1/q).

    For a single vertex this is the order polynomial of the automorphism group
    of the corresponding torsion module, e.g. q-1 for (1) and q^2-q for (2).
    """
    num = L_ONE
    for lam in pi:
        num = num * b_poly(lam, "q_inverse")
    exponent = sum(pairing(lam, lam) for lam in pi)
    return RationalFunction(num.shifted(2 * exponent))


def c_pi(q: Quiver, pi) -> RationalFunction:
    """One Hua summand: prod over arrows of q^<pi(s(a)),pi(t(a))> divided by
    the stabilizer weight polynomial."""
    arrow_exponent = sum(pairing(pi[a.src], pi[a.dst]) for a in q.arrows)
    return RationalFunction(q_power(arrow_exponent)) / n_pi_weight(pi)


def _nilp_coefficient(q: Quiver, gamma) -> RationalFunction:
    total = None
    for pi in multipartitions_of(gamma):
        term = c_pi(q, pi)
        total = term if total is None else total + term
    return total


def _nilp_worker(args):
    q, gamma = args
    return gamma, _nilp_coefficient(q, gamma)


def coha_char_nilp(q: Quiver, box, threads: int = 1) -> TruncatedSeries:
    """Characteristic series of the stack of pairs (representation, nilpotent
    endomorphism): the Hua sum over multipartitions, truncated to the box.

    The per-degree sums are independent, so they may be evaluated by a pool of
    workers; the assembly order is fixed, and the arithmetic exact, which
    makes the result identical for every worker count.
    """
    box = check_dimension_vector(q, box)
    points = [g for g in box_range(box) if any(g)]
    coeffs = {(0,) * len(box): RF_ONE}
    if threads > 1 and len(points) > 1:
        try:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                for gamma, value in pool.map(
                    _nilp_worker, [(q, g) for g in points], chunksize=1
                ):
                    coeffs[gamma] = value
        except (OSError, PermissionError):
            for gamma in points:
                coeffs[gamma] = _nilp_coefficient(q, gamma)
    else:
        for gamma in points:
            coeffs[gamma] = _nilp_coefficient(q, gamma)
    return TruncatedSeries(box, coeffs)


@dataclass
class KacTable:
    """Kac polynomials a_gamma(q) for all 0 < gamma <= box.

    Construction validates the theorem under test: every entry must be an
    integer polynomial in q with nonnegative coefficients, and a violation
    raises instead of propagating silently.
    """

    quiver: Quiver
    box: tuple[int, ...]
    entries: dict[tuple[int, ...], LaurentPolynomial] = field(default_factory=dict)

    def __post_init__(self):
        for gamma, poly in self.entries.items():
            if not poly.is_polynomial_in_q():
                raise PositivityViolation(
                    f"a_{gamma} = {poly} is not a polynomial in q"
                )
            negative = [c for c in poly.terms.values() if c < 0]
            if negative:
                raise PositivityViolation(
                    f"a_{gamma} = {poly} has negative coefficients"
                )


def kac_polynomials(q: Quiver, box, threads: int = 1) -> KacTable:
    """Invert the Hua series: a_gamma(q) = (q-1) * [x^gamma] Log(series).

    The plethystic logarithm of the nilpotent-pair series has coefficients
    a_gamma(q)/(q-1); clearing the 1/(q-1) must leave an integer polynomial in
    q, and by Kac's theorem its coefficients are nonnegative.  Any failure is
    an implementation bug, not bad input.
    """
    box = check_dimension_vector(q, box)
    if not any(box):
        raise ValueError("box must be nonzero")
    series = coha_char_nilp(q, box, threads=threads)
    generator = log(series)
    entries = {}
    for gamma in box_range(box):
        if not any(gamma):
            continue
        value = RF_Q_MINUS_ONE * generator.coefficient(gamma)
        entries[gamma] = value.as_integer_polynomial()
    return KacTable(q, box, entries)


def dt_invariants(table: KacTable) -> dict[tuple[int, ...], LaurentPolynomial]:
    """Refined DT invariants of the tripled quiver with its canonical
    potential; these coincide with the Kac polynomials."""
    return dict(table.entries)


def generator_dims(table: KacTable) -> dict[tuple[int, ...], dict[int, int]]:
    """Weight multiplicities of the primitive generators.

    For a_gamma(q) = sum_t c_t q^t the generator in weight m = 2(1-t) has
    multiplicity c_t; the support is automatically even and the
    multiplicities must be nonnegative integers.
    """
    out = {}
    for gamma, poly in table.entries.items():
        dims = {}
        for e, c in poly.terms.items():
            if c < 0:
                raise NegativeMultiplicity(f"a_{gamma} has coefficient {c}")
            dims[2 - e] = c
        out[gamma] = dict(sorted(dims.items()))
    return out


def verify_parity(series: TruncatedSeries) -> bool:
    """True when every coefficient involves only integral powers of q (no
    genuine half-powers), in canonical form."""
    return all(c.has_even_exponents_only() for c in series.coeffs.values())


def coha_char_full(q: Quiver, box, threads: int = 1) -> TruncatedSeries:
    """Characteristic series of the stack of all pairs (representation,
    endomorphism), obtained from the nilpotent series by the power structure
    with exponent q."""
    return pow_structure(coha_char_nilp(q, box, threads=threads), RF_Q)


def hua_generator_series(table: KacTable) -> TruncatedSeries:
    """The series sum over gamma of a_gamma(q)/(q-1) x^gamma, whose plethystic
    exponential reproduces the nilpotent-pair series."""
    coeffs = {
        gamma: RationalFunction(poly) / RF_Q_MINUS_ONE
        for gamma, poly in table.entries.items()
    }
    return TruncatedSeries(table.box, coeffs)


def verify_hua_round_trip(q: Quiver, box, threads: int = 1) -> bool:
    """sym of the generator series must reproduce the Hua sum exactly."""
    series = coha_char_nilp(q, box, threads=threads)
    table = kac_polynomials(q, box, threads=threads)
    return sym(hua_generator_series(table)) == series


def verify_orientation_independence(
    q: Quiver, box, trials: int, seed: int = 0
) -> bool:
    """Kac tables must be unchanged by reorienting random arrow subsets."""
    base = kac_polynomials(q, box).entries
    rng = random.Random(seed)
    names = [a.name for a in q.arrows]
    for _ in range(trials):
        flip = {name for name in names if rng.random() < 0.5}
        flipped = kac_polynomials(reorient(q, flip), box)
        if flipped.entries != base:
            return False
    return True


# -- stratum reporting ---------------------------------------------------------


def strata_rows(q: Quiver, gamma):
    """Per-stratum contributions at a fixed dimension vector, in the
    linearized stratum order: (pi, arrow pairing exponent, stabilizer weight,
    summand, running total)."""
    from .partitions import linearize_strata

    gamma = check_dimension_vector(q, gamma)
    rows = []
    total = None
    for pi in linearize_strata(list(multipartitions_of(gamma))):
        arrow_exponent = sum(pairing(pi[a.src], pi[a.dst]) for a in q.arrows)
        weight = n_pi_weight(pi)
        term = c_pi(q, pi)
        total = term if total is None else total + term
        rows.append((pi, arrow_exponent, weight, term, total))
    if total is None:
        rows = []
    return rows


def nonneg_qinv_expansion(f: RationalFunction, terms: int = 64) -> bool:
    """Whether the expansion of f in descending powers of q has nonnegative
    integer coefficients through the first ``terms`` terms.

    Stacky coefficients expand naturally in 1/q; this long-division window is
    the finite shadow of the positivity claim for the all-pairs series.
    """
    num = dict(f.num.terms)
    den = f.den.terms
    if not num:
        return True
    den_deg = max(den)
    den_lead = den[den_deg]
    for _ in range(terms):
        if not num:
            return True
        e = max(num)
        c = num[e]
        if c % den_lead:
            return False
        q_coeff = c // den_lead
        if q_coeff < 0:
            return False
        for de, dc in den.items():
            ne = e - den_deg + de
            s = num.get(ne, 0) - q_coeff * dc
            if s:
                num[ne] = s
            else:
                num.pop(ne, None)
    return True
