"""Exact Kac polynomials, refined DT invariants and nilpotent stack series
for arbitrary quivers, cross-checked against a finite-field counting oracle."""

from .hua import (
    KacTable,
    c_pi,
    coha_char_full,
    coha_char_nilp,
    dt_invariants,
    generator_dims,
    kac_polynomials,
    n_pi_weight,
    verify_orientation_independence,
    verify_parity,
)
from .laurent import LaurentPolynomial, NotAPolynomial, RationalFunction
from .quiver import Quiver, parse_quiver, ringel_form, serialize_quiver, triple
from .series import TruncatedSeries, log, pow_structure, sym

__all__ = [
    "KacTable",
    "LaurentPolynomial",
    "NotAPolynomial",
    "Quiver",
    "RationalFunction",
    "TruncatedSeries",
    "c_pi",
    "coha_char_full",
    "coha_char_nilp",
    "dt_invariants",
    "generator_dims",
    "kac_polynomials",
    "log",
    "n_pi_weight",
    "parse_quiver",
    "pow_structure",
    "ringel_form",
    "serialize_quiver",
    "sym",
    "triple",
    "verify_orientation_independence",
    "verify_parity",
]
