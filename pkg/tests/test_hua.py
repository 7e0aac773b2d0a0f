from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import small_quivers
from kacpoly import hua, oracle
from kacpoly.laurent import (
    L_ONE,
    RF_ONE,
    RF_Q,
    RationalFunction,
    monomial,
    q_power,
)
from kacpoly.partitions import multipartitions_of, pairing
from kacpoly.quiver import make_quiver
from kacpoly.series import TruncatedSeries, box_range, sym

JORDAN = make_quiver(1, [("a", 0, 0)])
POINT = make_quiver(1, [])
A2 = make_quiver(2, [("a", 0, 1)])
KRONECKER = make_quiver(2, [("a", 0, 1), ("b", 0, 1)])
LOOPS2 = make_quiver(1, [("a", 0, 0), ("b", 0, 0)])


def over(num, den):
    return RationalFunction(num, den)


Q = q_power(1)
Q2 = q_power(2)
GL2_POLY = (Q2 - L_ONE) * (Q2 - Q)


class TestHuaSummands:
    def test_jordan_single_box(self):
        assert hua.c_pi(JORDAN, ((1,),)) == over(Q, Q - L_ONE)

    def test_point_single_box(self):
        assert hua.c_pi(POINT, ((1,),)) == over(L_ONE, Q - L_ONE)

    def test_point_two_ones(self):
        assert hua.c_pi(POINT, ((1, 1),)) == over(L_ONE, GL2_POLY)

    def test_stabilizer_weights(self):
        assert hua.n_pi_weight(((1,),)) == over(Q - L_ONE, L_ONE)
        assert hua.n_pi_weight(((2,),)) == over(Q2 - Q, L_ONE)
        assert hua.n_pi_weight(((1, 1),)) == over(GL2_POLY, L_ONE)

    def test_stabilizer_weight_is_aut_order_at_primes(self):
        # |Aut(F_2[x]/x^2)| = 2, matching q^2 - q at q = 2.
        assert hua.n_pi_weight(((2,),)).eval_q(2) == 2

    def test_summand_times_weight_is_arrow_monomial(self):
        for gamma in [(2,), (3,)]:
            for pi in multipartitions_of(gamma):
                product = hua.c_pi(JORDAN, pi) * hua.n_pi_weight(pi)
                exponent = sum(
                    pairing(pi[a.src], pi[a.dst]) for a in JORDAN.arrows
                )
                assert product == RationalFunction(q_power(exponent))

    @given(small_quivers())
    @settings(max_examples=25, deadline=None)
    def test_summand_weight_identity_random(self, q):
        gamma = (1,) * q.n_vertices
        for pi in multipartitions_of(gamma):
            product = hua.c_pi(q, pi) * hua.n_pi_weight(pi)
            exponent = sum(pairing(pi[a.src], pi[a.dst]) for a in q.arrows)
            assert product == RationalFunction(q_power(exponent))


class TestNilpotentSeries:
    def test_point_box_two(self):
        s = hua.coha_char_nilp(POINT, (2,))
        assert s.coefficient((0,)) == RF_ONE
        assert s.coefficient((1,)) == over(L_ONE, Q - L_ONE)
        assert s.coefficient((2,)) == over(Q2, GL2_POLY)

    def test_jordan_box_one(self):
        s = hua.coha_char_nilp(JORDAN, (1,))
        assert s.coefficient((1,)) == over(Q, Q - L_ONE)

    def test_empty_box(self):
        s = hua.coha_char_nilp(POINT, (0,))
        assert s == TruncatedSeries.one((0,))

    def test_parity(self):
        assert hua.verify_parity(hua.coha_char_nilp(POINT, (2,)))
        assert hua.verify_parity(TruncatedSeries.one((1,)))
        odd = TruncatedSeries((1,), {(1,): RationalFunction(monomial(1))})
        assert not hua.verify_parity(odd)


class TestKacPolynomials:
    def test_jordan_golden(self):
        table = hua.kac_polynomials(JORDAN, (3,))
        assert table.entries == {(1,): Q, (2,): Q, (3,): Q}

    def test_kronecker_golden(self):
        table = hua.kac_polynomials(KRONECKER, (1, 1))
        assert table.entries[(1, 1)] == Q + L_ONE

    def test_a2_golden(self):
        table = hua.kac_polynomials(A2, (1, 1))
        assert table.entries[(1, 1)] == L_ONE

    def test_oracle_agreement_two_loop(self):
        table = hua.kac_polynomials(LOOPS2, (2,))
        for gamma in [(1,), (2,)]:
            for p in (2, 3):
                assert table.entries[gamma].eval_q(p) == oracle.count_absolutely_indecomposable(
                    LOOPS2, gamma, p
                )

    def test_dt_invariants_are_kac_polynomials(self):
        table = hua.kac_polynomials(KRONECKER, (1, 1))
        assert hua.dt_invariants(table) == table.entries

    def test_requires_nonzero_box(self):
        with pytest.raises(ValueError):
            hua.kac_polynomials(POINT, (0,))


class TestGeneratorDims:
    def test_pure_weight_zero(self):
        table = hua.KacTable(JORDAN, (1,), {(1,): Q})
        assert hua.generator_dims(table) == {(1,): {0: 1}}

    def test_two_weights(self):
        table = hua.KacTable(KRONECKER, (1, 1), {(1, 1): Q + L_ONE})
        assert hua.generator_dims(table) == {(1, 1): {0: 1, 2: 1}}

    def test_constant_polynomial(self):
        table = hua.KacTable(A2, (1, 1), {(1, 1): L_ONE})
        assert hua.generator_dims(table) == {(1, 1): {2: 1}}

    def test_even_support(self):
        table = hua.kac_polynomials(LOOPS2, (2,))
        for dims in hua.generator_dims(table).values():
            assert all(m % 2 == 0 for m in dims)
            assert all(d > 0 for d in dims.values())

    def test_table_rejects_negative_coefficients(self):
        with pytest.raises(hua.PositivityViolation):
            hua.KacTable(JORDAN, (1,), {(1,): Q - L_ONE - L_ONE})

    def test_table_rejects_non_polynomial(self):
        with pytest.raises(hua.PositivityViolation):
            hua.KacTable(JORDAN, (1,), {(1,): monomial(1)})


class TestRoundTrip:
    @pytest.mark.parametrize(
        "quiver,box",
        [(JORDAN, (3,)), (KRONECKER, (2, 2)), (A2, (2, 2)), (LOOPS2, (2,))],
    )
    def test_sym_of_generators_reproduces_series(self, quiver, box):
        assert hua.verify_hua_round_trip(quiver, box)

    def test_inverse_variable_form(self):
        # The same identity with q -> 1/q on both sides.
        series = hua.coha_char_nilp(KRONECKER, (2, 2))
        table = hua.kac_polynomials(KRONECKER, (2, 2))
        arg = hua.hua_generator_series(table).map_coefficients(
            lambda c: c.substitute_power(-1)
        )
        assert sym(arg) == series.map_coefficients(lambda c: c.substitute_power(-1))


class TestFullSeries:
    def test_point_linear_coefficient(self):
        full = hua.coha_char_full(POINT, (1,))
        assert full.coefficient((1,)) == over(Q, Q - L_ONE)

    def test_zero_box(self):
        assert hua.coha_char_full(POINT, (0,)) == TruncatedSeries.one((0,))

    def test_jordan_linear_coefficient(self):
        full = hua.coha_char_full(JORDAN, (1,))
        assert full.coefficient((1,)) == over(Q2, Q - L_ONE)

    def test_matches_all_pairs_oracle(self):
        full = hua.coha_char_full(A2, (1, 1))
        for gamma in [(1, 0), (0, 1), (1, 1)]:
            for p in (2, 3):
                assert full.coefficient(gamma).eval_q(p) == oracle.count_all_pairs(
                    A2, gamma, p
                )

    def test_qinv_expansion_positive(self):
        full = hua.coha_char_full(A2, (1, 1))
        for gamma in box_range((1, 1)):
            assert hua.nonneg_qinv_expansion(full.coefficient(gamma))

    def test_qinv_expansion_detects_negatives(self):
        f = RationalFunction(L_ONE, L_ONE - Q)  # -1/(q-1): negative expansion
        assert not hua.nonneg_qinv_expansion(f)


class TestOrientation:
    def test_a2_reversal(self):
        assert hua.verify_orientation_independence(A2, (1, 1), trials=4)

    def test_kronecker_cyclic_orientation(self):
        flipped = make_quiver(2, [("a", 0, 1), ("b", 1, 0)])
        t1 = hua.kac_polynomials(KRONECKER, (1, 1)).entries
        t2 = hua.kac_polynomials(flipped, (1, 1)).entries
        assert t1 == t2
        assert oracle.count_absolutely_indecomposable(flipped, (1, 1), 2) == 3

    def test_loops_are_noops(self):
        assert hua.verify_orientation_independence(JORDAN, (2,), trials=2)


class TestThreads:
    def test_parallel_sum_identical(self):
        single = hua.coha_char_nilp(KRONECKER, (2, 2), threads=1)
        multi = hua.coha_char_nilp(KRONECKER, (2, 2), threads=4)
        assert single == multi


class TestStrataRows:
    def test_point_weight_two(self):
        rows = hua.strata_rows(POINT, (2,))
        assert [pi for pi, *_ in rows] == [((1, 1),), ((2,),)]
        assert rows[-1][4] == over(Q2, GL2_POLY)

    def test_zero_gamma(self):
        rows = hua.strata_rows(POINT, (0,))
        assert len(rows) == 1
        assert rows[-1][4] == RF_ONE

    def test_jordan_weight_one(self):
        rows = hua.strata_rows(JORDAN, (1,))
        assert len(rows) == 1
        assert rows[-1][4] == over(Q, Q - L_ONE)

    def test_running_total_matches_series(self):
        rows = hua.strata_rows(KRONECKER, (2, 1))
        series = hua.coha_char_nilp(KRONECKER, (2, 1))
        assert rows[-1][4] == series.coefficient((2, 1))
