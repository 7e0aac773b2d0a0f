import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import quivers_with_vectors, small_quivers
from kacpoly.quiver import (
    Arrow,
    ContainsLoopArrow,
    Cut,
    NotATripledQuiver,
    ParseError,
    Quiver,
    canonical_cut,
    cyclic_derivative,
    jacobi_relations,
    loop_name,
    make_quiver,
    parse_quiver,
    render_relation,
    reorient,
    reversed_name,
    ringel_form,
    serialize_quiver,
    shift_constants,
    triple,
    validate_cut,
)

JORDAN = make_quiver(1, [("a", 0, 0)])
POINT = make_quiver(1, [])
A2 = make_quiver(2, [("a", 0, 1)])
KRONECKER = make_quiver(2, [("a", 0, 1), ("b", 0, 1)])


class TestParsing:
    def test_jordan(self):
        q = parse_quiver("vertices: 1\narrow a 0 0\n")
        assert q == JORDAN

    def test_kronecker_with_comment(self):
        q = parse_quiver("# the Kronecker quiver\nvertices: 2\narrow a 0 1\narrow b 0 1\n")
        assert q == KRONECKER

    def test_dangling_endpoint(self):
        with pytest.raises(ParseError) as err:
            parse_quiver("vertices: 2\narrow a 0 5\n")
        assert err.value.line_no == 2

    def test_unknown_keyword(self):
        with pytest.raises(ParseError):
            parse_quiver("vertices: 1\nedge a 0 0\n")

    def test_duplicate_arrow(self):
        with pytest.raises(ParseError):
            parse_quiver("vertices: 1\narrow a 0 0\narrow a 0 0\n")

    def test_missing_vertices(self):
        with pytest.raises(ParseError):
            parse_quiver("arrow a 0 0\n")

    def test_round_trip(self):
        text = serialize_quiver(KRONECKER)
        assert parse_quiver(text) == KRONECKER
        assert serialize_quiver(parse_quiver(text)) == text


class TestRingelForm:
    def test_a2_cross_term(self):
        assert ringel_form(A2, (1, 0), (0, 1)) == -1

    def test_no_arrows_diagonal(self):
        q = make_quiver(2, [])
        assert ringel_form(q, (2, 3), (2, 3)) == 4 + 9

    def test_jordan_vanishes(self):
        assert ringel_form(JORDAN, (2,), (2,)) == 0

    @given(quivers_with_vectors(), st.integers(-3, 3), st.integers(-3, 3))
    @settings(max_examples=40, deadline=None)
    def test_bilinear(self, qg, s, t):
        q, gamma = qg
        delta = tuple(reversed(gamma))
        combo = tuple(s * a + t * b for a, b in zip(gamma, delta))
        for other in [gamma, delta]:
            assert ringel_form(q, combo, other) == s * ringel_form(
                q, gamma, other
            ) + t * ringel_form(q, delta, other)
            assert ringel_form(q, other, combo) == s * ringel_form(
                q, other, gamma
            ) + t * ringel_form(q, other, delta)


class TestTriple:
    def test_point_quiver(self):
        tq, pot = triple(POINT)
        assert [a.name for a in tq.arrows] == ["w@0"]
        assert pot.terms == ()

    def test_jordan(self):
        tq, pot = triple(JORDAN)
        assert {a.name for a in tq.arrows} == {"a", "a~", "w@0"}
        assert all(a.src == a.dst == 0 for a in tq.arrows)
        # Two cyclic words, one with a before a~ and one reversed.
        assert len(pot.terms) == 2
        assert {coeff for coeff, _ in pot.terms} == {1, -1}

    def test_a2(self):
        tq, pot = triple(A2)
        assert len(tq.arrows) == 4
        assert len(pot.terms) == 2
        rev = tq.arrow("a~")
        assert (rev.src, rev.dst) == (1, 0)

    def test_forgetting_recovers_original(self):
        tq, _ = triple(KRONECKER)
        kept = tuple(
            a for a in tq.arrows if not a.name.endswith("~") and not a.name.startswith("w@")
        )
        assert Quiver(tq.n_vertices, kept) == KRONECKER


class TestCyclicDerivative:
    def test_jordan_cut_arrow(self):
        _, pot = triple(JORDAN)
        rel = cyclic_derivative(pot, "a~")
        assert rel == {("a", "w@0"): 1, ("w@0", "a"): -1}
        assert render_relation(rel) == "w@0·a - a·w@0"

    def test_jordan_loop_derivative(self):
        _, pot = triple(JORDAN)
        rel = cyclic_derivative(pot, "w@0")
        assert rel == {("a~", "a"): 1, ("a", "a~"): -1}

    def test_absent_arrow(self):
        _, pot = triple(JORDAN)
        assert cyclic_derivative(pot, "zz") == {}

    @given(small_quivers())
    @settings(max_examples=50, deadline=None)
    def test_cut_derivative_identity(self, q):
        # d/d(a~) of the tripled potential is w@t(a).a - a.w@s(a) for every arrow.
        tq, pot = triple(q)
        for a in q.arrows:
            rel = cyclic_derivative(pot, reversed_name(a.name))
            assert rel == {
                (a.name, loop_name(a.dst)): 1,
                (loop_name(a.src), a.name): -1,
            }


class TestCuts:
    def test_canonical_cut_jordan(self):
        tq, pot = triple(JORDAN)
        cut = canonical_cut(tq)
        assert cut.arrows == frozenset({"a~"})
        assert validate_cut(pot, cut)

    def test_canonical_cut_a2(self):
        tq, pot = triple(A2)
        assert canonical_cut(tq).arrows == frozenset({"a~"})

    def test_canonical_cut_point(self):
        tq, pot = triple(POINT)
        cut = canonical_cut(tq)
        assert cut.arrows == frozenset()
        assert validate_cut(pot, cut)  # vacuously: no potential terms

    def test_loop_in_cut_rejected(self):
        _, pot = triple(JORDAN)
        with pytest.raises(ContainsLoopArrow):
            validate_cut(pot, Cut(frozenset({"w@0"})))

    def test_empty_cut_fails_with_terms(self):
        _, pot = triple(JORDAN)
        assert not validate_cut(pot, Cut(frozenset()))

    def test_non_tripled_rejected(self):
        with pytest.raises(NotATripledQuiver):
            canonical_cut(JORDAN)

    def test_jacobi_relations(self):
        tq, pot = triple(A2)
        rels = jacobi_relations(pot, canonical_cut(tq))
        assert rels == {"a~": {("a", "w@1"): 1, ("w@0", "a"): -1}}
        assert render_relation(rels["a~"]) == "w@1·a - a·w@0"

    def test_jacobi_relations_empty(self):
        tq, pot = triple(POINT)
        assert jacobi_relations(pot, canonical_cut(tq)) == {}

    def test_original_arrows_also_cut_jordan(self):
        # {a} meets both Jordan potential terms exactly once, so it is a
        # legitimate non-canonical cut.
        _, pot = triple(JORDAN)
        assert validate_cut(pot, Cut(frozenset({"a"})))

    def test_jacobi_requires_valid_cut(self):
        _, pot = triple(KRONECKER)
        with pytest.raises(ValueError):
            jacobi_relations(pot, Cut(frozenset({"a"})))


class TestShiftConstants:
    def test_jordan(self):
        for n in range(5):
            assert shift_constants(JORDAN, (n,)) == (-2 * n * n, 0)

    def test_arrowless(self):
        assert shift_constants(POINT, (5,)) == (0, 0)

    def test_kronecker(self):
        assert shift_constants(KRONECKER, (1, 1)) == (-4, 0)

    @given(quivers_with_vectors())
    @settings(max_examples=50, deadline=None)
    def test_shift_identity_always_zero(self, qg):
        q, gamma = qg
        l, l_prime = shift_constants(q, gamma)
        assert l_prime == 0
        assert l == -2 * sum(gamma[a.src] * gamma[a.dst] for a in q.arrows)

    @given(quivers_with_vectors())
    @settings(max_examples=50, deadline=None)
    def test_tripled_form_symmetric(self, qg):
        q, gamma = qg
        tq, _ = triple(q)
        delta = tuple(reversed(gamma))
        assert ringel_form(tq, gamma, delta) == ringel_form(tq, delta, gamma)


class TestReorient:
    def test_flip_a2(self):
        flipped = reorient(A2, {"a"})
        assert flipped.arrow("a").src == 1
        assert flipped.arrow("a").dst == 0

    def test_flip_nothing(self):
        assert reorient(A2, set()) == A2

    def test_flip_loop_is_noop(self):
        assert reorient(JORDAN, {"a"}) == JORDAN

    def test_unknown_arrow(self):
        with pytest.raises(KeyError):
            reorient(A2, {"zz"})


class TestQuiverValidation:
    def test_duplicate_names_rejected(self):
        with pytest.raises(ValueError):
            Quiver(1, (Arrow("a", 0, 0), Arrow("a", 0, 0)))

    def test_dangling_rejected(self):
        with pytest.raises(ValueError):
            Quiver(1, (Arrow("a", 0, 1),))
