"""Polynomial arithmetic, normal forms, and cofactor-tracked reduction."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from eqlink import (
    Order,
    PolyParseError,
    PolyRing,
    Polynomial,
    RingMorphism,
    RingPresentation,
    groebner_basis,
    normal_form,
    reduce_with_cofactors,
)
from eqlink.algebra import is_member, linalg

from conftest import polynomials


@pytest.fixture(scope="module")
def ring():
    return PolyRing([("b1", 2), ("b2", 4), ("b3", 6)])


# -- parsing -----------------------------------------------------------------


def test_parse_round_trip(ring):
    p = ring.parse("3*b1^2 - b2 + 1/2*b1*b2")
    assert ring.parse(str(p)) == p


def test_parse_rational_coefficients(ring):
    p = ring.parse("2/3*b1")
    assert p.terms[(1, 0, 0)] == Fraction(2, 3)


def test_parse_unary_minus_and_powers(ring):
    assert ring.parse("-b1^3") == -(ring.gen("b1") ** 3)
    assert ring.parse("-(b1 - b2)") == ring.gen("b2") - ring.gen("b1")


def test_parse_rejects_unknown_generator(ring):
    with pytest.raises(PolyParseError):
        ring.parse("b1 + z")


def test_parse_rejects_garbage(ring):
    with pytest.raises(PolyParseError):
        ring.parse("b1 + * b2")


@given(st.data())
def test_str_parse_round_trip(ring, data):
    p = data.draw(polynomials(ring))
    assert ring.parse(str(p)) == p


# -- graded arithmetic ---------------------------------------------------------


def test_weighted_degrees(ring):
    p = ring.parse("b1*b3 + b2^2")
    assert p.is_homogeneous()
    assert p.homogeneous_degree() == 8


def test_graded_components_sum_to_whole(ring):
    p = ring.parse("1 + b1 + b2 + b1*b2 + b3^2")
    total = ring.zero
    for _, comp in sorted(p.graded_components().items()):
        total = total + comp
    assert total == p


@given(st.data())
def test_ring_axioms(ring, data):
    p = data.draw(polynomials(ring))
    q = data.draw(polynomials(ring))
    r = data.draw(polynomials(ring))
    assert p * q == q * p
    assert (p + q) * r == p * r + q * r
    assert p * (q * r) == (p * q) * r


def test_leading_monomial_orders():
    ring = PolyRing([("x", 2), ("y", 2)])
    p = ring.parse("x*y + y^2")
    grevlex = ring.order("grevlex")
    lex = ring.order("lex")
    # same weighted degree; grevlex prefers the smaller reversed tail
    assert p.leading_monomial(grevlex) == (1, 1)
    assert p.leading_monomial(lex) == (1, 1)
    q = ring.parse("x^2 + x*y")
    assert q.leading_monomial(lex) == (2, 0)


# -- normal forms and membership ----------------------------------------------


def test_reduction_single_variable_known_values():
    ring = PolyRing([("b1", 2)])
    p = ring.parse("3*b1^2")
    gen = ring.parse("-b1^2")
    dec = reduce_with_cofactors(p, [gen], RingPresentation(ring))
    assert dec.remainder == ring.zero
    assert dec.pairs == ((gen, ring.const(-3)),)


def test_reduction_recovers_input_exactly(ring):
    gens = [ring.parse("b2 - b1^2"), ring.parse("b3 - b1*b2")]
    p = ring.parse("b3*b1 + 2*b2^2 - b1^4")
    dec = reduce_with_cofactors(p, gens, RingPresentation(ring))
    total = dec.remainder
    for gen, cofactor in dec.pairs:
        total = total + gen * cofactor
    assert total == p


def test_membership_detects_non_members(ring):
    gens = [ring.parse("b2 - b1^2")]
    assert is_member(ring.parse("b1^2 - b2"), gens)
    assert not is_member(ring.parse("b1"), gens)


def test_normal_form_against_presentation():
    ring = PolyRing([("b1", 2)])
    pres = RingPresentation(ring, (ring.parse("b1^2"),))
    assert pres.normal_form(ring.parse("b1^2 + b1")) == ring.gen("b1")
    assert pres.is_zero(ring.parse("5*b1^3"))


@given(st.data())
def test_normal_form_idempotent(ring, data):
    pres = RingPresentation(ring, (ring.parse("b2 - b1^2"), ring.parse("b3^2")))
    p = data.draw(polynomials(ring, max_exponent=2))
    nf = pres.normal_form(p)
    assert pres.normal_form(nf) == nf


@given(st.data())
def test_normal_form_is_additive_on_classes(ring, data):
    pres = RingPresentation(ring, (ring.parse("b2 - b1^2"),))
    p = data.draw(polynomials(ring, max_exponent=2))
    q = data.draw(polynomials(ring, max_exponent=2))
    assert pres.normal_form(p + q) == pres.normal_form(
        pres.normal_form(p) + pres.normal_form(q)
    )


@given(st.data())
def test_cofactor_identity_holds_for_random_inputs(ring, data):
    gens = [ring.parse("b2 - b1^2"), ring.parse("b1*b2"), ring.parse("b3 + b1^3")]
    p = data.draw(polynomials(ring, max_exponent=2))
    dec = reduce_with_cofactors(p, gens, RingPresentation(ring))
    assert len(dec.pairs) == len(gens)
    total = dec.remainder
    for gen, cofactor in dec.pairs:
        total = total + gen * cofactor
    assert total == p


@given(st.data())
def test_membership_independent_of_order(ring, data):
    gens = [ring.parse("b2 - b1^2"), ring.parse("b3 - b1*b2")]
    p = data.draw(polynomials(ring, max_exponent=2))
    in_grevlex = not normal_form(p, gens, "grevlex").terms
    in_lex = not normal_form(p, gens, "lex").terms
    assert in_grevlex == in_lex


def test_groebner_basis_is_deterministic(ring):
    gens = [ring.parse("b2 - b1^2"), ring.parse("b1*b2 - b3")]
    first = groebner_basis(ring, gens, "grevlex")
    second = groebner_basis(ring, gens, "grevlex")
    assert [str(g) for g in first.elements] == [str(g) for g in second.elements]


# -- morphisms -----------------------------------------------------------------


def test_morphism_validates_degrees():
    src = PolyRing([("a", 4)])
    tgt = PolyRing([("b", 2)])
    good = RingMorphism(
        RingPresentation(src), RingPresentation(tgt), {"a": tgt.parse("b^2")}
    )
    assert good.validate() == []
    bad = RingMorphism(
        RingPresentation(src), RingPresentation(tgt), {"a": tgt.parse("b")}
    )
    assert bad.validate()


def test_morphism_respects_relations():
    src = PolyRing([("a", 2)])
    tgt = PolyRing([("t", 2)])
    quotient = RingPresentation(tgt, (tgt.parse("t^2"),))
    f = RingMorphism(RingPresentation(src), quotient, {"a": tgt.parse("t")})
    assert f(src.parse("a^2 + a")) == tgt.gen("t")


def test_morphism_composition():
    a = PolyRing([("a", 2)])
    b = PolyRing([("b", 2)])
    c = PolyRing([("c", 2)])
    f = RingMorphism(RingPresentation(a), RingPresentation(b), {"a": b.parse("2*b")})
    g = RingMorphism(RingPresentation(b), RingPresentation(c), {"b": c.parse("c")})
    assert g.compose(f)(a.parse("a^2")) == c.parse("4*c^2")


# -- linear algebra -------------------------------------------------------------


def test_rank_and_invertibility():
    one = Fraction(1)
    rows = [[one, one], [one, -one]]
    assert linalg.rank(rows) == 2
    assert linalg.is_invertible(rows)
    assert not linalg.is_invertible([[one, one], [one * 2, one * 2]])
    assert linalg.rank([[one, one], [one * 2, one * 2]]) == 1


def test_solve_consistent_system():
    one = Fraction(1)
    solution = linalg.solve([[one, one], [one, -one]], [Fraction(3), Fraction(1)])
    assert solution == [Fraction(2), Fraction(1)]
