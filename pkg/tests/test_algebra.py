from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from subshift.algebra import Element, FreeWord, degree, from_generator, monomial, p, parse_element, s, s_star
from subshift.errors import ParseError, PresentationMismatch, RingMismatch, UnknownLetter
from subshift.presets import preset
from subshift.representation import Vector, apply
from subshift.rings import INT, RAT, PrimeField
from subshift.sampling import Sampler

ALL = ["golden-mean", "full2", "singleton", "two-headed-ray"]


def E(text, pres, ring=INT):
    return parse_element(text, pres, ring)


def test_generators(gm):
    a = from_generator("s", "1", gm)
    ((c, d), diag), = a.terms
    assert (c, d) == (("1",), ())
    assert diag == ((gm.sets.follower(("1",)), 1),)
    assert from_generator("p", gm.sets.empty(), gm).is_zero()
    assert from_generator("one", None, gm) == p(gm.sets.whole())
    assert str(from_generator("s*", "0", gm)) == "s*(0)"
    with pytest.raises(UnknownLetter):
        from_generator("s", "2", gm)


def test_multiply_examples(gm, full):
    assert E("s*(0) s(1)", gm).is_zero()
    assert E("s*(0) s(1)", full).is_zero()
    assert E("s(1) s*(1)", gm) == p(gm.sets.cylinder(("1",)))
    assert E("p(Z(0)) s(0)", gm) == E("s(0)", gm)


def test_add_and_scale(gm):
    a = E("s(1) s*(0) + 3*p(Z(1))", gm)
    assert (a + a.scale(-1)).is_zero()
    assert E("p(Z(0)) + p(Z(1))", gm) == Element.one(gm)
    assert E("2*p(Z(0))", gm, PrimeField(2)).is_zero()
    assert E("1/2*s(0) + 1/2*s(0)", gm, RAT) == E("s(0)", gm, RAT)
    # disjoint level sets: 2 on Z(0), 3 on Z(1) stays two cells
    b = E("2*p(X) + p(Z(1))", gm)
    assert sorted(k for _, k in b.terms[0][1]) == [2, 3]


def test_involution(gm, ray):
    assert E("s(1)", gm).adjoint() == E("s*(1)", gm)
    A = gm.sets.parse("Z(0) | Z(01)")
    assert p(A).adjoint() == p(A)
    lhs = E("s(b) s*(a) p(Z(a))", ray).adjoint()
    rhs = E("p(Z(a)) s(a) s*(b)", ray)
    assert lhs == rhs
    v = Vector.delta(ray.parse_point("b>r@0"), ray)
    assert apply(lhs, v) == apply(rhs, v)


def test_degree(gm):
    assert degree(p(gm.sets.parse("Z(0)"))) == FreeWord()
    assert degree(E("s(1)", gm)) == FreeWord([("1", 1)])
    d = degree(E("s(01) s*(0)", gm))
    assert len(d) == 3 and str(d) == "0·1·0^-1"
    assert FreeWord.from_pair(("0", "1"), ("0", "1")).is_identity()


def test_monomial_normal_form_is_reduced(gm):
    # s_{0 1} p_X s_{0 1}* reduces through both letters to p_{Z(01)}
    m = monomial(("0", "1"), gm.sets.whole(), ("0", "1"))
    assert m == p(gm.sets.cylinder(("0", "1")))


def test_parse_and_render_round_trip(gm, ray):
    for text in ["0", "1", "-s(1)", "2*s(0) - s*(0)", "s(01) p(Z(1)) s*(0)", "adj(s(0) s*(1))", "3 + p(!Z(0))"]:
        a = E(text, gm)
        assert E(str(a), gm) == a
    a = E("s(b) s*(a) p(Z(a)) + 2*s*(r@0)", ray)
    assert E(str(a), ray) == a
    with pytest.raises(ParseError):
        E("s(0", gm)
    with pytest.raises(ParseError):
        E("t(0)", gm)


def test_mismatches(gm, full):
    with pytest.raises(PresentationMismatch):
        E("s(0)", gm) * E("s(0)", full)
    with pytest.raises(RingMismatch):
        E("s(0)", gm, INT) + E("s(0)", gm, RAT)


@pytest.mark.parametrize("name", ALL)
def test_relations_as_normal_forms(name):
    pres = preset(name)
    bound = 2 if pres.kind == "graph-ray" else None
    words = [w for n in range(4) for w in pres.enumerate_language(n, index_bound=bound)]
    for al in words:
        for be in words:
            lhs = s(be, pres) * s_star(al, pres) * s(al, pres) * s_star(be, pres)
            assert lhs == p(pres.sets.generator(al, be))
    for a in pres.letters(index_bound=3):
        sa, sa_ = s((a,), pres), s_star((a,), pres)
        assert sa * sa_ * sa == sa
        assert sa_ * sa * sa_ == sa_


@pytest.mark.parametrize("name", ALL)
@pytest.mark.parametrize("ring", [INT, RAT, PrimeField(5)], ids=lambda r: r.name)
def test_associativity_and_anti_multiplicativity(name, ring):
    sm = Sampler(preset(name), ring, seed=11)
    for _ in range(100):
        a, b, c = sm.element(), sm.element(), sm.element()
        assert (a * b) * c == a * (b * c)
        assert (a * b).adjoint() == b.adjoint() * a.adjoint()
        assert a * (b + c) == a * b + a * c


@pytest.mark.parametrize("name", ALL)
def test_representation_oracle(name):
    sm = Sampler(preset(name), RAT, seed=5)
    for _ in range(100):
        a, b, v = sm.element(), sm.element(), sm.vector()
        assert apply(a * b, v) == apply(a, apply(b, v))


@pytest.mark.parametrize("name", ALL)
@given(seed=st.integers(0, 10**6))
def test_grading_on_homogeneous_products(name, seed):
    sm = Sampler(preset(name), INT, seed=seed)
    m1, m2 = sm.monomial(), sm.monomial()
    prod = m1 * m2
    if m1 and m2 and prod:
        assert prod.degrees() == [degree(m1) * degree(m2)]
    for (c, d), _ in prod.terms:
        assert not (c and d and c[-1] == d[-1])
    if m1:
        assert degree(m1.adjoint()) == degree(m1).inverse()


def test_zero_is_the_element_without_terms(gm):
    z = E("s(1) - s(1)", gm)
    assert z.terms == () and z == Element.zero(gm) and str(z) == "0"


def test_fraction_coefficients_print_exactly(gm):
    a = E("2/3*s(0)", gm, RAT)
    assert str(a) == "2/3*s(0)"
    assert a.terms[0][1][0][1] == Fraction(2, 3)
