from __future__ import annotations

from fractions import Fraction

import pytest

from subshift import ideals
from subshift.algebra import Element, p, parse_element
from subshift.errors import NotAField, NotInIdeal, OutsideClass, ZeroElement
from subshift.representation import Vector, apply, parse_vector
from subshift.rings import INT, RAT, PrimeField
from subshift.sampling import Sampler


@pytest.fixture
def L(ray):
    return ideals.is_line_path(ray.parse_point("a>r@0"), ray)


def test_line_paths(ray, gm, full):
    found = [str(x) for x in ideals.line_paths(ray, 6, 4)]
    assert found[:3] == ["a>r@0", "b>r@0", ">r@0"]
    assert ideals.line_paths(gm, 6) == [] and ideals.line_paths(full, 6) == []
    assert ideals.is_line_path(ray.parse_point(">r@2"), ray).a.index == 2


def test_reduced_pairs(ray, L):
    rp = ideals.reduced_initial_pair(ray.parse_point("b>r@0"), L)
    assert (rp.beta, rp.alpha) == (("b",), ("a",))
    rp = ideals.reduced_initial_pair(ray.parse_point(">r@3"), L)
    assert rp.beta == () and len(rp.alpha) == 4 and rp.alpha[0] == "a"
    rp = ideals.reduced_initial_pair(ray.parse_point("a>r@0"), L)
    assert (rp.beta, rp.alpha) == ((), ())


def test_reduced_pair_outside_class(L):
    from subshift.presets import preset

    single = preset("singleton")
    with pytest.raises(OutsideClass):
        ideals.reduced_initial_pair(single.parse_point("(a)"), L)


def test_psi_examples(ray, L):
    assert ideals.format_ideal_element(ideals.psi(parse_vector("[b>r@0]", ray), L), L) == "s(b) s*(a) p(Z(a))"
    assert ideals.psi(parse_vector("[a>r@0]", ray), L) == p(L.cylinder)
    assert ideals.psi(Vector.zero(ray), L).is_zero()


@pytest.mark.parametrize("ring", [INT, RAT, PrimeField(3)], ids=lambda r: r.name)
def test_psi_round_trips_and_intertwines(ray, L, ring):
    sm = Sampler(ray, ring, seed=4)
    pool = [x for x in sm.points if x.tail_class == L.q.tail_class]
    for _ in range(50):
        v = sm.vector(pool=pool)
        e = ideals.psi(v, L)
        assert ideals.psi_inverse(e, L) == v
        assert ideals.psi(ideals.psi_inverse(e, L), L) == e
        a = sm.element()
        assert ideals.psi(apply(a, v), L) == ideals.ideal_normalize(a * e, L)


def test_psi_inverse_rejects_outside_ideal(ray, L):
    with pytest.raises(NotInIdeal):
        ideals.psi_inverse(parse_element("s(b)", ray), L)
    assert ideals.psi_inverse(parse_element("s(b) s*(a) p(Z(a))", ray), L) == parse_vector("[b>r@0]", ray)


def test_ideal_normalize(ray, L):
    e = parse_element("s(b) s*(a)", ray)
    assert ideals.ideal_normalize(e, L) == parse_element("s(b) s*(a) p(Z(a))", ray)
    assert ideals.ideal_normalize(p(L.cylinder), L) == p(L.cylinder)


def test_minimality(ray, L):
    j = parse_element("2*s(b) s*(a) p(Z(a))", ray, RAT)
    b = ideals.minimality_witness(j, L)
    assert b * j == p(L.cylinder, RAT)
    assert str(b) == "1/2*s(a) s*(b)"
    with pytest.raises(ZeroElement):
        ideals.minimality_witness(Element.zero(ray, RAT), L)
    with pytest.raises(NotAField):
        ideals.minimality_witness(parse_element("2*p(Z(a))", ray, INT), L)


@pytest.mark.parametrize("ring", [RAT, PrimeField(5)], ids=lambda r: r.name)
def test_minimality_sampled(ray, L, ring):
    sm = Sampler(ray, ring, seed=8)
    done = 0
    while done < 40:
        j = ideals.ideal_normalize(sm.element(), L)
        if j.is_zero():
            continue
        assert ideals.minimality_witness(j, L) * j == p(L.cylinder, ring)
        done += 1
