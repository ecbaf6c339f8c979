from __future__ import annotations

from fractions import Fraction

import pytest

from oracles import brute_equiv
from subshift import orbit
from subshift.algebra import p
from subshift.errors import NotAField, NotEquivalent, NotSeparable, SameClass, ZeroVector
from subshift.presets import preset
from subshift.representation import Vector, apply, parse_vector
from subshift.rings import INT, RAT, PrimeField
from subshift.sampling import Sampler
from subshift.shift import shift


def test_equiv_examples(gm, full, ray):
    w = orbit.decide_equiv(gm.parse_point("(01)"), gm.parse_point("(10)"))
    assert (w.n, w.m, w.c, w.d) == (1, 0, ("0",), ())
    assert orbit.decide_equiv(full.parse_point("(0)"), full.parse_point("(1)")) is None
    w = orbit.decide_equiv(ray.parse_point(">r@2"), ray.parse_point(">r@5"))
    assert (w.n, w.m) == (3, 0)
    assert orbit.decide_equiv(ray.parse_point("a>r@0"), ray.parse_point("b>r@0")).n == 1


@pytest.mark.parametrize("name", ["golden-mean", "full2", "two-headed-ray"])
def test_equiv_against_brute_force(name):
    pres = preset(name)
    pts = pres.points(4, ray_cap=3)
    for x in pts:
        for y in pts:
            w = orbit.decide_equiv(x, y)
            b = brute_equiv(x, y)
            assert (w is None) == (b is None)
            if w is not None:
                assert (w.n, w.m) == b
                assert shift(x, w.n) == shift(y, w.m) == w.xi
                assert x.initial(w.n) == w.c and y.initial(w.m) == w.d


def test_transporter(gm, ray):
    for pres in (gm, ray):
        for cls in Sampler(pres, INT, seed=2).classes:
            for y in cls[:4]:
                for z in cls[:4]:
                    t = orbit.transporter(y, z, pres, INT)
                    assert apply(t, Vector.delta(y, pres)) == Vector.delta(z, pres)
    with pytest.raises(NotEquivalent):
        orbit.transporter(gm.parse_point("(0)"), gm.parse_point("(01)"), gm, INT)


def test_disambiguating_prefix(gm):
    x = gm.parse_point("1(0)")
    assert orbit.disambiguating_prefix(x, [gm.parse_point("(0)")]) == ("1",)
    assert orbit.disambiguating_prefix(x, [gm.parse_point("(10)")]) == ("1", "0", "0")
    assert orbit.disambiguating_prefix(x, []) == ()
    with pytest.raises(NotSeparable):
        orbit.disambiguating_prefix(x, [x])


def test_shrink_to_delta(gm):
    v = parse_vector("2*[(01)] + 3*[(10)]", gm, RAT)
    a, x1 = orbit.shrink_to_delta(v)
    assert x1 == gm.parse_point("(01)")
    assert a == p(gm.sets.cylinder(("0",)), RAT).scale(Fraction(1, 2))
    assert apply(a, v) == Vector.delta(x1, gm, RAT)
    with pytest.raises(NotAField):
        orbit.shrink_to_delta(parse_vector("2*[(01)]", gm, INT))
    with pytest.raises(ZeroVector):
        orbit.shrink_to_delta(Vector.zero(gm, RAT))


@pytest.mark.parametrize("ring", [RAT, PrimeField(5)], ids=lambda r: r.name)
@pytest.mark.parametrize("name", ["golden-mean", "two-headed-ray", "singleton"])
def test_reach(name, ring):
    pres = preset(name)
    sm = Sampler(pres, ring, seed=9)
    for _ in range(40):
        cls = sm.same_class()
        v = sm.vector(pool=cls)
        z = sm.rng.choice(cls)
        assert apply(orbit.reach(v, z), v) == Vector.delta(z, pres, ring)


def test_reach_refuses_other_class(gm):
    v = parse_vector("[(0)]", gm, RAT)
    with pytest.raises(NotEquivalent):
        orbit.reach(v, gm.parse_point("(01)"))


def test_inequivalence_witness(gm, full, ray):
    x = gm.parse_point("(0)")
    alpha = orbit.inequivalence_witness(x, [gm.parse_point("(01)"), gm.parse_point("(10)")])
    Z = gm.sets.cylinder(alpha)
    assert x in Z and gm.parse_point("(01)") not in Z and gm.parse_point("(10)") not in Z
    # images sharing a class with x are refused rather than separated
    with pytest.raises(SameClass):
        orbit.inequivalence_witness(ray.parse_point("a>r@0"), [ray.parse_point(">r@7")])
    with pytest.raises(SameClass):
        orbit.inequivalence_witness(full.parse_point("(1)"), [full.parse_point("1(0)"), full.parse_point("0(1)")])
