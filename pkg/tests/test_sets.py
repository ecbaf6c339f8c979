from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from subshift.errors import ParseError, PresentationMismatch
from subshift.presets import preset
from subshift.sets import find_cycle_without_exit, generator, is_singleton, relative_range

from oracles import in_generator

short = st.lists(st.sampled_from("01"), max_size=2).map(tuple)


def expressions(depth=3):
    """Set expression trees: ("gen", a, b) | ("not", e) | ("and"/"or", e, f)."""
    leaf = st.tuples(st.just("gen"), short, short)
    return st.recursive(
        leaf,
        lambda inner: st.one_of(
            st.tuples(st.just("not"), inner),
            st.tuples(st.sampled_from(["and", "or"]), inner, inner),
        ),
        max_leaves=4,
    )


def build(pres, e):
    if e[0] == "gen":
        return generator(e[1], e[2], pres)
    if e[0] == "not":
        return ~build(pres, e[1])
    A, B = build(pres, e[1]), build(pres, e[2])
    return A & B if e[0] == "and" else A | B


def truth(pres, e, x):
    if e[0] == "gen":
        return in_generator(pres, x, e[1], e[2])
    if e[0] == "not":
        return not truth(pres, e[1], x)
    a, b = truth(pres, e[1], x), truth(pres, e[2], x)
    return (a and b) if e[0] == "and" else (a or b)


POINTS = {name: preset(name).points(6) for name in ("golden-mean", "full2")}


@pytest.mark.parametrize("name", ["golden-mean", "full2"])
@given(e=expressions())
def test_canonical_form_denotes_the_expression(name, e):
    pres = preset(name)
    A = build(pres, e)
    for x in POINTS[name]:
        assert (x in A) == truth(pres, e, x)
    # the canonical form survives printing and parsing
    assert pres.sets.parse(str(A)) == A


@pytest.mark.parametrize("name", ["golden-mean", "full2"])
@given(e=expressions(), f=expressions())
def test_equality_matches_pointwise_membership(name, e, f):
    pres = preset(name)
    A, B = build(pres, e), build(pres, f)
    same = all((x in A) == (x in B) for x in POINTS[name])
    if A == B:
        assert same
    assert (A == B) == ((A - B).is_empty() and (B - A).is_empty())
    if not same:
        assert A != B


@pytest.mark.parametrize("name", ["golden-mean", "full2"])
def test_generator_identity(name):
    pres = preset(name)
    sets = pres.sets
    words = [w for n in range(5) for w in product(pres.alphabet, repeat=n)]
    for al in words:
        for be in words:
            expected = (sets.follower(al) & sets.follower(be)).prefixed(be) if pres.in_language(be) else sets.empty()
            assert generator(al, be, pres) == expected


def test_generator_definition_on_points(gm):
    pts = gm.points(8)
    for al in gm.enumerate_language(2) + gm.enumerate_language(1):
        for be in gm.enumerate_language(2):
            C = generator(al, be, gm)
            assert all((x in C) == in_generator(gm, x, al, be) for x in pts)


def test_set_examples(gm, ray):
    P = gm.sets.parse
    assert P("C(1;0)") == P("Z(00)")
    assert str(P("C(1;0)")) == "Z(00)"
    assert P("C(;)") == gm.sets.whole()
    assert P("Z(0) | Z(1)") == gm.sets.whole()
    assert P("Z(1) & Z(10)") == P("Z(10)")
    assert (~gm.sets.whole()).is_empty()
    assert gm.parse_point("(10)") in P("Z(1)")
    assert gm.parse_point("(0)") in P("C(1;0)")
    assert str(ray.sets.parse("C(a;b)")) == "Z(b)"
    assert ray.sets.parse("C(a;b)").singleton() == ray.parse_point("b>r@0")
    assert ray.parse_point(">r@5") not in ~ray.sets.parse("Z(r@5)")


def test_relative_range(gm):
    P = gm.sets.parse
    assert relative_range(P("Z(1)"), ("0",)).is_empty()
    assert relative_range(P("Z(0)"), ("0",)) == gm.sets.whole()
    assert relative_range(P("Z(01)"), ()) == P("Z(01)")
    assert relative_range(gm.sets.whole(), ("1",)) == P("F(1)")


@pytest.mark.parametrize("name", ["golden-mean", "full2", "two-headed-ray"])
def test_relative_range_adjunction(name):
    pres = preset(name)
    words = pres.enumerate_language(2, index_bound=2) + pres.enumerate_language(1, index_bound=2)
    pts = pres.points(5, ray_cap=4)
    for be in words:
        A = pres.sets.cylinder(be) | pres.sets.follower(be[:1])
        for al in words:
            R = A.relative_range(al)
            for x in pts:
                y = pres.prepend(al, x)
                if y is not None:
                    assert (x in R) == (y in A)
                else:
                    assert x not in R


def test_singletons(gm, single, ray):
    assert is_singleton(single.sets.parse("Z(a)")) == single.parse_point("(a)")
    assert is_singleton(gm.sets.parse("Z(1)")) is None
    assert is_singleton(ray.sets.parse("Z(b)")) == ray.parse_point("b>r@0")


@pytest.mark.parametrize("name", ["golden-mean", "full2"])
@given(e=expressions())
def test_singleton_soundness_and_witnesses(name, e):
    pres = preset(name)
    A = build(pres, e)
    x = A.singleton()
    if x is not None:
        assert x in A
    elif not A.is_empty():
        ws = pres.sets.witnesses(A, count=2)
        assert len(ws) == 2 and ws[0] != ws[1] and all(w in A for w in ws)


def test_graph_ray_singletons_and_witnesses(ray):
    for text in ["X", "Z(a)", "Z(r@0)", "!Z(a)", "Z(a) | Z(b)", "C(a;b)", "!(Z(r@1) | Z(r@2))"]:
        A = ray.sets.parse(text)
        x = A.singleton()
        if x is not None:
            assert x in A and A == ray.sets.parse(f"Z({ray.format_word(ray.sets.isolating_prefix(x))})")
        else:
            ws = ray.sets.witnesses(A, count=2)
            assert len(ws) == 2 and ws[0] != ws[1] and all(w in A for w in ws)


def test_find_cycle_without_exit(gm, single, ray, full):
    A, c = find_cycle_without_exit(single, 1)
    assert (A, c) == (single.sets.whole(), ("a",))
    assert A <= A.relative_range(c)
    assert find_cycle_without_exit(gm, 6) is None
    assert find_cycle_without_exit(full, 6) is None
    assert find_cycle_without_exit(ray, 6) is None
    with pytest.raises(ValueError):
        find_cycle_without_exit(gm, 0)


def test_isolated_cycle_is_found():
    from subshift.shift import SFT

    # X = {0^n 1^inf} plus 0^inf; Z_1 = {1^inf}, while {0^inf} is only an
    # infinite intersection of cylinders and so lies outside the algebra
    pres = SFT("01", ["10"])
    A, c = find_cycle_without_exit(pres, 3)
    assert c == ("1",)
    assert A == pres.sets.parse("Z(1)")
    assert A.singleton() == pres.parse_point("(1)")


def test_set_errors(gm, full):
    with pytest.raises(ParseError):
        gm.sets.parse("Z(0")
    with pytest.raises(ParseError):
        gm.sets.parse("Q(0)")
    with pytest.raises(PresentationMismatch):
        gm.sets.whole() | full.sets.whole()
