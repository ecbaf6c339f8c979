from __future__ import annotations

import pytest

from subshift.algebra import parse_element, s
from subshift.errors import ParseError, PresentationMismatch
from subshift.presets import preset
from subshift.representation import (
    Vector,
    apply,
    apply_generator,
    apply_word,
    faithfulness_probe,
    parse_vector,
    verify_relations,
)
from subshift.rings import INT, RAT
from subshift.sampling import Sampler


def test_generator_actions(gm):
    v = parse_vector("2*[(10)] + 3*[(0)]", gm)
    assert apply_generator("P", gm.sets.parse("Z(1)"), v) == parse_vector("2*[(10)]", gm)
    assert apply_generator("S", "1", parse_vector("[(10)]", gm)).is_zero()
    assert apply_generator("S*", "1", parse_vector("[(10)]", gm)) == parse_vector("[(01)]", gm)


def test_apply_examples(gm):
    x = parse_vector("[1(0)]", gm)
    assert apply(parse_element("s(1) s*(1)", gm), x) == x
    assert apply(parse_element("0", gm), x).is_zero()


def test_apply_matches_generator_chain(gm, ray):
    for pres in (gm, ray):
        bound = 2 if pres.kind == "graph-ray" else None
        words = [w for n in range(3) for w in pres.enumerate_language(n, index_bound=bound)]
        for x in pres.points(5, ray_cap=3):
            v = Vector.delta(x, pres)
            for al in words:
                for be in words:
                    chain = apply_word("S", be, apply_word("S*", al, apply_word("S", al, apply_word("S*", be, v))))
                    assert chain == apply(parse_element(f"p(C({pres.format_word(al)};{pres.format_word(be)}))", pres), v)


def test_linearity(gm):
    sm = Sampler(gm, RAT, seed=3)
    for _ in range(50):
        a, u, v, k = sm.element(), sm.vector(), sm.vector(), sm.coeff()
        assert apply(a, u.scale(k) + v) == apply(a, u).scale(k) + apply(a, v)


@pytest.mark.parametrize("name, bound", [("golden-mean", 4), ("singleton", 3), ("two-headed-ray", 4)])
def test_verify_relations(name, bound):
    rep = verify_relations(preset(name), bound)
    assert rep.ok, rep.failures[:3]
    assert f"points={bound}" in str(rep)


def test_faithfulness_singleton(single):
    v = faithfulness_probe(single, 6)
    assert v.verdict == "NotFaithful"
    sc, pa = v.witness
    assert sc == s(("a",), single) and pa == parse_element("1", single)
    assert sc != pa and sc.degrees() != pa.degrees()
    x = single.parse_point("(a)")
    assert apply(sc, Vector.delta(x, single)) == apply(pa, Vector.delta(x, single))


@pytest.mark.parametrize("name", ["golden-mean", "two-headed-ray"])
def test_faithfulness_no_cycle(name):
    v = faithfulness_probe(preset(name), 6, trials=50)
    assert v.verdict == "NoCycleFound"
    assert v.report.ok and v.report.checks == 50


def test_class_invariance(gm, ray):
    for pres in (gm, ray):
        letters = pres.letters(index_bound=4)
        for x in pres.points(6, ray_cap=4):
            v = Vector.delta(x, pres)
            for a in letters:
                for kind in ("S", "S*"):
                    for y in apply_generator(kind, a, v).support():
                        assert y.tail_class == x.tail_class


def test_vector_text(gm, full):
    v = parse_vector("2*[1(0)] + 3*[(01)] - [0(10)]", gm, INT)
    assert str(v) == "2*[(01)] + 2*[1(0)]"  # 0(10) is (01)
    assert parse_vector(str(v), gm) == v
    assert parse_vector("[(0)] - [(0)]", gm).is_zero()
    with pytest.raises(ParseError):
        parse_vector("2*[(0)] [(1)]", gm)
    with pytest.raises(PresentationMismatch):
        apply(parse_element("s(0)", gm), parse_vector("[(0)]", full))
