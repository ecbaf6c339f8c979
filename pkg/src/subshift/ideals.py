"""Line paths and the minimal left ideals they generate.

For a line path ``q`` starting with ``a`` (so ``Z_a = {q}``) the map

    psi(δ_p) = s_β s_α* p_{Z_a},   (β, α) the reduced initial pair of (p, q)

is a module isomorphism from ``P_[q]`` onto the left ideal generated by
``p_{Z_a}``.  In normal form, ``s_c s_d* p_{Z_a}`` is the monomial
``(c, {σ^{|d|} q}, d)``, which is what makes inversion term by term.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .algebra import Element, p, s, s_star
from .errors import NotInIdeal, OutsideClass, ZeroElement
from .orbit import _require_field, decide_equiv, reach
from .representation import Vector
from .sets import SetU
from .shift import Letter, Point, Presentation, RayTailed, Word, shift


@dataclass(frozen=True)
class LinePath:
    pres: Presentation
    q: RayTailed
    a: Letter
    cylinder: SetU      # Z_a, certified equal to {q}

    def __str__(self):
        return self.pres.format_point(self.q)


@dataclass(frozen=True)
class ReducedPair:
    beta: Word
    alpha: Word
    xi: Point


def is_line_path(q: Point, pres: Presentation) -> Optional[LinePath]:
    if not isinstance(q, RayTailed):
        return None
    a = q.letter(0)
    Z = pres.sets.cylinder((a,))
    if Z.singleton() != q:
        return None
    return LinePath(pres, q, a, Z)


def line_paths(pres: Presentation, max_size: int, ray_cap: int = 8) -> list:
    return [L for L in (is_line_path(x, pres) for x in pres.points(max_size, ray_cap)) if L is not None]


def reduced_initial_pair(x: Point, L: LinePath) -> ReducedPair:
    w = decide_equiv(x, L.q)
    if w is None:
        raise OutsideClass(f"{L.pres.format_point(x)} is not in the class of {L}")
    beta, alpha, xi = w.c, w.d, w.xi
    while beta and alpha and beta[-1] == alpha[-1]:
        xi = L.pres.prepend(beta[-1:], xi)
        beta, alpha = beta[:-1], alpha[:-1]
    return ReducedPair(beta, alpha, xi)


def _generator(L: LinePath, ring) -> Element:
    return p(L.cylinder, ring)


def psi(v: Vector, L: LinePath) -> Element:
    pres, ring = v.pres, v.ring
    out = Element.zero(pres, ring)
    pz = _generator(L, ring)
    for x, k in v.coeffs:
        rp = reduced_initial_pair(x, L)
        out = out + (s(rp.beta, pres, ring) * s_star(rp.alpha, pres, ring) * pz).scale(k)
    return out


def ideal_normalize(e: Element, L: LinePath) -> Element:
    """``e · p_{Z_a}``; every term then has the form ``s_c s_d* p_{Z_a}``."""
    return e * _generator(L, e.ring)


def psi_inverse(e: Element, L: LinePath) -> Vector:
    pres = e.pres
    items = []
    for k, (c, A, d) in e.monomials():
        if L.q.initial(len(d)) != d:
            raise NotInIdeal(f"term with s*({pres.format_word(d)}) is not over p(Z({pres.format_word((L.a,))}))")
        y = shift(L.q, len(d))
        if A.singleton() != y:
            raise NotInIdeal("term is not of the form s_c s_d* p_{Z_a}")
        x = pres.prepend(c, y)
        if x is None:
            raise NotInIdeal("term acts as zero")
        items.append((x, k))
    return Vector.build(pres, e.ring, items)


def minimality_witness(j: Element, L: LinePath) -> Element:
    """``b`` with ``b · j == p_{Z_a}``."""
    j = ideal_normalize(j, L)
    if j.is_zero():
        raise ZeroElement("j is zero in the ideal")
    _require_field(j.ring)
    return reach(psi_inverse(j, L), L.q)


def format_ideal_element(e: Element, L: LinePath) -> str:
    """Render terms as ``s(c) s*(d) p(Z(a))``."""
    if e.is_zero():
        return "0"
    pres = e.pres
    gen = f"p(Z({pres.format_word((L.a,))}))"
    out = []
    for k, (c, _, d) in e.monomials():
        body = " ".join(
            [f"s({pres.format_word(c)})"] * bool(c) + [f"s*({pres.format_word(d)})"] * bool(d) + [gen]
        )
        text = e.ring.format(k)
        term = body if text == "1" else ("-" + body if text == "-1" else f"{text}*{body}")
        if out:
            out.append(" - " + term[1:] if term.startswith("-") else " + " + term)
        else:
            out.append(term)
    return "".join(out)
