"""Tail equivalence and the constructive steps of the irreducibility proofs.

Two points are tail equivalent when ``σ^n(x) = σ^m(y)`` for some ``n, m``.
Classes are read off the normal forms: eventually periodic points merge
iff their primitive periods are rotations of each other, ray-tailed
points iff they run down the same ray.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .algebra import Element, p, s, s_star
from .errors import NotAField, NotEquivalent, NotSeparable, SameClass, ZeroVector
from .representation import Vector
from .shift import EventuallyPeriodic, Point, Presentation, RayTailed, Word, common_prefix_length, shift

FIELD_REQUIRED = "this step needs to invert a coefficient (If R is a field); use --ring rat or --ring gf:p"


@dataclass(frozen=True)
class EquivWitness:
    n: int
    m: int
    c: Word      # x = c . xi
    d: Word      # y = d . xi
    xi: Point


def _least_shift_to(target: Point, y: Point) -> Optional[int]:
    """Least ``m`` with ``σ^m(y) == target``."""
    if type(target) is not type(y):
        return None
    if target.prefix:
        m = len(y.prefix) - len(target.prefix)
        return m if m >= 0 and shift(y, m) == target else None
    if isinstance(y, EventuallyPeriodic):
        for r in range(len(y.period)):
            m = len(y.prefix) + r
            if shift(y, m) == target:
                return m
        return None
    if target.ray != y.ray:
        return None
    m = len(y.prefix) + target.start - y.start
    return m if m >= len(y.prefix) and shift(y, m) == target else None


def decide_equiv(x: Point, y: Point) -> Optional[EquivWitness]:
    """Witness with least ``n + m`` (then least ``m``), or None."""
    if x.tail_class != y.tail_class:
        return None
    if isinstance(x, EventuallyPeriodic):
        reach = len(x.prefix) + len(x.period)
    else:
        reach = len(x.prefix) + max(0, y.start - x.start) + 1
    best = None
    for n in range(reach + 1):
        m = _least_shift_to(shift(x, n), y)
        if m is not None and (best is None or (n + m, m) < (best[0] + best[1], best[1])):
            best = (n, m)
    if best is None:
        return None
    n, m = best
    return EquivWitness(n, m, x.initial(n), y.initial(m), shift(x, n))


def equivalent(x: Point, y: Point) -> bool:
    return x.tail_class == y.tail_class


def transporter(y: Point, z: Point, pres: Presentation, ring) -> Element:
    """``s_d s_c*`` from ``y = c.xi``, ``z = d.xi``; it sends ``δ_y`` to ``δ_z``."""
    w = decide_equiv(y, z)
    if w is None:
        raise NotEquivalent(f"{pres.format_point(y)} and {pres.format_point(z)} are not tail equivalent")
    return s(w.d, pres, ring) * s_star(w.c, pres, ring)


def disambiguating_prefix(x: Point, others) -> Word:
    """Shortest prefix of ``x`` that is a prefix of no point in ``others``."""
    others = list(others)
    if x in others:
        raise NotSeparable("the point itself is among the others")
    if not others:
        return ()
    return x.initial(1 + max(common_prefix_length(x, q) for q in others))


def _require_field(ring):
    if not ring.is_field:
        raise NotAField(FIELD_REQUIRED)


def shrink_to_delta(v: Vector) -> tuple:
    """``(λ⁻¹ p_{Z_μ}, x¹)`` sending ``v`` to ``δ_{x¹}``; ``x¹`` is the least support point."""
    if v.is_zero():
        raise ZeroVector("cannot shrink the zero vector")
    _require_field(v.ring)
    (x1, lam), rest = v.coeffs[0], [x for x, _ in v.coeffs[1:]]
    mu = disambiguating_prefix(x1, rest)
    a = p(v.pres.sets.cylinder(mu), v.ring).scale(v.ring.inverse(lam))
    return a, x1


def reach(v: Vector, z: Point) -> Element:
    """An element ``a`` with ``apply(a, v) == δ_z``."""
    if v.is_zero():
        raise ZeroVector("cannot reach from the zero vector")
    for x in v.support():
        if not equivalent(x, z):
            raise NotEquivalent(f"{v.pres.format_point(x)} is not in the class of {v.pres.format_point(z)}")
    shrink, x1 = shrink_to_delta(v)
    return transporter(x1, z, v.pres, v.ring) * shrink


def inequivalence_witness(x: Point, images) -> Word:
    """Word ``α`` with ``x`` in ``Z_α`` and no image in it."""
    images = list(images)
    if not images:
        raise ValueError("need at least one image point")
    for q in images:
        if equivalent(x, q):
            raise SameClass("an image lies in the class of x")
    return disambiguating_prefix(x, images)


def class_key(x: Point):
    return x.tail_class


def is_ray(x: Point) -> bool:
    return isinstance(x, RayTailed)
