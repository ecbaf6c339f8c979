"""The free module over the points of X and the representation pi.

Basis vectors ``δ_x`` are indexed by canonical points.  Generators act by

    P_A δ_x  = [x in A] δ_x
    S_a δ_x  = [ax in X] δ_{ax}
    S_a* δ_x = [x_1 = a] δ_{σ(x)}

and a monomial ``s_c p_A s_d*`` sends ``δ_{dy}`` to ``δ_{cy}`` when ``y`` is
in ``A``.  The basis is infinite, so every operator identity checked here
is checked on a finite set of points, and every report records that set.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .algebra import Element, Monomial, p, s
from .errors import ParseError, PresentationMismatch, RingMismatch
from .rings import INT, Ring
from .sets import SetU, find_cycle_without_exit
from .shift import Point, Presentation, shift


@dataclass(frozen=True, eq=False)
class Vector:
    pres: Presentation
    ring: Ring
    coeffs: tuple  # ((point, coeff), ...) sorted by point order, no zeros

    @classmethod
    def build(cls, pres: Presentation, ring: Ring, items) -> "Vector":
        acc = {}
        for x, k in items:
            acc[x] = acc.get(x, ring.zero) + ring.coerce(k)
        pts = pres.sorted_points(x for x, k in acc.items() if k)
        return cls(pres, ring, tuple((x, acc[x]) for x in pts))

    @classmethod
    def delta(cls, x: Point, pres: Presentation, ring: Ring = INT) -> "Vector":
        return cls.build(pres, ring, [(x, 1)])

    @classmethod
    def zero(cls, pres: Presentation, ring: Ring = INT) -> "Vector":
        return cls(pres, ring, ())

    def support(self) -> list:
        return [x for x, _ in self.coeffs]

    def coefficient(self, x: Point):
        return dict(self.coeffs).get(x, self.ring.zero)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def _check(self, other: "Vector"):
        if other.pres is not self.pres:
            raise PresentationMismatch("vectors over different presentations")
        if other.ring != self.ring:
            raise RingMismatch(f"vectors over {self.ring.name} and {other.ring.name}")

    def __add__(self, other):
        if not isinstance(other, Vector):
            return NotImplemented
        self._check(other)
        return Vector.build(self.pres, self.ring, self.coeffs + other.coeffs)

    def scale(self, k) -> "Vector":
        k = self.ring.coerce(k)
        return Vector.build(self.pres, self.ring, [(x, k * v) for x, v in self.coeffs])

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k):
        return self.scale(k)

    def __eq__(self, other):
        if not isinstance(other, Vector):
            return NotImplemented
        return self.pres is other.pres and self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        out = []
        for x, k in self.coeffs:
            text = self.ring.format(k)
            lit = f"[{self.pres.format_point(x)}]"
            term = lit if text == "1" else ("-" + lit if text == "-1" else f"{text}*{lit}")
            if out:
                out.append(" - " + term[1:] if term.startswith("-") else " + " + term)
            else:
                out.append(term)
        return "".join(out)

    def __repr__(self):
        return f"Vector({self})"


def parse_vector(text: str, pres: Presentation, ring: Ring = INT) -> Vector:
    """Parse ``2*[1(0)] + 3*[(01)] - [0(1)]``."""
    text = text.strip()
    if text == "0":
        return Vector.zero(pres, ring)
    items = []
    pos = 0
    term = re.compile(r"\s*([+-])?\s*(?:([+-]?\d+(?:/\d+)?)\s*\*?\s*)?\[([^\]]*)\]\s*")
    first = True
    while pos < len(text):
        m = term.match(text, pos)
        if not m or (not first and not m.group(1)):
            raise ParseError(f"bad vector syntax at {text[pos:]!r}")
        k = ring.parse(m.group(2)) if m.group(2) else ring.one
        if m.group(1) == "-":
            k = -k
        items.append((pres.parse_point(m.group(3)), k))
        pos = m.end()
        first = False
    if not items:
        raise ParseError("empty vector")
    return Vector.build(pres, ring, items)


# -- actions ----------------------------------------------------------------------


def _act_monomial(pres: Presentation, m: Monomial, x: Point) -> Optional[Point]:
    c, A, d = m
    if x.initial(len(d)) != d:
        return None
    y = shift(x, len(d))
    if y not in A:
        return None
    return pres.prepend(c, y)


def apply_generator(kind: str, arg, v: Vector) -> Vector:
    """``P(A)``, ``S(a)`` or ``S*(a)`` applied to ``v``."""
    pres = v.pres
    out = []
    if kind == "P":
        if not isinstance(arg, SetU) or arg.pres is not pres:
            raise PresentationMismatch("set over a different presentation")
        out = [(x, k) for x, k in v.coeffs if x in arg]
    elif kind == "S":
        pres.check_letter(arg)
        for x, k in v.coeffs:
            y = pres.prepend((arg,), x)
            if y is not None:
                out.append((y, k))
    elif kind in ("S*", "S_star"):
        pres.check_letter(arg)
        out = [(shift(x, 1), k) for x, k in v.coeffs if x.letter(0) == arg]
    else:
        raise ValueError(f"unknown generator kind {kind!r}")
    return Vector.build(pres, v.ring, out)


def apply(a: Element, v: Vector) -> Vector:
    if a.pres is not v.pres:
        raise PresentationMismatch("element and vector over different presentations")
    if a.ring != v.ring:
        raise RingMismatch(f"element over {a.ring.name}, vector over {v.ring.name}")
    out = []
    for x, k in v.coeffs:
        for c, m in a.monomials():
            y = _act_monomial(a.pres, m, x)
            if y is not None:
                out.append((y, c * k))
    return Vector.build(v.pres, v.ring, out)


def apply_word(kind: str, word, v: Vector) -> Vector:
    """``S_w = S_{w1}...S_{wn}`` or ``S_w* = S_{wn}*...S_{w1}*`` applied to ``v``."""
    if kind == "S":
        for a in reversed(tuple(word)):
            v = apply_generator("S", a, v)
    else:
        for a in tuple(word):
            v = apply_generator("S*", a, v)
    return v


# -- relation checks ----------------------------------------------------------------


@dataclass
class Report:
    """Outcome of a bounded check: what was checked and what failed."""

    title: str
    bounds: dict
    checks: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, condition: bool, message) -> bool:
        self.checks += 1
        if not condition:
            self.failures.append(message() if callable(message) else message)
        return condition

    def lines(self) -> list:
        bounds = ", ".join(f"{k}={v}" for k, v in self.bounds.items())
        out = [f"{self.title}: {'pass' if self.ok else 'FAIL'} ({self.checks} checks; {bounds})"]
        out.extend(self.notes)
        out.extend(f"  counterexample: {f}" for f in self.failures[:5])
        return out

    def __str__(self):
        return "\n".join(self.lines())


def _letters(pres: Presentation, ray_cap: int) -> tuple:
    return pres.letters(index_bound=ray_cap) if pres.kind == "graph-ray" else pres.letters()


def _words(pres: Presentation, max_len: int, ray_cap: int) -> list:
    out = []
    for n in range(max_len + 1):
        if pres.kind == "graph-ray":
            out.extend(pres.enumerate_language(n, index_bound=ray_cap))
        else:
            out.extend(pres.enumerate_language(n))
    return out


def verify_relations(
    pres: Presentation, bound: int, word_bound: Optional[int] = None, ray_cap: int = 8, ring: Ring = INT
) -> Report:
    """Relations (i)-(iii) as operator identities on every point of size <= ``bound``.

    Words range over the language up to ``word_bound`` (default ``bound``).
    Relation (i) is checked on the sets ``C(alpha, beta)`` with words of
    length at most 2 together with X and the empty set.
    """
    word_bound = bound if word_bound is None else word_bound
    rep = Report(
        "relations", {"points": bound, "words": word_bound, "ray_cap": ray_cap, "presentation": pres.name or pres.kind}
    )
    pts = pres.points(bound, ray_cap=ray_cap)
    deltas = [Vector.delta(x, pres, ring) for x in pts]
    sets = pres.sets
    fmt = pres.format_point

    # (i) p_X = 1, p_0 = 0, p_{A&B} = p_A p_B, p_{A|B} = p_A + p_B - p_{A&B}
    family = {sets.whole(), sets.empty()}
    short = _words(pres, min(word_bound, 2), ray_cap)
    for al in short:
        for be in short:
            family.add(sets.generator(al, be))
    family = sorted(family, key=lambda A: A.sort_key())
    member = {A: frozenset(x for x in pts if x in A) for A in family}
    for v in deltas:
        rep.check(apply_generator("P", sets.whole(), v) == v, lambda: f"p_X δ_{fmt(v.support()[0])} != δ")
        rep.check(apply_generator("P", sets.empty(), v).is_zero(), lambda: "p_0 acts nonzero")
    for i, A in enumerate(family):
        for B in family[i:]:
            meet, join = A & B, A | B
            for x in pts:
                inA, inB = x in member[A], x in member[B]
                rep.check((x in meet) == (inA and inB), lambda: f"p_(A&B) != p_A p_B at {fmt(x)} for A={A}, B={B}")
                rep.check(
                    (x in join) == (inA or inB), lambda: f"p_(A|B) != p_A + p_B - p_(A&B) at {fmt(x)} for A={A}, B={B}"
                )

    # (ii) and (iii) act on basis vectors, which go to basis vectors or zero,
    # so they are checked point by point; None stands for the zero vector
    def S(w, x):
        return None if x is None else pres.prepend(tuple(w), x)

    def S_star(w, x):
        if x is None or x.initial(len(w)) != tuple(w):
            return None
        return shift(x, len(w))

    for a in _letters(pres, ray_cap):
        for x in pts:
            rep.check(S((a,), S_star((a,), S((a,), x))) == S((a,), x), lambda: f"S_a S_a* S_a != S_a for a={a} at {fmt(x)}")
            rep.check(
                S_star((a,), S((a,), S_star((a,), x))) == S_star((a,), x),
                lambda: f"S_a* S_a S_a* != S_a* for a={a} at {fmt(x)}",
            )

    # (iii) s_beta s_alpha* s_alpha s_beta* = p_C(alpha, beta)
    words = _words(pres, word_bound, ray_cap)
    for al in words:
        for be in words:
            C = sets.generator(al, be)
            for x in pts:
                lhs = S(be, S_star(al, S(al, S_star(be, x))))
                rhs = x if x in C else None
                rep.check(
                    lhs == rhs,
                    lambda: f"relation (iii) fails for alpha={pres.format_word(al, 'ω')}, "
                    f"beta={pres.format_word(be, 'ω')} at {fmt(x)}",
                )
    return rep


# -- faithfulness ---------------------------------------------------------------------


@dataclass
class FaithfulnessVerdict:
    verdict: str                      # "NotFaithful" or "NoCycleFound"
    witness: Optional[tuple] = None   # (s_c p_A, p_A) when NotFaithful
    cycle: Optional[tuple] = None     # (A, c)
    report: Optional[Report] = None


def faithfulness_probe(
    pres: Presentation, bound: int, trials: int = 50, seed: int = 0, ray_cap: int = 8, ring: Ring = INT
) -> FaithfulnessVerdict:
    """Either a concrete kernel witness or a spot-check that sampled elements act nonzero."""
    from .sampling import Sampler

    rep = Report("faithful", {"points": bound, "cycle_words": bound, "ray_cap": ray_cap, "trials": trials, "seed": seed})
    pts = pres.points(bound, ray_cap=ray_cap)
    found = find_cycle_without_exit(pres, bound)
    if found is not None:
        A, c = found
        pa = p(A, ring)
        sc = s(c, pres, ring) * pa
        for x in pts:
            v = Vector.delta(x, pres, ring)
            rep.check(apply(sc, v) == apply(pa, v), lambda: f"s_c p_A and p_A differ at {pres.format_point(x)}")
        rep.check(sc.degrees() != pa.degrees(), "witness not separated by degree")
        rep.notes.append(
            f"  NotFaithful: cycle without exit c={pres.format_word(c)}, A={A}; "
            f"witness s({pres.format_word(c)})·p({A}) vs p({A}), equal on all {len(pts)} points, "
            f"normal forms {sc} and {pa} of degrees {sc.degrees()[0]} and {pa.degrees()[0]}"
        )
        return FaithfulnessVerdict("NotFaithful", (sc, pa), (A, c), rep)

    rep.notes.append(f"  NoCycleFound: no cycle without exit of length <= {bound}")
    sampler = Sampler(pres, ring, seed, ray_cap=ray_cap)
    for t in range(trials):
        a = sampler.element()
        while a.is_zero():
            a = sampler.element()
        hit = nonzero_witness(a, pts)
        rep.check(hit is not None, lambda: f"trial {t}: no basis point with nonzero action found for {a}")
    rep.notes.append(f"  spot-check: {trials - len(rep.failures)}/{trials} sampled elements act nonzero")
    return FaithfulnessVerdict("NoCycleFound", None, None, rep)


def nonzero_witness(a: Element, points) -> Optional[Point]:
    """A basis point on which ``a`` acts nonzero: the given points, then lasso members of each cell."""
    pres = a.pres
    candidates = list(points)
    for _, m in a.monomials():
        for y in _members(m.A):
            x = pres.prepend(m.d, y)
            if x is not None:
                candidates.append(x)
    for x in candidates:
        if apply(a, Vector.delta(x, pres, a.ring)):
            return x
    return None


def _members(A: SetU) -> list:
    backend = A.pres.sets
    return backend.witnesses(A, count=3)
