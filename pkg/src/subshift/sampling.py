"""Seeded random words, sets, points, elements and vectors for the suites."""

from __future__ import annotations

import random
from fractions import Fraction
from functools import cached_property

from .algebra import Element, monomial
from .rings import PrimeField, RationalRing, Ring
from .representation import Vector
from .shift import Presentation


class Sampler:
    def __init__(
        self,
        pres: Presentation,
        ring: Ring,
        seed: int = 0,
        ray_cap: int = 8,
        word_len: int = 2,
        point_size: int = 5,
    ):
        self.pres = pres
        self.ring = ring
        self.rng = random.Random(seed)
        self.ray_cap = ray_cap
        # most long ray words are dead against short sampled points, so
        # draws stay near the start of each ray
        self.word_cap = min(ray_cap, 2)
        self.point_cap = min(ray_cap, 3)
        self.word_len = word_len
        self.point_size = point_size

    # -- primitive draws ------------------------------------------------------

    def _language(self, n: int) -> list:
        cache = self.__dict__.setdefault("_lang", {})
        if n not in cache:
            if self.pres.kind == "graph-ray":
                cache[n] = self.pres.enumerate_language(n, index_bound=self.word_cap)
            else:
                cache[n] = self.pres.enumerate_language(n)
        return cache[n]

    def word(self, max_len: int = None) -> tuple:
        max_len = self.word_len if max_len is None else max_len
        lengths = [n for n in range(max_len + 1) if self._language(n)]
        return self.rng.choice(self._language(self.rng.choice(lengths)))

    def coeff(self):
        r = self.rng
        if isinstance(self.ring, PrimeField):
            return self.ring.coerce(r.randrange(1, self.ring.p))
        k = r.choice([-3, -2, -1, 1, 1, 2, 3])
        if isinstance(self.ring, RationalRing) and r.random() < 0.3:
            return self.ring.coerce(Fraction(k, r.choice([2, 3])))
        return self.ring.coerce(k)

    def set(self):
        sets = self.pres.sets
        if self.rng.random() < 0.2:
            return sets.whole()
        A = sets.generator(self.word(), self.word())
        roll = self.rng.random()
        if roll < 0.2:
            A = ~A
        elif roll < 0.4:
            A = A & sets.generator(self.word(), self.word())
        elif roll < 0.55:
            A = A | sets.generator(self.word(), self.word())
        return A

    # -- algebra -------------------------------------------------------------------

    def monomial(self) -> Element:
        return monomial(self.word(), self.set(), self.word(), self.ring)

    def element(self, max_terms: int = 3) -> Element:
        out = Element.zero(self.pres, self.ring)
        for _ in range(self.rng.randint(1, max_terms)):
            out = out + self.monomial().scale(self.coeff())
        return out

    def nonzero_element(self, max_terms: int = 3) -> Element:
        while True:
            a = self.element(max_terms)
            if a:
                return a

    # -- points and vectors ------------------------------------------------------------

    @cached_property
    def points(self) -> list:
        return self.pres.points(self.point_size, ray_cap=self.point_cap)

    @cached_property
    def classes(self) -> list:
        """Points grouped by tail-equivalence class, in a fixed order."""
        groups = {}
        for x in self.points:
            groups.setdefault(x.tail_class, []).append(x)
        return [groups[k] for k in sorted(groups, key=repr)]

    def point(self):
        return self.rng.choice(self.points)

    def vector(self, max_terms: int = 3, pool=None) -> Vector:
        pool = self.points if pool is None else pool
        k = self.rng.randint(1, min(max_terms, len(pool)))
        pts = self.rng.sample(pool, k)
        return Vector.build(self.pres, self.ring, [(x, self.coeff()) for x in pts])

    def same_class(self, min_size: int = 1) -> list:
        """A class with at least ``min_size`` sampled points."""
        pool = [c for c in self.classes if len(c) >= min_size]
        return self.rng.choice(pool)
