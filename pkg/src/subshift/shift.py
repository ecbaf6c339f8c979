"""Presentations, words and canonical points of one-sided subshifts.

Two presentation families are supported:

* ``SFT`` -- a finite alphabet with a finite set of forbidden words.  Its
  representable points are eventually periodic, ``u . v^inf``.
* ``GraphRay`` -- a finite acyclic graph of *sporadic* vertices feeding
  into one or more rays ``r@0 -> r@1 -> ...``.  Letters are vertices, so
  the alphabet is countably infinite; every point ends in a forced ray
  tail ``u . r@k r@k+1 ...``.

Points are immutable dataclasses in normal form; validity against a
presentation is checked when they are built through the presentation.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property, cmp_to_key, lru_cache
from itertools import product
from pathlib import Path
from typing import NamedTuple, Optional, Union

from .automaton import FollowerAutomaton
from .errors import (
    MalformedTail,
    NotInShift,
    ParseError,
    PresentationError,
    Unbounded,
    UnknownLetter,
)


class RayLetter(NamedTuple):
    ray: str
    index: int

    def __str__(self):
        return f"{self.ray}@{self.index}"


Letter = Union[str, RayLetter]
Word = tuple


def primitive_root(v: Word) -> Word:
    n = len(v)
    for p in range(1, n + 1):
        if n % p == 0 and v[:p] * (n // p) == v:
            return v[:p]
    return v


@dataclass(frozen=True)
class EventuallyPeriodic:
    """The sequence ``prefix . period period period ...``."""

    prefix: Word
    period: Word

    def letter(self, i: int):
        u, v = self.prefix, self.period
        return u[i] if i < len(u) else v[(i - len(u)) % len(v)]

    def initial(self, n: int) -> Word:
        return tuple(self.letter(i) for i in range(n))

    def shift(self, n: int = 1) -> "EventuallyPeriodic":
        u, v = self.prefix, self.period
        if n <= len(u):
            return EventuallyPeriodic(u[n:], v) if n else self
        r = (n - len(u)) % len(v)
        return EventuallyPeriodic((), v[r:] + v[:r])

    @property
    def size(self) -> int:
        return len(self.prefix) + len(self.period)

    @property
    def tail_class(self):
        v = self.period
        return ("periodic", min(v[i:] + v[:i] for i in range(len(v))))

    def head_length(self) -> int:
        return len(self.prefix) + len(self.period)


@dataclass(frozen=True)
class RayTailed:
    """The sequence ``prefix . ray@start ray@start+1 ...``."""

    prefix: Word
    ray: str
    start: int

    def letter(self, i: int):
        u = self.prefix
        return u[i] if i < len(u) else RayLetter(self.ray, self.start + i - len(u))

    def initial(self, n: int) -> Word:
        return tuple(self.letter(i) for i in range(n))

    def shift(self, n: int = 1) -> "RayTailed":
        u = self.prefix
        if n <= len(u):
            return RayTailed(u[n:], self.ray, self.start) if n else self
        return RayTailed((), self.ray, self.start + n - len(u))

    @property
    def size(self) -> int:
        return len(self.prefix) + 1

    @property
    def tail_class(self):
        return ("ray", self.ray)

    def head_length(self) -> int:
        return len(self.prefix) + 1


Point = Union[EventuallyPeriodic, RayTailed]


def normal_periodic(u: Word, v: Word) -> EventuallyPeriodic:
    if not v:
        raise MalformedTail("the period of an eventually periodic point must be nonempty")
    u, v = tuple(u), primitive_root(tuple(v))
    while u and u[-1] == v[-1]:
        u, v = u[:-1], v[-1:] + v[:-1]
    return EventuallyPeriodic(u, v)


def normal_ray(u: Word, ray: str, k: int) -> RayTailed:
    if k < 0:
        raise MalformedTail("ray indices are natural numbers")
    u = tuple(u)
    while u and u[-1] == RayLetter(ray, k - 1):
        u, k = u[:-1], k - 1
    return RayTailed(u, ray, k)


def common_prefix_length(x: Point, y: Point) -> Optional[int]:
    """Length of the longest common prefix, or None when ``x == y``."""
    if x == y:
        return None
    bound = x.head_length() + y.head_length() + max(len(getattr(x, "period", ())), 1) * max(
        len(getattr(y, "period", ())), 1
    )
    for i in range(bound + 1):
        if x.letter(i) != y.letter(i):
            return i
    raise AssertionError("distinct normal forms denote distinct sequences")


def shift(x: Point, n: int = 1) -> Point:
    return x.shift(n)


class Presentation:
    """Common surface of the two presentation families."""

    kind: str

    # -- letters and words ------------------------------------------------

    def letter_key(self, a: Letter):
        raise NotImplementedError

    def check_letter(self, a: Letter) -> Letter:
        self.letter_key(a)
        return a

    def word_key(self, w: Word):
        return tuple(self.letter_key(a) for a in w)

    def format_letter(self, a: Letter) -> str:
        return str(a)

    def format_word(self, w: Word, empty: str = "") -> str:
        if not w:
            return empty
        tokens = [self.format_letter(a) for a in w]
        sep = "" if all(len(t) == 1 for t in tokens) else "."
        return sep.join(tokens)

    def parse_word(self, text: str) -> Word:
        text = text.strip()
        if text in ("", "ω", "w0", "omega"):
            return ()
        out = []
        for chunk in re.split(r"[.·\s]+", text):
            i = 0
            while i < len(chunk):
                a, i = self._next_letter(chunk, i)
                out.append(a)
        return tuple(out)

    def _next_letter(self, text, i):
        raise NotImplementedError

    # -- language ------------------------------------------------------------

    def in_language(self, w: Word) -> bool:
        raise NotImplementedError

    def enumerate_language(self, n: int, index_bound: Optional[int] = None) -> list:
        raise NotImplementedError

    def letters(self, index_bound: Optional[int] = None) -> tuple:
        raise NotImplementedError

    # -- points ---------------------------------------------------------------

    def contains(self, x: Point) -> bool:
        raise NotImplementedError

    def _checked(self, x: Point) -> Point:
        if not self.contains(x):
            raise NotInShift(f"{self.format_point(x)} is not a point of the shift space")
        return x

    def periodic(self, u, v) -> EventuallyPeriodic:
        for a in tuple(u) + tuple(v):
            self.check_letter(a)
        return self._checked(normal_periodic(u, v))

    def ray_point(self, u, ray: str, k: int) -> RayTailed:
        raise NotInShift(f"{self.kind} presentations have no ray tails")

    def normalize_point(self, prefix, tail) -> Point:
        """Normal form of ``prefix`` followed by ``tail``.

        ``tail`` is a period word, or a ``RayLetter`` naming where the ray
        tail starts.
        """
        if isinstance(tail, RayLetter):
            return self.ray_point(prefix, tail.ray, tail.index)
        return self.periodic(prefix, tail)

    def prepend(self, w: Word, x: Point) -> Optional[Point]:
        """Normal form of ``w . x`` if it lies in X, else None."""
        raise NotImplementedError

    def extend_point(self, a: Letter, x: Point) -> Optional[Point]:
        self.check_letter(a)
        return self.prepend((a,), x)

    def compare_points(self, x: Point, y: Point) -> int:
        i = common_prefix_length(x, y)
        if i is None:
            return 0
        return -1 if self.letter_key(x.letter(i)) < self.letter_key(y.letter(i)) else 1

    @cached_property
    def point_key(self):
        """Sort key: lexicographic order of the denoted sequences."""
        return cmp_to_key(self.compare_points)

    def sorted_points(self, points) -> list:
        return sorted(points, key=self.point_key)

    def points(self, max_size: int, ray_cap: int = 8) -> list:
        """All representable points of description size at most ``max_size``."""
        raise NotImplementedError

    def format_point(self, x: Point) -> str:
        if isinstance(x, EventuallyPeriodic):
            return f"{self.format_word(x.prefix)}({self.format_word(x.period)})"
        return f"{self.format_word(x.prefix)}>{x.ray}@{x.start}"

    def parse_point(self, text: str) -> Point:
        text = text.strip()
        if text.startswith("[") and text.endswith("]"):
            text = text[1:-1].strip()
        m = re.fullmatch(r"(.*)\((.*)\)", text)
        if m:
            return self.periodic(self.parse_word(m.group(1)), self.parse_word(m.group(2)))
        m = re.fullmatch(r"(.*)>\s*([A-Za-z_]\w*)@(\d+)", text)
        if m:
            return self.ray_point(self.parse_word(m.group(1)), m.group(2), int(m.group(3)))
        raise ParseError(f"bad point literal {text!r} (expected u(v) or u>r@k)")

    # -- set algebra backend ---------------------------------------------------

    @cached_property
    def sets(self):
        from .sets import set_algebra

        return set_algebra(self)

    def __hash__(self):
        return id(self)

    def __eq__(self, other):
        return self is other


class SFT(Presentation):
    """Shift of finite type over a finite alphabet of string letters."""

    kind = "sft"

    def __init__(self, alphabet, forbidden=(), name: str = ""):
        alphabet = tuple(str(a) for a in alphabet)
        if not alphabet:
            raise PresentationError("empty alphabet")
        if len(set(alphabet)) != len(alphabet):
            raise PresentationError("repeated letters in the alphabet")
        self.alphabet = alphabet
        self._order = {a: i for i, a in enumerate(alphabet)}
        self._by_length = sorted(alphabet, key=len, reverse=True)
        forb = []
        for f in forbidden:
            w = self.parse_word(f) if isinstance(f, str) else tuple(f)
            if not w:
                raise PresentationError("forbidden words must be nonempty")
            for a in w:
                self.check_letter(a)
            forb.append(w)
        self.forbidden = frozenset(forb)
        self.name = name
        self.automaton = FollowerAutomaton.from_forbidden(alphabet, self.forbidden)

    def __repr__(self):
        return f"SFT({self.name or list(self.alphabet)})"

    def letter_key(self, a):
        try:
            return (0, self._order[a])
        except (KeyError, TypeError):
            raise UnknownLetter(a) from None

    def _next_letter(self, text, i):
        for a in self._by_length:
            if text.startswith(a, i):
                return a, i + len(a)
        raise UnknownLetter(text[i:])

    def letters(self, index_bound=None):
        return self.alphabet

    def state_of(self, w: Word) -> Optional[int]:
        for a in w:
            self.check_letter(a)
        return self.automaton.run(w)

    def in_language(self, w):
        return self.state_of(tuple(w)) is not None

    def enumerate_language(self, n, index_bound=None):
        fsm = self.automaton
        out = []

        def walk(state, word):
            if len(word) == n:
                out.append(word)
                return
            for a in self.alphabet:
                t = fsm.delta[state].get(a)
                if t is not None:
                    walk(t, word + (a,))

        walk(0, ())
        return out

    def contains(self, x):
        if not isinstance(x, EventuallyPeriodic):
            return False
        return self.automaton.accepts_point(0, x.prefix, x.period)

    @lru_cache(maxsize=None)
    def prepend(self, w, x):
        state = self.automaton.run(w)
        if state is None or not self.automaton.accepts_point(state, x.prefix, x.period):
            return None
        return normal_periodic(w + x.prefix, x.period)

    def accepts(self, state: int, x: EventuallyPeriodic) -> bool:
        return self.automaton.accepts_point(state, x.prefix, x.period)

    @lru_cache(maxsize=None)
    def atom_of(self, x: EventuallyPeriodic) -> int:
        return self.automaton.atoms.signature_of(x.prefix, x.period)

    def points(self, max_size, ray_cap=8):
        found = set()
        for total in range(1, max_size + 1):
            for lv in range(1, total + 1):
                for v in product(self.alphabet, repeat=lv):
                    if primitive_root(v) != v:
                        continue
                    for u in product(self.alphabet, repeat=total - lv):
                        if u and u[-1] == v[-1]:
                            continue
                        x = EventuallyPeriodic(u, v)
                        if self.contains(x):
                            found.add(x)
        return self.sorted_points(found)


class GraphRay(Presentation):
    """Finite acyclic sporadic graph whose paths all end in forced rays."""

    kind = "graph-ray"

    def __init__(self, sporadic, edges, rays, name: str = ""):
        sporadic = tuple(str(v) for v in sporadic)
        rays = tuple(str(r) for r in rays)
        if len(set(sporadic)) != len(sporadic) or len(set(rays)) != len(rays):
            raise PresentationError("repeated vertex or ray names")
        for r in rays:
            if not re.fullmatch(r"[A-Za-z_]\w*", r):
                raise PresentationError(f"bad ray id {r!r}")
        if not rays:
            raise PresentationError("a graph-ray presentation needs at least one ray")
        self.sporadic = sporadic
        self.rays = rays
        self._order = {v: i for i, v in enumerate(sporadic)}
        self._ray_order = {r: i for i, r in enumerate(rays)}
        self._by_length = sorted(sporadic, key=len, reverse=True)
        self._rays_by_length = sorted(rays, key=len, reverse=True)
        self.name = name
        succ = {v: [] for v in sporadic}
        for src, dst in edges:
            src = self._coerce_vertex(src)
            dst = self._coerce_vertex(dst)
            if isinstance(src, RayLetter):
                raise PresentationError("edges may not leave a ray chain")
            if dst not in succ[src]:
                succ[src].append(dst)
        self._check_acyclic(succ)
        live = set()
        changed = True
        while changed:
            changed = False
            for v in sporadic:
                if v not in live and any(isinstance(t, RayLetter) or t in live for t in succ[v]):
                    live.add(v)
                    changed = True
        self.live = frozenset(live)
        self.successors = {
            v: tuple(sorted((t for t in succ[v] if isinstance(t, RayLetter) or t in live), key=self.letter_key))
            for v in sporadic
            if v in live
        }

    def __repr__(self):
        return f"GraphRay({self.name or list(self.sporadic)})"

    def _coerce_vertex(self, v) -> Letter:
        if isinstance(v, RayLetter):
            self.check_letter(v)
            return v
        v = str(v)
        m = re.fullmatch(r"([A-Za-z_]\w*)[:@](\d+)", v)
        if m and m.group(1) in self._ray_order:
            return RayLetter(m.group(1), int(m.group(2)))
        if v not in self._order:
            raise PresentationError(f"unknown vertex {v!r}")
        return v

    def _check_acyclic(self, succ):
        state = {}

        def visit(v):
            state[v] = 1
            for t in succ[v]:
                if isinstance(t, RayLetter):
                    continue
                if state.get(t) == 1:
                    raise PresentationError("the sporadic graph must be acyclic")
                if t not in state:
                    visit(t)
            state[v] = 2

        for v in self.sporadic:
            if v not in state:
                visit(v)

    def letter_key(self, a):
        if isinstance(a, RayLetter):
            if a.ray in self._ray_order and isinstance(a.index, int) and a.index >= 0:
                return (1, self._ray_order[a.ray], a.index)
        elif isinstance(a, str) and a in self._order:
            return (0, self._order[a], 0)
        raise UnknownLetter(a)

    def _next_letter(self, text, i):
        for r in self._rays_by_length:
            m = re.compile(re.escape(r) + r"[@:](\d+)").match(text, i)
            if m:
                return RayLetter(r, int(m.group(1))), m.end()
        for a in self._by_length:
            if text.startswith(a, i):
                return a, i + len(a)
        raise UnknownLetter(text[i:])

    def letters(self, index_bound=None):
        if index_bound is None:
            raise Unbounded("graph-ray alphabets are infinite; give an index bound")
        return self.sporadic + tuple(RayLetter(r, k) for r in self.rays for k in range(index_bound + 1))

    def edge(self, a: Letter, b: Letter) -> bool:
        if isinstance(a, RayLetter):
            return b == RayLetter(a.ray, a.index + 1)
        return a in self.live and b in self.successors[a]

    def in_language(self, w):
        w = tuple(w)
        for a in w:
            self.check_letter(a)
        if w and not isinstance(w[0], RayLetter) and w[0] not in self.live:
            return False
        return all(self.edge(a, b) for a, b in zip(w, w[1:]))

    def enumerate_language(self, n, index_bound=None):
        if index_bound is None:
            raise Unbounded("L_n is infinite for graph-ray presentations; give an index bound")
        out = []

        def walk(word):
            if len(word) == n:
                out.append(word)
                return
            if not word:
                nxt = [a for a in self.letters(index_bound) if isinstance(a, RayLetter) or a in self.live]
            else:
                a = word[-1]
                nxt = [RayLetter(a.ray, a.index + 1)] if isinstance(a, RayLetter) else list(self.successors[a])
            for b in nxt:
                if isinstance(b, RayLetter) and b.index > index_bound:
                    continue
                walk(word + (b,))

        walk(())
        return out

    def contains(self, x):
        if not isinstance(x, RayTailed) or x.ray not in self._ray_order or x.start < 0:
            return False
        w = x.prefix + (RayLetter(x.ray, x.start),)
        try:
            return self.in_language(w)
        except UnknownLetter:
            return False

    def ray_point(self, u, ray, k):
        u = tuple(u)
        for a in u:
            self.check_letter(a)
        if ray not in self._ray_order:
            raise UnknownLetter(f"{ray}@{k}")
        return self._checked(normal_ray(u, ray, k))

    def periodic(self, u, v):
        for a in tuple(u) + tuple(v):
            self.check_letter(a)
        raise NotInShift("acyclic graph-ray presentations have no periodic points")

    def prepend(self, w, x):
        if not w:
            return x
        if not self.in_language(w + (x.letter(0),)):
            return None
        return normal_ray(w + x.prefix, x.ray, x.start)

    def ray_start(self, x: RayTailed) -> RayLetter:
        return RayLetter(x.ray, x.start)

    @lru_cache(maxsize=None)
    def points_from(self, v: Letter) -> tuple:
        """All points whose first letter is ``v``."""
        if isinstance(v, RayLetter):
            return (RayTailed((), v.ray, v.index),)
        if v not in self.live:
            return ()
        out = []
        for t in self.successors[v]:
            for y in self.points_from(t):
                out.append(normal_ray((v,) + y.prefix, y.ray, y.start))
        return tuple(self.sorted_points(out))

    def points(self, max_size, ray_cap=8):
        found = set()
        for r in self.rays:
            for k in range(ray_cap + 1):
                found.add(RayTailed((), r, k))
        for v in self.sporadic:
            for x in self.points_from(v):
                if x.size <= max_size and x.start <= ray_cap:
                    found.add(x)
        return self.sorted_points(found)


def load_presentation(doc) -> Presentation:
    """Build a presentation from a JSON document, a dict, or a path."""
    if isinstance(doc, (str, Path)):
        path = Path(doc)
        try:
            doc = json.loads(path.read_text())
        except OSError as exc:
            raise PresentationError(f"cannot read {path}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise PresentationError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise PresentationError("presentation document must be a JSON object")
    kind = doc.get("kind")
    name = doc.get("name", "")
    if kind == "sft":
        return SFT(doc.get("alphabet", ()), doc.get("forbidden", ()), name=name)
    if kind == "graph-ray":
        return GraphRay(doc.get("sporadic", ()), doc.get("edges", ()), doc.get("rays", ()), name=name)
    raise PresentationError(f"unknown presentation kind {kind!r}")
