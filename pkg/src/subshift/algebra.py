"""Normal-form arithmetic in the unital subshift algebra.

An element is a finite sum of monomials ``s_c p_A s_d*`` with the pair
``(c, d)`` reduced (``c`` and ``d`` do not end with the same letter) and
``A`` inside ``F_c & F_d``.  Monomials sharing a pair are merged into a
*diagonal part*: a map from pairwise disjoint nonempty sets to nonzero
coefficients, stored as level sets so that each coefficient appears once.
Both reductions make equality of normal forms a plain value comparison.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .errors import ParseError, PresentationMismatch, RingMismatch
from .rings import INT, Ring
from .sets import SetU
from .shift import Presentation, Word


class FreeWord(tuple):
    """Reduced word in the free group on the letters: ``((letter, +-1), ...)``."""

    @classmethod
    def from_pair(cls, c: Word, d: Word) -> "FreeWord":
        return cls.of(tuple((a, 1) for a in c) + tuple((a, -1) for a in reversed(d)))

    @classmethod
    def of(cls, syllables) -> "FreeWord":
        out = []
        for s in syllables:
            if out and out[-1][0] == s[0] and out[-1][1] == -s[1]:
                out.pop()
            else:
                out.append(s)
        return cls(out)

    def __mul__(self, other):
        return FreeWord.of(tuple(self) + tuple(other))

    def inverse(self) -> "FreeWord":
        return FreeWord((a, -e) for a, e in reversed(self))

    def is_identity(self) -> bool:
        return not self

    def __str__(self):
        if not self:
            return "1"
        return "·".join(str(a) if e > 0 else f"{a}^-1" for a, e in self)


class Monomial(NamedTuple):
    c: Word
    A: SetU
    d: Word


def _reduce(pres: Presentation, c: Word, A: SetU, d: Word) -> Monomial:
    """Apply ``s_e p_A s_e* = p_{eA}`` until the last letters differ."""
    while c and d and c[-1] == d[-1]:
        A = A.prefixed(c[-1:])
        c, d = c[:-1], d[:-1]
    return Monomial(c, A, d)


def monomial_product(pres: Presentation, m1: Monomial, m2: Monomial):
    """Product of two monomials as a reduced monomial, or None when zero."""
    c1, A1, d1 = m1
    c2, A2, d2 = m2
    if c2[: len(d1)] == d1:
        u = c2[len(d1):]
        c, A, d = c1 + u, A1.relative_range(u) & A2, d2
    elif d1[: len(c2)] == c2:
        u = d1[len(c2):]
        c, A, d = c1, A1 & A2.relative_range(u), d2 + u
    else:
        return None
    if A.is_empty():
        return None
    return _reduce(pres, c, A, d)


def _add_to_diagonal(cells: list, S: SetU, k) -> list:
    """Add ``k`` on ``S`` to a list of disjoint ``(set, coeff)`` cells."""
    out = []
    for T, v in cells:
        both = T & S
        if both.is_empty():
            out.append((T, v))
            continue
        rest = T - S
        if not rest.is_empty():
            out.append((rest, v))
        out.append((both, v + k))
        S = S - T
    if not S.is_empty():
        out.append((S, k))
    return out


def _level_sets(cells) -> tuple:
    levels = {}
    for S, v in cells:
        if not v:
            continue
        levels[v] = levels[v] | S if v in levels else S
    return tuple(sorted(((S, v) for v, S in levels.items()), key=lambda sv: sv[0].sort_key()))


@dataclass(frozen=True, eq=False)
class Element:
    pres: Presentation
    ring: Ring
    terms: tuple   # (((c, d), ((set, coeff), ...)), ...) sorted by (c, d)

    # -- construction -------------------------------------------------------

    @classmethod
    def build(cls, pres: Presentation, ring: Ring, items) -> "Element":
        """Normal form of a sum of ``(coeff, Monomial)`` items (any overlap)."""
        slots = {}
        for k, m in items:
            k = ring.coerce(k)
            if not k or m.A.is_empty():
                continue
            A = m.A
            if m.c or m.d:
                A = A & pres.sets.follower(m.c) & pres.sets.follower(m.d)
            c, A, d = _reduce(pres, m.c, A, m.d)
            slots[(c, d)] = _add_to_diagonal(slots.get((c, d), []), A, k)
        terms = []
        for cd, cells in slots.items():
            diag = _level_sets(cells)
            if diag:
                terms.append((cd, diag))
        terms.sort(key=lambda t: (len(t[0][0]) + len(t[0][1]), pres.word_key(t[0][0]), pres.word_key(t[0][1])))
        return cls(pres, ring, tuple(terms))

    @classmethod
    def zero(cls, pres: Presentation, ring: Ring = INT) -> "Element":
        return cls(pres, ring, ())

    @classmethod
    def one(cls, pres: Presentation, ring: Ring = INT) -> "Element":
        return cls.build(pres, ring, [(1, Monomial((), pres.sets.whole(), ()))])

    # -- views ----------------------------------------------------------------

    def monomials(self) -> Iterator[tuple]:
        """``(coeff, Monomial)`` for every cell of every slot."""
        for (c, d), diag in self.terms:
            for A, k in diag:
                yield k, Monomial(c, A, d)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degrees(self) -> list:
        return [FreeWord.from_pair(c, d) for (c, d), _ in self.terms]

    def is_homogeneous(self) -> bool:
        return len(self.terms) <= 1

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other: "Element") -> "Element":
        if other.pres is not self.pres:
            raise PresentationMismatch("elements over different presentations")
        if other.ring != self.ring:
            raise RingMismatch(f"elements over {self.ring.name} and {other.ring.name}")
        return other

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        return Element.build(self.pres, self.ring, list(self.monomials()) + list(other.monomials()))

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def scale(self, k) -> "Element":
        k = self.ring.coerce(k)
        return Element.build(self.pres, self.ring, [(k * v, m) for v, m in self.monomials()])

    def __mul__(self, other):
        if not isinstance(other, Element):
            return self.scale(other)
        self._check(other)
        items = []
        for k1, m1 in self.monomials():
            for k2, m2 in other.monomials():
                m = monomial_product(self.pres, m1, m2)
                if m is not None:
                    items.append((k1 * k2, m))
        return Element.build(self.pres, self.ring, items)

    def __rmul__(self, k):
        return self.scale(k)

    def adjoint(self) -> "Element":
        return Element.build(self.pres, self.ring, [(k, Monomial(m.d, m.A, m.c)) for k, m in self.monomials()])

    # -- equality and text ------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.pres is other.pres and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"Element({self})"


# -- generators ------------------------------------------------------------------


def s(word, pres: Presentation, ring: Ring = INT) -> Element:
    """``s_w``; zero when ``w`` is not in the language."""
    w = tuple(pres.check_letter(a) for a in word)
    if not pres.in_language(w):
        return Element.zero(pres, ring)
    return Element.build(pres, ring, [(1, Monomial(w, pres.sets.follower(w), ()))])


def s_star(word, pres: Presentation, ring: Ring = INT) -> Element:
    return s(word, pres, ring).adjoint()


def p(A: SetU, ring: Ring = INT) -> Element:
    return Element.build(A.pres, ring, [(1, Monomial((), A, ()))])


def from_generator(kind: str, arg, pres: Presentation, ring: Ring = INT) -> Element:
    """One of ``s(a)``, ``s*(a)``, ``p(A)`` or ``one``."""
    if kind == "s":
        return s((arg,), pres, ring)
    if kind in ("s*", "s_star"):
        return s_star((arg,), pres, ring)
    if kind == "p":
        if arg.pres is not pres:
            raise PresentationMismatch("set over a different presentation")
        return p(arg, ring)
    if kind == "one":
        return Element.one(pres, ring)
    raise ValueError(f"unknown generator kind {kind!r}")


def monomial(c, A: SetU, d, ring: Ring = INT) -> Element:
    """``s_c p_A s_d*`` in normal form."""
    pres = A.pres
    return s(c, pres, ring) * p(A, ring) * s_star(d, pres, ring)


def multiply(a: Element, b: Element) -> Element:
    return a * b


def add(a: Element, b: Element) -> Element:
    return a + b


def scale(a: Element, k) -> Element:
    return a.scale(k)


def involution(a: Element) -> Element:
    return a.adjoint()


def degree(term) -> FreeWord:
    """Degree of a ``(c, d)`` slot, a ``Monomial`` or a homogeneous element."""
    if isinstance(term, Element):
        if len(term.terms) != 1:
            raise ValueError("degree needs a nonzero homogeneous element")
        c, d = term.terms[0][0]
    elif isinstance(term, Monomial):
        c, d = term.c, term.d
    else:
        c, d = term
    return FreeWord.from_pair(c, d)


# -- text --------------------------------------------------------------------------


def format_monomial(pres: Presentation, m: Monomial) -> str:
    if not (m.c or m.d) and m.A == pres.sets.whole():
        return "1"
    parts = []
    if m.c:
        parts.append(f"s({pres.format_word(m.c)})")
    implied = pres.sets.follower(m.c) & pres.sets.follower(m.d)
    if m.A != implied or not (m.c or m.d):
        parts.append(f"p({m.A})")
    if m.d:
        parts.append(f"s*({pres.format_word(m.d)})")
    return " ".join(parts)


def format_element(a: Element) -> str:
    if a.is_zero():
        return "0"
    out = []
    for k, m in a.monomials():
        body = format_monomial(a.pres, m)
        text = a.ring.format(k)
        if body == "1":
            term = text
        elif text == "1":
            term = body
        elif text == "-1":
            term = "-" + body
        else:
            term = f"{text}*{body}"
        if out and term.startswith("-"):
            out.append(" - " + term[1:])
        elif out:
            out.append(" + " + term)
        else:
            out.append(term)
    return "".join(out)


class _ElementParser:
    """``expr := term (('+'|'-') term)*``; ``term := ['-'] factor (['*'] factor)*``."""

    _scalar = re.compile(r"\d+(?:/\d+)?")

    def __init__(self, pres: Presentation, ring: Ring, text: str):
        self.pres = pres
        self.ring = ring
        self.text = text
        self.pos = 0

    def parse(self) -> Element:
        out = self.expr()
        self._ws()
        if self.pos != len(self.text):
            raise ParseError(f"unexpected {self.text[self.pos:]!r} in element")
        return out

    def _ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _balanced(self) -> str:
        """Text up to the ``)`` matching an already consumed ``(``."""
        depth = 1
        start = self.pos
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            depth += ch == "("
            depth -= ch == ")"
            self.pos += 1
            if depth == 0:
                return self.text[start:self.pos - 1]
        raise ParseError("unclosed parenthesis in element")

    def expr(self) -> Element:
        out = self.term()
        while self._peek() in ("+", "-"):
            sign = self.text[self.pos]
            self.pos += 1
            t = self.term()
            out = out + t if sign == "+" else out - t
        return out

    def term(self) -> Element:
        negate = False
        while self._peek() == "-":
            self.pos += 1
            negate = not negate
        out = self.factor()
        while True:
            c = self._peek()
            if c == "*":
                self.pos += 1
            elif not c or c in "+-)":
                break
            out = out * self.factor()
        return -out if negate else out

    def factor(self) -> Element:
        self._ws()
        rest = self.text[self.pos:]
        m = self._scalar.match(rest)
        if m:
            self.pos += m.end()
            return Element.one(self.pres, self.ring).scale(self.ring.parse(m.group(0)))
        m = re.match(r"(s\*|s|p|adj)\s*\(|\(", rest)
        if not m:
            raise ParseError(f"bad element syntax at {rest!r}")
        self.pos += m.end()
        inner = self._balanced()
        head = m.group(1)
        if head is None:
            return _ElementParser(self.pres, self.ring, inner).parse()
        if head == "adj":
            return _ElementParser(self.pres, self.ring, inner).parse().adjoint()
        if head == "p":
            return p(self.pres.sets.parse(inner), self.ring)
        w = self.pres.parse_word(inner)
        return s(w, self.pres, self.ring) if head == "s" else s_star(w, self.pres, self.ring)


def parse_element(text: str, pres: Presentation, ring: Ring = INT) -> Element:
    return _ElementParser(pres, ring, text).parse()
