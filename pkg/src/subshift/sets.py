"""Canonical forms for the Boolean algebra generated by the sets C(alpha, beta).

Every set is an immutable value with a canonical form, so equality of
sets is equality of their representations.

For shifts of finite type a set is *prefix stratified*: a map from the
words ``w`` of one common length ``depth`` to tails ``T_w``, each tail a
union of atoms of the follower-set algebra.  The canonical depth is the
least one at which the set can be written this way.

For graph-ray presentations (acyclic sporadic part) every generator is
finite or the whole space, so the algebra is exactly the finite/cofinite
algebra on the points, and sets are stored that way.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .errors import ParseError, PresentationMismatch
from .shift import GraphRay, Presentation, RayTailed, SFT, normal_periodic


class SetU:
    """Operators shared by both backends."""

    pres: Presentation

    def _same(self, other: "SetU") -> "SetU":
        if not isinstance(other, SetU):
            return NotImplemented
        if other.pres is not self.pres:
            raise PresentationMismatch("sets over different presentations")
        return other

    def __or__(self, other):
        return self.pres.sets.union(self, self._same(other))

    def __and__(self, other):
        return self.pres.sets.intersection(self, self._same(other))

    def __sub__(self, other):
        return self.pres.sets.intersection(self, self.pres.sets.complement(self._same(other)))

    def __invert__(self):
        return self.pres.sets.complement(self)

    def __le__(self, other):
        return (self - other).is_empty()

    def __contains__(self, x):
        return self.pres.sets.member(x, self)

    def relative_range(self, word) -> "SetU":
        return self.pres.sets.relative_range(self, tuple(word))

    def prefixed(self, word) -> "SetU":
        return self.pres.sets.prefixed(self, tuple(word))

    def singleton(self):
        return self.pres.sets.singleton(self)

    def some_member(self):
        return self.pres.sets.some_member(self)

    def __str__(self):
        return self.pres.sets.format(self)

    def __repr__(self):
        return f"SetU({self})"


@dataclass(frozen=True, eq=False, repr=False)
class StrataSet(SetU):
    pres: SFT
    depth: int
    strata: tuple  # ((word, frozenset of atom ids), ...) sorted by word

    def __eq__(self, other):
        return (
            isinstance(other, StrataSet)
            and other.pres is self.pres
            and (self.depth, self.strata) == (other.depth, other.strata)
        )

    def __hash__(self):
        return hash((self.depth, self.strata))

    def is_empty(self) -> bool:
        return not self.strata

    def sort_key(self):
        return (self.depth, tuple((self.pres.word_key(w), tuple(sorted(t))) for w, t in self.strata))


@dataclass(frozen=True, eq=False, repr=False)
class PointSet(SetU):
    pres: GraphRay
    cofinite: bool
    points: frozenset

    def __eq__(self, other):
        return (
            isinstance(other, PointSet)
            and other.pres is self.pres
            and (self.cofinite, self.points) == (other.cofinite, other.points)
        )

    def __hash__(self):
        return hash((self.cofinite, self.points))

    def is_empty(self) -> bool:
        return not self.cofinite and not self.points

    def sort_key(self):
        return (self.cofinite, len(self.points), tuple(self.pres.point_key(p) for p in self.pres.sorted_points(self.points)))


class _Backend:
    pres: Presentation

    def whole(self) -> SetU:
        raise NotImplementedError

    def empty(self) -> SetU:
        raise NotImplementedError

    def follower(self, alpha) -> SetU:
        raise NotImplementedError

    def cylinder(self, beta) -> SetU:
        return self.prefixed(self.follower(beta), tuple(beta)) if self.pres.in_language(tuple(beta)) else self.empty()

    def generator(self, alpha, beta) -> SetU:
        """Canonical form of ``C(alpha, beta) = beta . (F_alpha & F_beta)``."""
        alpha, beta = tuple(alpha), tuple(beta)
        for a in alpha + beta:
            self.pres.check_letter(a)
        if not self.pres.in_language(beta):
            return self.empty()
        return self.prefixed(self.follower(alpha) & self.follower(beta), beta)

    # -- text form -------------------------------------------------------------

    def parse(self, text: str) -> SetU:
        return _SetParser(self, text).parse()


class SFTSets(_Backend):
    def __init__(self, pres: SFT):
        self.pres = pres
        self.atoms = pres.automaton.atoms

    # -- construction -------------------------------------------------------

    @lru_cache(maxsize=None)
    def _tail_of(self, w) -> frozenset:
        """Atoms of F_w (empty when w is not in the language)."""
        state = self.pres.state_of(w)
        return frozenset() if state is None else self.atoms.containing(state)

    def _build(self, depth: int, mapping: dict) -> StrataSet:
        clean = {}
        for w, t in mapping.items():
            t = frozenset(t) & self._tail_of(w)
            if t:
                clean[w] = t
        while depth > 0:
            merged = self._merge(depth, clean)
            if merged is None:
                break
            clean, depth = merged, depth - 1
        strata = tuple(sorted(clean.items(), key=lambda kv: self.pres.word_key(kv[0])))
        return StrataSet(self.pres, depth, strata)

    def _merge(self, depth: int, mapping: dict) -> Optional[dict]:
        parents = {}
        for w, t in mapping.items():
            parents.setdefault(w[:-1], {})[w[-1]] = t
        out = {}
        for parent, children in parents.items():
            limit = self._tail_of(parent)
            cand = frozenset(
                s for s in limit
                if all(self.atoms.derivative(e, frozenset([s])) <= children.get(e, frozenset()) for e in self.pres.alphabet)
            )
            for e in self.pres.alphabet:
                if self.atoms.derivative(e, cand) != children.get(e, frozenset()):
                    return None
            if cand:
                out[parent] = cand
        return out

    def _refined(self, A: StrataSet, depth: int) -> dict:
        mapping = dict(A.strata)
        for d in range(A.depth, depth):
            nxt = {}
            for w, t in mapping.items():
                for e in self.pres.alphabet:
                    child = self.atoms.derivative(e, t) & self._tail_of(w + (e,))
                    if child:
                        nxt[w + (e,)] = child
            mapping = nxt
        return mapping

    def whole(self):
        return StrataSet(self.pres, 0, (((), self.atoms.all()),))

    def empty(self):
        return StrataSet(self.pres, 0, ())

    def follower(self, alpha):
        return self._build(0, {(): self._tail_of(tuple(alpha))})

    def prefixed(self, A, beta):
        beta = tuple(beta)
        return self._build(A.depth + len(beta), {beta + w: t for w, t in A.strata})

    def from_atoms(self, prefix, atoms) -> StrataSet:
        return self._build(len(prefix), {tuple(prefix): frozenset(atoms)})

    # -- Boolean operations --------------------------------------------------

    def _binary(self, A, B, op):
        depth = max(A.depth, B.depth)
        a, b = self._refined(A, depth), self._refined(B, depth)
        out = {}
        for w in set(a) | set(b):
            t = op(a.get(w, frozenset()), b.get(w, frozenset()))
            if t:
                out[w] = t
        return self._build(depth, out)

    def union(self, A, B):
        return self._binary(A, B, frozenset.__or__)

    def intersection(self, A, B):
        return self._binary(A, B, frozenset.__and__)

    def complement(self, A):
        mapping = self._refined(A, A.depth)
        out = {}
        for w in self.pres.enumerate_language(A.depth):
            t = self._tail_of(w) - mapping.get(w, frozenset())
            if t:
                out[w] = t
        return self._build(A.depth, out)

    def member(self, x, A):
        if not self.pres.contains(x):
            return False
        t = dict(A.strata).get(x.initial(A.depth))
        return t is not None and self.pres.atom_of(x.shift(A.depth)) in t

    def relative_range(self, A, alpha):
        n = len(alpha)
        depth = max(A.depth, n)
        mapping = self._refined(A, depth)
        return self._build(depth - n, {w[n:]: t for w, t in mapping.items() if w[:n] == alpha})

    # -- singletons ---------------------------------------------------------

    def singleton(self, A):
        if len(A.strata) != 1:
            return None
        w, t = A.strata[0]
        if len(t) != 1:
            return None
        found = self.atoms.unique_point(next(iter(t)))
        if found is None:
            return None
        return normal_periodic(w + found[0], found[1])

    def some_member(self, A):
        if not A.strata:
            return None
        w, t = A.strata[0]
        u, v = self.atoms.lasso(min(t))
        return normal_periodic(w + u, v)

    def witnesses(self, A, count=2, reach=6) -> list:
        """Up to ``count`` distinct members, built from lassos."""
        out = []
        for n in range(reach + 1):
            for p in self.pres.enumerate_language(n):
                for w, t in A.strata:
                    for atom in sorted(t):
                        found = self.atoms.lasso(atom, after=p)
                        if found is None:
                            continue
                        x = normal_periodic(w + found[0], found[1])
                        if x not in out:
                            out.append(x)
                        if len(out) >= count:
                            return out
        return out

    # -- text form -----------------------------------------------------------

    def format(self, A) -> str:
        if A.is_empty():
            return "0"
        if A == self.whole():
            return "X"
        fmt = self.pres.format_word
        for depth in range(A.depth, A.depth + 4):
            mapping = self._refined(A, depth)
            if all(t == self._tail_of(w) for w, t in mapping.items()):
                words = sorted(mapping, key=self.pres.word_key)
                return " | ".join(f"Z({fmt(w)})" for w in words)
        access = self.pres.automaton.access
        terms = []
        for w, t in A.strata:
            full = self._tail_of(w)
            if t == full:
                terms.append(f"Z({fmt(w)})")
                continue
            single = [q for q in range(len(access)) if full & self.atoms.containing(q) == t]
            if single:
                terms.append(f"C({fmt(access[single[0]])};{fmt(w)})")
                continue
            for atom in sorted(t):
                sig = self.atoms.signatures[atom]
                parts = [f"Z({fmt(w)})"]
                for q in range(1, len(access)):
                    c = f"C({fmt(access[q])};{fmt(w)})"
                    parts.append(c if q in sig else "!" + c)
                terms.append("(" + " & ".join(parts) + ")")
        return " | ".join(terms)


class GraphRaySets(_Backend):
    def __init__(self, pres: GraphRay):
        self.pres = pres

    def _make(self, cofinite, points) -> PointSet:
        return PointSet(self.pres, cofinite, frozenset(points))

    def whole(self):
        return self._make(True, ())

    def empty(self):
        return self._make(False, ())

    def _finite_follower(self, alpha) -> frozenset:
        last = alpha[-1]
        if not self.pres.in_language(alpha):
            return frozenset()
        if isinstance(last, tuple):  # ray coordinate
            return frozenset([RayTailed((), last.ray, last.index + 1)])
        out = set()
        for t in self.pres.successors[last]:
            out.update(self.pres.points_from(t))
        return frozenset(out)

    def follower(self, alpha):
        alpha = tuple(alpha)
        for a in alpha:
            self.pres.check_letter(a)
        if not alpha:
            return self.whole()
        return self._make(False, self._finite_follower(alpha))

    def prefixed(self, A, beta):
        beta = tuple(beta)
        if not beta:
            return A
        if not self.pres.in_language(beta):
            return self.empty()
        pts = [self.pres.prepend(beta, y) for y in self._finite_follower(beta) if self.member(y, A)]
        return self._make(False, pts)

    def union(self, A, B):
        if A.cofinite and B.cofinite:
            return self._make(True, A.points & B.points)
        if A.cofinite:
            return self._make(True, A.points - B.points)
        if B.cofinite:
            return self._make(True, B.points - A.points)
        return self._make(False, A.points | B.points)

    def complement(self, A):
        return self._make(not A.cofinite, A.points)

    def intersection(self, A, B):
        return self.complement(self.union(self.complement(A), self.complement(B)))

    def member(self, x, A):
        if not self.pres.contains(x):
            return False
        return (x in A.points) != A.cofinite

    def relative_range(self, A, alpha):
        if not alpha:
            return A
        pts = [y for y in self._finite_follower(alpha) if self.member(self.pres.prepend(alpha, y), A)]
        return self._make(False, pts)

    def singleton(self, A):
        if not A.cofinite and len(A.points) == 1:
            return next(iter(A.points))
        return None

    def some_member(self, A):
        if not A.cofinite:
            return min(A.points, key=self.pres.point_key) if A.points else None
        k = 0
        while True:
            for r in self.pres.rays:
                x = RayTailed((), r, k)
                if x not in A.points:
                    return x
            k += 1

    def witnesses(self, A, count=2) -> list:
        if not A.cofinite:
            return self.pres.sorted_points(A.points)[:count]
        out, k = [], 0
        while len(out) < count:
            for r in self.pres.rays:
                x = RayTailed((), r, k)
                if x not in A.points and len(out) < count:
                    out.append(x)
            k += 1
        return out

    def isolating_prefix(self, x) -> tuple:
        """Shortest ``w`` with ``Z_w = {x}``."""
        n = 0
        while True:
            w = x.initial(n)
            if n and len(self.cylinder(w).points) == 1 and not self.cylinder(w).cofinite:
                return w
            n += 1

    def format(self, A) -> str:
        if A.is_empty():
            return "0"
        if A.cofinite and not A.points:
            return "X"
        fmt = self.pres.format_word
        body = " | ".join(f"Z({fmt(self.isolating_prefix(x))})" for x in self.pres.sorted_points(A.points))
        return f"!({body})" if A.cofinite else body


def set_algebra(pres: Presentation) -> _Backend:
    if isinstance(pres, SFT):
        return SFTSets(pres)
    if isinstance(pres, GraphRay):
        return GraphRaySets(pres)
    raise TypeError(f"no set algebra for {pres!r}")


class _SetParser:
    """Recursive descent over ``|`` (lowest), ``&``, prefix ``!``."""

    def __init__(self, backend: _Backend, text: str):
        self.b = backend
        self.text = text
        self.pos = 0

    def parse(self) -> SetU:
        out = self.expr()
        self._ws()
        if self.pos != len(self.text):
            raise ParseError(f"unexpected {self.text[self.pos:]!r} in set expression")
        return out

    def _ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expr(self):
        out = self.term()
        while self._peek() == "|":
            self.pos += 1
            out = out | self.term()
        return out

    def term(self):
        out = self.factor()
        while self._peek() == "&":
            self.pos += 1
            out = out & self.factor()
        return out

    def _args(self) -> list:
        end = self.text.find(")", self.pos)
        if end < 0:
            raise ParseError("unclosed parenthesis in set expression")
        inner = self.text[self.pos:end]
        self.pos = end + 1
        return [self.b.pres.parse_word(part) for part in inner.split(";")]

    def factor(self):
        c = self._peek()
        if c == "!":
            self.pos += 1
            return ~self.factor()
        if c == "(":
            self.pos += 1
            out = self.expr()
            if self._peek() != ")":
                raise ParseError("missing ')' in set expression")
            self.pos += 1
            return out
        m = re.compile(r"([CZF])\s*\(|X|0").match(self.text, self.pos)
        if not m:
            raise ParseError(f"bad set expression at {self.text[self.pos:]!r}")
        self.pos = m.end()
        tok = m.group(0)
        if tok == "X":
            return self.b.whole()
        if tok == "0":
            return self.b.empty()
        args = self._args()
        head = m.group(1)
        if head == "C":
            if len(args) != 2:
                raise ParseError("C(alpha;beta) takes two words")
            return self.b.generator(args[0], args[1])
        if len(args) != 1:
            raise ParseError(f"{head}(...) takes one word")
        if head == "Z":
            return self.b.generator((), args[0])
        return self.b.generator(args[0], ())


# -- module-level operations ---------------------------------------------------


def generator(alpha, beta, pres: Presentation) -> SetU:
    return pres.sets.generator(alpha, beta)


def cylinder(beta, pres: Presentation) -> SetU:
    return pres.sets.generator((), beta)


def follower(alpha, pres: Presentation) -> SetU:
    return pres.sets.generator(alpha, ())


def union(A: SetU, B: SetU) -> SetU:
    return A | B


def intersection(A: SetU, B: SetU) -> SetU:
    return A & B


def complement(A: SetU) -> SetU:
    return ~A


def member(x, A: SetU) -> bool:
    return A.pres.sets.member(x, A)


def relative_range(A: SetU, alpha) -> SetU:
    return A.relative_range(alpha)


def is_singleton(A: SetU):
    return A.singleton()


def parse_set(text: str, pres: Presentation) -> SetU:
    return pres.sets.parse(text)


def find_cycle_without_exit(pres: Presentation, max_len: int):
    """First ``(A, c)`` with ``A = {c^inf}`` in the algebra, ``|c| <= max_len``.

    Exhaustive over primitive words up to ``max_len``.  A singleton
    ``{c^inf}`` belongs to the algebra exactly when some rotation of
    ``c^inf`` is alone in its atom, so each candidate is decided exactly.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    if not isinstance(pres, SFT):
        return None  # acyclic sporadic part: no periodic point exists
    atoms = pres.automaton.atoms
    for n in range(1, max_len + 1):
        for c in pres.enumerate_language(n):
            x = normal_periodic((), c)
            if x.period != c or not pres.contains(x):
                continue
            for j in range(n):
                y = x.shift(j)
                atom = pres.atom_of(y)
                found = atoms.unique_point(atom)
                if found is None or normal_periodic(*found) != y:
                    continue
                A = pres.sets.from_atoms(x.initial(j), [atom])
                if A.singleton() == x and A <= A.relative_range(c):
                    return A, c
    return None
