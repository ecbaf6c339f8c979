"""Follower-set automaton of a shift of finite type.

States are the distinct follower sets ``F_w`` reachable from the empty
word.  Transitions are partial: a missing transition means the word left
the language.  Every retained state is live (an infinite run exists from
it), so a run that survives a finite word certifies that the word
extends to a point.

On top of the automaton sits the *atom table*: the atoms of the finite
Boolean algebra generated by the follower sets.  A point ``x`` lies in
the atom indexed by its signature ``{q : x is accepted from q}``.  Atom
emptiness, derivatives and point counts are all decided on the product
("macro") automaton that runs every state in parallel.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from .errors import PresentationError

Word = tuple


@dataclass(frozen=True, eq=False)
class FollowerAutomaton:
    letters: tuple
    delta: tuple          # delta[state][letter] -> state (missing key: dead)
    access: tuple         # shortest access word of every state, BFS order

    @classmethod
    def from_forbidden(cls, letters, forbidden) -> "FollowerAutomaton":
        letters = tuple(letters)
        forbidden = frozenset(tuple(f) for f in forbidden)
        keep = max((len(f) for f in forbidden), default=1) - 1

        def step(s, e):
            t = s + (e,)
            for i in range(len(t)):
                if t[i:] in forbidden:
                    return None
            return t[max(0, len(t) - keep):] if keep else ()

        # raw states: suffixes of bounded length
        raw = {(): {}}
        queue = deque([()])
        while queue:
            s = queue.popleft()
            for e in letters:
                t = step(s, e)
                if t is None:
                    continue
                raw[s][e] = t
                if t not in raw:
                    raw[t] = {}
                    queue.append(t)

        live = set(raw)
        changed = True
        while changed:
            changed = False
            for s in list(live):
                if not any(t in live for t in raw[s].values()):
                    live.discard(s)
                    changed = True
        if () not in live:
            raise PresentationError("the presentation defines an empty shift space")
        trans = {s: {e: t for e, t in raw[s].items() if t in live} for s in live}
        return cls._minimized(letters, trans, ())

    @classmethod
    def _minimized(cls, letters, trans, initial) -> "FollowerAutomaton":
        # Moore refinement; all states accept, the implicit sink rejects
        block = {s: 0 for s in trans}
        while True:
            sig = {
                s: (block[s],) + tuple(block.get(trans[s].get(e), -1) for e in letters)
                for s in trans
            }
            ids = {}
            new = {s: ids.setdefault(sig[s], len(ids)) for s in sorted(trans, key=lambda s: sig[s])}
            if len(ids) == len(set(block.values())):
                break
            block = new
        # renumber by BFS from the initial state, letters in declared order
        order = {block[initial]: 0}
        access = [()]
        queue = deque([initial])
        rep = {block[initial]: initial}
        while queue:
            s = queue.popleft()
            for e in letters:
                t = trans[s].get(e)
                if t is None or block[t] in order:
                    continue
                order[block[t]] = len(order)
                access.append(access[order[block[s]]] + (e,))
                rep[block[t]] = t
                queue.append(t)
        delta = [None] * len(order)
        for b, i in order.items():
            s = rep[b]
            delta[i] = {e: order[block[t]] for e, t in trans[s].items()}
        return cls(letters, tuple(delta), tuple(access))

    @property
    def size(self) -> int:
        return len(self.delta)

    def run(self, word, state: int = 0) -> Optional[int]:
        for e in word:
            state = self.delta[state].get(e)
            if state is None:
                return None
        return state

    def accepts_point(self, state: int, prefix, period) -> bool:
        """Whether ``prefix . period^inf`` can be read from ``state``."""
        state = self.run(prefix, state)
        seen = set()
        while state is not None and state not in seen:
            seen.add(state)
            state = self.run(period, state)
        return state is not None

    @cached_property
    def atoms(self) -> "AtomTable":
        return AtomTable(self)


@dataclass(eq=False)
class AtomTable:
    """Nonempty atoms of the Boolean algebra generated by follower sets."""

    fsm: FollowerAutomaton
    signatures: tuple = field(init=False)   # atom id -> frozenset of states
    index: dict = field(init=False)         # signature -> atom id

    def __post_init__(self):
        fsm = self.fsm
        n = fsm.size
        start = tuple(range(n))
        graph = {}
        queue = deque([start])
        graph[start] = None
        while queue:
            m = queue.popleft()
            succ = {}
            for e in fsm.letters:
                t = self._step(m, e)
                if t[0] < 0:   # the initial origin died: left the shift
                    continue
                succ[e] = t
                if t not in graph:
                    graph[t] = None
                    queue.append(t)
            graph[m] = succ
        self.graph = graph
        self.start = start
        keep = self._keeping_live(set(graph))
        self.full_live = keep
        sigs = sorted({self.origins(m) for m in keep}, key=lambda s: tuple(sorted(s)))
        self.signatures = tuple(sigs)
        self.index = {s: i for i, s in enumerate(sigs)}
        self._pre = {}

    def _step(self, m, e):
        d = self.fsm.delta
        return tuple(d[c].get(e, -1) if c >= 0 else -1 for c in m)

    @staticmethod
    def origins(m) -> frozenset:
        return frozenset(i for i, c in enumerate(m) if c >= 0)

    def _keeping_live(self, nodes) -> set:
        """Macro-states with an infinite path that never loses an origin."""
        alive = set(nodes)
        changed = True
        while changed:
            changed = False
            for m in list(alive):
                om = self.origins(m)
                if not any(t in alive and self.origins(t) == om for t in self.graph[m].values()):
                    alive.discard(m)
                    changed = True
        return alive

    def __len__(self):
        return len(self.signatures)

    def containing(self, state: int) -> frozenset:
        """Atom ids making up the follower set of ``state``."""
        return frozenset(i for i, s in enumerate(self.signatures) if state in s)

    def all(self) -> frozenset:
        return frozenset(range(len(self.signatures)))

    def signature_of(self, prefix, period) -> int:
        sig = frozenset(q for q in range(self.fsm.size) if self.fsm.accepts_point(q, prefix, period))
        return self.index[sig]

    def preimage(self, letter, atom: int) -> Optional[int]:
        """Atom of ``letter . y`` for any ``y`` in ``atom`` (None if not in X)."""
        key = (letter, atom)
        if key not in self._pre:
            s = self.signatures[atom]
            pre = frozenset(q for q in range(self.fsm.size) if self.fsm.delta[q].get(letter) in s)
            self._pre[key] = self.index.get(pre) if pre else None
        return self._pre[key]

    def derivative(self, letter, atoms: frozenset) -> frozenset:
        """Atoms of ``{y : letter . y in T}`` for ``T`` the union of ``atoms``."""
        return frozenset(i for i in range(len(self.signatures)) if self.preimage(letter, i) in atoms)

    # -- point counting -------------------------------------------------

    def _good(self, sig) -> set:
        """Macro-states from which some word of signature ``sig`` is readable."""
        region = {m for m in self.full_live if self.origins(m) == sig}
        good = set(region)
        changed = True
        while changed:
            changed = False
            for m, succ in self.graph.items():
                if m in good or not sig <= self.origins(m):
                    continue
                if any(t in good for t in succ.values()):
                    good.add(m)
                    changed = True
        return good

    def _successors(self, m, sig, good):
        return [(e, t) for e, t in self.graph[m].items() if t in good]

    def unique_point(self, atom: int):
        """The only word in ``atom`` as ``(prefix, period)``, or None if it has more."""
        sig = self.signatures[atom]
        good = self._good(sig)
        m = self.start
        trail = []
        seen = {}
        while m not in seen:
            seen[m] = len(trail)
            succ = self._successors(m, sig, good)
            if len(succ) != 1:
                return None
            e, m = succ[0]
            trail.append((e, m))
        # the loop must not hold any origin outside sig, otherwise it can be
        # unrolled any number of times before the exit
        loop_start = seen[m]
        loop_states = [t for _, t in trail[loop_start:]]
        if any(self.origins(t) != sig for t in loop_states):
            return None
        word = tuple(e for e, _ in trail)
        return word[:loop_start], word[loop_start:]

    def lasso(self, atom: int, after=()):
        """Some word of ``atom`` as ``(prefix, period)``.

        ``after`` forces a prefix, which lets callers pull several
        distinct members out of a branching atom.
        """
        sig = self.signatures[atom]
        good = self._good(sig)
        m = self.start
        word = []
        for e in after:
            m = self.graph[m].get(e)
            if m not in good:
                return None
            word.append(e)
        # shortest route into the region of signature sig
        region = {x for x in good if self.origins(x) == sig}
        prev = {m: None}
        queue = deque([m])
        target = None
        while queue:
            x = queue.popleft()
            if x in region:
                target = x
                break
            for e, t in self._successors(x, sig, good):
                if t not in prev:
                    prev[t] = (x, e)
                    queue.append(t)
        path = []
        x = target
        while prev[x] is not None:
            x0, e = prev[x]
            path.append(e)
            x = x0
        word.extend(reversed(path))
        m = target
        seen = {}
        tail = []
        while m not in seen:
            seen[m] = len(tail)
            e, m = next((e, t) for e, t in self.graph[m].items() if t in region)
            tail.append(e)
        i = seen[m]
        return tuple(word) + tuple(tail[:i]), tuple(tail[i:])
