"""Deterministic and nondeterministic finite automata over one tape.

Every Dfa in this package is complete (the transition function is total; a
language that is not all of X* has an explicit dead state) and canonical:
states are numbered in BFS discovery order from the start state, expanding
symbols in alphabet order, and only reachable states are kept.  Two canonical
Dfas over the same alphabet accept the same language with the same reachable
structure iff they are equal as values, and serializing the same construction
twice yields identical bytes.

All language-level operations (boolean combinations, equivalence, emptiness,
enumeration) work on complete automata and return canonical ones.  Witnesses
are always shortest and shortlex-least: every search below is a BFS expanding
symbols in alphabet order.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .alphabet import EPSILON, Alphabet, Word
from .errors import BudgetError, SpecError

DEFAULT_STATE_BUDGET = 10**6


@dataclass(frozen=True)
class Dfa:
    alphabet: Alphabet
    transitions: tuple[tuple[int, ...], ...]  # [state][symbol] -> state
    start: int
    accepting: frozenset[int]

    def __post_init__(self):
        n = len(self.transitions)
        k = self.alphabet.size
        if n == 0:
            raise SpecError("a complete automaton has at least one state")
        for row in self.transitions:
            if len(row) != k:
                raise SpecError("transition table must be total")
            for t in row:
                if not 0 <= t < n:
                    raise SpecError("transition target out of range")
        if not 0 <= self.start < n:
            raise SpecError("start state out of range")
        if not all(0 <= q < n for q in self.accepting):
            raise SpecError("accepting state out of range")

    @property
    def state_count(self) -> int:
        return len(self.transitions)

    def step(self, state: int, symbol: int) -> int:
        return self.transitions[state][symbol]

    def walk(self, word: Word, state: int | None = None) -> int:
        q = self.start if state is None else state
        for x in word:
            q = self.transitions[q][x]
        return q

    def accepts(self, word: Word) -> bool:
        return self.walk(word) in self.accepting

    def reachable(self) -> list[int]:
        """Reachable states in BFS discovery order (alphabet order)."""
        seen = {self.start}
        order = [self.start]
        for q in order:
            for t in self.transitions[q]:
                if t not in seen:
                    seen.add(t)
                    order.append(t)
        return order

    def coaccessible(self) -> set[int]:
        """States from which some accepting state is reachable."""
        n = self.state_count
        rev: list[list[int]] = [[] for _ in range(n)]
        for p, row in enumerate(self.transitions):
            for t in row:
                rev[t].append(p)
        seen = set(self.accepting)
        queue = deque(self.accepting)
        while queue:
            q = queue.popleft()
            for p in rev[q]:
                if p not in seen:
                    seen.add(p)
                    queue.append(p)
        return seen

    def live_state_count(self) -> int:
        """Number of reachable states that can still reach acceptance.

        For a prefix-closed language this is the state count of the automaton
        with the dead state stripped, which is how trimmed word acceptors are
        usually sized.
        """
        reach = set(self.reachable())
        return len(reach & self.coaccessible())

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "format": 1,
            "kind": "dfa",
            "alphabet": self.alphabet.to_json(),
            "states": self.state_count,
            "start": self.start,
            "accepting": sorted(self.accepting),
            "transitions": [list(row) for row in self.transitions],
        }

    @staticmethod
    def from_json(data: dict) -> "Dfa":
        if not isinstance(data, dict) or data.get("kind", "dfa") != "dfa":
            raise SpecError("not a dfa description")
        alphabet = Alphabet.from_json(data["alphabet"])
        try:
            trans = tuple(tuple(row) for row in data["transitions"])
            dfa = Dfa(alphabet, trans, data["start"], frozenset(data["accepting"]))
        except (KeyError, TypeError) as e:
            raise SpecError(f"bad dfa description: {e}") from None
        if len(trans) != data.get("states", len(trans)):
            raise SpecError("state count does not match transition table")
        return dfa

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @staticmethod
    def loads(text: str) -> "Dfa":
        return Dfa.from_json(json.loads(text))


def make_dfa(alphabet: Alphabet,
             transitions: dict[tuple[int, int], int],
             start: int,
             accepting: Iterable[int],
             states: int) -> Dfa:
    """Assemble a Dfa from a partial transition map, completing with a sink."""
    k = alphabet.size
    need_sink = any((q, x) not in transitions for q in range(states) for x in range(k))
    sink = states if need_sink else None
    total = states + (1 if need_sink else 0)
    rows = []
    for q in range(total):
        row = []
        for x in range(k):
            if q == sink:
                row.append(sink)
            else:
                row.append(transitions.get((q, x), sink if sink is not None else q))
        rows.append(tuple(row))
    return canonicalize(Dfa(alphabet, tuple(rows), start, frozenset(accepting)))


def canonicalize(d: Dfa) -> Dfa:
    """Renumber states in BFS order from the start; drop unreachable states."""
    order = d.reachable()
    renum = {q: i for i, q in enumerate(order)}
    rows = tuple(tuple(renum[t] for t in d.transitions[q]) for q in order)
    acc = frozenset(renum[q] for q in d.accepting if q in renum)
    return Dfa(d.alphabet, rows, renum[d.start], acc)


def minimize(d: Dfa) -> Dfa:
    """Canonical minimal complete automaton of L(d) (Hopcroft refinement)."""
    d = canonicalize(d)
    n = d.state_count
    k = d.alphabet.size
    # preimages per symbol
    pre: list[list[list[int]]] = [[[] for _ in range(n)] for _ in range(k)]
    for p in range(n):
        row = d.transitions[p]
        for x in range(k):
            pre[x][row[x]].append(p)

    acc = set(d.accepting)
    non = set(range(n)) - acc
    blocks: list[set[int]] = [s for s in (acc, non) if s]
    block_of = [0] * n
    for b, s in enumerate(blocks):
        for q in s:
            block_of[q] = b
    work = {(b, x) for b in range(len(blocks)) for x in range(k)}

    while work:
        b, x = work.pop()
        movers: dict[int, list[int]] = {}
        for q in blocks[b]:
            for p in pre[x][q]:
                movers.setdefault(block_of[p], []).append(p)
        for src, hit in movers.items():
            if len(hit) == len(blocks[src]):
                continue
            hit_set = set(hit)
            rest = blocks[src] - hit_set
            # keep the larger half under the old id; the smaller half is the
            # new block, and queueing just the smaller half keeps Hopcroft's
            # n log n bound while preserving refinement coverage
            if len(hit_set) <= len(rest):
                small, large = hit_set, rest
            else:
                small, large = rest, hit_set
            blocks[src] = large
            new = len(blocks)
            blocks.append(small)
            for q in small:
                block_of[q] = new
            for y in range(k):
                work.add((new, y))

    rows = tuple(
        tuple(block_of[d.transitions[next(iter(blocks[b]))][x]] for x in range(k))
        for b in range(len(blocks))
    )
    acc_blocks = frozenset(block_of[q] for q in d.accepting)
    return canonicalize(Dfa(d.alphabet, rows, block_of[d.start], acc_blocks))


def _check_same_alphabet(a: Dfa, b: Dfa) -> None:
    if a.alphabet != b.alphabet:
        raise SpecError("automata are over different alphabets")


def _product(a: Dfa, b: Dfa, accept: Callable[[bool, bool], bool]) -> Dfa:
    _check_same_alphabet(a, b)
    k = a.alphabet.size
    start = (a.start, b.start)
    index = {start: 0}
    order = [start]
    rows: list[tuple[int, ...]] = []
    for p, q in order:
        ra, rb = a.transitions[p], b.transitions[q]
        row = []
        for x in range(k):
            t = (ra[x], rb[x])
            i = index.get(t)
            if i is None:
                i = len(order)
                index[t] = i
                order.append(t)
            row.append(i)
        rows.append(tuple(row))
    acc = frozenset(
        i for i, (p, q) in enumerate(order)
        if accept(p in a.accepting, q in b.accepting)
    )
    return Dfa(a.alphabet, tuple(rows), 0, acc)


def union(a: Dfa, b: Dfa) -> Dfa:
    return _product(a, b, lambda x, y: x or y)


def intersection(a: Dfa, b: Dfa) -> Dfa:
    return _product(a, b, lambda x, y: x and y)


def difference(a: Dfa, b: Dfa) -> Dfa:
    return _product(a, b, lambda x, y: x and not y)


def complement(d: Dfa) -> Dfa:
    return Dfa(d.alphabet, d.transitions, d.start,
               frozenset(range(d.state_count)) - d.accepting)


def is_empty(d: Dfa) -> bool:
    return not any(q in d.accepting for q in d.reachable())


def _backtrack(parent: dict, node) -> Word:
    word = []
    while parent[node] is not None:
        node, sym = parent[node]
        word.append(sym)
    word.reverse()
    return tuple(word)


def shortest_accepted(d: Dfa) -> Word | None:
    """Shortest, shortlex-least accepted word, or None if L(d) is empty."""
    if d.start in d.accepting:
        return EPSILON
    parent: dict[int, tuple[int, int] | None] = {d.start: None}
    queue = deque([d.start])
    while queue:
        q = queue.popleft()
        for x, t in enumerate(d.transitions[q]):
            if t not in parent:
                parent[t] = (q, x)
                if t in d.accepting:
                    return _backtrack(parent, t)
                queue.append(t)
    return None


def counterexample(a: Dfa, b: Dfa) -> Word | None:
    """Shortest, shortlex-least word accepted by exactly one of a, b."""
    _check_same_alphabet(a, b)
    start = (a.start, b.start)

    def differs(p: int, q: int) -> bool:
        return (p in a.accepting) != (q in b.accepting)

    if differs(*start):
        return EPSILON
    parent: dict[tuple[int, int], tuple | None] = {start: None}
    queue = deque([start])
    while queue:
        pq = queue.popleft()
        p, q = pq
        ra, rb = a.transitions[p], b.transitions[q]
        for x in range(a.alphabet.size):
            t = (ra[x], rb[x])
            if t not in parent:
                parent[t] = (pq, x)
                if differs(*t):
                    return _backtrack(parent, t)
                queue.append(t)
    return None


def equivalent(a: Dfa, b: Dfa) -> bool:
    return counterexample(a, b) is None


def enumerate_words(d: Dfa, max_len: int) -> list[Word]:
    """Accepted words of length <= max_len, in shortlex order.

    The walk is over the word tree, pruned at states that can no longer reach
    acceptance, so the cost is proportional to the answer, not to |X|^max_len.
    """
    live = d.coaccessible()
    out: list[Word] = []
    if d.start not in live:
        return out
    level: list[tuple[Word, int]] = [(EPSILON, d.start)]
    if d.start in d.accepting:
        out.append(EPSILON)
    for _ in range(max_len):
        nxt: list[tuple[Word, int]] = []
        for w, q in level:
            row = d.transitions[q]
            for x in range(d.alphabet.size):
                t = row[x]
                if t in live:
                    wx = w + (x,)
                    nxt.append((wx, t))
                    if t in d.accepting:
                        out.append(wx)
        level = nxt
        if not level:
            break
    return out


def is_prefix_closed(d: Dfa) -> tuple[bool, Word | None]:
    """Whether L(d) is prefix-closed.

    Fails iff some reachable state that can still reach acceptance is itself
    non-accepting; returns the shortest shortlex-least word to such a state.
    """
    live = d.coaccessible()
    if d.start in live and d.start not in d.accepting:
        return (False, EPSILON)
    parent: dict[int, tuple[int, int] | None] = {d.start: None}
    queue = deque([d.start])
    while queue:
        q = queue.popleft()
        for x, t in enumerate(d.transitions[q]):
            if t not in parent:
                parent[t] = (q, x)
                if t in live and t not in d.accepting:
                    return (False, _backtrack(parent, t))
                queue.append(t)
    return (True, None)


def inverse_image(d: Dfa, target_alphabet: Alphabet, image: list[int]) -> Dfa:
    """Preimage of L(d) under the letter-to-letter morphism x -> image[x].

    `image[x]` is the index in d.alphabet of the image of symbol x of
    target_alphabet.  The morphism is length-preserving, so the preimage
    automaton just relabels transitions.
    """
    if len(image) != target_alphabet.size:
        raise SpecError("image must map every symbol of the target alphabet")
    for i in image:
        if not 0 <= i < d.alphabet.size:
            raise SpecError("image symbol index out of range")
    rows = tuple(tuple(row[i] for i in image) for row in d.transitions)
    return canonicalize(Dfa(target_alphabet, rows, d.start, d.accepting))


@dataclass(frozen=True)
class Nfa:
    """Nondeterministic automaton; `epsilon` holds silent moves per state."""

    alphabet: Alphabet
    transitions: tuple[tuple[frozenset[int], ...], ...]  # [state][symbol] -> set
    starts: frozenset[int]
    accepting: frozenset[int]
    epsilon: tuple[frozenset[int], ...] = ()

    def __post_init__(self):
        if not self.epsilon:
            object.__setattr__(self, "epsilon",
                               tuple(frozenset() for _ in self.transitions))
        n = len(self.transitions)
        k = self.alphabet.size
        if len(self.epsilon) != n:
            raise SpecError("epsilon table must cover every state")
        for row in self.transitions:
            if len(row) != k:
                raise SpecError("nfa transition table must have a set per symbol")

    @property
    def state_count(self) -> int:
        return len(self.transitions)

    def eps_closure(self, states: Iterable[int]) -> frozenset[int]:
        seen = set(states)
        queue = list(seen)
        while queue:
            q = queue.pop()
            for t in self.epsilon[q]:
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
        return frozenset(seen)


def determinize(n: Nfa, state_budget: int = DEFAULT_STATE_BUDGET) -> Dfa:
    """Subset construction; result is canonical and complete."""
    k = n.alphabet.size
    start = n.eps_closure(n.starts)
    index: dict[frozenset[int], int] = {start: 0}
    order = [start]
    rows: list[tuple[int, ...]] = []
    for subset in order:
        row = []
        for x in range(k):
            nxt: set[int] = set()
            for q in subset:
                nxt |= n.transitions[q][x]
            target = n.eps_closure(nxt) if nxt else frozenset()
            i = index.get(target)
            if i is None:
                i = len(order)
                if i >= state_budget:
                    raise BudgetError("determinization states", state_budget)
                index[target] = i
                order.append(target)
            row.append(i)
        rows.append(tuple(row))
    acc = frozenset(i for i, s in enumerate(order) if s & n.accepting)
    return canonicalize(Dfa(n.alphabet, tuple(rows), 0, acc))
