"""Automata over padded pairs of words.

A pair automaton reads two words (u, v) over the same alphabet in lockstep;
the shorter word is padded at its right end so both tracks have the length of
the longer one.  Transition labels are pairs (l, r) where each side is a
symbol index or PAD (None); (PAD, PAD) never occurs.  Padding is terminal per
tape: once a tape has read PAD, it reads PAD forever.  That property is kept
structural, not just behavioural: every state carries an implicit padding
phase (no tape padded / first padded / second padded), and construction
verifies that each reachable state is used in exactly one phase with only
phase-legal outgoing labels.

The operations here are the two-tape half of the toolkit: restriction to
equal-length or strictly-first-longer pairs, product with a one-tape
automaton on either track, projection to one track, and witness search.
All are label-deterministic in, label-deterministic out.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .alphabet import Alphabet, Word
from .automata import Dfa, Nfa
from .errors import SpecError

PAD = None

# padding phases
_BOTH = 0
_FIRST_PADDED = 1
_SECOND_PADDED = 2

Label = tuple  # (int | None, int | None)


def _label_key(label: Label, size: int) -> tuple[int, int]:
    l, r = label
    return (size if l is PAD else l, size if r is PAD else r)


def _phase_after(phase: int, label: Label) -> int:
    """Phase of the target state, or -1 if the label is illegal in `phase`."""
    l, r = label
    if l is PAD and r is PAD:
        return -1
    if l is PAD:
        return _FIRST_PADDED if phase in (_BOTH, _FIRST_PADDED) else -1
    if r is PAD:
        return _SECOND_PADDED if phase in (_BOTH, _SECOND_PADDED) else -1
    return _BOTH if phase == _BOTH else -1


@dataclass(frozen=True)
class PairAutomaton:
    alphabet: Alphabet
    transitions: tuple[tuple[tuple[int | None, int | None, int], ...], ...]
    start: int
    accepting: frozenset[int]

    def __post_init__(self):
        n = len(self.transitions)
        if n == 0:
            raise SpecError("pair automaton needs at least the start state")
        if not 0 <= self.start < n:
            raise SpecError("start state out of range")
        for q, row in enumerate(self.transitions):
            seen = set()
            for l, r, t in row:
                if l is PAD and r is PAD:
                    raise SpecError("label (PAD, PAD) is not allowed")
                if (l, r) in seen:
                    raise SpecError(f"state {q} has two transitions on {(l, r)}")
                seen.add((l, r))
                if not 0 <= t < n:
                    raise SpecError("transition target out of range")
        self._check_phases()

    def _check_phases(self) -> None:
        phase: dict[int, int] = {self.start: _BOTH}
        queue = deque([self.start])
        while queue:
            q = queue.popleft()
            for l, r, t in self.transitions[q]:
                p = _phase_after(phase[q], (l, r))
                if p < 0:
                    raise SpecError(
                        f"state {q} reads {(l, r)} after its tape already padded")
                if t in phase:
                    if phase[t] != p:
                        raise SpecError(
                            f"state {t} is reachable in two padding phases")
                else:
                    phase[t] = p
                    queue.append(t)

    @property
    def state_count(self) -> int:
        return len(self.transitions)

    def label_map(self, state: int) -> dict[Label, int]:
        return {(l, r): t for l, r, t in self.transitions[state]}

    def accepts_pair(self, u: Word, v: Word) -> bool:
        n = max(len(u), len(v))
        q = self.start
        row = self.label_map(q)
        for i in range(n):
            l = u[i] if i < len(u) else PAD
            r = v[i] if i < len(v) else PAD
            if (l, r) not in row:
                return False
            q = row[(l, r)]
            row = self.label_map(q)
        return q in self.accepting

    def sorted_labels(self, state: int):
        size = self.alphabet.size
        return sorted(self.transitions[state],
                      key=lambda e: _label_key((e[0], e[1]), size))

    def to_json(self) -> dict:
        return {
            "format": 1,
            "kind": "pair",
            "alphabet": self.alphabet.to_json(),
            "states": self.state_count,
            "start": self.start,
            "accepting": sorted(self.accepting),
            "transitions": [[[l, r, t] for l, r, t in row]
                            for row in self.transitions],
        }

    @staticmethod
    def from_json(data: dict) -> "PairAutomaton":
        if not isinstance(data, dict) or data.get("kind") != "pair":
            raise SpecError("not a pair automaton description")
        alphabet = Alphabet.from_json(data["alphabet"])
        try:
            trans = tuple(tuple((l, r, t) for l, r, t in row)
                          for row in data["transitions"])
            return PairAutomaton(alphabet, trans, data["start"],
                                 frozenset(data["accepting"]))
        except (KeyError, TypeError) as e:
            raise SpecError(f"bad pair automaton description: {e}") from None

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @staticmethod
    def loads(text: str) -> "PairAutomaton":
        return PairAutomaton.from_json(json.loads(text))


def canonicalize_pair(p: PairAutomaton) -> PairAutomaton:
    """BFS renumbering by sorted label order; drops unreachable states."""
    order = [p.start]
    renum = {p.start: 0}
    for q in order:
        for l, r, t in p.sorted_labels(q):
            if t not in renum:
                renum[t] = len(order)
                order.append(t)
    rows = tuple(
        tuple((l, r, renum[t]) for l, r, t in p.sorted_labels(q))
        for q in order
    )
    acc = frozenset(renum[q] for q in p.accepting if q in renum)
    return PairAutomaton(p.alphabet, rows, 0, acc)


def trim_pair(p: PairAutomaton) -> PairAutomaton:
    """Keep only states on some accepting path; the start state is kept."""
    n = p.state_count
    rev: list[list[int]] = [[] for _ in range(n)]
    for q, row in enumerate(p.transitions):
        for _, _, t in row:
            rev[t].append(q)
    live = set(p.accepting)
    queue = deque(live)
    while queue:
        q = queue.popleft()
        for s in rev[q]:
            if s not in live:
                live.add(s)
                queue.append(s)
    live.add(p.start)
    rows = tuple(
        tuple((l, r, t) for l, r, t in row if t in live) if q in live else ()
        for q, row in enumerate(p.transitions)
    )
    return canonicalize_pair(PairAutomaton(p.alphabet, rows, p.start, p.accepting & frozenset(live)))


def restrict_equal_length(p: PairAutomaton) -> PairAutomaton:
    """Sub-language of pairs (u, v) with no padding at all: l(u) = l(v)."""
    rows = tuple(
        tuple((l, r, t) for l, r, t in row if l is not PAD and r is not PAD)
        for row in p.transitions
    )
    return trim_pair(PairAutomaton(p.alphabet, rows, p.start, p.accepting))


def restrict_first_longer(p: PairAutomaton) -> PairAutomaton:
    """Sub-language of pairs with l(u) > l(v): the second tape pads first.

    States are split by whether the second tape has started padding; labels
    that pad the first tape are dropped, and acceptance requires at least one
    (x, PAD) step.
    """
    n = p.state_count
    index: dict[tuple[int, int], int] = {}
    order: list[tuple[int, int]] = []

    def num(node: tuple[int, int]) -> int:
        i = index.get(node)
        if i is None:
            i = len(order)
            index[node] = i
            order.append(node)
        return i

    start = num((p.start, 0))
    rows_list: list[tuple] = []
    i = 0
    while i < len(order):
        q, padded = order[i]
        row = []
        for l, r, t in p.transitions[q]:
            if l is PAD:
                continue
            if r is PAD:
                row.append((l, r, num((t, 1))))
            elif not padded:
                row.append((l, r, num((t, 0))))
        rows_list.append(tuple(row))
        i += 1
    rows = tuple(rows_list)
    acc = frozenset(i for i, (q, padded) in enumerate(order)
                    if padded and q in p.accepting)
    return trim_pair(PairAutomaton(p.alphabet, rows, start, acc))


def pair_restrict(p: PairAutomaton, mode: str) -> PairAutomaton:
    if mode == "equal_length":
        return restrict_equal_length(p)
    if mode == "first_longer":
        return restrict_first_longer(p)
    if mode == "any":
        return p
    raise SpecError(f"unknown restriction mode {mode!r}")


def pair_product(p: PairAutomaton, d: Dfa, side: str) -> PairAutomaton:
    """Restrict one track of p to L(d): side is 'first' or 'second'.

    The d-component advances on that track's real letters and stands still on
    its PAD steps; a padded track has already spelled its complete word, so
    acceptance simply requires the d-component to be accepting at the end.
    """
    if side not in ("first", "second"):
        raise SpecError("side must be 'first' or 'second'")
    if p.alphabet != d.alphabet:
        raise SpecError("pair automaton and dfa are over different alphabets")
    first = side == "first"
    index: dict[tuple[int, int], int] = {}
    order: list[tuple[int, int]] = []

    def num(node: tuple[int, int]) -> int:
        i = index.get(node)
        if i is None:
            i = len(order)
            index[node] = i
            order.append(node)
        return i

    start = num((p.start, d.start))
    rows: list[tuple] = []
    i = 0
    while i < len(order):
        q, s = order[i]
        row = []
        for l, r, t in p.transitions[q]:
            letter = l if first else r
            s2 = s if letter is PAD else d.transitions[s][letter]
            row.append((l, r, num((t, s2))))
        rows.append(tuple(row))
        i += 1
    acc = frozenset(i for i, (q, s) in enumerate(order)
                    if q in p.accepting and s in d.accepting)
    return trim_pair(PairAutomaton(p.alphabet, tuple(rows), start, acc))


def pair_project(p: PairAutomaton, side: str) -> Nfa:
    """Forget one track.  PAD steps on the kept track become silent moves."""
    if side not in ("first", "second"):
        raise SpecError("side must be 'first' or 'second'")
    first = side == "first"
    n = p.state_count
    k = p.alphabet.size
    table: list[list[set[int]]] = [[set() for _ in range(k)] for _ in range(n)]
    eps: list[set[int]] = [set() for _ in range(n)]
    for q, row in enumerate(p.transitions):
        for l, r, t in row:
            letter = l if first else r
            if letter is PAD:
                eps[q].add(t)
            else:
                table[q][letter].add(t)
    return Nfa(
        p.alphabet,
        tuple(tuple(frozenset(cell) for cell in row) for row in table),
        frozenset([p.start]),
        p.accepting,
        tuple(frozenset(s) for s in eps),
    )


def shortest_accepted_pair(p: PairAutomaton) -> tuple[Word, Word] | None:
    """Shortest accepted pair (fewest steps, least labels), or None."""
    if p.start in p.accepting:
        return ((), ())
    parent: dict[int, tuple | None] = {p.start: None}
    queue = deque([p.start])
    goal = None
    while queue:
        q = queue.popleft()
        for l, r, t in p.sorted_labels(q):
            if t not in parent:
                parent[t] = (q, (l, r))
                if t in p.accepting:
                    goal = t
                    queue.clear()
                    break
                queue.append(t)
    if goal is None:
        return None
    labels = []
    node = goal
    while parent[node] is not None:
        node, lab = parent[node]
        labels.append(lab)
    labels.reverse()
    u = tuple(l for l, _ in labels if l is not PAD)
    v = tuple(r for _, r in labels if r is not PAD)
    return (u, v)


def accepted_pairs(p: PairAutomaton, max_len: int) -> Iterator[tuple[Word, Word]]:
    """All accepted pairs with both sides of length <= max_len.

    Walks the path tree pruned to states that can still reach acceptance, so
    the cost tracks the number of accepted pairs rather than the label count
    to the power max_len.
    """
    n = p.state_count
    rev: list[list[int]] = [[] for _ in range(n)]
    for q, row in enumerate(p.transitions):
        for _, _, t in row:
            rev[t].append(q)
    live = set(p.accepting)
    queue = deque(live)
    while queue:
        q = queue.popleft()
        for s in rev[q]:
            if s not in live:
                live.add(s)
                queue.append(s)
    if p.start not in live:
        return
    level: list[tuple[Word, Word, int]] = [((), (), p.start)]
    if p.start in p.accepting:
        yield ((), ())
    for _ in range(max_len):
        nxt = []
        for u, v, q in level:
            for l, r, t in p.sorted_labels(q):
                if t not in live:
                    continue
                u2 = u if l is PAD else u + (l,)
                v2 = v if r is PAD else v + (r,)
                if t in p.accepting:
                    yield (u2, v2)
                nxt.append((u2, v2, t))
        level = nxt
        if not level:
            break
