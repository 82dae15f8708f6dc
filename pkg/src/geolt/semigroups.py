"""Transition semigroups of finite automata and their equational tests.

The transition semigroup of a minimal complete automaton is its syntactic
semigroup: elements are the state transformations induced by nonempty words,
composed left to right (the transformation of uv applies u's map, then v's).
Elements are stored as tuples, discovered by a BFS over right multiplication
by the generator letters in alphabet order, so each element's recorded
representative word is the shortlex-least word inducing it.

The predicates below are the algebraic side of the language tests used
elsewhere: idempotent + commutative, locally idempotent + commutative over
every idempotent's local submonoid, and aperiodicity.  Each returns a Check
carrying representative-word witnesses on failure.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .alphabet import Alphabet, Word
from .automata import Dfa, minimize
from .errors import BudgetError

DEFAULT_ELEMENT_BUDGET = 10**6

Transformation = tuple[int, ...]


def then(f: Transformation, g: Transformation) -> Transformation:
    """Composite transformation: apply f, then g."""
    return tuple(map(g.__getitem__, f))


@dataclass(frozen=True)
class Check:
    """Outcome of an equational test; witness holds representative words."""

    ok: bool
    witness: tuple[Word, ...] | None = None
    label: str = ""

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class TransitionSemigroup:
    alphabet: Alphabet
    degree: int  # number of automaton states acted on
    elements: list[Transformation]  # discovery order; index 0 is first letter image
    representative: list[Word]  # shortlex-least word per element
    generator_image: list[int]  # element id per alphabet symbol
    index: dict[Transformation, int] = field(repr=False, default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Transformation:
        return tuple(range(self.degree))

    def eval_word(self, w: Word) -> Transformation:
        """Image of a word; the empty word maps to the adjoined identity."""
        t = self.identity
        for x in w:
            t = then(t, self.elements[self.generator_image[x]])
        return t

    def word_of(self, t: Transformation) -> Word:
        return self.representative[self.index[t]]

    def idempotents(self) -> list[Transformation]:
        return [t for t in self.elements if then(t, t) == t]


def transition_semigroup(d: Dfa,
                         element_budget: int = DEFAULT_ELEMENT_BUDGET,
                         minimal: bool = False) -> TransitionSemigroup:
    """Transition semigroup of minimize(d).

    Pass minimal=True to skip the minimization when d is already minimal.
    """
    if not minimal:
        d = minimize(d)
    n = d.state_count
    k = d.alphabet.size
    gens = [tuple(d.transitions[q][x] for q in range(n)) for x in range(k)]

    elements: list[Transformation] = []
    reps: list[Word] = []
    index: dict[Transformation, int] = {}
    gen_image: list[int] = []
    for x, t in enumerate(gens):
        i = index.get(t)
        if i is None:
            i = len(elements)
            index[t] = i
            elements.append(t)
            reps.append((x,))
        gen_image.append(i)

    queue = deque(range(len(elements)))
    while queue:
        i = queue.popleft()
        t = elements[i]
        w = reps[i]
        for x in range(k):
            t2 = then(t, gens[x])
            if t2 not in index:
                if len(elements) >= element_budget:
                    raise BudgetError("semigroup elements", element_budget)
                index[t2] = len(elements)
                queue.append(len(elements))
                elements.append(t2)
                reps.append(w + (x,))
    return TransitionSemigroup(d.alphabet, n, elements, reps, gen_image, index)


def is_idempotent(s: TransitionSemigroup) -> Check:
    for t in s.elements:
        if then(t, t) != t:
            return Check(False, (s.word_of(t),), "s with ss != s")
    return Check(True)


def is_commutative(s: TransitionSemigroup) -> Check:
    els = s.elements
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            if then(els[i], els[j]) != then(els[j], els[i]):
                return Check(False, (s.representative[i], s.representative[j]),
                             "s, t with st != ts")
    return Check(True)


def is_locally_idempotent_commutative(s: TransitionSemigroup) -> Check:
    """For every idempotent e: eSe is idempotent and commutative.

    This is the algebraic characterization of local testability.  Witnesses
    name (e, s) with (ese)^2 != ese, or (e, s, t) with (ese)(ete) != (ete)(ese).
    """
    for e in s.idempotents():
        e_word = s.word_of(e)
        seen: dict[Transformation, int] = {}
        local: list[tuple[Transformation, int]] = []
        for i, t in enumerate(s.elements):
            u = then(then(e, t), e)
            if u in seen:
                continue
            seen[u] = i
            if then(u, u) != u:
                return Check(False, (e_word, s.representative[i]),
                             "idempotent e and s with (ese)^2 != ese")
            for v, j in local:
                if then(u, v) != then(v, u):
                    return Check(
                        False,
                        (e_word, s.representative[i], s.representative[j]),
                        "idempotent e and s, t with ese.ete != ete.ese")
            local.append((u, i))
    return Check(True)


def is_aperiodic(s: TransitionSemigroup) -> Check:
    """Whether every element's power sequence stabilizes (no nontrivial cycle)."""
    for i, t in enumerate(s.elements):
        seen: dict[Transformation, int] = {}
        power = t
        exp = 1
        while power not in seen:
            seen[power] = exp
            power = then(power, t)
            exp += 1
        if exp - seen[power] > 1:
            return Check(False, (s.representative[i],),
                         f"s with s^{seen[power]} = s^{exp}, cycle length {exp - seen[power]}")
    return Check(True)
