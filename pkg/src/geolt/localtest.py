"""Local testability of regular languages.

Two words are k-similar when they share the same prefix of length k-1, the
same suffix of length k-1, and the same set of length-k factors (words
shorter than k-1 are their own prefix and suffix; words shorter than k have
no factors).  A language is k-testable when membership depends only on the
k-similarity class, and locally testable when it is k-testable for some k.

Two independent deciders are provided and cross-checked in the test suite:

* is_k_testable walks the product of the target automaton with the lazily
  built profile classifier, whose states are exactly the reachable profiles.
  It is definitionally exact, returns a violating word pair, and is
  exponential in k and the alphabet, so a budget turns overruns into an
  explicit "unknown" verdict.

* is_k_testable_semigroup checks two equational conditions on the syntactic
  semigroup S with an identity adjoined to the quantification range: for
  every image m of a word x of length k-1, (1) m s m t m = m t m s m for all
  s, t, and (2) for every word w = xt of length >= k whose length-(k-1)
  prefix and suffix both equal x, appending t again does not move the image:
  phi(w) phi(t) = phi(w).  Both quantifications are finite: (1) over images,
  (2) over the closure of (image, tail image, prefix, suffix) tuples.

Condition (2) is exactly the insertion w ~ wt valid for every bordered word
(the new suffix copies the border, the junction factors already occur along
the prefix xt of w), so both conditions are necessary; together they are the
classical equational characterization of k-testability.  The plain
idempotency variant ("square": phi(w) itself must be idempotent whenever
prefix = suffix) is strictly stronger and wrong -- the 2-testable language
of words without factor aa has phi(aba) not idempotent -- but it is kept
selectable because the test suite demonstrates the difference against the
definitional decider.

Aperiodicity of the syntactic semigroup (star-freeness of the language) and
the local idempotent-commutative test live in `semigroups`; this module adds
the k-indexed tests, min_k search, and the long-word repetition witness.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .alphabet import EPSILON, Alphabet, Word
from .automata import Dfa
from .errors import BudgetError, SpecError
from .semigroups import (TransitionSemigroup, is_locally_idempotent_commutative,
                         then, transition_semigroup)

DEFAULT_PROFILE_BUDGET = 10**6
DEFAULT_TRIPLE_BUDGET = 10**6


# -- profiles -----------------------------------------------------------------

@dataclass(frozen=True)
class KProfile:
    prefix: Word
    suffix: Word
    factors: frozenset[Word]


def k_profile(w: Sequence, k: int) -> KProfile:
    if k < 1:
        raise SpecError("k must be >= 1")
    w = tuple(w)
    j = k - 1
    prefix = w if len(w) < j else w[:j]
    suffix = w if len(w) < j else w[len(w) - j:]
    factors = frozenset(w[i:i + k] for i in range(len(w) - k + 1))
    return KProfile(prefix, suffix, factors)


def sim_k(u: Sequence, v: Sequence, k: int) -> bool:
    return k_profile(u, k) == k_profile(v, k)


def support(w: Sequence) -> frozenset:
    return frozenset(w)


class KClassifier:
    """Deterministic profile tracker, built lazily over reachable profiles.

    State i holds the k-profile of every word reaching it; step() extends by
    one letter.  The full profile automaton over even a modest alphabet is
    enormous, so states materialize only as the caller walks, against a
    budget.
    """

    def __init__(self, alphabet: Alphabet, k: int,
                 budget: int = DEFAULT_PROFILE_BUDGET):
        if k < 1:
            raise SpecError("k must be >= 1")
        self.alphabet = alphabet
        self.k = k
        self.budget = budget
        start = (EPSILON, EPSILON, frozenset())
        self.states: list[tuple[Word, Word, frozenset[Word]]] = [start]
        self.index: dict[tuple, int] = {start: 0}
        self.trans: dict[tuple[int, int], int] = {}

    @property
    def start(self) -> int:
        return 0

    def profile(self, sid: int) -> KProfile:
        pre, suf, factors = self.states[sid]
        return KProfile(pre, suf, factors)

    def step(self, sid: int, x: int) -> int:
        key = (sid, x)
        t = self.trans.get(key)
        if t is not None:
            return t
        pre, suf, factors = self.states[sid]
        k = self.k
        if len(pre) < k - 1:
            pre = pre + (x,)
        grown = suf + (x,)
        if len(grown) == k:
            factors = factors | {grown}
            suf = grown[1:]
        else:
            suf = grown
        state = (pre, suf, factors)
        t = self.index.get(state)
        if t is None:
            if len(self.states) >= self.budget:
                raise BudgetError("profile classifier states", self.budget)
            t = len(self.states)
            self.index[state] = t
            self.states.append(state)
        self.trans[key] = t
        return t


# -- verdicts -----------------------------------------------------------------

@dataclass(frozen=True)
class KVerdict:
    """Tri-state answer: True, False (with witness), or None = unknown."""

    value: bool | None
    witness: tuple[Word, ...] | None = None
    reason: str = ""

    @property
    def is_true(self) -> bool:
        return self.value is True

    @property
    def is_false(self) -> bool:
        return self.value is False

    @property
    def is_unknown(self) -> bool:
        return self.value is None


# -- decider 1: definitional, via the profile classifier ----------------------

def is_k_testable(d: Dfa, k: int,
                  budget: int = DEFAULT_PROFILE_BUDGET) -> KVerdict:
    """Definitional test: no reachable profile may be reached both by an
    accepted and by a rejected word.  Witness is such a pair (u in L, v not)."""
    classifier = KClassifier(d.alphabet, k, budget)
    start = (classifier.start, d.start)
    parent: dict[tuple[int, int], tuple | None] = {start: None}
    seen_class: dict[int, dict[bool, tuple[int, int]]] = {}
    queue = deque([start])

    def word_to(node: tuple[int, int]) -> Word:
        out = []
        while parent[node] is not None:
            node, x = parent[node]
            out.append(x)
        out.reverse()
        return tuple(out)

    while queue:
        node = queue.popleft()
        cid, q = node
        acc = q in d.accepting
        bucket = seen_class.setdefault(cid, {})
        if acc not in bucket:
            bucket[acc] = node
            if len(bucket) == 2:
                u = word_to(bucket[True])
                v = word_to(bucket[False])
                return KVerdict(False, (u, v),
                                "k-similar words on both sides of the language")
        for x in range(d.alphabet.size):
            try:
                c2 = classifier.step(cid, x)
            except BudgetError:
                return KVerdict(None, None, f"profile budget {budget} exceeded")
            t = (c2, d.transitions[q][x])
            if t not in parent:
                if len(parent) >= budget:
                    return KVerdict(None, None, f"profile budget {budget} exceeded")
                parent[t] = (node, x)
                queue.append(t)
    return KVerdict(True)


# -- decider 2: equational, on the syntactic semigroup ------------------------

def _length_words(alphabet: Alphabet, length: int) -> Iterable[Word]:
    if length == 0:
        yield EPSILON
        return
    yield from product(range(alphabet.size), repeat=length)


def is_k_testable_semigroup(d: Dfa, k: int,
                            triple_budget: int = DEFAULT_TRIPLE_BUDGET,
                            element_budget: int = 10**6,
                            variant: str = "tail") -> KVerdict:
    if k < 1:
        raise SpecError("k must be >= 1")
    if variant not in ("tail", "square"):
        raise SpecError(f"unknown variant {variant!r}")
    try:
        s = transition_semigroup(d, element_budget)
    except BudgetError as e:
        return KVerdict(None, None, str(e))

    if d.alphabet.size ** max(k - 1, 0) > triple_budget:
        return KVerdict(None, None, f"triple budget {triple_budget} exceeded")
    border_words = list(_length_words(d.alphabet, k - 1))
    images = [s.eval_word(w) for w in border_words]

    # condition (1): for each image m of a length-(k-1) word and all s, t in
    # S with an identity adjoined, m s m t m = m t m s m.  Group s by the
    # fingerprint (m s m, s m): the equation for the pair (s, t) reads
    # (m s m)(t m) = (m t m)(s m), so one witness per fingerprint suffices.
    with_identity = [(s.identity, EPSILON)] + [
        (t, s.representative[i]) for i, t in enumerate(s.elements)]
    done_m = set()
    for m, x_word in zip(images, border_words):
        if m in done_m:
            continue
        done_m.add(m)
        seen: set[tuple] = set()
        items: list[tuple] = []
        for t, t_word in with_identity:
            a = then(then(m, t), m)
            b = then(t, m)
            key = (a, b)
            if key in seen:
                continue
            seen.add(key)
            for a2, b2, w2 in items:
                if then(a, b2) != then(a2, b):
                    return KVerdict(
                        False, (x_word, t_word, w2),
                        "x, s, t with xsxtx != xtxsx in the semigroup")
            items.append((a, b, t_word))

    # condition (2): breadth-first closure of the tuples
    #   (phi(w), phi(w minus its (k-1)-prefix), prefix, suffix, seed flag)
    # over all words w of length >= k-1.  The flag marks length exactly k-1,
    # where the tail is empty: there the "tail" equation holds trivially and
    # the "square" equation does not yet apply.
    seen_tuples = set()
    queue = deque()
    for m, x_word in zip(images, border_words):
        state = (m, s.identity, x_word, x_word, True)
        if state not in seen_tuples:
            seen_tuples.add(state)
            queue.append((state, x_word))
    gens = [s.elements[s.generator_image[x]] for x in range(s.alphabet.size)]
    j = k - 1
    while queue:
        (img, tail, p, q, at_seed), word = queue.popleft()
        if p == q and not at_seed:
            bad = (then(img, img) != img if variant == "square"
                   else then(img, tail) != img)
            if bad:
                return KVerdict(False, (word,),
                                "bordered word w = xt with phi(wt) != phi(w)")
        for x in range(s.alphabet.size):
            q2 = (q + (x,))[1:] if j else EPSILON
            state = (then(img, gens[x]), then(tail, gens[x]), p, q2, False)
            if state not in seen_tuples:
                if len(seen_tuples) >= triple_budget:
                    return KVerdict(None, None,
                                    f"triple budget {triple_budget} exceeded")
                seen_tuples.add(state)
                queue.append((state, word + (x,)))
    return KVerdict(True)


# -- combined verdicts ---------------------------------------------------------

def is_locally_testable(d: Dfa,
                        element_budget: int = 10**6) -> tuple[KVerdict, TransitionSemigroup | None]:
    """Local testability via the semigroup characterization.

    Returns the verdict and the syntactic semigroup (None if its closure
    blew the budget).
    """
    try:
        s = transition_semigroup(d, element_budget)
    except BudgetError as e:
        return KVerdict(None, None, str(e)), None
    check = is_locally_idempotent_commutative(s)
    return KVerdict(check.ok, check.witness, check.label), s


def min_k(d: Dfa, k_max: int, method: str = "semigroup",
          budget: int = DEFAULT_PROFILE_BUDGET) -> tuple[int | None, list[KVerdict]]:
    """Least k <= k_max for which the language is k-testable.

    Returns (k, per-k verdicts); k is None if no tested k succeeded.  With
    the default semigroup method the verdicts are exact; the classifier
    method can return unknown when a profile walk blows its budget.
    """
    verdicts = []
    for k in range(1, k_max + 1):
        if method == "semigroup":
            v = is_k_testable_semigroup(d, k, triple_budget=budget)
        elif method == "classifier":
            v = is_k_testable(d, k, budget)
        else:
            raise SpecError(f"unknown method {method!r}")
        verdicts.append(v)
        if v.is_true:
            return k, verdicts
    return None, verdicts


# -- long words: the repetition construction ----------------------------------

def repetition_threshold(k: int, alphabet_size: int) -> int:
    return 2 * k * (alphabet_size ** (2 * k) + 1)


def repetition_witness(w: Sequence, k: int,
                       alphabet_size: int) -> tuple[tuple, int]:
    """Cyclic permutation of w that is k-similar to all of its powers.

    For l(w) >= N = 2k(|X|^(2k) + 1), cut w into length-2k blocks; two blocks
    u = st coincide, giving w = x s t y s t z; the rotation t y s t z x s is
    k-similar to every power of itself.  Returns (rotation, N).
    """
    w = tuple(w)
    n = repetition_threshold(k, alphabet_size)
    if len(w) < n:
        raise SpecError(f"word of length {len(w)} is below the threshold {n}")
    blocks = alphabet_size ** (2 * k) + 1
    seen: dict[tuple, int] = {}
    first = second = -1
    for i in range(blocks):
        block = w[2 * k * i: 2 * k * (i + 1)]
        if block in seen:
            first, second = seen[block], i
            break
        seen[block] = i
    assert first >= 0, "pigeonhole: some length-2k block must repeat"
    x = w[: 2 * k * first]
    s = w[2 * k * first: 2 * k * first + k]
    t = w[2 * k * first + k: 2 * k * (first + 1)]
    y = w[2 * k * (first + 1): 2 * k * second]
    z = w[2 * k * (second + 1):]
    rotated = t + y + s + t + z + x + s
    assert len(rotated) == len(w)
    for power in (2, 3):
        assert sim_k(rotated, rotated * power, k)
    return rotated, n
