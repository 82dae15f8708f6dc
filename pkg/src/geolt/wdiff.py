"""Word-difference machines and the shortlex word acceptor derived from them.

A word-difference machine D reads padded pairs of words over a symmetric
generating alphabet.  Its states are labeled by group elements — the
"difference" prefix(u)⁻¹ · prefix(v) after reading prefixes of equal
length — and a transition on the label (x, y) carries the difference g to
x⁻¹gy, with a PAD component contributing the identity.  A pair can only
end on an identity-labeled state if its two sides multiply to the same
group element, so with exactly the identity-labeled states accepting, D
is sound: every accepted pair (u, v)⁺ satisfies u =_G v  (property D1).

The machine is synthesized from a geodesic oracle in two passes.  First,
for every shortlex normal form u up to a length bound and every x in
X ∪ {ε}, the padded pair (ux, nf(ux)) is walked and its prefix
differences are collected (property D2, complete up to the bound and
checked empirically beyond it).  Second, the transition function is
*saturated*: from every state, a transition is defined exactly when the
difference it would lead to was collected.  The collection pass can only
witness transitions along the finitely many pairs it walks; saturation
fills in the rest of the graph the differences already span, which is
what lets a fixed difference set decide pairs of unbounded length.  The
identity difference maps to itself under every (a, a), so the start
state loops on all of them and acceptance is stable under common
prefixes and — for equal-length pairs — common suffixes (property D3).

Because language-level padding discipline is kept structural in
PairAutomaton (a state is used in exactly one padding phase), the
identity difference appears as two carrier states, one per phase, and
both are accepting; conceptually the machine still has a single
accepting label.

The shortlex word acceptor W is derived from D: a word w is *reducible*
if D accepts (w, v)⁺ for some v shortlex-less than w, i.e. v is shorter,
or has equal length and is lexicographically smaller.  The reducible
words form the projection of D onto its first tape filtered by a
three-valued order tracker; W is the minimized complement.  When D holds
every difference the group needs, L(W) is exactly the set of shortlex
normal forms; the synthesis bound makes this a hypothesis that callers
must confirm against the oracle (see check_d and the geodesy pipeline).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .alphabet import Alphabet, Word
from .automata import Dfa, Nfa, complement, determinize, enumerate_words, minimize
from .errors import SpecError
from .groups import GeodesicOracle
from .pairs import PAD, PairAutomaton, accepted_pairs

DEFAULT_SYNTHESIS_BOUND = 8

_BOTH = 0
_SECOND_PADDED = 2

_EQ, _LT, _GT = 0, 1, 2


@dataclass(frozen=True)
class WordDifferenceMachine:
    """A pair automaton whose states carry group-element labels."""

    pair: PairAutomaton
    labels: tuple[str, ...]  # canonical normal-form string per state
    bound: int

    def __post_init__(self):
        if len(self.labels) != self.pair.state_count:
            raise SpecError("one label per machine state required")

    @property
    def alphabet(self) -> Alphabet:
        return self.pair.alphabet

    @property
    def state_count(self) -> int:
        return self.pair.state_count

    def accepts_pair(self, u: Word, v: Word) -> bool:
        return self.pair.accepts_pair(u, v)

    def to_json(self) -> dict:
        data = self.pair.to_json()
        data["kind"] = "wdiff"
        data["labels"] = list(self.labels)
        data["bound"] = self.bound
        return data

    @staticmethod
    def from_json(data: dict) -> "WordDifferenceMachine":
        if data.get("kind") != "wdiff":
            raise SpecError("expected a word-difference machine document")
        pair = PairAutomaton.from_json(dict(data, kind="pair"))
        return WordDifferenceMachine(pair, tuple(data["labels"]), data["bound"])


def synthesize_d(oracle: GeodesicOracle,
                 bound: int = DEFAULT_SYNTHESIS_BOUND) -> WordDifferenceMachine:
    """Collect the word differences of all (ux, nf(ux)) pairs with
    l(u) <= bound, then saturate the transitions over that difference
    set."""
    spec = oracle.spec
    alphabet = spec.alphabet
    identity = spec.identity

    inverse_letter = [spec.letter(alphabet.inverse[x])
                      for x in range(alphabet.size)]

    diffs = {identity}
    extensions = [None] + list(range(alphabet.size))
    for u in oracle.normal_forms_up_to(bound):
        for x in extensions:
            w1 = u if x is None else u + (x,)
            w2 = oracle.normal_form(oracle.eval_word(w1))
            diff = identity
            for i, l in enumerate(w1):
                diff = spec.mult(inverse_letter[l], diff)
                if i < len(w2):
                    diff = spec.mult(diff, spec.letter(w2[i]))
                diffs.add(diff)
            if diff != identity:
                raise SpecError("pair of equal elements must end at the identity")

    index: dict[tuple, int] = {(identity, _BOTH): 0}
    elems = [identity]
    rows: list[dict[tuple, int]] = [{}]
    queue = deque([(identity, _BOTH)])

    def intern(elem, phase: int) -> int:
        key = (elem, phase)
        sid = index.get(key)
        if sid is None:
            sid = len(elems)
            index[key] = sid
            elems.append(elem)
            rows.append({})
            queue.append(key)
        return sid

    while queue:
        elem, phase = queue.popleft()
        row = rows[index[(elem, phase)]]
        for a in range(alphabet.size):
            dropped = spec.mult(inverse_letter[a], elem)
            if phase == _BOTH:
                for b in range(alphabet.size):
                    target = spec.mult(dropped, spec.letter(b))
                    if target in diffs:
                        row[(a, b)] = intern(target, _BOTH)
            if dropped in diffs:
                row[(a, PAD)] = intern(dropped, _SECOND_PADDED)

    accepting = frozenset(i for i, e in enumerate(elems) if e == identity)
    transitions = tuple(
        tuple((l, r, t) for (l, r), t in sorted(
            row.items(),
            key=lambda it: tuple(alphabet.size if s is PAD else s for s in it[0])))
        for row in rows)
    pair = PairAutomaton(alphabet, transitions, 0, accepting)
    labels = tuple(alphabet.word_str(oracle.normal_form(e)) for e in elems)
    return WordDifferenceMachine(pair, labels, bound)


@dataclass(frozen=True)
class DCheck:
    """Outcome of checking a word-difference machine against an oracle.

    d1: every accepted pair within the sample is a pair of equal elements.
    d2: fraction of (ux, nf(ux)) pairs, l(u) <= sample, that are accepted.
    d3: every letter loops on (a, a) at the start state.
    """

    d1_ok: bool
    d1_witness: tuple[Word, Word] | None
    d2_fraction: float
    d2_failures: tuple[tuple[Word, Word], ...]
    d3_ok: bool
    sample_length: int
    pairs_checked: int

    @property
    def ok(self) -> bool:
        return self.d1_ok and self.d3_ok and self.d2_fraction == 1.0

    def summary(self) -> dict:
        return {
            "d1": self.d1_ok,
            "d2": self.d2_fraction,
            "d3": self.d3_ok,
            "ok": self.ok,
            "pairs_checked": self.pairs_checked,
            "sample_length": self.sample_length,
        }


def _d1_length(alphabet: Alphabet, sample_length: int, budget: int) -> int:
    """Longest pair length whose exhaustive enumeration stays under budget."""
    n, total = 0, 1
    while n < sample_length and total * alphabet.size <= budget:
        total *= alphabet.size
        n += 1
    return n


def check_d(oracle: GeodesicOracle, d: WordDifferenceMachine,
            sample_length: int, d1_budget: int = 10**5) -> DCheck:
    spec = oracle.spec
    alphabet = spec.alphabet

    d3_ok = all(d.pair.label_map(d.pair.start).get((a, a)) == d.pair.start
                for a in range(alphabet.size))

    d1_ok, d1_witness = True, None
    for u, v in accepted_pairs(d.pair,
                               _d1_length(alphabet, sample_length, d1_budget)):
        if oracle.eval_word(u) != oracle.eval_word(v):
            d1_ok, d1_witness = False, (u, v)
            break

    checked = failed = 0
    failures: list[tuple[Word, Word]] = []
    extensions = [None] + list(range(alphabet.size))
    for u in oracle.normal_forms_up_to(sample_length):
        for x in extensions:
            w1 = u if x is None else u + (x,)
            w2 = oracle.normal_form(oracle.eval_word(w1))
            checked += 1
            if not d.pair.accepts_pair(w1, w2):
                failed += 1
                if len(failures) < 5:
                    failures.append((w1, w2))
    fraction = 1.0 if checked == 0 else (checked - failed) / checked
    return DCheck(d1_ok, d1_witness, fraction, tuple(failures), d3_ok,
                  sample_length, checked)


def reducible_words(d: WordDifferenceMachine | PairAutomaton) -> Nfa:
    """Words w such that D relates w to some shortlex-smaller word.

    Nondeterministic over the partner word v: states are (machine state,
    order flag) where the flag says whether v so far equals w, is
    lexicographically smaller, or larger.  Early padding makes v shorter,
    hence shortlex-smaller regardless of the flag.
    """
    pair = d.pair if isinstance(d, WordDifferenceMachine) else d
    alphabet = pair.alphabet
    k = alphabet.size

    index: dict[tuple[int, int], int] = {}
    order: list[tuple[int, int]] = []

    def intern(q: int, c: int) -> int:
        sid = index.get((q, c))
        if sid is None:
            sid = len(order)
            index[(q, c)] = sid
            order.append((q, c))
        return sid

    start = intern(pair.start, _EQ)
    rows: list[list[set[int]]] = []
    for q, c in order:
        while len(rows) < len(order):
            rows.append([set() for _ in range(k)])
        for l, r, t in pair.transitions[q]:
            if l is PAD:
                continue  # the partner may not outlast the word itself
            if r is PAD:
                c2 = _LT
            elif c == _EQ:
                c2 = _EQ if r == l else (_LT if r < l else _GT)
            else:
                c2 = c
            rows[index[(q, c)]][l].add(intern(t, c2))
    while len(rows) < len(order):
        rows.append([set() for _ in range(k)])

    accepting = frozenset(sid for sid, (q, c) in enumerate(order)
                          if q in pair.accepting and c == _LT)
    transitions = tuple(tuple(frozenset(s) for s in row) for row in rows)
    return Nfa(alphabet, transitions, frozenset([start]), accepting)


def shortlex_acceptor(d: WordDifferenceMachine | PairAutomaton) -> Dfa:
    """The word acceptor: words with no D-reducible prefix.

    A word is excluded as soon as any prefix relates through D to a
    shortlex-smaller word: a non-normal-form always has such a prefix
    (drop letters from its shortest offending prefix and the machine
    sees the reduction), while every prefix of a normal form is itself
    a normal form.  Reducibility is therefore made absorbing — once a
    prefix is reducible the whole word stays reducible — and the
    acceptor is the minimized complement.
    """
    reducible = determinize(reducible_words(d))
    rows = tuple(
        tuple(q for _ in row) if q in reducible.accepting else row
        for q, row in enumerate(reducible.transitions))
    absorbed = Dfa(reducible.alphabet, rows, reducible.start,
                   reducible.accepting)
    return minimize(complement(absorbed))


def normal_form_words(w: Dfa, oracle: GeodesicOracle,
                      max_len: int) -> tuple[bool, Word | None]:
    """Does L(W) agree with the oracle's normal forms up to max_len?"""
    accepted = enumerate_words(w, max_len)
    expected = oracle.normal_forms_up_to(max_len)
    if accepted == expected:
        return True, None
    for a, b in zip(accepted, expected):
        if a != b:
            return False, min(a, b, key=oracle.spec.alphabet.shortlex_key)
    longer = accepted if len(accepted) > len(expected) else expected
    return False, longer[min(len(accepted), len(expected))]
