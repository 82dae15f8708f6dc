"""String rewriting over shortlex order.

A RewritingSystem is a finite set of rules l -> r with r strictly below l
in shortlex order, so rewriting terminates; when the system is additionally
confluent, every word has one irreducible normal form, and that normal form
is the shortlex-least word in its congruence class (the least word is
irreducible, and normal forms are unique).  complete_rs grows a system into
a confluent one by bounded Knuth-Bendix completion: orient the defining
equations, then repeatedly resolve critical pairs until none remain or the
budget runs out.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .alphabet import EPSILON, Alphabet, Word
from .errors import BudgetError, SpecError


@dataclass(frozen=True)
class RewritingSystem:
    alphabet: Alphabet
    rules: tuple[tuple[Word, Word], ...]

    def __post_init__(self):
        for lhs, rhs in self.rules:
            if not lhs:
                raise SpecError("rule with empty left side")
            for w in (lhs, rhs):
                if any(not 0 <= x < self.alphabet.size for x in w):
                    raise SpecError("rule uses a letter outside the alphabet")
            if not self.alphabet.shortlex_less(rhs, lhs):
                raise SpecError(
                    f"rule does not reduce: {self.alphabet.word_str(lhs)} -> "
                    f"{self.alphabet.word_str(rhs)}")

    def normal_form(self, w: Sequence[int]) -> Word:
        w = tuple(w)
        longest = max((len(l) for l, _ in self.rules), default=0)
        i = 0
        while i < len(w):
            for lhs, rhs in self.rules:
                if w[i:i + len(lhs)] == lhs:
                    w = w[:i] + rhs + w[i + len(lhs):]
                    i = max(0, i - longest + 1)
                    break
            else:
                i += 1
        return w

    def is_irreducible(self, w: Sequence[int]) -> bool:
        w = tuple(w)
        return all(w[i:i + len(l)] != l
                   for l, _ in self.rules for i in range(len(w) - len(l) + 1))

    def critical_pairs(self) -> Iterator[tuple[Word, Word]]:
        """Words with two one-step reductions that must be checked to join.

        Covers both overlap shapes: one left side inside another, and a
        proper suffix of one equal to a proper prefix of another.
        """
        for i, (l1, r1) in enumerate(self.rules):
            for j, (l2, r2) in enumerate(self.rules):
                for p in range(len(l1) - len(l2) + 1):
                    if i == j and p == 0:
                        continue
                    if l1[p:p + len(l2)] == l2:
                        yield (r1, l1[:p] + r2 + l1[p + len(l2):])
                for o in range(1, min(len(l1), len(l2))):
                    if l1[len(l1) - o:] == l2[:o]:
                        yield (r1 + l2[o:], l1[:len(l1) - o] + r2)

    def is_confluent(self) -> bool:
        return all(self.normal_form(a) == self.normal_form(b)
                   for a, b in self.critical_pairs())

    def to_json(self) -> dict:
        return {
            "format": 1,
            "kind": "rewriting",
            "alphabet": self.alphabet.to_json(),
            "rules": [[list(l), list(r)] for l, r in self.rules],
        }

    @staticmethod
    def from_json(data: dict) -> "RewritingSystem":
        if not isinstance(data, dict) or data.get("kind") != "rewriting":
            raise SpecError("not a rewriting system description")
        return RewritingSystem(
            Alphabet.from_json(data["alphabet"]),
            tuple((tuple(l), tuple(r)) for l, r in data["rules"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @staticmethod
    def loads(text: str) -> "RewritingSystem":
        return RewritingSystem.from_json(json.loads(text))


def group_equations(alphabet: Alphabet,
                    relators: Iterable[Sequence[int]]) -> list[tuple[Word, Word]]:
    """Free-cancellation equations plus relator = empty, ready to complete."""
    eqs: list[tuple[Word, Word]] = []
    for x in range(alphabet.size):
        eqs.append(((x, alphabet.inverse[x]), EPSILON))
    for rel in relators:
        eqs.append((tuple(rel), EPSILON))
    return eqs


def complete_rs(alphabet: Alphabet,
                equations: Iterable[tuple[Sequence[int], Sequence[int]]],
                max_rules: int = 256, max_passes: int = 64) -> RewritingSystem:
    """Bounded Knuth-Bendix completion under shortlex.

    Raises BudgetError when the rule set or the number of passes outgrows
    the bounds; a returned system is guaranteed confluent.
    """

    def orient(u: Word, v: Word) -> tuple[Word, Word] | None:
        if u == v:
            return None
        return (u, v) if alphabet.shortlex_less(v, u) else (v, u)

    rules: list[tuple[Word, Word]] = []
    for u, v in equations:
        r = orient(tuple(u), tuple(v))
        if r is not None and r not in rules:
            rules.append(r)
    for _ in range(max_passes):
        rs = RewritingSystem(alphabet, tuple(rules))
        fresh: list[tuple[Word, Word]] = []
        for a, b in rs.critical_pairs():
            na, nb = rs.normal_form(a), rs.normal_form(b)
            r = orient(na, nb)
            if r is not None and r not in rules and r not in fresh:
                fresh.append(r)
        if not fresh:
            return _simplify(rs)
        rules.extend(fresh)
        if len(rules) > max_rules:
            raise BudgetError("rewriting rules", max_rules)
    raise BudgetError("completion passes", max_passes)


def _simplify(rs: RewritingSystem) -> RewritingSystem:
    """Drop rules whose left side another rule already reduces, and fully
    reduce every right side.  Kept only if the congruence demonstrably
    survives: the result must stay confluent and still equate both sides of
    every dropped rule; otherwise the original system is returned."""
    kept: list[tuple[Word, Word]] = []
    dropped: list[tuple[Word, Word]] = []
    for i, (l, r) in enumerate(rs.rules):
        others = RewritingSystem(
            rs.alphabet,
            tuple(rule for j, rule in enumerate(rs.rules) if j != i))
        if others.is_irreducible(l):
            kept.append((l, rs.normal_form(r)))
        else:
            dropped.append((l, r))
    out = RewritingSystem(rs.alphabet, tuple(kept))
    if not out.is_confluent():
        return rs
    if any(out.normal_form(l) != out.normal_form(r) for l, r in dropped):
        return rs
    return out
