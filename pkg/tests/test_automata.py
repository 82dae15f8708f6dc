import random

import pytest

from geolt.alphabet import Alphabet
from geolt.automata import (Dfa, Nfa, complement, counterexample, determinize,
                            difference, enumerate_words, equivalent,
                            intersection, inverse_image, is_empty,
                            is_prefix_closed, make_dfa, minimize,
                            shortest_accepted, union)
from geolt.errors import BudgetError
from conftest import AB, ABC, dfa_over, random_dfa


def no_aa():
    # words over {a, b} without factor aa
    return dfa_over(AB, {(0, 0): 1, (0, 1): 0, (1, 0): 2, (1, 1): 0,
                         (2, 0): 2, (2, 1): 2}, 0, {0, 1}, states=3)


def even_a():
    return dfa_over(AB, {(0, 0): 1, (0, 1): 0, (1, 0): 0, (1, 1): 1},
                    0, {0}, states=2)


def test_missing_transitions_get_a_sink():
    d = make_dfa(AB, {(0, 0): 1}, 0, {1}, states=2)
    assert d.accepts(AB.parse_word("a"))
    assert not d.accepts(AB.parse_word("ab"))
    assert not d.accepts(AB.parse_word("b"))


def test_canonical_numbering_is_bfs_from_start():
    d = make_dfa(AB, {(0, 1): 2, (0, 0): 1, (1, 0): 1, (1, 1): 2,
                      (2, 0): 2, (2, 1): 2}, 0, {2}, states=3)
    # state 0 first, then the a-successor, then the b-successor
    assert d.start == 0
    assert d.transitions[0][0] == 1
    assert d.transitions[0][1] == 2


def test_minimize_collapses_equivalent_states():
    # two redundant copies of the even-a automaton glued together
    d = make_dfa(AB, {(0, 0): 1, (0, 1): 2, (1, 0): 0, (1, 1): 3,
                      (2, 0): 3, (2, 1): 0, (3, 0): 2, (3, 1): 1},
                 0, {0, 2}, states=4)
    m = minimize(d)
    assert m.state_count == 2
    assert equivalent(d, m)


def test_minimize_is_idempotent_and_canonical():
    rng = random.Random(7)
    for _ in range(50):
        d = random_dfa(rng, AB)
        m = minimize(d)
        assert equivalent(d, m)
        assert minimize(m) == m


def test_boolean_operations():
    rng = random.Random(11)
    for _ in range(30):
        a = random_dfa(rng, AB)
        b = random_dfa(rng, AB)
        u = union(a, b)
        i = intersection(a, b)
        df = difference(a, b)
        c = complement(a)
        for w in AB.iter_words(5):
            assert u.accepts(w) == (a.accepts(w) or b.accepts(w))
            assert i.accepts(w) == (a.accepts(w) and b.accepts(w))
            assert df.accepts(w) == (a.accepts(w) and not b.accepts(w))
            assert c.accepts(w) != a.accepts(w)


def test_is_empty_and_shortest():
    d = no_aa()
    assert not is_empty(d)
    assert shortest_accepted(d) == ()
    only_ab = dfa_over(AB, {(0, 0): 1, (1, 1): 2}, 0, {2}, states=3)
    assert shortest_accepted(only_ab) == AB.parse_word("ab")
    assert is_empty(difference(only_ab, no_aa()))


def test_counterexample_is_shortlex_least():
    d1 = no_aa()
    d2 = even_a()
    w = counterexample(d1, d2)
    assert w is not None
    assert d1.accepts(w) != d2.accepts(w)
    assert w == AB.parse_word("a")  # "a" is the least differing word
    assert counterexample(d1, minimize(d1)) is None


def test_equivalent_detects_difference():
    assert equivalent(no_aa(), no_aa())
    assert not equivalent(no_aa(), even_a())


def test_enumerate_words_in_shortlex_order():
    d = no_aa()
    words = enumerate_words(d, 3)
    strs = [AB.word_str(w) for w in words]
    assert strs == ["-", "a", "b", "ab", "ba", "bb",
                    "aba", "abb", "bab", "bba", "bbb"]
    key = AB.shortlex_key
    assert all(key(u) < key(v) for u, v in zip(words, words[1:]))


def test_enumerate_agrees_with_accepts():
    rng = random.Random(13)
    for _ in range(20):
        d = random_dfa(rng, ABC)
        got = set(enumerate_words(d, 4))
        expect = {w for w in ABC.iter_words(4) if d.accepts(w)}
        assert got == expect


def test_prefix_closed():
    d = no_aa()
    ok, witness = is_prefix_closed(d)
    assert ok and witness is None
    only_ab = dfa_over(AB, {(0, 0): 1, (1, 1): 2}, 0, {2}, states=3)
    ok, witness = is_prefix_closed(only_ab)
    assert not ok
    # the witness is a rejected word that can still be extended to an accepted one
    assert not only_ab.accepts(witness)
    assert any(only_ab.accepts(witness + tail) for tail in AB.iter_words(3))


def test_determinize_matches_nfa_semantics():
    # NFA for words containing factor ab
    n = Nfa(AB,
            transitions=((frozenset({0, 1}), frozenset({0})),
                         (frozenset(), frozenset({2})),
                         (frozenset({2}), frozenset({2}))),
            starts=frozenset({0}), accepting=frozenset({2}))
    d = determinize(n)
    for w in AB.iter_words(6):
        s = AB.word_str(w)
        assert d.accepts(w) == ("ab" in s.replace("-", ""))


def test_determinize_epsilon_moves():
    # epsilon move start -> accepting lets the empty word in
    n = Nfa(AB,
            transitions=((frozenset({1}), frozenset()),
                         (frozenset(), frozenset())),
            starts=frozenset({0}), accepting=frozenset({1}),
            epsilon=(frozenset({1}), frozenset()))
    d = determinize(n)
    assert d.accepts(())
    assert d.accepts(AB.parse_word("a"))
    assert not d.accepts(AB.parse_word("b"))


def test_determinize_budget():
    n = Nfa(AB,
            transitions=((frozenset({0, 1}), frozenset({0})),
                         (frozenset({2}), frozenset()),
                         (frozenset(), frozenset())),
            starts=frozenset({0}), accepting=frozenset({2}))
    with pytest.raises(BudgetError):
        determinize(n, state_budget=2)


def test_inverse_image_relabels_letters():
    d = no_aa()
    # map a three-letter alphabet onto {a, b}: c behaves like b
    image = [0, 1, 1]
    e = inverse_image(d, ABC, image)
    for w in ABC.iter_words(4):
        projected = tuple(image[x] for x in w)
        assert e.accepts(w) == d.accepts(projected)


def test_json_roundtrip():
    d = no_aa()
    assert Dfa.loads(d.dumps()) == d
    assert "\"kind\": \"dfa\"" in d.dumps()


def test_live_state_count_excludes_sink():
    only_ab = dfa_over(AB, {(0, 0): 1, (1, 1): 2}, 0, {2}, states=3)
    assert only_ab.state_count == 4  # includes the completion sink
    assert only_ab.live_state_count() == 3
