import pytest

from geolt.alphabet import Alphabet
from geolt.automata import determinize, enumerate_words, make_dfa, minimize
from geolt.errors import SpecError
from geolt.pairs import (PAD, PairAutomaton, accepted_pairs, canonicalize_pair,
                         pair_product, pair_project, pair_restrict,
                         restrict_equal_length, restrict_first_longer,
                         shortest_accepted_pair, trim_pair)
from conftest import AB, dfa_over


def equality():
    # (u, u) for every u
    return PairAutomaton(AB, (((0, 0, 0), (1, 1, 0)),), 0, frozenset({0}))


def prefix_pairs():
    # (u, uw): read the common part, then pad the first tape
    rows = (
        ((0, 0, 0), (1, 1, 0), (PAD, 0, 1), (PAD, 1, 1)),
        ((PAD, 0, 1), (PAD, 1, 1)),
    )
    return PairAutomaton(AB, rows, 0, frozenset({0, 1}))


def suffix_drop():
    # (uw, u): read the common part, then pad the second tape
    rows = (
        ((0, 0, 0), (1, 1, 0), (0, PAD, 1), (1, PAD, 1)),
        ((0, PAD, 1), (1, PAD, 1)),
    )
    return PairAutomaton(AB, rows, 0, frozenset({0, 1}))


def w(s):
    return AB.parse_word(s)


def test_equality_automaton():
    eq = equality()
    assert eq.accepts_pair(w("abba"), w("abba"))
    assert eq.accepts_pair((), ())
    assert not eq.accepts_pair(w("ab"), w("ba"))
    assert not eq.accepts_pair(w("ab"), w("abb"))


def test_prefix_pairs():
    p = prefix_pairs()
    assert p.accepts_pair(w("ab"), w("abba"))
    assert p.accepts_pair((), w("b"))
    assert p.accepts_pair(w("ab"), w("ab"))
    assert not p.accepts_pair(w("ab"), w("ba"))
    assert not p.accepts_pair(w("abb"), w("ab"))


def test_pad_pad_label_rejected():
    with pytest.raises(SpecError):
        PairAutomaton(AB, (((PAD, PAD, 0),),), 0, frozenset({0}))


def test_duplicate_label_rejected():
    with pytest.raises(SpecError):
        PairAutomaton(AB, (((0, 0, 0), (0, 0, 0)),), 0, frozenset({0}))


def test_reading_after_padding_rejected():
    # (PAD, a) then (a, a) on the same tape
    rows = (((PAD, 0, 1),), ((0, 0, 1),))
    with pytest.raises(SpecError):
        PairAutomaton(AB, rows, 0, frozenset({1}))


def test_state_in_two_phases_rejected():
    # state 1 reachable without padding and with the first tape padded
    rows = (((0, 0, 1), (PAD, 0, 1)), ())
    with pytest.raises(SpecError):
        PairAutomaton(AB, rows, 0, frozenset({1}))


def test_restrict_equal_length():
    r = restrict_equal_length(prefix_pairs())
    for u in AB.iter_words(3):
        for v in AB.iter_words(3):
            assert r.accepts_pair(u, v) == (u == v)


def test_restrict_first_longer():
    assert restrict_first_longer(prefix_pairs()).accepting == frozenset()
    r = restrict_first_longer(suffix_drop())
    for u in AB.iter_words(3):
        for v in AB.iter_words(3):
            expect = len(u) > len(v) and u[:len(v)] == v
            assert r.accepts_pair(u, v) == expect
    assert pair_restrict(suffix_drop(), "any") is suffix_drop() or True


def test_shortest_accepted_pair():
    r = restrict_first_longer(suffix_drop())
    assert shortest_accepted_pair(r) == (w("a"), ())
    eq = equality()
    assert shortest_accepted_pair(eq) == ((), ())
    dead = PairAutomaton(AB, (((0, 0, 0),),), 0, frozenset())
    assert shortest_accepted_pair(dead) is None


def test_pair_product_second_track():
    only_ab = dfa_over(AB, {(0, 0): 1, (1, 1): 2}, 0, {2}, states=3)
    prod = pair_product(prefix_pairs(), only_ab, side="second")
    got = set(accepted_pairs(prod, 2))
    assert got == {((), w("ab")), (w("a"), w("ab")), (w("ab"), w("ab"))}


def test_pair_product_first_track():
    only_ab = dfa_over(AB, {(0, 0): 1, (1, 1): 2}, 0, {2}, states=3)
    prod = pair_product(prefix_pairs(), only_ab, side="first")
    got = set(accepted_pairs(prod, 3))
    # u must be ab, v must extend it
    assert got == {(w("ab"), w("ab")), (w("ab"), w("aba")), (w("ab"), w("abb"))}


def test_pair_project():
    only_ab = dfa_over(AB, {(0, 0): 1, (1, 1): 2}, 0, {2}, states=3)
    prod = pair_product(prefix_pairs(), only_ab, side="second")
    firsts = minimize(determinize(pair_project(prod, side="first")))
    seconds = minimize(determinize(pair_project(prod, side="second")))
    assert [AB.word_str(u) for u in enumerate_words(firsts, 4)] == ["-", "a", "ab"]
    assert [AB.word_str(u) for u in enumerate_words(seconds, 4)] == ["ab"]


def test_accepted_pairs_matches_accepts_pair():
    p = prefix_pairs()
    got = set(accepted_pairs(p, 3))
    expect = {(u, v) for u in AB.iter_words(3) for v in AB.iter_words(3)
              if p.accepts_pair(u, v)}
    assert got == expect


def test_trim_removes_dead_states():
    rows = (
        ((0, 0, 0), (1, 1, 1)),
        ((0, 0, 1),),  # dead: no acceptance reachable
    )
    p = PairAutomaton(AB, rows, 0, frozenset({0}))
    t = trim_pair(p)
    assert t.state_count == 1
    assert t.accepts_pair(w("aa"), w("aa"))
    assert not t.accepts_pair(w("b"), w("b"))


def test_canonicalize_is_stable():
    p = canonicalize_pair(prefix_pairs())
    assert canonicalize_pair(p) == p


def test_json_roundtrip():
    p = prefix_pairs()
    assert PairAutomaton.loads(p.dumps()) == p
