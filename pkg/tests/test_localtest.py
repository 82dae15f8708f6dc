import random

import pytest

from geolt.alphabet import Alphabet
from geolt.errors import SpecError
from geolt.localtest import (KClassifier, is_k_testable,
                             is_k_testable_semigroup, is_locally_testable,
                             k_profile, min_k, repetition_threshold,
                             repetition_witness, sim_k)
from conftest import AB, ABC, dfa_over, random_dfa


def no_aa():
    return dfa_over(AB, {(0, 0): 1, (0, 1): 0, (1, 0): 2, (1, 1): 0,
                         (2, 0): 2, (2, 1): 2}, 0, {0, 1}, states=3)


def even_a():
    return dfa_over(AB, {(0, 0): 1, (0, 1): 0, (1, 0): 0, (1, 1): 1},
                    0, {0}, states=2)


def ab_star():
    return dfa_over(AB, {(0, 0): 1, (1, 1): 0}, 0, {0}, states=2)


def single(word):
    trans = {(i, x): i + 1 for i, x in enumerate(AB.parse_word(word))}
    return dfa_over(AB, trans, 0, {len(word)}, states=len(word) + 1)


def w(s):
    return AB.parse_word(s)


# -- profiles ------------------------------------------------------------------

def test_profile_short_word_conventions():
    p = k_profile(w("ab"), 4)
    assert p.prefix == w("ab") and p.suffix == w("ab")
    assert p.factors == frozenset()
    p = k_profile(w("ab"), 3)
    assert p.prefix == w("ab") and p.suffix == w("ab")
    p = k_profile(w("abab"), 3)
    assert p.prefix == w("ab") and p.suffix == w("ab")
    assert p.factors == {w("aba"), w("bab")}
    with pytest.raises(SpecError):
        k_profile(w("a"), 0)


def test_profile_k1_sees_only_support():
    p = k_profile(w("abba"), 1)
    assert p.prefix == () and p.suffix == ()
    assert p.factors == {w("a"), w("b")}


def test_sim_k_examples():
    assert sim_k(w("abab"), w("ababab"), 3)
    assert not sim_k(w("abab"), w("ababab"), 5)
    assert sim_k(w("ab"), w("ba"), 1)
    assert not sim_k(w("ab"), w("ba"), 2)
    assert not sim_k(w("aa"), w("aaa"), 3)  # prefixes aa vs aa, factors differ
    assert sim_k(w("aaa"), w("aaaa"), 3)


def test_classifier_tracks_profiles():
    c = KClassifier(AB, 3)
    word = w("ababb")
    sid = c.start
    for i, x in enumerate(word):
        sid = c.step(sid, x)
        assert c.profile(sid) == k_profile(word[:i + 1], 3)


def test_classifier_identifies_similar_words():
    c = KClassifier(AB, 2)
    def state_of(word):
        sid = c.start
        for x in word:
            sid = c.step(sid, x)
        return sid
    assert state_of(w("aba")) == state_of(w("ababa"))
    assert state_of(w("aba")) != state_of(w("ab"))


# -- the two deciders ----------------------------------------------------------

def test_known_min_k_values():
    for d, expect in [(no_aa(), 2), (ab_star(), 2), (single("a"), 2),
                      (single("aaa"), 4), (single("ab"), 2)]:
        k_sem, _ = min_k(d, 6)
        k_cls, _ = min_k(d, 6, method="classifier")
        assert k_sem == expect
        assert k_cls == expect


def test_not_locally_testable_language():
    d = even_a()
    for k in (1, 2, 3):
        assert is_k_testable(d, k).is_false
        assert is_k_testable_semigroup(d, k).is_false
    verdict, s = is_locally_testable(d)
    assert verdict.is_false
    assert s is not None
    assert min_k(d, 4) == (None, min_k(d, 4)[1])


def test_locally_testable_language():
    verdict, s = is_locally_testable(no_aa())
    assert verdict.is_true
    assert s.size >= 2


def test_classifier_witness_is_a_violating_pair():
    d = even_a()
    v = is_k_testable(d, 2)
    assert v.is_false
    u, x = v.witness
    assert sim_k(u, x, 2)
    assert d.accepts(u) and not d.accepts(x)


def test_semigroup_decider_square_variant_is_too_strong():
    # words without factor aa form a 2-testable language, but phi(aba) is not
    # idempotent, so the plain-idempotency reading wrongly refutes it
    d = no_aa()
    assert is_k_testable(d, 2).is_true
    assert is_k_testable_semigroup(d, 2, variant="tail").is_true
    assert is_k_testable_semigroup(d, 2, variant="square").is_false


def test_deciders_agree_on_random_dfas(rng):
    for trial in range(150):
        alphabet = AB if trial % 2 == 0 else ABC
        d = random_dfa(rng, alphabet, max_states=4)
        for k in (1, 2, 3):
            if alphabet.size == 3 and k == 3:
                continue
            a = is_k_testable(d, k, budget=200000)
            b = is_k_testable_semigroup(d, k)
            if a.value is None or b.value is None:
                continue
            assert a.value == b.value, (d.dumps(), k)


def test_budget_returns_unknown():
    big = Alphabet.make(self_inverse=tuple("abcdefghi"))
    trans = {(0, x): 0 for x in range(9)}
    d = dfa_over(big, trans, 0, {0}, states=1)
    v = is_k_testable(d, 4, budget=100)
    assert v.is_unknown
    v = is_k_testable_semigroup(d, 9, triple_budget=10)
    assert v.is_unknown


def test_min_k_unknown_method():
    with pytest.raises(SpecError):
        min_k(no_aa(), 3, method="tea-leaves")


# -- repetition in long words ---------------------------------------------------

def test_repetition_threshold():
    assert repetition_threshold(1, 2) == 2 * (4 + 1)
    assert repetition_threshold(2, 3) == 4 * (81 + 1)


def test_repetition_witness_on_periodic_word():
    word = w("ab") * 200
    rot, n = repetition_witness(word, 1, 2)
    assert len(rot) == len(word)
    assert sim_k(rot, rot + rot, 1)
    assert sorted(rot) == sorted(word)  # a rearrangement of the same letters


def test_repetition_witness_unary():
    word = (0,) * 10
    rot, n = repetition_witness(word, 1, 1)
    assert rot == word  # only one unary word of each length
    assert n == 4  # 2 * 1 * (1**2 + 1)
    assert sim_k(rot, rot * 3, 1)


def test_repetition_witness_random_words(rng):
    for _ in range(10):
        n = repetition_threshold(2, 2)
        word = tuple(rng.randrange(2) for _ in range(n + rng.randrange(20)))
        rot, _ = repetition_witness(word, 2, 2)
        assert len(rot) == len(word)
        for j in (2, 3):
            assert sim_k(rot, rot * j, 2)


def test_repetition_witness_too_short():
    with pytest.raises(SpecError):
        repetition_witness(w("ab"), 2, 2)
