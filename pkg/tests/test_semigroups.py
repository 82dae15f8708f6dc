import random

import pytest

from geolt.alphabet import Alphabet
from geolt.errors import BudgetError
from geolt.semigroups import (is_aperiodic, is_commutative, is_idempotent,
                              is_locally_idempotent_commutative, then,
                              transition_semigroup)
from conftest import AB, ABC, dfa_over, random_dfa


def no_aa():
    return dfa_over(AB, {(0, 0): 1, (0, 1): 0, (1, 0): 2, (1, 1): 0,
                         (2, 0): 2, (2, 1): 2}, 0, {0, 1}, states=3)


def even_a():
    return dfa_over(AB, {(0, 0): 1, (0, 1): 0, (1, 0): 0, (1, 1): 1},
                    0, {0}, states=2)


def ab_star():
    return dfa_over(AB, {(0, 0): 1, (1, 1): 0}, 0, {0}, states=2)


def test_then_composes_left_to_right():
    f = (1, 2, 0)
    g = (0, 0, 1)
    assert then(f, g) == (0, 1, 0)  # apply f, then g


def test_closure_size_and_morphism():
    s = transition_semigroup(even_a())
    assert s.size == 2  # the swap and the identity action of b
    rng = random.Random(3)
    d = even_a()
    for _ in range(50):
        u = tuple(rng.randrange(2) for _ in range(rng.randrange(6)))
        v = tuple(rng.randrange(2) for _ in range(rng.randrange(6)))
        assert s.eval_word(u + v) == then(s.eval_word(u), s.eval_word(v))


def test_representatives_are_shortlex_least():
    for d in (no_aa(), ab_star(), even_a()):
        s = transition_semigroup(d)
        first: dict = {}
        for word in d.alphabet.iter_words(6):
            if not word:
                continue
            t = s.eval_word(word)
            if t not in first:
                first[t] = word
        for i, t in enumerate(s.elements):
            assert s.representative[i] == first[t]
            assert s.word_of(t) == first[t]


def test_element_budget():
    with pytest.raises(BudgetError):
        transition_semigroup(no_aa(), element_budget=2)


def test_idempotents():
    s = transition_semigroup(no_aa())
    for e in s.idempotents():
        assert then(e, e) == e
    assert len(list(s.idempotents())) >= 1


def test_is_idempotent_and_commutative():
    s = transition_semigroup(ab_star())
    r = is_idempotent(s)
    assert not r.ok
    u, = r.witness
    assert s.eval_word(u + u) != s.eval_word(u)
    r = is_commutative(s)
    assert not r.ok
    u, v = r.witness
    assert s.eval_word(u + v) != s.eval_word(v + u)

    # a commutative idempotent example: all words with at least one a
    has_a = dfa_over(AB, {(0, 0): 1, (0, 1): 0, (1, 0): 1, (1, 1): 1},
                     0, {1}, states=2)
    s = transition_semigroup(has_a)
    assert is_idempotent(s).ok
    assert is_commutative(s).ok


def test_locally_idempotent_commutative():
    assert is_locally_idempotent_commutative(transition_semigroup(no_aa())).ok
    r = is_locally_idempotent_commutative(transition_semigroup(even_a()))
    assert not r.ok


def test_aperiodic():
    assert is_aperiodic(transition_semigroup(no_aa())).ok
    r = is_aperiodic(transition_semigroup(even_a()))
    assert not r.ok
    u, = r.witness
    s = transition_semigroup(even_a())
    t = s.eval_word(u)
    # the witness generates a nontrivial cycle: t^(i+1) returns to t^i ... t^j
    powers = [t]
    while then(powers[-1], t) not in powers:
        powers.append(then(powers[-1], t))
    assert powers.index(then(powers[-1], t)) != len(powers) - 1


def test_minimal_flag_controls_preminimization():
    # an automaton with redundant states: semigroup of the raw automaton can
    # be larger, but the minimized one is the syntactic semigroup
    from geolt.automata import make_dfa
    d = make_dfa(AB, {(0, 0): 1, (0, 1): 2, (1, 0): 1, (1, 1): 2,
                      (2, 0): 1, (2, 1): 2}, 0, {1}, states=3)
    s_min = transition_semigroup(d)
    s_raw = transition_semigroup(d, minimal=True)
    assert s_min.size <= s_raw.size


def test_random_closure_is_complete(rng):
    for _ in range(20):
        d = random_dfa(rng, ABC, max_states=4)
        s = transition_semigroup(d)
        # closed under right multiplication by the generators
        for t in s.elements:
            for x in range(ABC.size):
                assert then(t, s.elements[s.generator_image[x]]) in s.index
