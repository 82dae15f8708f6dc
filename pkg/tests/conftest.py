import random

import pytest

from geolt.alphabet import Alphabet
from geolt.automata import make_dfa, minimize


AB = Alphabet.make(self_inverse=("a", "b"))
ABC = Alphabet.make(self_inverse=("a", "b", "c"))
FREE2 = Alphabet.make(pairs=(("a", "A"), ("b", "B")))


def dfa_over(alphabet, transitions, start, accepting, states=None):
    return minimize(make_dfa(alphabet, transitions, start, accepting,
                             states=states))


def random_dfa(rng: random.Random, alphabet, max_states=5, loops_ok=True):
    n = rng.randint(1, max_states)
    trans = {}
    for q in range(n):
        for x in range(alphabet.size):
            trans[(q, x)] = rng.randrange(n)
    accepting = {q for q in range(n) if rng.random() < 0.5}
    return minimize(make_dfa(alphabet, trans, 0, accepting, states=n))


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
