"""Independent brute-force references used by the tests."""
import itertools

import numpy as np
from hypothesis import strategies as st

from posdfa.automata import Alphabet, Dfa
from posdfa.sample import Sample

ACCEPTANCE_LINES = []


def run(delta, q, word):
    for a in word:
        q = delta[q][a]
    return q


def words_up_to(sigma, m):
    for length in range(m + 1):
        yield from itertools.product(range(sigma), repeat=length)


def brute_count(dfa, m):
    return sum(1 for w in words_up_to(dfa.sigma, m) if run(dfa.delta, dfa.init, w) in dfa.final)


def brute_witness(a, b, limit):
    """Shortlex-least word of length <= limit separating the DFAs."""
    for w in words_up_to(a.sigma, limit):
        if (run(a.delta, a.init, w) in a.final) != (run(b.delta, b.init, w) in b.final):
            return w
    return None


def rng_dfa(rng, n, sigma, alphabet=None):
    delta = rng.integers(0, n, size=(n, sigma)).tolist()
    final = frozenset(q for q in range(n) if rng.random() < 0.5)
    return Dfa(alphabet or Alphabet.of_size(sigma), delta, final, int(rng.integers(0, n)))


def rng_sample(rng, sigma, max_words, max_len):
    k = int(rng.integers(0, max_words + 1))
    words = set()
    for _ in range(k):
        ln = int(rng.integers(0, max_len + 1))
        words.add(tuple(int(x) for x in rng.integers(0, sigma, size=ln)))
    return Sample.from_words(words, sigma)


@st.composite
def dfas(draw, max_states=4, max_sigma=3, sigma=None):
    s = sigma or draw(st.integers(1, max_sigma))
    n = draw(st.integers(1, max_states))
    delta = [[draw(st.integers(0, n - 1)) for _ in range(s)] for _ in range(n)]
    final = draw(st.frozensets(st.integers(0, n - 1)))
    init = draw(st.integers(0, n - 1))
    return Dfa(Alphabet.of_size(s), delta, final, init)


@st.composite
def dfa_pairs(draw, max_states=4, max_sigma=3):
    s = draw(st.integers(1, max_sigma))
    return draw(dfas(max_states, sigma=s)), draw(dfas(max_states, sigma=s))


@st.composite
def samples(draw, sigma=2, max_words=4, max_len=3):
    words = draw(st.frozensets(st.lists(st.integers(0, sigma - 1), max_size=max_len).map(tuple),
                               max_size=max_words))
    return Sample.from_words(words, sigma)


def seeded(seed):
    return np.random.Generator(np.random.PCG64(seed))


def report(number, ok, detail):
    """Print one pass/fail line for an acceptance criterion and keep it for
    the end-of-run summary."""
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})"
    print(line)
    ACCEPTANCE_LINES.append(line)
    return ok
