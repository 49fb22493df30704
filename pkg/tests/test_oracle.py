import pytest
from hypothesis import given, settings

from posdfa.automata import Alphabet, count_accepted_up_to, unary_ring, unary_sink_chain
from posdfa.errors import TooLargeError
from posdfa.oracle import (
    certify_language_minimal,
    consistent_dfas,
    decide_problem1,
    enumerate_min_count,
    enumeration_size,
)
from posdfa.sample import Sample, recognizes_sample

from helpers import samples

# computed once with enumerate_min_count and checked by hand: a 2-state DFA
# accepting "a" must also accept one other word of length <= 2
MIN_COUNT_N2_A = 2


def test_pinned_minimum_for_single_letter_sample():
    res = enumerate_min_count(Sample.from_words([(0,)], 2), 2)
    assert res.min_count == MIN_COUNT_N2_A
    assert res.enumerated == 16 * 4  # 16 tables, 4 final sets
    assert recognizes_sample(res.witness, Sample.from_words([(0,)], 2))


def test_single_state_minimum():
    assert enumerate_min_count(Sample.from_words([(0,)], 2), 1).min_count == 1


def test_guard():
    with pytest.raises(TooLargeError):
        enumerate_min_count(Sample.from_words([(0,)], 2), 6)
    assert enumeration_size(3, 2) == 729 * 8


def test_decide_problem1_threshold():
    p = Sample.from_words([(0,)], 2)
    assert decide_problem1(p, 2, MIN_COUNT_N2_A)
    assert not decide_problem1(p, 2, MIN_COUNT_N2_A - 1)


@settings(max_examples=30, deadline=None)
@given(samples(sigma=2, max_words=3, max_len=3))
def test_minimum_equals_count_of_witness_and_all_members(p):
    res = enumerate_min_count(p, 2)
    assert count_accepted_up_to(res.witness, 2) == res.min_count
    assert min(count_accepted_up_to(d, 2) for d in consistent_dfas(p, 2)) == res.min_count


def test_certificate_on_ring_and_sink():
    for n in (2, 3):
        p = Sample.from_words([(0,) * (n - 2)], 1)
        assert not certify_language_minimal(unary_ring(n, {n - 2}), p, n)
        assert certify_language_minimal(unary_sink_chain(n, {n - 2}), p, n)
