from math import gcd

import pytest
from hypothesis import given, strategies as st

from biattr.errors import PreconditionError
from biattr.words import (FactorSet, bispecial_factors, factors, fine_wilf_holds, has_period,
                          is_balanced, is_conjugate, occurrences, periods, primitive_root,
                          reversal, special_factors)

binary = st.text(alphabet="01", min_size=1, max_size=24)


def test_factorset_rejects_mixed_lengths():
    with pytest.raises(PreconditionError):
        FactorSet(["0", "01"])


def test_factors_of_small_word():
    assert factors("01001", 2) == {"01", "10", "00"}
    assert factors("01001", 2).length == 2


def test_overlapping_occurrences():
    assert occurrences("aaaa", "aa") == [0, 1, 2]


def test_periods_example():
    assert sorted(periods("ababa")) == [2, 4, 5]


def test_primitive_root_and_conjugacy():
    assert primitive_root("abab") == "ab"
    assert primitive_root("aba") == "aba"
    assert is_conjugate("0011", "1100")
    assert not is_conjugate("0011", "0101")


def test_special_factors_of_fibonacci_prefix():
    text = "0100101001001010010100100101001001"
    f = lambda n: FactorSet({text[t:t + n] for t in range(len(text) - n + 1)}, n)
    ls, rs = special_factors(f(3), f(4))
    assert ls == {"010"} and rs == {"010"}
    assert bispecial_factors(f(3), f(4)) == {"010"}


def test_special_factors_reject_inconsistent_samples():
    with pytest.raises(PreconditionError):
        special_factors(FactorSet({"00"}), FactorSet({"011"}))


def test_balance_witness():
    ok, pair = is_balanced(["0011", "0101", "1100", "1111", "0000"])
    assert not ok and pair[0].count("0") - pair[1].count("0") > 1
    assert is_balanced(["010", "001", "100"]) == (True, None)


@given(binary)
def test_reversal_is_an_involution(w):
    assert reversal(reversal(w)) == w


@given(binary)
def test_primitive_root_power(w):
    r = primitive_root(w)
    assert len(w) % len(r) == 0 and r * (len(w) // len(r)) == w
    assert primitive_root(r) == r


@given(binary, st.integers(1, 12), st.integers(1, 12))
def test_fine_wilf(w, p, q):
    if has_period(w, p) and has_period(w, q):
        assert fine_wilf_holds(w, p, q)
        if len(w) >= p + q - gcd(p, q):
            assert has_period(w, gcd(p, q))


@given(binary, binary)
def test_occurrences_match_naive_scan(text, w):
    assert occurrences(text, w) == [t for t in range(len(text)) if text.startswith(w, t)]
