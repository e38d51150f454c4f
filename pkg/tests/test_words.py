import itertools
import random

import pytest

from poslab.words import (Alphabet, FiniteWord, UPWord, subword_leq, up,
                          up_equal, up_normalize, word)

AB = Alphabet(("a", "b"))


def test_alphabet_rejects_duplicates_and_empty():
    with pytest.raises(ValueError):
        Alphabet(("a", "a"))
    with pytest.raises(ValueError):
        Alphabet(())


def test_normalize_period_power():
    assert up_normalize(up(AB, "", "abab")) == up(AB, "", "ab")


def test_normalize_unrolls_prefix():
    assert up_normalize(up(AB, "a", "ba")) == up(AB, "", "ab")


def test_normalize_absorbs_prefix_into_period():
    assert up_normalize(up(AB, "ab", "ab")) == up(AB, "", "ab")


def test_up_equal_examples():
    assert up_equal(up(AB, "a", "ba"), up(AB, "", "ab"))
    assert not up_equal(up(AB, "", "ab"), up(AB, "", "ba"))


def test_up_equal_against_unrolling():
    # oracle: unroll both representations far enough and compare letters
    w1, w2 = up(AB, "b", "aab"), up(AB, "ba", "aba")
    assert w1.unroll(20) == w2.unroll(20)
    assert up_equal(w1, w2)


def test_subword_examples():
    assert subword_leq(word(AB, ""), word(AB, "bab"))
    assert not subword_leq(word(AB, "bb"), word(AB, "bab"))
    assert subword_leq(word(AB, "bb"), word(AB, "babb"))


def test_period_must_be_nonempty():
    with pytest.raises(ValueError):
        UPWord(word(AB, "a"), word(AB, ""))


def _random_up(rng):
    npre = rng.randrange(5)
    nper = rng.randrange(1, 5)
    return UPWord(FiniteWord(AB, tuple(rng.randrange(2) for _ in range(npre))),
                  FiniteWord(AB, tuple(rng.randrange(2) for _ in range(nper))))


def test_normalize_idempotent():
    rng = random.Random(11)
    for _ in range(300):
        w = _random_up(rng)
        n = up_normalize(w)
        assert up_normalize(n) == n


def test_up_equal_is_equivalence():
    rng = random.Random(12)
    sample = [_random_up(rng) for _ in range(40)]
    for w in sample:
        assert up_equal(w, w)
    for w1, w2 in itertools.combinations(sample, 2):
        assert up_equal(w1, w2) == up_equal(w2, w1)
    # transitivity through normal forms on a coarse partition
    classes = {}
    for w in sample:
        n = up_normalize(w)
        classes.setdefault((n.prefix.symbols, n.period.symbols), []).append(w)
    for members in classes.values():
        for w1, w2 in itertools.combinations(members, 2):
            assert up_equal(w1, w2)


def test_subword_partial_order_exhaustive():
    words = [FiniteWord(AB, s) for n in range(6)
             for s in itertools.product(range(2), repeat=n)]
    leq = {(i, j): subword_leq(u, v)
           for i, u in enumerate(words) for j, v in enumerate(words)}
    for i, u in enumerate(words):
        assert leq[(i, i)]
    for i, u in enumerate(words):
        for j, v in enumerate(words):
            if i != j and leq[(i, j)] and leq[(j, i)]:
                assert u.symbols == v.symbols
    n = len(words)
    for i in range(n):
        for j in range(n):
            if not leq[(i, j)]:
                continue
            for k in range(n):
                if leq[(j, k)]:
                    assert leq[(i, k)]
