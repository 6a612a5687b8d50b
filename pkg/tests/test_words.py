import itertools
from collections import Counter
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from ohno_fmzv.indices import IndexCombo, enumerate_e
from ohno_fmzv.words import (
    WordPoly,
    build_P,
    build_Q,
    depth3_word,
    p_map,
    p_map_word,
    pq_difference_as_shuffles,
    pq_shuffle_expansion,
    reverse,
    shuffle,
    word,
    y_power,
)

word_st = st.text(alphabet="xy", max_size=5)


def brute_shuffle(a: str, b: str) -> Counter:
    """Every choice of positions for ``a`` inside a word of length |a|+|b|."""
    n = len(a) + len(b)
    out = Counter()
    for pos in itertools.combinations(range(n), len(a)):
        ia, ib, w = iter(a), iter(b), []
        for i in range(n):
            w.append(next(ia) if i in pos else next(ib))
        out["".join(w)] += 1
    return out


def as_counter(poly: WordPoly) -> Counter:
    return Counter({w: int(c) for w, c in poly.items()})


def test_shuffle_small():
    assert shuffle("xy", "y") == WordPoly({"xyy": 2, "yxy": 1})
    assert shuffle("x", "y") == WordPoly({"xy": 1, "yx": 1})
    assert shuffle("y", "y") == word("yy", 2)
    assert shuffle("", "xy") == word("xy")


@given(word_st, word_st)
def test_shuffle_matches_brute_force(a, b):
    assert as_counter(shuffle(a, b)) == brute_shuffle(a, b)


@given(word_st, word_st)
def test_shuffle_commutative_and_counts(a, b):
    s = shuffle(a, b)
    assert s == shuffle(b, a)
    assert sum(c for _, c in s.items()) == comb(len(a) + len(b), len(a))


@settings(max_examples=40)
@given(st.text(alphabet="xy", max_size=3), st.text(alphabet="xy", max_size=3), st.text(alphabet="xy", max_size=3))
def test_shuffle_associative(a, b, c):
    assert shuffle(shuffle(a, b), c) == shuffle(a, shuffle(b, c))


def test_shuffle_bilinear():
    u = word("xy", 2) + word("y", -1)
    assert shuffle(u, "x") == shuffle("xy", "x") * 2 - shuffle("y", "x")


def test_word_validation():
    with pytest.raises(ValueError):
        word("xz")
    with pytest.raises(ValueError):
        reverse("ab")
    assert reverse("xyy") == "yyx"
    assert word("xy").reversed() == word("yx")
    assert word("x").append("y") == word("xy")
    assert word("x").prepend("y") == word("yx")
    assert y_power(3) == word("yyy")


@pytest.mark.parametrize(
    "w, k",
    [("yy", (1,)), ("yxy", (2,)), ("yxyxy", (2, 2)), ("yxyyxy", (2, 1, 2)), ("yyy", (1, 1)), ("yxxy", (3,))],
)
def test_p_map_examples(w, k):
    assert p_map_word(w) == k
    assert p_map(w) == IndexCombo.of(k)


@pytest.mark.parametrize("w", ["", "y", "x", "xy", "yx", "yxx"])
def test_p_map_domain(w):
    with pytest.raises(ValueError):
        p_map_word(w)


def test_p_map_linear():
    assert p_map(word("yy", 2) + word("yxy", -1)) == IndexCombo({(1,): 2, (2,): -1})


@given(st.lists(st.integers(1, 4), min_size=1, max_size=4))
def test_p_map_inverse(k):
    w = "".join("y" + "x" * (a - 1) for a in k) + "y"
    assert p_map_word(w) == tuple(k)


def test_depth3_word():
    assert depth3_word(1, 1, 1, (0, 0, 0)) == "yxxy"
    assert depth3_word(2, 1, 1, (1, 0, 0)) == "yyyxxy"


def test_Q_example():
    assert build_Q(1, 2, 1, 1) == WordPoly({"yyyxxy": 2, "yyxxyy": 1})


def test_P_example():
    assert build_P(1, 1, 1, 1) == -WordPoly({"yyxxy": 1, "yxyxy": 1, "yxxyy": 1})
    assert build_P(0, 1, 2, 1) == build_Q(0, 1, 2, 1) == word("yxyxy")


def test_Q_middle_rule_l2_one():
    # with l2 = 1, any positive e2 drops out
    Q = build_Q(2, 1, 1, 1)
    assert all(w.split("x")[1] == "" for w in Q)


@pytest.mark.parametrize("l", list(itertools.product(range(1, 3), repeat=3)))
@pytest.mark.parametrize("m", range(4))
def test_PQ_identities(l, m):
    assert build_Q(m, *l) == pq_shuffle_expansion(m, *l)
    assert build_P(m, *l) - build_Q(m, *l) == pq_difference_as_shuffles(m, *l)


def test_PQ_sign_mutation_detected():
    # dropping the alternating sign breaks the shuffle expansion
    l = (2, 1, 2)
    broken = WordPoly()
    for i in range(3):
        layer = WordPoly({depth3_word(*l, e): 1 for e in enumerate_e(3, i)})
        broken = broken + shuffle(layer, y_power(2 - i))
    assert broken != build_Q(2, *l)


def test_PQ_bad_params():
    with pytest.raises(ValueError):
        build_P(-1, 1, 1, 1)
    with pytest.raises(ValueError):
        build_Q(1, 0, 1, 1)
