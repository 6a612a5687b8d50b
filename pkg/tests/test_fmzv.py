from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ohno_fmzv.fmzv import EvalContext, reduce_fraction, zeta_A, zeta_A_combo, zeta_A_naive, zeta_A_word
from ohno_fmzv.indices import IndexCombo, indices_of_weight
from ohno_fmzv.modmath import MAX_MODULUS
from ohno_fmzv.words import word

# values from exact naive sums, frozen
FROZEN = [
    ((1, 2), 13, False, 5),
    ((2,), 7, False, 0),
    ((1, 2, 1), 31, False, 0),
    ((2, 2), 11, False, 0),
    ((1, 1), 11, False, 0),
]


@pytest.mark.parametrize("k, p, star, value", FROZEN)
def test_frozen_values(k, p, star, value, ctx_factory):
    assert zeta_A(k, ctx_factory(p), star) == value


def test_empty_index(ctx_factory):
    assert zeta_A((), ctx_factory(7)) == 1
    assert zeta_A((), ctx_factory(7), star=True) == 1


def test_depth_one_is_harmonic_sum(ctx_factory):
    p = 13
    for k in range(1, 8):
        assert zeta_A((k,), ctx_factory(p)) == sum(pow(m, -k, p) for m in range(1, p)) % p


@pytest.mark.parametrize("p", [7, 11, 13])
def test_dp_matches_naive_small(p):
    ctx = EvalContext(p)
    for k in indices_of_weight(1, 5):
        if len(k) >= p:
            continue
        for star in (False, True):
            assert zeta_A(k, ctx, star) == zeta_A_naive(k, p, star), (k, star)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=1, max_size=3).map(tuple), st.sampled_from([17, 19, 23]), st.booleans())
def test_dp_matches_naive_property(k, p, star):
    assert zeta_A(k, EvalContext(p), star) == zeta_A_naive(k, p, star)


def test_depth_beyond_p(ctx_factory):
    # no strictly increasing chain of length >= p exists
    assert zeta_A((1,) * 7, ctx_factory(7)) == 0


def test_star_is_merge_sum(ctx_factory):
    ctx = ctx_factory(31)
    k = (2, 1, 3)
    merged = [(2, 1, 3), (3, 3), (2, 4), (6,)]
    assert zeta_A(k, ctx, True) == sum(zeta_A(j, ctx) for j in merged) % 31


def _dp_with_wrong_prefix(k, p, star):
    # mutation: use the other prefix rule
    ctx = EvalContext(p)
    layer = ctx.inverse_powers(k[0])
    for kj in k[1:]:
        prefix = np.cumsum(layer) % p
        if star:
            prefix = np.concatenate(([0], prefix[:-1]))
        layer = prefix * ctx.inverse_powers(kj) % p
    return int(layer.sum() % p)


def test_mutation_prefix_rule_is_caught():
    p = 13
    diffs = [k for k in indices_of_weight(3, 6) if len(k) >= 2 and _dp_with_wrong_prefix(k, p, False) != zeta_A_naive(k, p)]
    assert diffs


def test_modulus_cap_fits_int64():
    # the DP multiplies two residues below p in int64
    assert (MAX_MODULUS - 1) ** 2 < np.iinfo(np.int64).max


def test_inverse_powers(ctx_factory):
    ctx = ctx_factory(11)
    v = ctx.inverse_powers(2)
    assert v[0] == 1 and v[1] == pow(2, -2, 11)
    assert not v.flags.writeable


def test_reduce_fraction():
    assert reduce_fraction(Fraction(1, 2), 7) == 4
    assert reduce_fraction(-3, 7) == 4
    with pytest.raises(ValueError, match="bad prime for combo"):
        reduce_fraction(Fraction(1, 7), 7)


def test_combo_and_word(ctx_factory):
    ctx = ctx_factory(13)
    c = IndexCombo({(1, 2): Fraction(1, 2), (3,): 2})
    expected = (zeta_A((1, 2), ctx) * pow(2, -1, 13) + 2 * zeta_A((3,), ctx)) % 13
    assert zeta_A_combo(c, ctx) == expected
    assert zeta_A_word(word("yyxy"), ctx) == zeta_A((1, 2), ctx)
    assert zeta_A_word("yyxy", ctx, star=True) == zeta_A((1, 2), ctx, True)


def test_cache_is_consistent(ctx_factory):
    ctx = EvalContext(29)
    a = zeta_A((2, 3), ctx)
    assert ((2, 3), False) in ctx._cache
    assert zeta_A((2, 3), ctx) == a == zeta_A_naive((2, 3), 29)
