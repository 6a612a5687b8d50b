"""Finite multiple zeta(-star) values at one prime component.

``zeta_A(k, ctx)`` is ``sum_{0<m_1<...<m_r<p} prod m_i^{-k_i} mod p`` and
``zeta_A(k, ctx, star=True)`` the same sum over weakly increasing chains.

The evaluator runs the nested sum as a dynamic program vectorised over
``m = 1 .. p-1``: layer ``j`` holds the partial sums ``T_j(m)`` and is
obtained from the prefix sums of layer ``j-1`` (exclusive prefix for strict
chains, inclusive for star chains), multiplied by ``m^{-k_j}``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from itertools import combinations, combinations_with_replacement
from typing import Sequence

import numpy as np

from . import modmath
from .indices import Index, IndexCombo, as_index
from .words import WordPoly, p_map

__all__ = ["EvalContext", "zeta_A", "zeta_A_naive", "zeta_A_combo", "zeta_A_word", "reduce_fraction"]


class EvalContext:
    """Tables for one prime: inverses, powers ``m^{-k}``, Bernoulli numbers.

    Evaluations are memoised per context; the cache only ever stores the
    deterministic value of a pure function, so sharing a context is safe.
    """

    def __init__(self, p: int) -> None:
        self.p = modmath.check_prime(p)
        self.inverses: tuple[int, ...] = tuple(modmath.batch_inverses(self.p))
        self._inv_vec = np.array(self.inverses[1:], dtype=np.int64)
        self._powers: dict[int, np.ndarray] = {}
        self._cache: dict[tuple[Index, bool], int] = {}

    def __repr__(self) -> str:
        return f"EvalContext(p={self.p})"

    @cached_property
    def bernoulli(self) -> modmath.BernoulliTable:
        return modmath.bernoulli_table(self.p)

    def frak_z(self, n: int) -> int:
        if not 2 <= n <= self.p - 2:
            raise ValueError(f"frak_z undefined at this component: n={n}, p={self.p}")
        return self.bernoulli[self.p - n] * self.inverses[n] % self.p

    def binom(self, n: int, k: int) -> int:
        return modmath.binom_mod(n, k, self.p)

    def inverse_powers(self, k: int) -> np.ndarray:
        """Vector of ``m^{-k} mod p`` for ``m = 1 .. p-1``."""
        vec = self._powers.get(k)
        if vec is None:
            vec = np.array([pow(v, k, self.p) for v in self.inverses[1:]], dtype=np.int64)
            vec.setflags(write=False)
            self._powers[k] = vec
        return vec

    def reduce(self, c: Fraction | int) -> int:
        return reduce_fraction(c, self.p)


def reduce_fraction(c: Fraction | int, p: int) -> int:
    c = Fraction(c)
    if c.denominator % p == 0:
        raise ValueError(f"bad prime for combo: {p} divides the denominator of {c}")
    return c.numerator * pow(c.denominator, -1, p) % p


def _evaluate(k: Index, ctx: EvalContext, star: bool) -> int:
    p = ctx.p
    layer = ctx.inverse_powers(k[0])
    for kj in k[1:]:
        prefix = np.cumsum(layer) % p
        if not star:
            # T_{j-1} summed over m' < m only
            prefix = np.concatenate(([0], prefix[:-1]))
        layer = prefix * ctx.inverse_powers(kj) % p
    return int(layer.sum() % p)


def zeta_A(k: Sequence[int], ctx: EvalContext, star: bool = False) -> int:
    """Finite MZV (``star=False``) or MZSV (``star=True``) of ``k`` mod ``ctx.p``.

    The empty index evaluates to 1.
    """
    k = as_index(k)
    key = (k, star)
    hit = ctx._cache.get(key)
    if hit is not None:
        return hit
    value = 1 if not k else _evaluate(k, ctx, star)
    ctx._cache[key] = value
    return value


def zeta_A_naive(k: Sequence[int], p: int, star: bool = False) -> int:
    """Direct O(p^r) nested sum; an oracle for :func:`zeta_A`, not for production use."""
    k = as_index(k)
    chains = combinations_with_replacement if star else combinations
    total = 0
    for ms in chains(range(1, p), len(k)):
        term = 1
        for m, e in zip(ms, k):
            term = term * pow(m, -e, p) % p
        total += term
    return total % p


def zeta_A_combo(c: IndexCombo, ctx: EvalContext, star: bool = False) -> int:
    total = 0
    for k, coeff in c.items():
        total += ctx.reduce(coeff) * zeta_A(k, ctx, star)
    return total % ctx.p


def zeta_A_word(w: WordPoly | str, ctx: EvalContext, star: bool = False) -> int:
    """``zeta_A`` composed with the word-to-index map ``p``."""
    return zeta_A_combo(p_map(w), ctx, star)
