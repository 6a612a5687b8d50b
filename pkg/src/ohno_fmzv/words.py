"""Noncommutative polynomials in ``x`` and ``y`` with the shuffle product.

Words are plain strings over ``"xy"``; the empty string is the unit.
The map :func:`p_map` sends ``y x^{k_1-1} y ... y x^{k_r-1} y`` to the index
``(k_1, ..., k_r)``: every ``y`` but the last opens an entry, and each ``x``
before the next ``y`` adds one to it.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .indices import Index, IndexCombo, enumerate_e
from .linear import LinearCombination, Scalar

__all__ = [
    "WordPoly",
    "word",
    "shuffle",
    "reverse",
    "p_map",
    "p_map_word",
    "y_power",
    "depth3_word",
    "build_P",
    "build_Q",
    "pq_shuffle_expansion",
    "pq_difference_as_shuffles",
]


def _check_word(w: str) -> str:
    if not isinstance(w, str) or w.strip("xy"):
        raise ValueError(f"words are strings over {{x, y}}, got {w!r}")
    return w


class WordPoly(LinearCombination[str]):
    """Element of Q<x, y>: a finite map from words to rationals."""

    __slots__ = ()

    @classmethod
    def _check_key(cls, key) -> str:
        return _check_word(key)

    def _format_key(self, key: str) -> str:
        return key or "1"

    def degrees(self) -> set[int]:
        return {len(w) for w in self}

    def reversed(self) -> WordPoly:
        return self._from_clean({w[::-1]: c for w, c in self.items()})

    def append(self, suffix: str) -> WordPoly:
        """Right concatenation with a fixed word."""
        _check_word(suffix)
        return self._from_clean({w + suffix: c for w, c in self.items()})

    def prepend(self, prefix: str) -> WordPoly:
        _check_word(prefix)
        return self._from_clean({prefix + w: c for w, c in self.items()})


def word(w: str, coeff: Scalar = 1) -> WordPoly:
    return WordPoly({w: coeff})


@lru_cache(maxsize=1 << 16)
def _shuffle_words(a: str, b: str) -> tuple[tuple[str, int], ...]:
    # wu ш w'u' = (w ш w'u') u + (wu ш w') u'
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    acc: dict[str, int] = {}
    for w, c in _shuffle_words(a[:-1], b):
        key = w + a[-1]
        acc[key] = acc.get(key, 0) + c
    for w, c in _shuffle_words(a, b[:-1]):
        key = w + b[-1]
        acc[key] = acc.get(key, 0) + c
    return tuple(acc.items())


def shuffle(a: WordPoly | str, b: WordPoly | str) -> WordPoly:
    if isinstance(a, str):
        a = word(a)
    if isinstance(b, str):
        b = word(b)
    acc: dict[str, Fraction] = {}
    for u, cu in a.items():
        for v, cv in b.items():
            # the cache is keyed on an ordered pair; the product is commutative
            x, y = (u, v) if u <= v else (v, u)
            for w, mult in _shuffle_words(x, y):
                acc[w] = acc.get(w, Fraction(0)) + cu * cv * mult
    return WordPoly(acc)


def reverse(w: str) -> str:
    return _check_word(w)[::-1]


def p_map_word(w: str) -> Index:
    """Index of a single word ``y x^{k_1-1} y ... x^{k_r-1} y``."""
    _check_word(w)
    if len(w) < 2 or w[0] != "y" or w[-1] != "y":
        raise ValueError(f"word {w!r} is outside the domain of p (must be y...y of degree >= 2)")
    out: list[int] = []
    for ch in w[:-1]:
        if ch == "y":
            out.append(1)
        else:
            out[-1] += 1
    return tuple(out)


def p_map(w: WordPoly | str) -> IndexCombo:
    if isinstance(w, str):
        w = word(w)
    acc: dict[Index, Fraction] = {}
    for u, c in w.items():
        k = p_map_word(u)
        acc[k] = acc.get(k, Fraction(0)) + c
    return IndexCombo(acc)


def y_power(n: int) -> WordPoly:
    return word("y" * n)


def depth3_word(l1: int, l2: int, l3: int, e: tuple[int, int, int]) -> str:
    """``y^{l1+e1} x y^{l2+e2-1} x y^{l3+e3}``."""
    e1, e2, e3 = e
    return "y" * (l1 + e1) + "x" + "y" * (l2 + e2 - 1) + "x" + "y" * (l3 + e3)


def _check_params(m: int, l1: int, l2: int, l3: int) -> None:
    if m < 0 or min(l1, l2, l3) < 1:
        raise ValueError(f"need m >= 0 and l_i >= 1, got m={m}, l=({l1},{l2},{l3})")


def build_P(m: int, l1: int, l2: int, l3: int) -> WordPoly:
    _check_params(m, l1, l2, l3)
    sign = -1 if m % 2 else 1
    return WordPoly({depth3_word(l1, l2, l3, e): sign for e in enumerate_e(3, m)})


def _middle_binom(l2: int, e2: int) -> int:
    # C(e2 - 1, e2) is read as 1 for e2 = 0 and 0 otherwise
    if l2 == 1:
        return 1 if e2 == 0 else 0
    return comb(l2 + e2 - 2, e2)


def build_Q(m: int, l1: int, l2: int, l3: int) -> WordPoly:
    _check_params(m, l1, l2, l3)
    terms = {}
    for e1, e2, e3 in enumerate_e(3, m):
        c = comb(l1 + e1 - 1, e1) * _middle_binom(l2, e2) * comb(l3 + e3 - 1, e3)
        if c:
            terms[depth3_word(l1, l2, l3, (e1, e2, e3))] = c
    return WordPoly(terms)


def _shuffle_sum(m: int, l1: int, l2: int, l3: int, top: int) -> WordPoly:
    total = WordPoly()
    for i in range(top + 1):
        layer = WordPoly({depth3_word(l1, l2, l3, e): 1 for e in enumerate_e(3, i)})
        term = shuffle(layer, y_power(m - i))
        total = total + (term if i % 2 == 0 else -term)
    return total


def pq_shuffle_expansion(m: int, l1: int, l2: int, l3: int) -> WordPoly:
    """``sum_{i=0}^{m} sum_{|e|=i} (-1)^i (y^{l1+e1} x y^{l2+e2-1} x y^{l3+e3}) ш y^{m-i}``."""
    _check_params(m, l1, l2, l3)
    return _shuffle_sum(m, l1, l2, l3, m)


def pq_difference_as_shuffles(m: int, l1: int, l2: int, l3: int) -> WordPoly:
    """The same double sum stopped at ``i = m - 1`` and negated; equals ``P_m - Q_m``."""
    _check_params(m, l1, l2, l3)
    return -_shuffle_sum(m, l1, l2, l3, m - 1)
