"""Finitely supported formal Q-linear combinations."""
from __future__ import annotations

from fractions import Fraction
from typing import Generic, Hashable, Iterable, Iterator, Mapping, TypeVar

K = TypeVar("K", bound=Hashable)
Scalar = int | Fraction


class LinearCombination(Generic[K]):
    """Map ``key -> Fraction`` with zero coefficients dropped.

    Subclasses fix the key type; arithmetic keeps the subclass.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[K, Scalar] | Iterable[tuple[K, Scalar]] = ()) -> None:
        acc: dict[K, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, c in items:
            key = self._check_key(key)
            acc[key] = acc.get(key, Fraction(0)) + Fraction(c)
        self._terms = {k: c for k, c in acc.items() if c != 0}

    @classmethod
    def _check_key(cls, key: K) -> K:
        return key

    @classmethod
    def _from_clean(cls, terms: dict[K, Fraction]):
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @property
    def terms(self) -> dict[K, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[K, Fraction]]:
        return iter(self._terms.items())

    def coefficient(self, key: K) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[K]:
        return iter(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LinearCombination):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        if not isinstance(other, LinearCombination):
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return self._from_clean(out)

    def __neg__(self):
        return self._from_clean({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LinearCombination):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar: Scalar):
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        if scalar == 0:
            return self._from_clean({})
        return self._from_clean({k: c * scalar for k, c in self._terms.items()})

    __rmul__ = __mul__

    def _format_key(self, key: K) -> str:
        return str(key)

    def __repr__(self) -> str:
        if not self._terms:
            return f"{type(self).__name__}(0)"
        parts = []
        for key in sorted(self._terms, key=self._sort_key):
            c = self._terms[key]
            parts.append(self._format_key(key) if c == 1 else f"{c}*{self._format_key(key)}")
        return f"{type(self).__name__}({' + '.join(parts)})"

    @staticmethod
    def _sort_key(key):
        return (len(key), key) if isinstance(key, (tuple, str)) else key
