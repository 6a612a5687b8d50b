"""Indices (tuples of positive integers) and formal combinations of them.

An index is represented as a plain ``tuple[int, ...]``; :func:`as_index`
validates arbitrary sequences.  The two duality involutions live here:

* :func:`hoffman_dual` swaps "comma" and "plus" in the composition of the weight;
* :func:`dual_index` is the classical duality on admissible indices.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .linear import LinearCombination, Scalar

__all__ = [
    "Index",
    "IndexCombo",
    "as_index",
    "weight",
    "depth",
    "all_ones",
    "oplus",
    "enumerate_e",
    "compositions",
    "indices_of_weight",
    "hoffman_dual",
    "dual_index",
    "index_shuffle",
    "parse_index",
    "format_index",
]

Index = tuple[int, ...]


def as_index(parts: Iterable[int]) -> Index:
    k = tuple(int(a) for a in parts)
    if any(a < 1 for a in k):
        raise ValueError(f"index entries must be positive integers: {k}")
    return k


def weight(k: Sequence[int]) -> int:
    return sum(k)


def depth(k: Sequence[int]) -> int:
    return len(k)


def all_ones(m: int) -> Index:
    if m < 0:
        raise ValueError("m must be nonnegative")
    return (1,) * m


def oplus(k: Sequence[int], e: Sequence[int]) -> Index:
    """Componentwise sum of an index and a nonnegative sequence of the same length."""
    if len(k) != len(e):
        raise ValueError(f"length mismatch: {len(k)} vs {len(e)}")
    if any(x < 0 for x in e):
        raise ValueError(f"bump sequence must be nonnegative: {tuple(e)}")
    return tuple(a + b for a, b in zip(k, e))


@lru_cache(maxsize=None)
def enumerate_e(r: int, m: int) -> tuple[tuple[int, ...], ...]:
    """All length-``r`` nonnegative compositions of ``m``, lexicographic."""
    if r < 1 or m < 0:
        raise ValueError(f"need r >= 1 and m >= 0, got r={r}, m={m}")
    if r == 1:
        return ((m,),)
    out = []
    for first in range(m + 1):
        for rest in enumerate_e(r - 1, m - first):
            out.append((first,) + rest)
    return tuple(out)


def compositions(n: int, r: int | None = None) -> Iterator[Index]:
    """Indices of weight ``n`` (optionally of fixed depth ``r``)."""
    if n < 1:
        if n == 0 and r in (None, 0):
            yield ()
        return
    depths = range(1, n + 1) if r is None else [r]
    for d in depths:
        if not 1 <= d <= n:
            continue
        for cuts in combinations(range(1, n), d - 1):
            bounds = (0,) + cuts + (n,)
            yield tuple(bounds[i + 1] - bounds[i] for i in range(d))


def indices_of_weight(lo: int, hi: int, max_depth: int | None = None) -> list[Index]:
    """Nonempty indices with ``lo <= weight <= hi``, by weight then lexicographically."""
    out = []
    for n in range(max(lo, 1), hi + 1):
        block = [k for k in compositions(n) if max_depth is None or len(k) <= max_depth]
        out.extend(sorted(block))
    return out


def hoffman_dual(k: Sequence[int]) -> Index:
    """Swap the roles of ``,`` and ``+`` in ``1 ? 1 ? ... ? 1`` (|k| ones)."""
    k = as_index(k)
    if not k:
        raise ValueError("Hoffman dual undefined for the empty index")
    n = sum(k)
    # gap g sits between the g-th and (g+1)-th one; it is a comma iff it is a block boundary
    commas, pos = set(), 0
    for a in k[:-1]:
        pos += a
        commas.add(pos)
    out, run = [], 1
    for g in range(1, n):
        if g in commas:
            run += 1
        else:
            out.append(run)
            run = 1
    out.append(run)
    return tuple(out)


def dual_index(k: Sequence[int]) -> Index:
    """Classical duality on admissible indices (last entry >= 2).

    Writing ``k = ({1}^{a_1-1}, b_1+1, ..., {1}^{a_s-1}, b_s+1)`` the dual is
    ``({1}^{b_s-1}, a_s+1, ..., {1}^{b_1-1}, a_1+1)``.
    """
    k = as_index(k)
    if not k or k[-1] < 2:
        raise ValueError(f"dual index needs an admissible index (last entry >= 2): {k}")
    blocks: list[tuple[int, int]] = []
    ones = 0
    for a in k:
        if a == 1:
            ones += 1
        else:
            blocks.append((ones + 1, a - 1))
            ones = 0
    out: list[int] = []
    for a, b in reversed(blocks):
        out.extend([1] * (b - 1))
        out.append(a + 1)
    return tuple(out)


_INDEX_RE = re.compile(r"^\(\s*(\d+(\s*,\s*\d+)*)?\s*,?\s*\)$")


def parse_index(text: str) -> Index:
    """Parse ``"(2,1,2)"``, ``"()"``, bare ``"2,1,2"`` or ``"ones:m"``."""
    s = text.strip()
    if s.startswith("ones:"):
        try:
            return all_ones(int(s[5:]))
        except ValueError as exc:
            raise ValueError(f"cannot parse index {text!r}") from exc
    if not s.startswith("("):
        s = f"({s})"
    if not _INDEX_RE.match(s):
        raise ValueError(f"cannot parse index {text!r}")
    body = s[1:-1].strip().rstrip(",")
    if not body:
        return ()
    return as_index(int(x) for x in body.split(","))


def format_index(k: Sequence[int]) -> str:
    return "(" + ",".join(str(a) for a in k) + ")"


class IndexCombo(LinearCombination[Index]):
    """Formal Q-linear combination of indices."""

    __slots__ = ()

    @classmethod
    def _check_key(cls, key) -> Index:
        return as_index(key)

    @classmethod
    def of(cls, k: Sequence[int], coeff: Scalar = 1) -> IndexCombo:
        return cls({as_index(k): coeff})

    def _format_key(self, key: Index) -> str:
        return format_index(key)


@lru_cache(maxsize=4096)
def _shuffle_indices(k: Index, l: Index) -> tuple[tuple[Index, int], ...]:
    if not k:
        return ((l, 1),)
    if not l:
        return ((k, 1),)
    acc: dict[Index, int] = {}
    for rest, c in _shuffle_indices(k[1:], l):
        key = (k[0],) + rest
        acc[key] = acc.get(key, 0) + c
    for rest, c in _shuffle_indices(k, l[1:]):
        key = (l[0],) + rest
        acc[key] = acc.get(key, 0) + c
    return tuple(acc.items())


def index_shuffle(a: IndexCombo | Sequence[int], b: IndexCombo | Sequence[int]) -> IndexCombo:
    """Bilinear interleaving product (no merging of entries)."""
    if not isinstance(a, IndexCombo):
        a = IndexCombo.of(a)
    if not isinstance(b, IndexCombo):
        b = IndexCombo.of(b)
    acc: dict[Index, Fraction] = {}
    for k, ck in a.items():
        for l, cl in b.items():
            for key, mult in _shuffle_indices(k, l):
                acc[key] = acc.get(key, Fraction(0)) + ck * cl * mult
    return IndexCombo(acc)
