"""Real multiple zeta(-star) values for desk-scale checks of Ohno's relation.

Two independent routes, both in fixed-point integer arithmetic with
``FRAC_BITS`` fractional bits and explicit error bounds:

* :func:`mzv_truncated` sums the defining series up to ``terms`` and adds an
  integral bound for the tail.  It converges like ``terms^{-(k_r-1)}`` up to
  log factors, so it only resolves about 1e-4 at ``terms = 10**5`` for
  indices such as ``(1, 2)``.
* :func:`mzv_value` splits the iterated integral at ``t = 1/2``; both halves
  are multiple polylogarithms at ``1/2``, whose series converge like ``2^{-n}``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .indices import as_index, dual_index, enumerate_e, format_index, oplus
from .report import ReportEntry

__all__ = ["ApproxValue", "mzv_truncated", "mzv_value", "star_expansion", "verify_ohno_classical"]

FRAC_BITS = 256
_ONE = 1 << FRAC_BITS
# truncation point for the polylogarithms at 1/2
_HALF_TERMS = 320


@dataclass(frozen=True)
class ApproxValue:
    """``|value - true value| <= error_bound``."""

    value: Fraction
    error_bound: float

    def __add__(self, other: ApproxValue) -> ApproxValue:
        return ApproxValue(self.value + other.value, _up(self.error_bound + other.error_bound))

    def __sub__(self, other: ApproxValue) -> ApproxValue:
        return ApproxValue(self.value - other.value, _up(self.error_bound + other.error_bound))

    def __float__(self) -> float:
        return float(self.value)

    def contains(self, x: float | Fraction) -> bool:
        return abs(Fraction(x) - self.value) <= Fraction(self.error_bound)

    @classmethod
    def exact_zero(cls) -> ApproxValue:
        return cls(Fraction(0), 0.0)


def _up(x: float) -> float:
    # guard float rounding in bound arithmetic
    return math.nextafter(x * (1 + 1e-12), math.inf)


def _admissible(k: Sequence[int]) -> tuple[int, ...]:
    k = as_index(k)
    if not k or k[-1] < 2:
        raise ValueError(f"non-admissible index {k}: the last entry must be >= 2")
    return k


def _nested_fixed(k: tuple[int, ...], terms: int, star: bool, halve_outer: bool) -> tuple[int, float]:
    """Fixed-point nested sum over chains bounded by ``terms``.

    Returns the (floored) sum and a bound on the accumulated rounding error.
    """
    r = len(k)
    layers = [_ONE] + [0] * r
    order = range(1, r + 1) if star else range(r, 0, -1)
    for n in range(1, terms + 1):
        factors = [0] * (r + 1)
        for j in range(1, r + 1):
            denom = n ** k[j - 1]
            if halve_outer and j == r:
                denom <<= n
            factors[j] = _ONE // denom
        for j in order:
            layers[j] += (layers[j - 1] * factors[j]) >> FRAC_BITS
    top = max(layers) / _ONE
    rounding = (terms * (top + 2.0)) ** r / 2.0**FRAC_BITS
    return layers[r], _up(rounding)


def _tail_bound(k: tuple[int, ...], terms: int) -> float:
    """Bound for ``sum_{n > terms} n^{-k_r} S_{r-1}(n)``.

    Inner partial sums are at most ``C (1 + log n)^a`` where ``a`` counts the
    inner entries equal to 1 and ``C = prod k_i/(k_i - 1)`` over the others.
    """
    *inner, s = k
    a = sum(1 for x in inner if x == 1)
    C = math.prod(x / (x - 1) for x in inner if x >= 2)
    L = math.log(terms)
    if a > s * (1 + L):
        raise ValueError(f"terms={terms} too small for a monotone tail bound on {k}")
    c = s - 1
    acc = sum(math.perm(a, j) * (1 + L) ** (a - j) / c ** (j + 1) for j in range(a + 1))
    return _up(C * math.exp(-c * L) * acc)


@lru_cache(maxsize=None)
def _truncated(k: tuple[int, ...], star: bool, terms: int) -> ApproxValue:
    total, rounding = _nested_fixed(k, terms, star, halve_outer=False)
    return ApproxValue(Fraction(total, _ONE), _up(_tail_bound(k, terms) + rounding))


def mzv_truncated(k: Sequence[int], star: bool = False, terms: int = 10**5) -> ApproxValue:
    """Truncated series for ``zeta(k)`` (or ``zeta^star(k)``) with a rigorous bound."""
    k = _admissible(k)
    if terms < 10:
        raise ValueError("terms must be at least 10")
    return _truncated(k, star, terms)


def _word_of(k: Sequence[int]) -> str:
    # y = dt/(1-t), x = dt/t; the leftmost letter is nearest to 0
    return "".join("y" + "x" * (a - 1) for a in k)


def _index_of(w: str) -> tuple[int, ...]:
    out: list[int] = []
    for ch in w:
        if ch == "y":
            out.append(1)
        else:
            out[-1] += 1
    return tuple(out)


@lru_cache(maxsize=None)
def _polylog_half(k: tuple[int, ...]) -> tuple[int, float]:
    """``Li_k(1/2) = sum_{n_1<...<n_r} 2^{-n_r} / prod n_i^{k_i}`` in fixed point."""
    if not k:
        return _ONE, 0.0
    M = _HALF_TERMS
    r = len(k)
    if M < 4 * r:
        raise ValueError(f"depth {r} too large for the polylog truncation")
    total, rounding = _nested_fixed(k, M, star=False, halve_outer=True)
    # terms beyond M are below 2^{-n} n^{r-1}, a geometric tail with ratio < 0.65
    tail = 3.0 * (M + 1) ** (r - 1) * 2.0 ** -(M + 1)
    return total, _up(rounding + tail)


@lru_cache(maxsize=None)
def _strict_value(k: tuple[int, ...]) -> ApproxValue:
    w = _word_of(k)
    swap = str.maketrans("xy", "yx")
    total, err = 0, 0.0
    for i in range(len(w) + 1):
        head, tail = w[:i], w[i:]
        # the integral over (1/2, 1) becomes one over (0, 1/2) after t -> 1 - t
        a, ea = _polylog_half(_index_of(head))
        b, eb = _polylog_half(_index_of(tail[::-1].translate(swap)))
        total += (a * b) >> FRAC_BITS
        # both factors are at most 1 in absolute value
        err += ea + eb + ea * eb + 2.0**-FRAC_BITS
    return ApproxValue(Fraction(total, _ONE), _up(err))


def star_expansion(k: Sequence[int]) -> list[tuple[int, ...]]:
    """All indices obtained from ``k`` by merging adjacent entries (``zeta^star`` = their sum)."""
    k = as_index(k)
    if not k:
        return [()]
    out = []
    for mask in range(1 << (len(k) - 1)):
        parts = [k[0]]
        for j, a in enumerate(k[1:]):
            if mask >> j & 1:
                parts[-1] += a
            else:
                parts.append(a)
        out.append(tuple(parts))
    return out


def mzv_value(k: Sequence[int], star: bool = False) -> ApproxValue:
    """High-precision ``zeta(k)`` / ``zeta^star(k)`` via the split at 1/2 (error < 1e-40)."""
    k = _admissible(k)
    if not star:
        return _strict_value(k)
    total = ApproxValue.exact_zero()
    for j in star_expansion(k):
        total = total + _strict_value(j)
    return total


def _ohno_side(k: tuple[int, ...], m: int, evaluate) -> ApproxValue:
    total = ApproxValue.exact_zero()
    for e in enumerate_e(len(k), m):
        total = total + evaluate(oplus(k, e))
    return total


def verify_ohno_classical(k: Sequence[int], m: int, terms: int = 10**5, tol: float = 1e-6) -> ReportEntry:
    """Ohno's relation ``sum_{|e|=m} zeta(k+e) = sum_{|e|=m} zeta(k^dagger + e)`` on the reals.

    The cell passes when the high-precision sides agree within ``tol`` and the
    truncated sides agree within their summed bounds plus ``tol``; the two
    routes must also be consistent with each other.
    """
    k = _admissible(k)
    if not 0 <= m <= 3:
        raise ValueError("m must be in 0..3")
    kd = dual_index(k)
    lhs = _ohno_side(k, m, mzv_value)
    rhs = _ohno_side(kd, m, mzv_value)
    lhs_t = _ohno_side(k, m, lambda j: mzv_truncated(j, terms=terms))
    rhs_t = _ohno_side(kd, m, lambda j: mzv_truncated(j, terms=terms))
    diff = abs(lhs.value - rhs.value)
    ok_fast = diff + Fraction(lhs.error_bound + rhs.error_bound) < Fraction(tol)
    ok_trunc = abs(lhs_t.value - rhs_t.value) <= Fraction(lhs_t.error_bound + rhs_t.error_bound) + Fraction(tol)
    consistent = all(
        abs(f.value - t.value) <= Fraction(f.error_bound + t.error_bound) for f, t in ((lhs, lhs_t), (rhs, rhs_t))
    )
    return ReportEntry(
        identity="ohno_classical",
        params=f"k={format_index(k)},m={m},dual={format_index(kd)},terms={terms}",
        prime="real",
        weight=sum(k) + m,
        lhs=f"{float(lhs.value):.15f}",
        rhs=f"{float(rhs.value):.15f}",
        passed=bool(ok_fast and ok_trunc and consistent),
    )
