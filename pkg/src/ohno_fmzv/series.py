"""Truncated generating functions in ``X`` at one prime component.

Coefficient ``n`` of a :class:`TruncSeries` is the residue attached to
``X^n``; all identities are compared coefficientwise up to the cutoff.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .fmzv import EvalContext, zeta_A, zeta_A_word
from .indices import as_index, compositions, enumerate_e, hoffman_dual, oplus
from .words import build_P, build_Q

__all__ = [
    "TruncSeries",
    "series_mul",
    "check_cutoff",
    "ohno_sum",
    "F_coefficient",
    "F_series",
    "O_series",
    "main_rhs_series",
    "odd_square_series",
    "sum_formula_sides",
    "lemma_sides",
    "U_series",
    "U_telescope_sides",
    "U_telescope_check",
]


@dataclass(frozen=True)
class TruncSeries:
    prime: int
    cutoff: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.cutoff + 1:
            raise ValueError(f"expected {self.cutoff + 1} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(int(c) % self.prime for c in self.coeffs))

    @classmethod
    def zero(cls, prime: int, cutoff: int) -> TruncSeries:
        return cls(prime, cutoff, (0,) * (cutoff + 1))

    @classmethod
    def from_terms(cls, prime: int, cutoff: int, terms: Iterable[tuple[int, int]]) -> TruncSeries:
        """Build from ``(exponent, coefficient)`` pairs; exponents above the cutoff are dropped."""
        acc = [0] * (cutoff + 1)
        for n, c in terms:
            if 0 <= n <= cutoff:
                acc[n] += c
        return cls(prime, cutoff, tuple(acc))

    def _check(self, other: TruncSeries) -> None:
        if (self.prime, self.cutoff) != (other.prime, other.cutoff):
            raise ValueError(
                f"series mismatch: (p={self.prime}, N={self.cutoff}) vs (p={other.prime}, N={other.cutoff})"
            )

    def __getitem__(self, n: int) -> int:
        return self.coeffs[n]

    def __add__(self, other: TruncSeries) -> TruncSeries:
        self._check(other)
        return TruncSeries(self.prime, self.cutoff, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: TruncSeries) -> TruncSeries:
        self._check(other)
        return TruncSeries(self.prime, self.cutoff, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> TruncSeries:
        return TruncSeries(self.prime, self.cutoff, tuple(-a for a in self.coeffs))

    def __mul__(self, other: TruncSeries | int) -> TruncSeries:
        if isinstance(other, TruncSeries):
            return series_mul(self, other)
        return TruncSeries(self.prime, self.cutoff, tuple(a * other for a in self.coeffs))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Cauchy product truncated at the common cutoff."""
    a._check(b)
    N, p = a.cutoff, a.prime
    out = [0] * (N + 1)
    for i, ai in enumerate(a.coeffs):
        if ai:
            for j in range(N + 1 - i):
                out[i + j] += ai * b.coeffs[j]
    return TruncSeries(p, N, tuple(c % p for c in out))


def check_cutoff(N: int, ctx: EvalContext) -> None:
    if N < 0:
        raise ValueError(f"cutoff must be nonnegative, got {N}")
    if N >= ctx.p - 1:
        raise ValueError(f"cutoff N={N} too large for p={ctx.p}: need N <= p - 2")


def ohno_sum(k: Sequence[int], m: int, ctx: EvalContext, star: bool = False) -> int:
    """``sum_{|e| = m} zeta(k + e)``."""
    k = as_index(k)
    p = ctx.p
    if not k:
        return 1 if m == 0 else 0
    return sum(zeta_A(oplus(k, e), ctx, star) for e in enumerate_e(len(k), m)) % p


def F_coefficient(k: int, i: int, n: int, ctx: EvalContext) -> int:
    """Coefficient of ``X^n`` in ``F_{k,i}``."""
    if k < 1 or i < 1:
        raise ValueError(f"F_{{k,i}} needs k, i >= 1, got ({k}, {i})")
    if n < k + i:
        return 0
    bracket = (-1) ** k * ctx.binom(n - 1, k - 1) - (-1) ** i * ctx.binom(n - 1, i - 1)
    if bracket % ctx.p == 0:
        return 0
    return bracket * ctx.frak_z(n) % ctx.p


def F_series(k: int, i: int, ctx: EvalContext, N: int) -> TruncSeries:
    check_cutoff(N, ctx)
    return TruncSeries(ctx.p, N, tuple(F_coefficient(k, i, n, ctx) for n in range(N + 1)))


def _star_ohno_series(k, ctx: EvalContext, N: int, alternate: bool) -> TruncSeries:
    w0 = sum(k)
    terms = []
    for w in range(w0, N + 1):
        c = ohno_sum(k, w - w0, ctx, star=True)
        if alternate and (w - w0) % 2:
            c = -c
        terms.append((w, c))
    return TruncSeries.from_terms(ctx.p, N, terms)


def O_series(k: Sequence[int], ctx: EvalContext, N: int) -> TruncSeries:
    """Generating function of star Ohno sums of ``k`` plus signed ones of its Hoffman dual."""
    k = as_index(k)
    if not k:
        raise ValueError("O_series needs a nonempty index")
    check_cutoff(N, ctx)
    return _star_ohno_series(k, ctx, N, False) + _star_ohno_series(hoffman_dual(k), ctx, N, True)


def main_rhs_series(k1: int, k2: int, k3: int, ctx: EvalContext, N: int) -> TruncSeries:
    if min(k1, k2, k3) < 1:
        raise ValueError("k1, k2, k3 must be positive")
    check_cutoff(N, ctx)
    if k2 == 1:
        return F_series(k1, 1, ctx, N) * F_series(k3, 1, ctx, N)
    total = TruncSeries.zero(ctx.p, N)
    for i in range(2, k2):
        j = k2 + 1 - i
        total = total - F_series(k1, i, ctx, N) * F_series(k3, j, ctx, N)
    return total


def odd_square_series(ctx: EvalContext, N: int) -> TruncSeries:
    """``(3 z(3) X^3 + 5 z(5) X^5 + 7 z(7) X^7 + ...)^2`` built straight from ``frak_z``."""
    check_cutoff(N, ctx)
    base = TruncSeries.from_terms(ctx.p, N, ((n, n * ctx.frak_z(n)) for n in range(3, N + 1, 2)))
    return base * base


def sum_formula_sides(i: int, j: int, n: int, ctx: EvalContext) -> tuple[int, int, int]:
    """Strict sum, star sum, and ``[X^n] F_{i+1,j+1}`` over weight-n, depth-(i+j+1)
    indices whose ``(i+1)``-th entry is at least 2."""
    d = i + j + 1
    if i < 0 or j < 0 or n < d + 1:
        raise ValueError(f"need i, j >= 0 and n >= i + j + 2, got ({i}, {j}, {n})")
    if n > ctx.p - 2:
        raise ValueError(f"weight {n} too large for p={ctx.p}")
    strict = star = 0
    for k in compositions(n, d):
        if k[i] >= 2:
            strict += zeta_A(k, ctx)
            star += zeta_A(k, ctx, star=True)
    return strict % ctx.p, star % ctx.p, F_coefficient(i + 1, j + 1, n, ctx)


def _G_series(k: int, i: int, ctx: EvalContext, N: int) -> TruncSeries:
    # sum_{n >= k+i-1} (-1)^i C(n, i-1) z(n) X^n
    sign = -1 if i % 2 else 1
    return TruncSeries.from_terms(
        ctx.p, N, ((n, sign * ctx.binom(n, i - 1) * ctx.frak_z(n)) for n in range(k + i - 1, N + 1))
    )


def _word_sum_series(builder, k1: int, k2: int, k3: int, ctx: EvalContext, N: int) -> TruncSeries:
    # sum_m zeta(p(W_m(k3, k2, k1))) X^{|k| + m}
    w0 = k1 + k2 + k3
    terms = [(w0 + m, zeta_A_word(builder(m, k3, k2, k1), ctx)) for m in range(N - w0 + 1)]
    return TruncSeries.from_terms(ctx.p, N, terms)


def lemma_sides(which: str, k1: int, k2: int, k3: int, ctx: EvalContext, N: int) -> tuple[TruncSeries, TruncSeries]:
    """Both sides of the depth-3 decomposition lemmas.

    ``which="A"``: star Ohno series of ``(k1,k2,k3)`` against the F-product,
    the double binomial sum and the ``P_m`` word sum.
    ``which="B"``: alternating star Ohno series of the Hoffman dual against
    the F-products and the ``Q_m`` word sum.
    """
    if min(k1, k2, k3) < 1:
        raise ValueError("k1, k2, k3 must be positive")
    check_cutoff(N, ctx)
    k = (k1, k2, k3)
    sign = -1 if (k1 + k2 + k3) % 2 else 1
    zero = TruncSeries.zero(ctx.p, N)
    if which == "A":
        lhs = _star_ohno_series(k, ctx, N, False)
        rhs = F_series(k1, 1, ctx, N) * F_series(k3, 1, ctx, N)
        for i in range(2, k2):
            for j in range(2, k2 + 2 - i):
                rhs = rhs - _G_series(k1, i, ctx, N) * _G_series(k3, j, ctx, N)
        rhs = rhs + sign * _word_sum_series(build_P, k1, k2, k3, ctx, N)
        return lhs, rhs
    if which == "B":
        lhs = _star_ohno_series(hoffman_dual(k), ctx, N, True)
        rhs = zero
        for i in range(2, k2 + 1):
            j = k2 + 2 - i
            rhs = rhs - F_series(k1, i - 1, ctx, N) * F_series(k3, j - 1, ctx, N)
        rhs = rhs - sign * _word_sum_series(build_Q, k1, k2, k3, ctx, N)
        return lhs, rhs
    raise ValueError(f"which must be 'A' or 'B', got {which!r}")


def U_series(k: int, s: int, ctx: EvalContext, N: int) -> TruncSeries:
    """``sum_{n >= s} (-1)^k C(n-1, k-1) z(n) X^n``; needs ``s >= 2``."""
    if s < 2:
        raise ValueError("U_{k,s} needs s >= 2")
    sign = -1 if k % 2 else 1
    return TruncSeries.from_terms(
        ctx.p, N, ((n, sign * ctx.binom(n - 1, k - 1) * ctx.frak_z(n)) for n in range(s, N + 1))
    )


def U_telescope_sides(k: int, s: int, ctx: EvalContext) -> tuple[int, int]:
    """The two single-term sides of ``U_{k,s} - U_{k,s-1} = U_{s-k,s} - U_{s-k,s-1}``."""
    if not 1 <= k < s or s < 3 or s > ctx.p - 1:
        raise ValueError(f"need 1 <= k < s, 3 <= s <= p - 1, got k={k}, s={s}")
    z = ctx.frak_z(s - 1)
    lhs = (-1) ** (k - 1) * ctx.binom(s - 2, k - 1) * z % ctx.p
    rhs = (-1) ** (s - k - 1) * ctx.binom(s - 2, s - k - 1) * z % ctx.p
    return lhs, rhs


def U_telescope_check(k: int, s: int, ctx: EvalContext) -> bool:
    lhs, rhs = U_telescope_sides(k, s, ctx)
    return lhs == rhs
