"""Arithmetic modulo a single prime: sieving, inverses, binomials, Bernoulli numbers.

Everything here is exact integer arithmetic; residues are stored as ints in
``[0, p)``.  The small :class:`Residue` wrapper is provided for callers who
want the modulus carried along with the value.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "Residue",
    "is_prime",
    "check_prime",
    "primes_in_range",
    "primes_above",
    "mod_inv",
    "batch_inverses",
    "binom_mod",
    "BernoulliTable",
    "bernoulli_table",
    "frak_z",
]

# Largest modulus for which products and prefix sums of residues fit in int64.
MAX_MODULUS = 3_037_000_499

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_prime(p: int) -> int:
    """Return ``p`` unchanged if it is an odd prime usable as a modulus."""
    if not isinstance(p, (int, np.integer)) or isinstance(p, bool):
        raise TypeError(f"prime must be an integer, got {type(p).__name__}")
    p = int(p)
    if p <= 2 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    if p > MAX_MODULUS:
        raise ValueError(f"prime {p} exceeds the supported modulus bound {MAX_MODULUS}")
    return p


@dataclass(frozen=True)
class Residue:
    value: int
    modulus: int

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.modulus:
            object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other: Residue | int) -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ValueError(f"modulus mismatch: {self.modulus} vs {other.modulus}")
            return other.value
        return int(other)

    def __add__(self, other: Residue | int) -> Residue:
        return Residue((self.value + self._coerce(other)) % self.modulus, self.modulus)

    __radd__ = __add__

    def __sub__(self, other: Residue | int) -> Residue:
        return Residue((self.value - self._coerce(other)) % self.modulus, self.modulus)

    def __rsub__(self, other: int) -> Residue:
        return Residue((int(other) - self.value) % self.modulus, self.modulus)

    def __mul__(self, other: Residue | int) -> Residue:
        return Residue(self.value * self._coerce(other) % self.modulus, self.modulus)

    __rmul__ = __mul__

    def __neg__(self) -> Residue:
        return Residue(-self.value % self.modulus, self.modulus)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Residue):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.modulus))

    def __int__(self) -> int:
        return self.value

    def inverse(self) -> Residue:
        return mod_inv(self)


def primes_in_range(lo: int, hi: int) -> list[int]:
    """All primes in ``[lo, hi]`` in ascending order (sieve of Eratosthenes)."""
    if lo < 2 or hi < lo:
        raise ValueError(f"need 2 <= lo <= hi, got lo={lo}, hi={hi}")
    sieve = np.ones(hi + 1, dtype=bool)
    sieve[:2] = False
    for q in range(2, math.isqrt(hi) + 1):
        if sieve[q]:
            sieve[q * q :: q] = False
    return [int(q) for q in np.flatnonzero(sieve[lo:]) + lo]


def primes_above(bound: int, count: int) -> list[int]:
    """The first ``count`` primes strictly greater than ``bound``."""
    out: list[int] = []
    n = max(bound + 1, 2)
    while len(out) < count:
        if is_prime(n):
            out.append(n)
        n += 1
    return out


def mod_inv(a: Residue | int, p: int | None = None) -> Residue:
    """Multiplicative inverse; accepts a :class:`Residue` or ``(int, p)``."""
    if not isinstance(a, Residue):
        if p is None:
            raise TypeError("modulus required when inverting a bare integer")
        a = Residue(int(a) % p, p)
    if a.value == 0:
        raise ZeroDivisionError(f"non-invertible: 0 mod {a.modulus}")
    return Residue(pow(a.value, -1, a.modulus), a.modulus)


def batch_inverses(p: int) -> list[int]:
    """``result[m] = m^{-1} mod p`` for ``1 <= m < p``; ``result[0]`` is unused (0).

    Uses prefix products so only one modular exponentiation is needed.
    """
    prefix = [1] * p
    for m in range(1, p):
        prefix[m] = prefix[m - 1] * m % p
    inv = [0] * p
    acc = pow(prefix[p - 1], -1, p)
    for m in range(p - 1, 0, -1):
        inv[m] = acc * prefix[m - 1] % p
        acc = acc * m % p
    return inv


@lru_cache(maxsize=None)
def _factorials(p: int) -> tuple[list[int], list[int]]:
    fact = [1] * p
    for m in range(1, p):
        fact[m] = fact[m - 1] * m % p
    inv_fact = [1] * p
    inv_fact[p - 1] = pow(fact[p - 1], -1, p)
    for m in range(p - 1, 0, -1):
        inv_fact[m - 1] = inv_fact[m] * m % p
    return fact, inv_fact


def binom_mod(n: int, k: int, p: int) -> int:
    """C(n, k) mod p, zero outside ``0 <= k <= n`` (Lucas' theorem for n >= p)."""
    if k < 0 or k > n or n < 0:
        return 0
    fact, inv_fact = _factorials(p)
    result = 1
    while n or k:
        ni, ki = n % p, k % p
        if ki > ni:
            return 0
        result = result * fact[ni] % p * inv_fact[ki] % p * inv_fact[ni - ki] % p
        n //= p
        k //= p
    return result


@dataclass(frozen=True)
class BernoulliTable:
    """Bernoulli numbers ``B_0 .. B_{p-2}`` reduced mod ``p`` (B_1 = -1/2)."""

    modulus: int
    values: tuple[int, ...]

    def __getitem__(self, m: int) -> int:
        return self.values[m]

    def __len__(self) -> int:
        return len(self.values)


@lru_cache(maxsize=64)
def bernoulli_table(p: int) -> BernoulliTable:
    """Run ``sum_{j<=m} C(m+1, j) B_j = 0`` mod p up to ``m = p - 2``.

    Each B_j with ``j <= p - 2`` is p-integral (von Staudt-Clausen), and the
    division by ``m + 1 <= p - 1`` is always invertible.  O(p^2).
    """
    p = check_prime(p)
    if p < 5:
        raise ValueError("bernoulli_table needs p >= 5")
    inv = batch_inverses(p)
    top = p - 2
    bern = [0] * (top + 1)
    bern[0] = 1
    row = [1, 1]  # C(1, .) mod p
    for m in range(1, top + 1):
        # extend Pascal row to C(m+1, .)
        row = [1] + [(row[j - 1] + row[j]) % p for j in range(1, len(row))] + [1]
        if m >= 3 and m % 2 == 1:
            continue
        acc = sum(row[j] * bern[j] for j in range(m)) % p
        bern[m] = -acc * inv[m + 1] % p
    return BernoulliTable(p, tuple(bern))


def frak_z(n: int, p: int) -> int:
    """``B_{p-n} / n mod p``, defined for ``2 <= n <= p - 2``."""
    if not 2 <= n <= p - 2:
        raise ValueError(f"frak_z undefined at this component: n={n}, p={p}")
    table = bernoulli_table(p)
    return table[p - n] * pow(n, -1, p) % p
