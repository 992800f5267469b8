"""Exact integer utilities: sieve, factorization, divisors, partitions.

Also holds a floating-point Riemann zeta evaluator, used only to turn
residues into asymptotic constants.
"""

from __future__ import annotations

import math
from functools import cache
from typing import NamedTuple

import numpy as np

SIEVE_LIMIT = 10**6
FACTOR_LIMIT = SIEVE_LIMIT**2


class PrimePower(NamedTuple):
    p: int
    e: int


Factorization = list[PrimePower]


@cache
def _spf_table(limit: int = SIEVE_LIMIT) -> np.ndarray:
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    rest = np.nonzero(spf == 0)[0]
    spf[rest] = rest
    spf.flags.writeable = False
    return spf


def smallest_prime_factors(limit: int) -> np.ndarray:
    """Smallest-prime-factor table for ``0..limit`` (entries 0 and 1 are 0 and 1)."""
    if limit <= SIEVE_LIMIT:
        return _spf_table()[: limit + 1]
    return _spf_table(limit)


@cache
def _sieved_primes() -> tuple[int, ...]:
    spf = _spf_table()
    idx = np.nonzero(spf[2:] == np.arange(2, len(spf)))[0] + 2
    return tuple(int(p) for p in idx)


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    spf = smallest_prime_factors(n)
    idx = np.nonzero(spf[2:] == np.arange(2, n + 1))[0] + 2
    return idx.tolist()


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n <= SIEVE_LIMIT:
        return int(_spf_table()[n]) == n
    return factorize(n) == [(n, 1)]


def factorize(n: int) -> Factorization:
    """Prime factorization of ``n`` as ``(p, e)`` pairs with ``p`` ascending.

    Inputs up to ``10**12`` are handled by a smallest-prime-factor sieve
    below ``10**6`` and trial division by the sieved primes above it.
    """
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise TypeError(f"expected an integer, got {type(n).__name__}")
    n = int(n)
    if n < 1:
        raise ValueError(f"cannot factorize {n}: input must be a positive integer")
    if n > FACTOR_LIMIT:
        raise ValueError(f"{n} exceeds the factorization bound {FACTOR_LIMIT}")
    out: Factorization = []
    if n <= SIEVE_LIMIT:
        spf = _spf_table()
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append(PrimePower(p, e))
        return out
    for p in _sieved_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append(PrimePower(p, e))
            if n <= SIEVE_LIMIT:
                return out + factorize(n)
    if n > 1:
        out.append(PrimePower(n, 1))
    return out


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


@cache
def _partition_numbers(k: int) -> tuple[int, ...]:
    # Euler's pentagonal number recurrence.
    parts = [1]
    for m in range(1, k + 1):
        total = 0
        j = 1
        while True:
            g1 = j * (3 * j - 1) // 2
            if g1 > m:
                break
            sign = 1 if j % 2 else -1
            total += sign * parts[m - g1]
            g2 = j * (3 * j + 1) // 2
            if g2 <= m:
                total += sign * parts[m - g2]
            j += 1
        parts.append(total)
    return tuple(parts)


def partition_count(k: int) -> int:
    """Number of integer partitions of ``k``."""
    if k < 0:
        return 0
    # grow the memo in coarse steps so repeated small calls share one table
    size = max(100, 1 << (k.bit_length()))
    return _partition_numbers(size)[k]


def num_abelian_groups(n: int) -> int:
    """Number of isomorphism classes of abelian groups of order ``n``."""
    return math.prod(partition_count(e) for _, e in factorize(n))


def zeta_value(k: int, tol: float = 1e-10) -> float:
    """Riemann zeta at an integer ``k >= 2`` with absolute error at most ``tol``.

    Sums ``m**-k`` for ``m < M`` and adds the midpoint of the tail bracket
    ``[M**(1-k)/(k-1), M**(1-k)/(k-1) + M**-k]``, so the error is at most
    ``M**-k / 2``.
    """
    if k <= 1:
        raise ValueError(f"zeta({k}) diverges; k must be at least 2")
    if tol <= 0:
        raise ValueError("tol must be positive")
    # fp rounding floor; smaller tolerances are not meaningful in doubles
    tol = max(tol, 1e-15)
    m_cut = max(2, math.ceil((1.0 / (2.0 * tol)) ** (1.0 / k)))
    head = math.fsum(m ** (-k) for m in range(m_cut - 1, 0, -1))
    tail = m_cut ** (1 - k) / (k - 1) + 0.5 * m_cut ** (-k)
    return head + tail
