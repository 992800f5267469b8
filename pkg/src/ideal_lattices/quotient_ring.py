"""Ideals of finite index in ``Z[X]/(f)`` for monic integer ``f``.

Under the coefficient map, an additive subgroup of ``Z[X]/(f)`` is an ideal
exactly when it is closed under multiplication by ``X``. That makes the
ideals of index ``n`` the determinant-``n`` sublattices of ``Z^d`` that are
stable under the companion matrix of ``f``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import partial
from typing import Sequence

import numpy as np

from . import arith, polys
from ._parallel import ordered_map
from .asymptotics import GrowthFit, fit_growth
from .dirichlet import CoeffTable, from_prime_powers, partial_sums
from .errors import ResourceError
from .lattice import (
    DEFAULT_BUDGET,
    HnfBasis,
    _check_budget,
    _dtype_for,
    _in_lattice,
    _stable_bases,
    _to_bases,
    contains,
    ordered_factorizations,
)


@dataclass(frozen=True)
class MonicPoly:
    """Monic ``f = c_0 + c_1 X + ... + c_{d-1} X^{d-1} + X^d`` with ``d >= 1``.

    ``coeffs`` runs from the constant term up to and including the leading 1.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) < 2:
            raise ValueError("a monic polynomial here needs degree >= 1")
        if coeffs[-1] != 1:
            raise ValueError(f"leading coefficient must be 1, got {coeffs[-1]}")

    @classmethod
    def parse(cls, text: str) -> MonicPoly:
        """Parse ``"c0,c1,...,1"`` (ascending, leading 1 included)."""
        parts = text.split(",")
        coeffs = []
        for pos, raw in enumerate(parts):
            token = raw.strip().replace("−", "-")
            try:
                coeffs.append(int(token))
            except ValueError:
                raise ValueError(
                    f"coefficient {pos} ({raw.strip()!r}) is not an integer"
                ) from None
        if len(coeffs) < 2:
            raise ValueError(f"need at least two coefficients (degree >= 1), got {len(coeffs)}")
        if coeffs[-1] != 1:
            raise ValueError(
                f"leading coefficient must be 1, got {coeffs[-1]} at position {len(coeffs) - 1}"
            )
        return cls(tuple(coeffs))

    @property
    def d(self) -> int:
        return len(self.coeffs) - 1

    def canonical(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    def __str__(self) -> str:
        terms = []
        for k in range(self.d, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("X" if k == 1 else f"X^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def as_monic(f: MonicPoly | Sequence[int] | str) -> MonicPoly:
    if isinstance(f, MonicPoly):
        return f
    if isinstance(f, str):
        return MonicPoly.parse(f)
    return MonicPoly(tuple(f))


@dataclass(frozen=True)
class CompanionMatrix:
    """Matrix of multiplication by ``X`` on ``Z[X]/(f)`` in the basis ``1, X, ..., X^{d-1}``."""

    rows: tuple[tuple[int, ...], ...]

    @property
    def d(self) -> int:
        return len(self.rows)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(r * x for r, x in zip(row, v)) for row in self.rows)


def companion_matrix(f: MonicPoly | Sequence[int] | str) -> CompanionMatrix:
    f = as_monic(f)
    d = f.d
    rows = [[0] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = 1
    for i in range(d):
        rows[i][d - 1] = -f.coeffs[i]
    return CompanionMatrix(tuple(tuple(r) for r in rows))


def is_ideal(H: HnfBasis, f: MonicPoly | Sequence[int] | str) -> bool:
    """Whether the lattice of ``H`` is stable under multiplication by ``X`` mod ``f``."""
    f = as_monic(f)
    if H.d != f.d:
        raise ValueError(f"basis dimension {H.d} does not match deg f = {f.d}")
    C = companion_matrix(f)
    return all(contains(H, C.apply(col)) for col in H.columns)


def _last_column_check(f: MonicPoly, diag: tuple[int, ...]):
    """Vectorized test that ``X * h_{d-1}`` reduced mod ``f`` stays in the lattice."""
    d = f.d
    neg_c = np.array([-c for c in f.coeffs[:d]], dtype=object)

    def check(bases: np.ndarray) -> np.ndarray:
        last = bases[:, d - 1, :]
        target = np.zeros_like(last)
        target[:, 1:] = last[:, :-1]
        target += last[:, d - 1 : d] * neg_c.astype(bases.dtype)[None, :]
        return _in_lattice(bases, diag, target)

    return check


def count_ideals_bruteforce(
    f: MonicPoly | Sequence[int] | str, n: int, budget: int = DEFAULT_BUDGET
) -> int:
    """Number of ideals of index ``n`` in ``Z[X]/(f)``, by exhaustive search."""
    f = as_monic(f)
    d = f.d
    _check_budget(d, n, budget)
    dtype = _dtype_for(n, d, max(abs(c) for c in f.coeffs))
    total = 0
    for diag in ordered_factorizations(n, d):
        total += len(_stable_bases(diag, _last_column_check(f, diag), dtype))
    return total


def iter_ideals(
    f: MonicPoly | Sequence[int] | str, n: int, budget: int = DEFAULT_BUDGET
):
    """Reduced bases of all ideals of index ``n`` in ``Z[X]/(f)``."""
    f = as_monic(f)
    _check_budget(f.d, n, budget)
    dtype = _dtype_for(n, f.d, max(abs(c) for c in f.coeffs))
    for diag in ordered_factorizations(n, f.d):
        yield from _to_bases(_stable_bases(diag, _last_column_check(f, diag), dtype))


def count_ideals_range(
    f: MonicPoly | Sequence[int] | str,
    n_max: int,
    budget: int = DEFAULT_BUDGET,
    threads: int | None = 1,
) -> list[int]:
    """Brute-force counts for every index ``1..n_max``."""
    f = as_monic(f)
    fn = partial(count_ideals_bruteforce, f, budget=budget)
    return ordered_map(fn, range(1, n_max + 1), threads)


def _local_factor(f: MonicPoly, budget: int, p: int, K: int) -> list[int]:
    # index p: an ideal of prime index is the kernel of a map to F_p, i.e. a root of f mod p
    out = [1, polys.count_roots_mod_p(f.coeffs, p)]
    for k in range(2, K + 1):
        try:
            out.append(count_ideals_bruteforce(f, p**k, budget))
        except ResourceError as exc:
            raise ResourceError(f"prime power {p}^{k} = {p**k}: {exc}") from exc
    return out[: K + 1]


def ideal_coeffs(
    f: MonicPoly | Sequence[int] | str,
    N: int,
    budget: int = DEFAULT_BUDGET,
    threads: int | None = 1,
) -> CoeffTable:
    """Table of ideal counts ``a_n(Z[X]/(f))`` for ``n <= N``.

    Prime powers ``p^k`` with ``k >= 2`` are counted by exhaustive search;
    prime indices by the number of roots of ``f`` mod ``p``. Everything else
    follows from multiplicativity.
    """
    f = as_monic(f)
    if N < 1:
        raise ValueError("N must be >= 1")
    primes = arith.primes_up_to(N)
    small = [p for p in primes if p * p <= N]
    # the searches at higher prime powers are the expensive part; fan them out
    factors = dict(zip(small, ordered_map(partial(_local_table, f, N, budget), small, threads)))

    def local(p: int, K: int) -> list[int]:
        if p in factors:
            return factors[p]
        return _local_factor(f, budget, p, K)

    return from_prime_powers(N, local)


def _local_table(f: MonicPoly, N: int, budget: int, p: int) -> list[int]:
    K = int(math.log(N, p)) + 1
    while p**K > N:
        K -= 1
    return _local_factor(f, budget, p, K)


def separable_growth_profile(
    f: MonicPoly | Sequence[int] | str,
    N: int,
    k: int,
    budget: int = DEFAULT_BUDGET,
    threads: int | None = 1,
) -> GrowthFit:
    """Fit ``A_N ~ c N (log N)^(k-1)`` for squarefree ``f`` with ``k`` irreducible factors."""
    f = as_monic(f)
    if not polys.is_squarefree_q(f.coeffs):
        raise ValueError(
            f"{f} has a repeated factor (gcd(f, f') != 1); the pole-order-k growth law "
            "only covers squarefree f"
        )
    if k < 1:
        raise ValueError("k must be >= 1")
    table = ideal_coeffs(f, N, budget, threads)
    return fit_growth(partial_sums(table), sigma=1, w=k)
