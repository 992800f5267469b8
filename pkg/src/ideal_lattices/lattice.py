"""Finite-index sublattices of ``Z^d`` in reduced upper-triangular column form.

Column ``j`` of a basis is the generator "of degree ``j``": rows are indexed
by coefficient degree ``0..d-1`` and the matrix is upper triangular. A basis
is *idealizable* when multiplication by ``X`` (shifting a coefficient vector
down one row) maps each column ``j <= d-2`` back into the lattice.

Counting is exact brute force over reduced bases. The search builds columns
left to right and tests each shift condition as soon as the columns it
involves are fixed; all partial bases sharing a diagonal are tested together
as one numpy block.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import partial
from typing import Callable, Iterator, Sequence

import numpy as np

from . import arith
from ._parallel import ordered_map
from .errors import ResourceError

DEFAULT_BUDGET = 10**8

Vector = tuple[int, ...]


@dataclass(frozen=True)
class HnfBasis:
    """Upper-triangular integer basis; ``columns[j][i]`` is entry ``(i, j)``."""

    columns: tuple[Vector, ...]

    def __post_init__(self):
        cols = tuple(tuple(int(x) for x in c) for c in self.columns)
        object.__setattr__(self, "columns", cols)
        d = len(cols)
        if d < 1:
            raise ValueError("a basis needs at least one column")
        for j, col in enumerate(cols):
            if len(col) != d:
                raise ValueError(f"column {j} has length {len(col)}, expected {d}")
            if any(col[i] != 0 for i in range(j + 1, d)):
                raise ValueError(f"column {j} has entries below the diagonal")
            if col[j] < 1:
                raise ValueError(f"diagonal entry ({j},{j}) = {col[j]} must be positive")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> HnfBasis:
        d = len(rows)
        return cls(tuple(tuple(rows[i][j] for i in range(d)) for j in range(d)))

    @property
    def d(self) -> int:
        return len(self.columns)

    def entry(self, i: int, j: int) -> int:
        return self.columns[j][i]

    @property
    def diagonal(self) -> Vector:
        return tuple(self.columns[j][j] for j in range(self.d))

    @property
    def det(self) -> int:
        return math.prod(self.diagonal)

    def rows(self) -> list[list[int]]:
        return [[self.columns[j][i] for j in range(self.d)] for i in range(self.d)]

    def is_reduced(self) -> bool:
        return all(
            0 <= self.columns[j][i] < self.columns[i][i]
            for j in range(self.d)
            for i in range(j)
        )

    def reduced(self) -> HnfBasis:
        """The reduced basis of the same lattice (row ``i`` entries in ``[0, a_ii)``)."""
        cols = [list(c) for c in self.columns]
        for j in range(self.d):
            for i in range(j - 1, -1, -1):
                q = cols[j][i] // cols[i][i]
                if q:
                    cols[j] = [x - q * y for x, y in zip(cols[j], cols[i])]
        return HnfBasis(tuple(tuple(c) for c in cols))


def ordered_factorizations(n: int, d: int) -> Iterator[Vector]:
    """All ``(a_0, ..., a_{d-1})`` of positive integers with product ``n``."""
    if d == 1:
        yield (n,)
        return
    for a in arith.divisors(n):
        for rest in ordered_factorizations(n // a, d - 1):
            yield (a,) + rest


def _fillings_per_diagonal(diag: Vector) -> int:
    d = len(diag)
    return math.prod(a ** (d - 1 - i) for i, a in enumerate(diag))


def hnf_count(d: int, n: int) -> int:
    """Number of reduced bases of determinant ``n`` in dimension ``d``."""
    return sum(_fillings_per_diagonal(diag) for diag in ordered_factorizations(n, d))


def _check_budget(d: int, n: int, budget: int) -> None:
    if d < 1 or n < 1:
        raise ValueError(f"need d >= 1 and n >= 1, got d={d}, n={n}")
    total = hnf_count(d, n)
    if total > budget:
        raise ResourceError(
            f"d={d}, n={n}: {total} bases to search exceeds the budget of {budget}"
        )


def enumerate_hnf(d: int, n: int) -> Iterator[HnfBasis]:
    """Every reduced basis of determinant ``n``, each exactly once."""
    for diag in ordered_factorizations(n, d):
        # row i carries d-1-i free entries, each in [0, a_ii)
        slots = [(i, j) for j in range(d) for i in range(j)]
        ranges = [range(diag[i]) for i, _ in slots]
        for fill in itertools.product(*ranges):
            cols = [[0] * d for _ in range(d)]
            for j in range(d):
                cols[j][j] = diag[j]
            for (i, j), x in zip(slots, fill):
                cols[j][i] = x
            yield HnfBasis(tuple(tuple(c) for c in cols))


def contains(H: HnfBasis, v: Sequence[int]) -> bool:
    """Whether ``v`` is an integer combination of the columns of ``H``."""
    if len(v) != H.d:
        raise ValueError(f"vector of length {len(v)} for a basis of dimension {H.d}")
    r = [int(x) for x in v]
    for i in range(H.d - 1, -1, -1):
        q, rem = divmod(r[i], H.columns[i][i])
        if rem:
            return False
        if q:
            col = H.columns[i]
            for k in range(i + 1):
                r[k] -= q * col[k]
    return True


def shift(v: Sequence[int]) -> Vector:
    """Multiply by ``X``: ``(v_0, ..., v_{d-1}) -> (0, v_0, ..., v_{d-2})``."""
    v = tuple(v)
    if not v:
        return v
    return (0,) + v[:-1]


def is_idealizable(H: HnfBasis) -> bool:
    """Every column ``j <= d-2`` shifted down by one lies in the lattice.

    The last column is exempt: a suitable monic ``f`` of degree ``d`` always
    absorbs it.
    """
    return all(contains(H, shift(H.columns[j])) for j in range(H.d - 1))


def check_divisibility(H: HnfBasis) -> bool:
    """For ``1 <= j <= d-1``, ``a_jj`` divides every entry in rows and columns ``0..j``."""
    for j in range(1, H.d):
        a = H.columns[j][j]
        for k in range(j + 1):
            if any(H.columns[k][i] % a for i in range(j + 1)):
                return False
    return True


# ---------------------------------------------------------------------------
# vectorized search


def _column_candidates(diag: Vector, k: int, dtype) -> np.ndarray:
    """All reduced choices for column ``k`` as a ``(M, d)`` array."""
    d = len(diag)
    ranges = diag[:k]
    if ranges:
        fill = np.indices(ranges).reshape(k, -1).T
    else:
        fill = np.zeros((1, 0), dtype=np.int64)
    out = np.zeros((fill.shape[0], d), dtype=np.int64)
    out[:, :k] = fill
    out[:, k] = diag[k]
    return out.astype(dtype) if dtype is not np.int64 else out


def _in_lattice(cols: np.ndarray, diag: Vector, target: np.ndarray) -> np.ndarray:
    """Row mask: which ``target[r]`` lie in the span of the columns ``cols[r]``.

    ``cols`` has shape ``(M, m, d)`` (``m`` leading columns per basis) and
    ``target`` shape ``(M, m)``; back-substitution runs from row ``m-1`` up.
    """
    r = np.array(target, copy=True)
    ok = np.ones(r.shape[0], dtype=bool)
    for i in range(cols.shape[1] - 1, -1, -1):
        ri = r[:, i]
        ok &= ri % diag[i] == 0
        if i:
            r[:, :i] -= (ri // diag[i])[:, None] * cols[:, i, :i]
    return ok


def _stable_bases(
    diag: Vector,
    last_check: Callable[[np.ndarray], np.ndarray] | None,
    dtype,
) -> np.ndarray:
    """All idealizable bases with this diagonal, as an ``(M, d, d)`` column array.

    Columns are placed left to right; after column ``k`` is placed, the shift
    condition for column ``k-1`` is decided for every partial basis at once.
    ``last_check(bases)`` may veto complete bases.
    """
    d = len(diag)
    bases = np.zeros((1, 0, d), dtype=dtype)
    for k in range(d):
        if k and diag[k - 1] % diag[k]:
            # bottom row of the shift condition for column k-1 already fails
            return np.zeros((0, d, d), dtype=dtype)
        cand = _column_candidates(diag, k, dtype)
        M, C = bases.shape[0], cand.shape[0]
        grown = np.empty((M * C, k + 1, d), dtype=dtype)
        grown[:, :k, :] = np.repeat(bases, C, axis=0)
        grown[:, k, :] = np.tile(cand, (M, 1))
        if k:
            target = np.zeros((M * C, k + 1), dtype=dtype)
            target[:, 1:] = grown[:, k - 1, :k]
            grown = grown[_in_lattice(grown, diag, target)]
        bases = grown
        if not len(bases):
            return np.zeros((0, d, d), dtype=dtype)
    if last_check is not None:
        bases = bases[last_check(bases)]
    return bases


def _dtype_for(n: int, d: int, coeff_bound: int = 1):
    bound = n * (1 + coeff_bound) * (n + 1) ** d
    return np.int64 if bound < 2**62 else object


def _to_bases(block: np.ndarray) -> Iterator[HnfBasis]:
    for cols in block.tolist():
        yield HnfBasis(tuple(tuple(int(x) for x in c) for c in cols))


def iter_idealizable(d: int, n: int, budget: int = DEFAULT_BUDGET) -> Iterator[HnfBasis]:
    """Every reduced idealizable basis of determinant ``n``."""
    _check_budget(d, n, budget)
    dtype = _dtype_for(n, d)
    for diag in ordered_factorizations(n, d):
        yield from _to_bases(_stable_bases(diag, None, dtype))


def count_idealizable(d: int, n: int, budget: int = DEFAULT_BUDGET) -> int:
    """Brute-force count of reduced idealizable bases of determinant ``n``."""
    _check_budget(d, n, budget)
    dtype = _dtype_for(n, d)
    return sum(len(_stable_bases(diag, None, dtype)) for diag in ordered_factorizations(n, d))


def count_idealizable_range(
    d: int, n_max: int, budget: int = DEFAULT_BUDGET, threads: int | None = 1
) -> list[int]:
    """``[count_idealizable(d, n) for n in 1..n_max]``."""
    return ordered_map(partial(count_idealizable, d, budget=budget), range(1, n_max + 1), threads)


def enumerate_extensions(H: HnfBasis) -> Iterator[Vector]:
    """Reduced ``beta`` making ``[[H, beta], [0, 1]]`` a reduced idealizable basis."""
    if not is_idealizable(H):
        raise ValueError("extensions are only defined for idealizable bases")
    d = H.d
    for beta in itertools.product(*(range(a) for a in H.diagonal)):
        cols = tuple(c + (0,) for c in H.columns) + (beta + (1,),)
        if is_idealizable(HnfBasis(cols)):
            yield beta


def count_all_sublattices(d: int, n: int, budget: int = DEFAULT_BUDGET) -> int:
    """Number of reduced bases of determinant ``n``.

    Walks every ordered diagonal factorization and counts its reduced
    off-diagonal fillings (``a_ii`` choices for each entry right of the
    diagonal in row ``i``).
    """
    if d < 1 or n < 1:
        raise ValueError(f"need d >= 1 and n >= 1, got d={d}, n={n}")
    total = 0
    for diag in ordered_factorizations(n, d):
        total += _fillings_per_diagonal(diag)
        if total > budget:
            raise ResourceError(
                f"d={d}, n={n}: more than {budget} bases; raise the budget to count them"
            )
    return total
