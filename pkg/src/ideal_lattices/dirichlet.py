"""Exact coefficient algebra for Dirichlet series truncated at ``N``.

A :class:`CoeffTable` holds ``a_1..a_N`` as Python integers (numpy object
arrays underneath), so every operation here is exact regardless of size.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from . import arith


class CoeffTable:
    """Coefficients ``a_1, ..., a_N`` of a Dirichlet series.

    Indexing is 1-based: ``table[n]`` is ``a_n``. Tables are immutable.
    """

    __slots__ = ("_a",)

    def __init__(self, coeffs: Iterable[int]):
        values = [int(c) for c in coeffs]
        if not values:
            raise ValueError("a coefficient table needs N >= 1 entries")
        if min(values) < 0:
            raise ValueError("coefficients must be nonnegative")
        a = np.empty(len(values) + 1, dtype=object)
        a[0] = 0
        a[1:] = values
        a.flags.writeable = False
        self._a = a

    @classmethod
    def _wrap(cls, a: np.ndarray) -> CoeffTable:
        # trusted fast path: ``a`` has length N+1, a[0] == 0, entries are ints >= 0
        obj = cls.__new__(cls)
        a.flags.writeable = False
        obj._a = a
        return obj

    @property
    def N(self) -> int:
        return len(self._a) - 1

    def __len__(self) -> int:
        return self.N

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.N:
            raise IndexError(f"index {n} outside 1..{self.N}")
        return self._a[n]

    def values(self) -> list[int]:
        return self._a[1:].tolist()

    def __iter__(self):
        return iter(self._a[1:].tolist())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoeffTable):
            return NotImplemented
        return self.N == other.N and self.values() == other.values()

    def __hash__(self) -> int:
        return hash(tuple(self.values()))

    def __repr__(self) -> str:
        head = ", ".join(str(x) for x in self._a[1:9])
        more = ", ..." if self.N > 8 else ""
        return f"CoeffTable(N={self.N}, [{head}{more}])"

    def truncate(self, N: int) -> CoeffTable:
        if not 1 <= N <= self.N:
            raise ValueError(f"cannot truncate a table of length {self.N} to {N}")
        return CoeffTable._wrap(self._a[: N + 1].copy())

    # serialization: integers are written as decimal strings

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "coefficient"])
        for n, c in enumerate(self._a[1:].tolist(), start=1):
            writer.writerow([n, str(c)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> CoeffTable:
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or rows[0] != ["n", "coefficient"]:
            raise ValueError("expected a CSV header 'n,coefficient'")
        coeffs = []
        for expected, (n, c) in enumerate(rows[1:], start=1):
            if int(n) != expected:
                raise ValueError(f"row {expected} is labelled n={n}")
            coeffs.append(int(c))
        return cls(coeffs)

    def to_json(self) -> str:
        return json.dumps({"N": self.N, "coeffs": [str(c) for c in self._a[1:].tolist()]})

    @classmethod
    def from_json(cls, text: str) -> CoeffTable:
        obj = json.loads(text)
        coeffs = [int(c) for c in obj["coeffs"]]
        if len(coeffs) != obj["N"]:
            raise ValueError(f"N={obj['N']} but {len(coeffs)} coefficients given")
        return cls(coeffs)


def _zeros(N: int) -> np.ndarray:
    return np.zeros(N + 1, dtype=object)


def unit_coeffs(N: int) -> CoeffTable:
    """The convolution identity: ``a_1 = 1`` and every other entry 0."""
    a = _zeros(N)
    a[1] = 1
    return CoeffTable._wrap(a)


def zeta_affine_coeffs(a: int, b: int, N: int) -> CoeffTable:
    """Coefficients of ``zeta(a*s - b)``: entry ``m**b`` at ``n = m**a``, else 0."""
    if a < 1:
        raise ValueError(f"scale a={a} must be >= 1")
    if b < 0:
        raise ValueError(f"shift b={b} must be >= 0")
    if N < 1:
        raise ValueError("N must be >= 1")
    out = _zeros(N)
    m = 1
    while m**a <= N:
        out[m**a] = m**b
        m += 1
    return CoeffTable._wrap(out)


def _nonzero_indices(a: np.ndarray) -> np.ndarray:
    return np.nonzero(a[1:] != 0)[0] + 1


def convolve(A: CoeffTable, B: CoeffTable) -> CoeffTable:
    """Dirichlet convolution ``c_n = sum_{d | n} A_d B_{n/d}`` truncated at ``N``."""
    if A.N != B.N:
        raise ValueError(f"truncation bounds differ: {A.N} != {B.N}")
    N = A.N
    a, b = A._a, B._a
    a_idx, b_idx = _nonzero_indices(a), _nonzero_indices(b)
    # drive the loop with the sparser operand
    if len(b_idx) < len(a_idx):
        a, b = b, a
        a_idx = b_idx
    out = _zeros(N)
    for i in a_idx.tolist():
        span = N // i
        out[i : i * span + 1 : i] += a[i] * b[1 : span + 1]
    return CoeffTable._wrap(out)


def product(factors: Sequence[CoeffTable]) -> CoeffTable:
    if not factors:
        raise ValueError("product of an empty list of series")
    result = factors[0]
    for f in factors[1:]:
        result = convolve(result, f)
    return result


def zeta_d_coeffs(d: int, N: int) -> CoeffTable:
    """Counts of index-``n`` sublattices of ``Z^d`` that are ideal lattices.

    Generating series ``zeta(s-1) zeta(2(s-1)) ... zeta((d-1)(s-1)) zeta(d s)``;
    for ``d = 1`` this is plain ``zeta(s)``.
    """
    if d < 1:
        raise ValueError(f"dimension d={d} must be >= 1")
    factors = [zeta_affine_coeffs(i, i, N) for i in range(1, d)]
    factors.append(zeta_affine_coeffs(d, 0, N))
    return product(factors)


def _log2_floor(N: int) -> int:
    return N.bit_length() - 1


def zeta_ZX_coeffs(N: int) -> CoeffTable:
    """Ideal counts of ``Z[X]``: the product of ``zeta(i(s-1))`` over all ``i >= 1``.

    Factors with ``2**i > N`` equal the unit up to ``N``, so stopping at
    ``i = floor(log2 N)`` is exact.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    top = max(1, _log2_floor(N))
    return product([zeta_affine_coeffs(i, i, N) for i in range(1, top + 1)])


def abelian_group_coeffs(N: int) -> CoeffTable:
    """Coefficients of ``zeta(s) zeta(2s) zeta(3s) ...``, truncated exactly at ``N``."""
    if N < 1:
        raise ValueError("N must be >= 1")
    top = max(1, _log2_floor(N))
    return product([zeta_affine_coeffs(i, 0, N) for i in range(1, top + 1)])


def sublattice_coeffs(d: int, N: int) -> CoeffTable:
    """Counts of all index-``n`` sublattices of ``Z^d``: ``zeta(s) zeta(s-1) ... zeta(s-d+1)``."""
    if d < 1:
        raise ValueError(f"dimension d={d} must be >= 1")
    return product([zeta_affine_coeffs(1, i, N) for i in range(d)])


def partial_sums(A: CoeffTable) -> list[int]:
    """Prefix sums ``S`` with ``S[n] = sum_{m <= n} a_m`` for ``0 <= n <= N``."""
    return np.cumsum(A._a).tolist()


def euler_factor(A: CoeffTable, p: int, K: int) -> list[int]:
    """``[a_1, a_p, a_{p^2}, ..., a_{p^K}]`` read from the table."""
    if not arith.is_prime(p):
        raise ValueError(f"{p} is not prime")
    if K < 0:
        raise ValueError("K must be >= 0")
    if p**K > A.N:
        raise ValueError(f"{p}^{K} exceeds the table bound N={A.N}")
    return [A._a[p**k] for k in range(K + 1)]


def from_prime_powers(N: int, local: Callable[[int, int], Sequence[int]]) -> CoeffTable:
    """Assemble a multiplicative table from its Euler factors.

    ``local(p, K)`` must return ``[1, a_p, ..., a_{p^K}]`` with ``p**K <= N``
    maximal. Entries at composite ``n`` are products over ``p**k || n``.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    a = np.ones(N + 1, dtype=object)
    a[0] = 0
    for p in arith.primes_up_to(N):
        K = 1
        while p ** (K + 1) <= N:
            K += 1
        factor = list(local(p, K))
        if len(factor) != K + 1 or factor[0] != 1:
            raise ValueError(f"local factor at p={p} must be [1, a_p, ..., a_p^{K}]")
        for k in range(1, K + 1):
            e = int(factor[k])
            if e == 1:
                continue
            q = p**k
            if q * p > N:
                a[q::q] *= e
            else:
                idx = np.arange(q, N + 1, q)
                idx = idx[(idx // q) % p != 0]
                a[idx] *= e
    return CoeffTable._wrap(a)


@dataclass(frozen=True)
class MultiplicativityCheck:
    ok: bool
    witness: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def _prime_power_part(N: int) -> np.ndarray:
    """For each ``t <= N``, the exact power of its smallest prime dividing ``t``."""
    spf = arith.smallest_prime_factors(N).astype(np.int64)
    pp = spf.copy()
    rest = np.arange(N + 1, dtype=np.int64)
    rest[2:] //= spf[2:]
    live = np.arange(2, N + 1)
    while len(live):
        live = live[rest[live] % spf[live] == 0]
        rest[live] //= spf[live]
        pp[live] *= spf[live]
    return pp


def is_multiplicative(A: CoeffTable) -> MultiplicativityCheck:
    """Check ``a_1 = 1`` and ``a_{mn} = a_m a_n`` for all coprime ``m, n`` with ``mn <= N``.

    On failure the witness is the coprime pair with the smallest product,
    split at the smallest prime dividing it.
    """
    a, N = A._a, A.N
    if a[1] != 1:
        return MultiplicativityCheck(False, (1, 1))
    if N < 6:
        return MultiplicativityCheck(True)
    pp = _prime_power_part(N)
    t = np.arange(2, N + 1)
    q = pp[2:]
    composite = q != t
    t, q = t[composite], q[composite]
    bad = np.nonzero(a[t] != a[q] * a[t // q])[0]
    if len(bad) == 0:
        return MultiplicativityCheck(True)
    i = int(bad[0])
    m, n = int(q[i]), int(t[i] // q[i])
    return MultiplicativityCheck(False, (min(m, n), max(m, n)))


def sigma(k: int, N: int) -> CoeffTable:
    """Divisor-power sums ``sigma_k(n)`` as ``zeta(s) zeta(s-k)``."""
    return convolve(zeta_affine_coeffs(1, 0, N), zeta_affine_coeffs(1, k, N))


__all__ = [
    "CoeffTable",
    "MultiplicativityCheck",
    "abelian_group_coeffs",
    "convolve",
    "euler_factor",
    "from_prime_powers",
    "is_multiplicative",
    "partial_sums",
    "product",
    "sigma",
    "sublattice_coeffs",
    "unit_coeffs",
    "zeta_affine_coeffs",
    "zeta_d_coeffs",
    "zeta_ZX_coeffs",
]