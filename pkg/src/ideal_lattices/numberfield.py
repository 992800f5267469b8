"""Dedekind zeta coefficients for monogenic fields ``O_K = Z[theta] = Z[X]/(f)``.

Away from the discriminant the Euler factor at ``p`` is fixed by how ``f``
splits mod ``p``. At primes dividing the discriminant the ideals of
``Z[X]/(f)`` are counted by exhaustive search instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import arith, polys
from .asymptotics import dyadic_checkpoints
from .dirichlet import CoeffTable, from_prime_powers, partial_sums
from .errors import ResourceError
from .lattice import DEFAULT_BUDGET
from .quotient_ring import MonicPoly, as_monic, count_ideals_bruteforce

MAX_PRIME = 10**5
DEFAULT_SEARCH_BUDGET = 10**6


@dataclass(frozen=True)
class SplittingType:
    """Factorization pattern of ``f`` mod ``p``: ``(degree, multiplicity)`` per irreducible factor."""

    p: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(sorted(self.factors)))
        if any(deg < 1 or mult < 1 for deg, mult in self.factors):
            raise ValueError("degrees and multiplicities must be positive")

    @property
    def degrees(self) -> list[int]:
        return [deg for deg, _ in self.factors]

    @property
    def total_degree(self) -> int:
        return sum(deg * mult for deg, mult in self.factors)

    @property
    def is_unramified(self) -> bool:
        return all(mult == 1 for _, mult in self.factors)


def poly_discriminant(f: MonicPoly | Sequence[int] | str) -> int:
    return polys.discriminant(as_monic(f).coeffs)


def _monic_candidates(k: int, p: int):
    for lower in itertools.product(range(p), repeat=k):
        yield tuple(lower) + (1,)


def factor_mod_p(
    f: MonicPoly | Sequence[int] | str, p: int, budget: int = DEFAULT_SEARCH_BUDGET
) -> SplittingType:
    """Factor ``f`` mod ``p`` by trial division with every monic polynomial of degree ``<= d/2``.

    Degrees are tried in increasing order, so each divisor found is
    irreducible; whatever is left at the end is irreducible too.
    """
    f = as_monic(f)
    if not arith.is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p > MAX_PRIME:
        raise ResourceError(f"p={p} exceeds the exhaustive-factoring bound {MAX_PRIME}")
    g = polys.mod_p(f.coeffs, p)
    found: list[tuple[int, int]] = []
    k = 1
    while 2 * k <= polys.degree(g):
        if p**k > budget:
            raise ResourceError(
                f"degree-{k} trial division mod {p} needs {p**k} candidates (budget {budget})"
            )
        for h in _monic_candidates(k, p):
            mult = 0
            while True:
                q, r = polys.divmod_p(g, h, p)
                if r:
                    break
                g, mult = q, mult + 1
            if mult:
                found.append((k, mult))
        k += 1
    if polys.degree(g) > 0:
        found.append((polys.degree(g), 1))
    return SplittingType(p, tuple(found))


def splitting_type(f: MonicPoly | Sequence[int] | str, p: int) -> SplittingType:
    """Splitting type at ``p``; fast for primes not dividing the discriminant."""
    f = as_monic(f)
    if poly_discriminant(f) % p == 0:
        return factor_mod_p(f, p)
    if f.d == 1:
        return SplittingType(p, ((1, 1),))
    if f.d == 2:
        roots = polys.count_roots_mod_p(f.coeffs, p)
        return SplittingType(p, ((1, 1), (1, 1)) if roots == 2 else ((2, 1),))
    counts = polys.distinct_degree_counts(f.coeffs, p)
    return SplittingType(p, tuple((deg, 1) for deg, c in counts.items() for _ in range(c)))


def euler_factor_from_splitting(st: SplittingType, K: int) -> list[int]:
    """``[a_1, a_p, ..., a_{p^K}]`` of ``prod_i (1 - p^(-d_i s))^(-1)``."""
    if not st.is_unramified:
        raise ValueError(
            f"p={st.p} is ramified (repeated factor); count its ideals by brute force"
        )
    if K < 0:
        raise ValueError("K must be >= 0")
    out = [1] + [0] * K
    for deg in st.degrees:
        for k in range(deg, K + 1):
            out[k] += out[k - deg]
    return out


def _possible_factor_degrees(st: SplittingType) -> set[int]:
    sums = {0}
    for deg, mult in st.factors:
        sums = {s + deg * m for s in sums for m in range(mult + 1)}
    return sums


def is_irreducible(f: MonicPoly | Sequence[int] | str, primes: int = 60) -> bool:
    """Irreducibility over Q.

    A proper factor must have a degree compatible with the splitting type at
    every good prime; if no such degree survives, ``f`` is irreducible.
    Degrees up to 3 are settled by the rational root test. Anything still
    ambiguous (such as ``X^4 + 1``, reducible mod every prime) goes to sympy.
    """
    f = as_monic(f)
    d = f.d
    if d == 1:
        return True
    if polys.rational_roots(f.coeffs):
        return False
    if d <= 3:
        return True
    if not polys.is_squarefree_q(f.coeffs):
        return False
    disc = poly_discriminant(f)
    allowed = set(range(1, d))
    checked = 0
    for p in arith.primes_up_to(10**4):
        if disc % p == 0:
            continue
        allowed &= _possible_factor_degrees(splitting_type(f, p))
        checked += 1
        if not allowed - {0, d}:
            return True
        if checked >= primes:
            break
    import sympy

    x = sympy.Symbol("x")
    return bool(sympy.Poly(list(reversed(f.coeffs)), x).is_irreducible)


def dedekind_coeffs(
    f: MonicPoly | Sequence[int] | str, N: int, budget: int = DEFAULT_BUDGET
) -> CoeffTable:
    """Ideal counts of ``O_K = Z[X]/(f)`` for ``n <= N``, for irreducible ``f``."""
    f = as_monic(f)
    if not is_irreducible(f):
        raise ValueError(f"{f} is reducible over Q; use quotient_ring.ideal_coeffs instead")
    disc = poly_discriminant(f)

    def local(p: int, K: int) -> list[int]:
        if disc % p:
            return euler_factor_from_splitting(splitting_type(f, p), K)
        out = [1]
        for k in range(1, K + 1):
            try:
                out.append(count_ideals_bruteforce(f, p**k, budget))
            except ResourceError as exc:
                raise ResourceError(f"prime power {p}^{k} = {p**k}: {exc}") from exc
        return out

    return from_prime_powers(N, local)


@dataclass(frozen=True)
class ResidueEstimate:
    value: float
    band: float
    checkpoints: list[tuple[int, float]]


def residue_estimate(A: CoeffTable) -> ResidueEstimate:
    """Estimate ``lim A_T / T`` with one Richardson step over dyadic ``T <= N``.

    Assuming ``A_T / T = c + b/T + ...``, the combination ``2 r(T) - r(T/2)``
    removes the ``1/T`` term. ``band`` is the spread of the last three
    extrapolated values.
    """
    sums = partial_sums(A)
    points = [t for t in dyadic_checkpoints(A.N, start=1) if t & (t - 1) == 0]
    if len(points) < 4:
        raise ValueError(f"N={A.N} is too small; need dyadic checkpoints up to at least 8")
    ratios = {t: sums[t] / t for t in points}
    extrapolated = [(t, 2 * ratios[t] - ratios[t // 2]) for t in points[1:]]
    tail = [v for _, v in extrapolated[-3:]]
    return ResidueEstimate(extrapolated[-1][1], max(tail) - min(tail), extrapolated)
