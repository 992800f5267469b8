"""Growth constants for partial sums ``A_N ~ c N^sigma (log N)^(w-1)``.

A Dirichlet series with nonnegative coefficients, abscissa ``sigma`` and a
pole of order ``w`` there has ``c = Res / (sigma * Gamma(w))``. This module
evaluates such constants for the ideal-lattice series and measures the
corresponding ratios on exact partial sums.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

from .arith import zeta_value
from .dirichlet import partial_sums, sublattice_coeffs, zeta_d_coeffs


@dataclass(frozen=True)
class GrowthFit:
    sigma: float
    w: int
    c_hat: float
    band: float
    checkpoints: list[tuple[int, float]] = field(default_factory=list)

    @property
    def trend(self) -> str:
        """``"increasing"``, ``"decreasing"``, ``"constant"`` or ``"mixed"`` over the checkpoints."""
        ratios = [r for _, r in self.checkpoints]
        steps = [b - a for a, b in zip(ratios, ratios[1:])]
        if all(s == 0 for s in steps):
            return "constant"
        if all(s >= 0 for s in steps):
            return "increasing"
        if all(s <= 0 for s in steps):
            return "decreasing"
        return "mixed"

    def to_dict(self) -> dict:
        return {
            "sigma": self.sigma,
            "w": self.w,
            "c_hat": self.c_hat,
            "band": self.band,
            "trend": self.trend,
            "checkpoints": [{"N": n, "ratio": r} for n, r in self.checkpoints],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def dyadic_checkpoints(N: int, start: int = 2) -> list[int]:
    """Powers of two from ``start`` up to ``N``, with ``N`` itself appended if it is not one."""
    points = []
    t = start
    while t <= N:
        points.append(t)
        t *= 2
    if points and points[-1] != N:
        points.append(N)
    return points


def tauberian_constant(residue: float, sigma: float, w: int) -> float:
    """``Res / (sigma * (w-1)!)``."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    if w < 1:
        raise ValueError("pole order w must be >= 1")
    return residue / (sigma * math.factorial(w - 1))


def residue_zeta_d(d: int, tol: float = 1e-10) -> float:
    """Residue at ``s = 2`` of the ideal-lattice series in dimension ``d``.

    Equals ``zeta(2) zeta(3) ... zeta(d-1) * zeta(2d)``; the empty product is 1.
    """
    if d < 2:
        raise ValueError("the pole at s=2 needs d >= 2")
    terms = [zeta_value(i, tol / d) for i in range(2, d)] + [zeta_value(2 * d, tol / d)]
    return math.prod(terms)


def residue_sublattices(d: int, tol: float = 1e-10) -> float:
    """Residue at ``s = d`` of ``zeta(s) zeta(s-1) ... zeta(s-d+1)``: ``zeta(2) ... zeta(d)``."""
    if d < 2:
        raise ValueError("need d >= 2")
    return math.prod(zeta_value(i, tol / d) for i in range(2, d + 1))


def _ratio(total: int, n: int, sigma: float, w: int) -> float:
    # integer powers keep the division exact-rounded for huge partial sums
    power = n ** int(sigma) if float(sigma).is_integer() else n**sigma
    return total / power / math.log(n) ** (w - 1)


def fit_growth(sums: Sequence[int], sigma: float, w: int) -> GrowthFit:
    """Checkpoint ratios ``A_N / (N^sigma (log N)^(w-1))`` at dyadic ``N``.

    ``sums[n]`` must hold ``A_n`` (``sums[0] = 0``). ``c_hat`` is the ratio at
    the final checkpoint; ``band`` is the largest pairwise gap among the last
    three checkpoints.
    """
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    if w < 1:
        raise ValueError("pole order w must be >= 1")
    N = len(sums) - 1
    points = dyadic_checkpoints(N)
    powers = sum(1 for t in points if t & (t - 1) == 0)
    if powers < 3:
        raise ValueError(f"need at least 3 dyadic checkpoints (N >= 8); N={N} gives {powers}")
    checkpoints = [(n, _ratio(sums[n], n, sigma, w)) for n in points]
    tail = [r for _, r in checkpoints[-3:]]
    band = max(tail) - min(tail)
    return GrowthFit(float(sigma), int(w), checkpoints[-1][1], band, checkpoints)


def density_ratio(d: int, N: int) -> list[tuple[int, float]]:
    """Share of ideal lattices among all sublattices of ``Z^d`` of index ``<= n``.

    Reported at ``n = 1, 2, 4, ...`` and at ``N``.
    """
    if d < 2:
        raise ValueError("d=1 gives the constant ratio 1; need d >= 2")
    ideal = partial_sums(zeta_d_coeffs(d, N))
    every = partial_sums(sublattice_coeffs(d, N))
    return [(n, ideal[n] / every[n]) for n in dyadic_checkpoints(N, start=1)]
