"""Exact counting of ideal lattices in ``Z^d`` and of ideals in ``Z[X]/(f)``."""

from .arith import divisors, factorize, num_abelian_groups, partition_count, zeta_value
from .asymptotics import (
    GrowthFit,
    density_ratio,
    fit_growth,
    residue_sublattices,
    residue_zeta_d,
    tauberian_constant,
)
from .dirichlet import (
    CoeffTable,
    abelian_group_coeffs,
    convolve,
    euler_factor,
    is_multiplicative,
    partial_sums,
    product,
    sublattice_coeffs,
    zeta_affine_coeffs,
    zeta_d_coeffs,
    zeta_ZX_coeffs,
)
from .errors import ResourceError
from .lattice import (
    HnfBasis,
    check_divisibility,
    contains,
    count_all_sublattices,
    count_idealizable,
    enumerate_extensions,
    enumerate_hnf,
    is_idealizable,
    shift,
)
from .numberfield import (
    SplittingType,
    dedekind_coeffs,
    euler_factor_from_splitting,
    factor_mod_p,
    poly_discriminant,
    residue_estimate,
)
from .quotient_ring import (
    CompanionMatrix,
    MonicPoly,
    companion_matrix,
    count_ideals_bruteforce,
    ideal_coeffs,
    is_ideal,
    separable_growth_profile,
)

__version__ = "0.1.0"
