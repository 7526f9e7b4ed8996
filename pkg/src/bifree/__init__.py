"""Exact combinatorics of bi-free probability.

Bi-non-crossing partition lattices, their incidence algebra, moment and
cumulant transforms for two-faced families, universal polynomials, the
multiplicative convolution formula and a truncated Fock-space model.
"""

from .bnc import (
    BncPartition,
    LrDiagram,
    Shading,
    SidePattern,
    bnc_one,
    bnc_zero,
    classify_blocks,
    enumerate_bnc,
    enumerate_lr,
    is_lateral_refinement,
    kreweras_bnc,
    s_perm,
    shaded_bnc,
    transport,
)
from .cumulants import (
    CumulantTable,
    Distribution,
    bifree_join,
    check_combinatorial_bifreeness,
    cumulants_to_moments,
    joint_moment,
    kappa_pi,
    lat_coefficient,
    mixed_moment_lat,
    mobius_coefficient,
    moments_to_cumulants,
    multconv_cumulants,
    phi_pi,
    product_family,
    random_distribution,
    sum_family,
)
from .errors import (
    BifreeError,
    CapOverflowError,
    DimensionError,
    IncompleteNetError,
    SizeLimitError,
    UnsupportedShapeError,
)
from .fock import CumulantNet, FockSpace, FockVector, fock_moment
from .incidence import (
    IncidenceFunction,
    MultiplicativeNet,
    convolve,
    delta,
    eval_multiplicative,
    interval_decompose,
    mobius_bnc,
    moebius,
    multiplicative,
    zeta,
)
from .partitions import (
    Partition,
    enumerate_nc,
    enumerate_set_partitions,
    is_non_crossing,
    kreweras_nc,
    parse_partition,
    refines,
)
from .polynomials import UniversalPolynomial, eval_poly, universal_poly

__version__ = "0.1.0"
