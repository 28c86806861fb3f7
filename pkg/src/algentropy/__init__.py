"""Exact inertness decisions and algebraic-entropy invariants.

The library works over three representable ambient classes: finitely
generated abelian groups in invariant-factor coordinates, finitely
generated lattices in a rational vector space, and shift models over a
finite cell (direct sums, sequence spaces, cylinder families).  All
indices, orders and entropy values are computed in exact arithmetic;
numeric root finding appears only in the Mahler-measure path and always
returns a certified enclosure.
"""

from .base import INFINITE, Infinity, is_finite
from .config import SessionConfig, default_config
from .errors import (
    AlgentropyError,
    AmbientMismatchError,
    BudgetExceededError,
    DomainError,
    IncompatibleEndoError,
    IndeterminateMeasureError,
    InfiniteIndexError,
    NonInvertibleError,
    NotDivisibleError,
    NotInertError,
    ParseError,
    ResourceError,
    StabilizationError,
    UnsupportedAmbientError,
)
from .abelian import (
    Endo,
    FgAbGroup,
    GroupElement,
    Subgroup,
    canonicalize_presentation,
    endo_apply_subgroup,
    endo_cokernel_order,
    endo_invert,
    endo_kernel,
    endo_preimage_subgroup,
    subgroup_from_generators,
    subgroup_index,
    subgroup_intersect,
    subgroup_sum,
)
from .polynomial import IntPolynomial
from .rational import (
    QSpace,
    RationalEndo,
    RationalLattice,
    charpoly_primitive,
    endo_apply_lattice,
    lattice_index,
    lattice_intersect,
    lattice_sum,
    preimage_in_lattice,
)
from .models import (
    CylinderFamily,
    LinearShiftSpace,
    ShiftElement,
    ShiftGroup,
    cylinder_cotrajectory_index,
    shift_trajectory_order,
    two_sided_shift_inert_index,
)
from .cayley import (
    FiniteGroup,
    all_groups_of_order,
    cyclic,
    dihedral,
    direct_product,
    finite_group_trajectory,
    isomorphic,
    minimal_transversal_count,
    symmetric,
)
from .inertia import (
    InertialCertificate,
    InertVerdict,
    almost_contained,
    commensurable,
    cylinder_inert_index,
    inert_index,
    is_finitary,
    is_inertial_endomorphism,
    is_multiplication,
    iterated_inert_index,
    make_multiplication,
    multiplication_scalar,
    strict_inert_index,
)
from .fully_inert import (
    BoxDecomposition,
    GroupDescriptor,
    PrimePart,
    SelfInertVerdict,
    TorsionFreePart,
    UniformVerdict,
    box_decompose_fully_inert,
    classify_self_inert,
    commensurable_fully_invariant,
    is_fully_inert,
    is_uniformly_fully_inert,
)
from .mahler import (
    MahlerResult,
    cyclotomic_polynomial,
    kronecker_test,
    mahler_measure,
    small_measure_scan,
)
from .entropy import (
    CrossCheck,
    EntropyReport,
    adjoint_cotrajectory,
    classify_growth,
    ent,
    h_alg_stabilized,
    h_alg_yuzvinski,
    h_top_shift,
    i_entropy,
    intrinsic_adjoint_entropy,
    intrinsic_entropy,
    limit_free_h,
    scale_over_family,
    sumset_growth,
    trajectory,
)

__version__ = "0.1.0"
