"""Difference sets, partial difference sets, and relative difference sets in
nonabelian groups, built by re-coordinatizing verified abelian designs."""

from .errors import (
    AssignmentNotInjective,
    ClosureOverflow,
    ConditionsFailed,
    DecompositionFailure,
    DesignNotFixed,
    DiffsetsError,
    EmptyOrders,
    ForbiddenNotSubgroup,
    IndexNotTwo,
    LiftFailure,
    MathError,
    MultiplierFails,
    NonPrimitiveModulus,
    NotASubgroupMember,
    NotBijective,
    NotClosedUnderInverse,
    NotCoprime,
    NotHomomorphism,
    NotRegular,
    NotReversible,
    NotSRG,
    NoValidAlpha,
    ParameterError,
    ParameterMismatch,
    ParseError,
    PsiDoesNotFixD,
    ReindexObstruction,
    RPlusOneNotTwiceOddPrime,
    TooManyLines,
)
from .fields import (
    FieldElement,
    FiniteField,
    GaloisRing,
    Hyperplane,
    RingElement,
    field_embed,
    field_make,
    field_trace,
    frobenius,
    galois_ring_make,
    hyperplanes,
    ideal_iso,
    ring_projection,
)
from .groups import (
    AbelianGroup,
    CosetTable,
    ExtensionGroup,
    Group,
    GroupAutomorphism,
    GroupElement,
    StructureReport,
    Subgroup,
    TransitivityResult,
    abelian_make,
    aut_from_images,
    coset_action_transitive,
    element_order,
    element_orders,
    extension_closure,
    fingerprint,
    is_normal,
    nonabelian_witness,
    normality_witness,
    right_cosets,
    subgroup_closure,
)
from .verify import (
    DesignSet,
    DifferenceProfile,
    SrgResult,
    VerifyResult,
    cayley_srg_check,
    difference_profile,
    ds_complement,
    multiplier_check,
    verify_design,
    verify_ds,
    verify_pds,
    verify_rds,
)
from .transfer import (
    TransferInstance,
    TransferReport,
    check_conditions,
    make_instance,
    transfer_design,
    transfer_pds,
    transfer_rds,
)
from .families import (
    ChainResult,
    corollary_chain,
    denniston_even,
    denniston_gr4,
    denniston_odd,
    dihedral_converse,
    dillon_fixture,
    dillon_forward,
    invariant_hyperplane,
    mcfarland_base,
    mcfarland_even,
    mcfarland_even_witnesses,
    mcfarland_odd,
    mcfarland_odd_sylow,
    pcp_pds,
    pgroup_multiplier_transfer,
    rds_base,
    rds_transfer,
    spence,
    spence_sylow3,
)

__version__ = "0.1.0"
