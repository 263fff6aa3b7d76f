"""Exact equivariant orbit-map computations for discriminant linking classes.

The package computes, over the rationals and without any floating point,
the images of linking classes of discriminant complements under the orbit
map in equivariant cohomology.  It ships presentations of projective
spaces, quadrics, and Grassmannians, a small Groebner engine with cofactor
tracking, and a CLI (``eqlink``) wrapping the main entry points.
"""

__version__ = "0.1.0"

from .algebra import (  # noqa: F401
    CofactorDecomposition,
    Order,
    Polynomial,
    PolyParseError,
    PolyRing,
    RingMorphism,
    RingPresentation,
    groebner_basis,
    normal_form,
    reduce_with_cofactors,
)
from .charclass import (  # noqa: F401
    ChernRootBundle,
    JetEulerClass,
    RootBlock,
    SymmetryError,
    TotalChernClass,
    chern_number,
    fx_at,
    jet_euler,
    jet_euler_grassmannian_roots,
    jet_euler_projective_roots,
    jet_euler_quadric_quotient,
    jet_total_chern,
    whitney_sum,
)
from .spaces import (  # noqa: F401
    BUILTIN_FAMILIES,
    GroupPresentation,
    HomologyCycle,
    LineBundleSpec,
    PresentationError,
    PrimitiveSymbol,
    SpacePresentation,
    builtin_space,
    even_quadric,
    grassmannian,
    load_presentation,
    odd_quadric,
    projective_space,
    validate_presentation,
)
from .orbitmap import (  # noqa: F401
    GroupClass,
    HypothesisError,
    I1Decomposition,
    MalformedTransferError,
    MixedClass,
    NotInIdealError,
    NotJetSpannedError,
    OrbitClassResult,
    TransferCheck,
    decompose_in_I1,
    discriminant_degree,
    divisor_transfer_check,
    gamma_star,
    orbit_class,
    restricted_cycle,
    s_homomorphism,
    slant,
)
from .division import (  # noqa: F401
    GenericRankReport,
    InsufficientSampleError,
    ScanReport,
    SurjectivityVerdict,
    check_surjectivity,
    coefficient_catalog,
    generic_rank_check,
    m_coefficient,
    reduced_m_coefficient,
    scan_bundles,
)
