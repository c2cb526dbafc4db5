"""handle3: decompositions of the 3-sphere and lens spaces into three
handlebodies -- validation, enumeration, classification counts, and the
stabilization move calculus."""

from .lens import (
    SPHERE3,
    DiffeotopyGroup,
    ManifoldForm,
    NotCoprime,
    SphereNotCovered,
    ZeroP,
    admits_seifert_over_rp2,
    core_isotopy_criterion,
    diffeotopy_group,
    hyperelliptic_realizable,
    is_homeomorphic,
    lens_space,
    normalize,
    torus_knot_is_core,
)
from .surfaces import (
    ANNULUS,
    DISK,
    PANTS,
    PUNCTURED_TORUS,
    ArcDescriptor,
    ArcOutcome,
    BandDescriptor,
    IllegalArc,
    IllegalBand,
    InconsistentOutcome,
    SurfacePiece,
    attach_band,
    canonical_name,
    cut_along_arc,
    euler_char,
)
from .decomp import (
    BranchedLocus,
    CurveClass,
    Decomposition,
    NotADisk,
    NotEssential,
    OutOfRange,
    PatchPiece,
    TheoremCase,
    WrongGenus,
    admits_decomposition,
    case_of,
    enumerate_profiles,
    euler_lemma_expected,
    reduce_along_disk,
    validate,
)
from .moves import (
    DestabWitness,
    MoveScript,
    StaleWitness,
    destabilization_candidates,
    destabilize_type1,
    stabilize_type0,
    stabilize_type1,
    stable_reduce,
)
from .classify import (
    CaseId,
    ClassCount,
    EmbeddingPattern,
    UnclassifiedCase,
    UnknownPattern,
    consistency_report,
    embedding_class_count,
    heegaard_roles,
    isotopy_class_count,
    seifert_case_facts,
)

__version__ = "0.1.0"
