"""Combinatorics of minor ideals of generalized diagonal matrices."""

from .errors import (
    BadIndex,
    BudgetExceeded,
    CellIsZero,
    GDMinorsError,
    ImpureWarning,
    InvalidParameters,
    NotAFace,
    NotMaximalKStair,
    NotTriangleShape,
    RecursionBudget,
    ResultDegenerate,
    UniverseTooLarge,
    ValidationError,
    VertexClash,
    ZeroPolynomial,
)
from .gdmatrix import (
    Cell,
    GDMatrix,
    corners_l1,
    corners_l2,
    is_unpinched,
    lex_compare,
    make_gd,
    make_triangles,
    parse_matrix_spec,
    succ_compare,
    triangle_d,
    triangle_u,
    unpinched_blocks,
    upper_set,
    zero_corner_triangles,
)
from .stairs import (
    StairDecomposition,
    is_maximal_kstair,
    longest_diagonal,
    satisfies_f,
    scrape,
    stair_decomposition,
    stair_number,
)
from .complexes import (
    MinorsProblem,
    SimplicialComplex,
    deletion,
    dimension,
    en,
    ens,
    f_vector,
    facets,
    height,
    height_formula_triangles,
    is_face,
    is_pure,
    is_pure_predicted,
    join,
    link,
    stanley_reisner,
)
from .groebner import (
    GroebnerCheck,
    Monomial,
    Polynomial,
    initial_ideal_gens,
    leading_term,
    minor,
    reduce,
    s_polynomial,
    verify_groebner,
)
from .cmcheck import (
    CertificateCheck,
    LadderState,
    is_cm_predicted,
    is_vertex_decomposable,
    reduced_homology_ranks,
    reisner_cm,
    validate_certificate,
    vd_certificate_triangles,
)
from .multiplicity import (
    PathEndpoints,
    brute_nonintersecting,
    count_paths,
    lgv_det,
    multiplicity_by_count,
    multiplicity_formula,
    validate_endpoints,
)

__version__ = "0.1.0"
