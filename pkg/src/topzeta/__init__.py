"""Local topological zeta functions of plane and space germs from their Newton polyhedra."""
from .algebra import (
    LinearFactor,
    NormalizedRatFunc,
    Pole,
    Poly,
    RatFunc,
    Rational,
    ZetaExpr,
    ZetaTerm,
    divide_by_linear,
    lf,
    pole_table,
    ratfunc_equal,
    zeta_combine,
)
from .errors import *  # noqa: F401,F403
from .family import (
    FamilyParams,
    SymbolicQuadruple,
    end_to_end_instance_check,
    family_polynomial,
    singular_local_equations,
    symbolic_quadruple,
    verify_cancellation,
    verify_jq_equivalence,
)
from .nondeg import NondegReport, Verdict, check_face, face_polynomial, is_nondegenerate
from .parse import parse_polynomial
from .polytope import (
    CompactFace,
    FacetData,
    NewtonPolytope,
    SupportedPoly,
    build_polytope,
    mult2,
    mult3,
    normalized_volume,
    order_facets_around_vertex,
)
from .zeta import j_edge, j_facet, j_vertex, theorem3_check, zeta_local

__version__ = "0.1.0"
