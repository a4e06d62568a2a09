"""Exact computations with generators of finite étale algebras."""

from .algebra import (
    FiniteAlgebra,
    GenMatrix,
    automorphisms,
    characteristic_polynomial,
    generates,
    is_etale,
    make_monogenic,
    make_split_algebra,
    min_generators,
    minimal_polynomial,
    primitive_idempotents,
    separating_polynomials,
    split_generation_criterion,
    subalgebra_closure,
    trace_form,
    violated_pairs,
)
from .classify import (
    BPoint,
    b_point,
    classify,
    classify_monogenic,
    homotopy_path,
    stabilize,
    tautological,
    u_membership,
)
from .cohomology import (
    ChowDQRing,
    MotivicDQRing,
    TruncatedThetaRing,
    b_real_cohomology,
    b_stabilization_table,
    chase_certificate,
    chow_dq_ring,
    motivic_dq_ring,
    motivic_stabilization,
    ojanguren_certificate,
    rp_cohomology,
    rp_stabilization,
)
from .errors import (
    BudgetExceededError,
    CertificateError,
    DoesNotSplitError,
    EtaleError,
    FieldMismatchError,
    NotEtaleError,
    NotGeneratingError,
    ParseError,
)
from .families import (
    Claim,
    PresentedRing,
    chase_rings,
    coordinate_change_n2,
    coordinate_change_n2_inverse,
    dq_generation_certificate,
    dq_ring,
    enumerate_points,
    fiberwise_generation_scan,
    split_quadric_substitution,
    subalgebra_certificate_check,
)
from .fields import GF, QQ, FieldElem, FunctionField, parse_field
from .polys import MultiPoly, UniPoly, discriminant, elementary_symmetric, exact_divide, poly_ring, resultant
from .quadratic import (
    algebra_from_line,
    as_quadratic,
    generation_equivalence_check,
    q_projection,
    trace_and_involution,
    trace_kernel,
)

__version__ = "0.1.0"
