"""triadkit: finite sup-lattices, quantales, triads, and their solutions."""

from .errors import (
    InternalDefect,
    NotCentralTriad,
    ParamOutOfRange,
    PreconditionError,
    PropertyMismatch,
    SearchSpaceExceeded,
    TriadKitError,
    UnknownFamily,
    ValidationError,
    Violation,
)
from .suplat import (
    Guards,
    SupLattice,
    SupMap,
    adjoint,
    enumerate_sup_morphisms,
    join_set,
    lattice_violations,
    meet_set,
    opposite,
    sup_map_violations,
    validate_sup_lattice,
    validate_sup_map,
)
from .algebra import (
    Couple,
    ModuleAction,
    Quantale,
    QuantaleClassification,
    QuantalePredicates,
    classify_quantale,
    couple_violations,
    girard_couple_check,
    left_residual,
    make_module,
    module_violations,
    quantale_predicates,
    quantale_violations,
    right_residual,
    sided_elements,
    validate_couple,
    validate_module,
    validate_quantale,
)
from .triad import (
    GirardTriadWitness,
    Triad,
    TriadInvolution,
    TriadPredicates,
    girard_triad_structure,
    involutive_triad_violations,
    sublattice,
    triad_of_quantale,
    triad_predicates,
    triad_violations,
    validate_involutive_triad,
    validate_triad,
)
from .solve import (
    CoupleFactorization,
    EndoSolution,
    Solution,
    SolutionCouple,
    TensorProduct,
    TensorSolution,
    build_q0,
    build_q1,
    central_maps,
    check_prop_str,
    factorization_to_solution,
    factorization_violations,
    girard_consequences,
    girard_verify,
    involutive_solutions,
    phi_map,
    sided_isomorphisms,
    solution_to_factorization,
    solution_violations,
    tensor_over_t,
    validate_solution,
)
from .examples import (
    ExampleSpec,
    GeneratedTriad,
    OrthoLattice,
    c_quantale,
    duality,
    endo_quantale,
    frame,
    galois,
    generate,
    mo_ortho,
    boolean_ortho,
    ortho_catalog,
    orthomodular_triad,
    sided_triad,
    two_quantale,
)

__version__ = "0.1.0"
