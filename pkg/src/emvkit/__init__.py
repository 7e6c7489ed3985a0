"""Computational toolkit for EMV-algebras."""

from ._kernels import BACKEND as KERNEL_BACKEND
from .algebra import (
    ChainAlgebra,
    EmvAlgebra,
    FiniteEmvAlgebra,
    build_chain,
    greatest_lower_idempotent,
    idempotents,
    lam,
    least_upper_idempotent,
    npower,
    nscale,
    odot,
    product,
)
from .axioms import check_emv_axioms, check_identities
from .backends import Big, ChangAlgebra, FinSupportAlgebra, Small, chang_build, fs_a0, fs_build
from .dsl import parse_spec, print_program
from .errors import (
    AxiomViolationError,
    EmvError,
    InternalConsistencyError,
    InvalidAlgebraError,
    PreconditionError,
    TheoremViolationError,
)
from .ideals import (
    enumerate_ideals,
    generated_ideal,
    ideal_of_filter,
    maximal_filters,
    maximal_ideals,
    quotient_chain,
    radical,
)
from .represent import audit_representation, extend_state, maxideal_space_of_n, represent, s_infinity
from .sequences import inf_of, sup_of
from .spectra import (
    base_set,
    compact_basis_audit,
    compactness_shadow,
    sup_criterion,
    verify_base_identities,
    verify_hull_kernel_clauses,
    verify_union_of_differences,
)
from .states import (
    check_general_comparability,
    correspondence_maps,
    find_dual_separating_element,
    find_separating_element,
    is_archimedean_belluce,
    ker,
    ker1,
    state_morphisms,
    weak_convergence_check,
)
from .tribes import clan_audit, ls_construct, ls_quotient_example, sigma_ring_extract, tribe_audit

__version__ = "0.1.0"
