"""Quantum channels, conjugate channels, and optimal output purity."""

from .channel import (
    AncillaRep,
    ChoiMatrix,
    KrausChannel,
    KrausRelation,
    adjoint_apply,
    apply,
    choi_to_kraus,
    identity_channel,
    is_generalized_extreme,
    kraus_rank,
    kraus_to_ancilla,
    kraus_to_choi,
    relate_kraus_sets,
    tensor,
    validate_cpt,
)
from .conjugate import (
    NotConjugateError,
    conjugate_ancilla,
    conjugate_channel,
    conjugate_choi,
    conjugate_kraus,
    find_relating_isometry,
)
from .ebt import (
    EBTChannel,
    HadamardChannel,
    conjugate_ebt,
    cq_channel,
    ebt_channel,
    is_hadamard_form,
    pseudodiag_kraus,
)
from .gl import omega, shift_operator, theta, verify_gl_identity
from .linalg import (
    Spectrum,
    hadamard_product,
    kron,
    majorizes,
    nonzero_spectrum,
    partial_trace,
    schatten_norm,
    von_neumann_entropy,
)
from .pauli import (
    PauliBasis,
    PauliDiagonalChannel,
    axes_channel,
    axis_states,
    bloch_coefficients,
    build_basis,
    classify_product_or_me,
    depolarizing_weights,
    find_U_T,
    holevo_capacity_weyl,
    is_decomposable,
    lambda_spectrum,
    majorization_bound,
    nc_image_checks,
    nc_image_explicit,
    noisy_conjugate_image,
    noisy_weights,
    nu2_bound,
    p_infty_multiplicativity_check,
    pauli_channel,
    product_basis,
    qubit_nu_p_closed_form,
    recover_state,
    subgroup_of_support,
)
from .purity import (
    OptimizerOptions,
    PurityReport,
    additivity_gap_entropy,
    multiplicativity_gap,
    nu_p,
    s_min,
    spectrum_pair_check,
)

__version__ = "0.1.0"
