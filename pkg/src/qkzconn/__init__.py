"""Elliptic dynamical R-matrices from connection matrices of quantum affine
KZ equations for the three-state supersymmetric vertex model."""

from .blocks import (
    GenericityReport,
    PrincipalSeriesSpec,
    character_values,
    content_block,
    dimension_count,
    eigen_residual,
    genericity_report,
    predicted_y_tilde_spectrum,
    sign_residual,
    spectrum_match_residual,
)
from .connection import (
    PHI_FAMILY,
    PSI_FAMILY,
    SHIFT_FAMILIES,
    XI_FAMILY,
    ConnectionMatrix,
    DynamicalRMatrix,
    ShiftFamily,
    connection_simple,
    connection_word,
    dybe_residual,
    dyn_r_matrix,
    dynamical_r,
    felder_residual,
    gl2_dybe_residual,
    gl2_matrix,
    shifted_r_apply,
    tensor_monodromy_from_blocks,
    tensor_monodromy_simple,
    tensor_monodromy_word,
)
from .elliptic import (
    EllipticParams,
    Nome,
    PoleError,
    ThetaDomainError,
    ThetaOverflowError,
    c_func,
    coeff_a,
    coeff_b,
    default_params,
    pow_p,
    theta,
    theta_multi,
)
from .heckespin import (
    HeckeParams,
    SpinRep,
    VectorModel,
    baxterize,
    braid_matrix,
    cross_relation_residual,
    hecke_residual,
    perk_schultz,
    qybe_residual,
    spin_rep,
    y_operator,
    y_operators,
    y_power,
    y_tilde,
)
from .params import RunConfig, sample_phi, sample_point, sample_scalar
from .qkz import (
    AffineWord,
    affine_word,
    braid_limit_residual,
    flatness_residual,
    translation_word,
    transport_letter,
    transport_word,
)

__version__ = "0.1.0"
