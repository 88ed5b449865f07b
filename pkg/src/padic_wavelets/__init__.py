"""Exact arithmetic for p-adic wavelet bases on Q_p^d."""
from .cyclotomic import CyclotomicNumber, RootOfUnity, ScaledAmplitude, char, half_power
from .functions import StepFunction, compact, inner, inner_float_oracle, integrate, make_indicator
from .group import (
    AffineElement,
    GroupElement,
    UnitMatrix,
    act,
    affine_act,
    ball_transitivity_witness,
    columns_criterion,
    e1_to_x,
    factorize,
    is_unit_matrix,
    orbit_classify,
    orbit_generate,
)
from .mra import project_V, scaling_phi, tensor_wavelet, v_space_basis, verify_mra_ladder
from .padic import Ball, CosetRep, PAdicContext, PAdicRational, ball_canonical, reduce_mod_Zp, vec_norm
from .wavelet import (
    NotMeanZeroError,
    WaveletIndex,
    analyze,
    enumerate_indices,
    make_psi_J,
    make_wavelet,
    parseval_partial,
    synthesize,
)

__version__ = "0.1.0"
