"""Resummed BCH coefficient functions, their identities and matrix checks."""

from .errors import (AmbiguousMatching, ArgumentOverflow, ArityMismatch, BCHResumError,
                     ConfigError, DegenerateSpectrum, NearSingular, NonSPD, NotSymmetric)
from .exact_series import RationalSeries, convolve, taylor_s, taylor_t, taylor_T, taylor_W
from .g_series import (IdentityReport, check_identity_52, denominator_check, g_original,
                       g_overcomplete, g_perm, jk_relation, marching_residual, x_extra,
                       x_reversal)
from .hyper_eval import ArgTuple, bracket, coth_x, f_eval, g1, h_eval, u_eval, w2_inv
from .matrix_engine import SpectralData, bch_oracle, expm, logm_spd, series_C, sym_eig
from .perm_algebra import (PermSum, SignedPerm, algebra_mul, expand_P, marching, reversal,
                           s_perms)
from .perturbation import PerturbationResult, corrections, epsilon_sweep

__version__ = "0.1.0"

__all__ = [
    "AmbiguousMatching", "ArgTuple", "ArgumentOverflow", "ArityMismatch", "BCHResumError",
    "ConfigError", "DegenerateSpectrum", "IdentityReport", "NearSingular", "NonSPD",
    "NotSymmetric", "PermSum", "PerturbationResult", "RationalSeries", "SignedPerm",
    "SpectralData", "algebra_mul", "bch_oracle", "bracket", "check_identity_52", "convolve",
    "corrections", "coth_x", "denominator_check", "epsilon_sweep", "expand_P", "expm", "f_eval",
    "g1", "g_original", "g_overcomplete", "g_perm", "h_eval", "jk_relation", "logm_spd",
    "marching", "marching_residual", "reversal", "s_perms", "series_C", "sym_eig", "taylor_T",
    "taylor_W", "taylor_s", "taylor_t", "u_eval", "w2_inv", "x_extra", "x_reversal",
]
