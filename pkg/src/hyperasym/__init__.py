"""Uniform large-parameter asymptotics of ``2F1(a + eps*lam, b; c + lam; x)``.

The expansions stay valid as ``eps*x`` passes through 1, where the saddle
point of the Euler integral meets the endpoint ``t = 0``.
"""
from .bleistein import BleisteinCoeffs, bleistein_AB, g0_endpoint_values
from .engine import (
    EvalResult,
    PolyCase,
    contiguous_weights,
    eval_coalescent,
    eval_negative_b,
    eval_poly_asym,
    eval_poly_exact,
    eval_theorem1,
    eval_theorem2,
    evaluate,
    olver_coefficients,
    poly_case,
)
from .errors import AccuracyError, ContractError, DomainError, HyperAsymError, SingularReversionError
from .kernel import KernelValues, gamma_ratio_G, s_k_quadrature, s_k_recurrence, w_kernel, w_kernel_scaled
from .olver import CkDkPolys, OlverCoeffs, ckdk_polynomials, ckdk_symbolic, pk_coeffs, regroup_CD
from .oracle import OracleConfig, gauss_series_2f1
from .saddle import DELTA_SWITCH, ProblemParams, SaddleData, alpha_param
from .series import TruncatedSeries, ts_compose, ts_mul, ts_pow_real, ts_revert

__version__ = "0.1.0"

__all__ = [
    "AccuracyError", "BleisteinCoeffs", "CkDkPolys", "ContractError", "DELTA_SWITCH", "DomainError",
    "EvalResult", "HyperAsymError", "KernelValues", "OlverCoeffs", "OracleConfig", "PolyCase",
    "ProblemParams", "SaddleData", "SingularReversionError", "TruncatedSeries",
    "alpha_param", "bleistein_AB", "ckdk_polynomials", "ckdk_symbolic", "contiguous_weights",
    "eval_coalescent", "eval_negative_b", "eval_poly_asym", "eval_poly_exact", "eval_theorem1",
    "eval_theorem2", "evaluate", "g0_endpoint_values", "gamma_ratio_G", "gauss_series_2f1",
    "olver_coefficients", "pk_coeffs", "poly_case", "regroup_CD", "s_k_quadrature", "s_k_recurrence",
    "ts_compose", "ts_mul", "ts_pow_real", "ts_revert", "w_kernel", "w_kernel_scaled",
]
