"""Leading Bleistein coefficients ``A_0, B_0, A_1, B_1``.

The Bleistein decomposition ``g_k(u) = A_k + B_k (u - alpha) + u (u - alpha) G_k(u)``
with ``g_{k+1} = b G_k + u G_k'`` gives

    A_0 = g0(alpha),          B_0 = (g0(alpha) - g0(0)) / alpha
    g1(0)     = b/alpha * (B_0 - g0'(0))
    g1(alpha) = (1 - b)/alpha * (B_0 - g0'(alpha)) + g0''(alpha)/2
    A_1 = g1(alpha),          B_1 = (g1(alpha) - g1(0)) / alpha

These divided differences have removable singularities at ``alpha = 0``.
Away from coalescence the endpoint values ``g0(0)``, ``g0'(0)`` come from
closed forms; near it the coefficients are re-expressed through the Taylor
coefficients ``e_k`` of ``g0`` about ``u = 0`` so that no division by
``alpha`` is performed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractError
from .saddle import DELTA_SWITCH, ProblemParams, SaddleData, amp_f_prime_at0, phase_derivative
from .series import TruncatedSeries, ts_recenter

__all__ = ["BleisteinCoeffs", "g0_endpoint_values", "bleistein_AB"]


@dataclass(frozen=True)
class BleisteinCoeffs:
    A: tuple[float, float]
    B: tuple[float, float]
    g0_at0: float
    g0p_at0: float
    alpha: float
    branch: str  # "direct" or "coalescent"


def g0_endpoint_values(params: ProblemParams, saddle: SaddleData) -> tuple[float, float]:
    """``g0(0)`` and ``g0'(0)``.

    Off coalescence these follow from the local inversion of
    ``psi(t) = -alpha u + u**2/2`` about ``t = 0``; at ``alpha = 0`` the limits
    ``g0(0) = (eps/(eps-1))**(b/2)`` and
    ``g0'(0) = g0(0) (a + (b+1)(2 eps - 1)/3 - eps c) / sqrt(eps (eps-1))`` are used.
    """
    p = params
    alpha = saddle.alpha
    if alpha == 0.0:
        g0 = (p.eps / (p.eps - 1.0)) ** (0.5 * p.b)
        brace = p.a + (p.b + 1.0) * (2.0 * p.eps - 1.0) / 3.0 - p.eps * p.c
        return g0, g0 * brace / math.sqrt(p.eps * (p.eps - 1.0))
    psi1 = saddle.psi1_at0
    if psi1 == 0.0:
        raise AssertionError("psi'(x,0) vanishes while alpha is nonzero")
    psi2 = phase_derivative(p, 0.0, 2)
    g0 = (-alpha / psi1) ** p.b
    brace = 0.5 * (p.b + 1.0) / alpha * (alpha * alpha * psi2 / psi1**2 - 1.0)
    brace -= alpha * amp_f_prime_at0(p) / psi1
    return g0, g0 * brace


def _coalescent(g0: TruncatedSeries, b: float, alpha: float) -> tuple[float, float, float, float, float, float]:
    # Taylor coefficients about u = 0: g0(u) = sum e_k u**k
    e = ts_recenter(g0, 0.0).coeffs
    K = e.size - 1
    k = np.arange(2, K + 1)
    powk2 = alpha ** (k - 2)
    A0 = g0.coeffs[0]
    B0 = float(np.dot(e[1:], alpha ** np.arange(K)))
    # g1(0) = b sum_{k>=2} e_k alpha^(k-2)
    g1_0 = b * float(np.dot(e[2:], powk2))
    # g1(alpha) = sum_{k>=2} [(1-b)(1-k) + k(k-1)/2] e_k alpha^(k-2)
    g1_a = float(np.dot(((1.0 - b) * (1.0 - k) + 0.5 * k * (k - 1)) * e[2:], powk2))
    # B_1 = (g1(alpha) - g1(0))/alpha; the k = 2 bracket vanishes identically
    k3 = np.arange(3, K + 1)
    bracket = (1.0 - b) * (1.0 - k3) + 0.5 * k3 * (k3 - 1) - b
    B1 = float(np.dot(bracket * e[3:], alpha ** (k3 - 3)))
    return A0, B0, g1_a, B1, e[0], e[1]


def bleistein_AB(
    params: ProblemParams,
    saddle: SaddleData,
    p,
    alpha_switch: float = DELTA_SWITCH,
) -> BleisteinCoeffs:
    """``A_0, A_1, B_0, B_1`` from the saddle Taylor coefficients ``p``.

    ``p`` must supply at least ``p_0 .. p_3``.  For ``|alpha| < alpha_switch``
    the coefficients are summed from the expansion of ``g0`` about ``u = 0``;
    at ``alpha = 0`` these sums reduce to ``A_1 = b g0''(0)/2`` and
    ``B_1 = (1 + b) g0'''(0)/6``.
    """
    p = np.asarray(p, dtype=float)
    if p.size < 4:
        raise ContractError(f"Bleistein coefficients need p_0..p_3, got {p.size} values")
    b = params.b
    alpha = saddle.alpha
    if abs(alpha) < alpha_switch:
        g0 = TruncatedSeries(alpha, p)
        A0, B0, A1, B1, g00, g0p0 = _coalescent(g0, b, alpha)
        return BleisteinCoeffs((A0, A1), (B0, B1), g00, g0p0, alpha, "coalescent")

    g00, g0p0 = g0_endpoint_values(params, saddle)
    A0 = p[0]
    B0 = (p[0] - g00) / alpha
    g1_0 = b / alpha * (B0 - g0p0)
    g1_a = (1.0 - b) / alpha * (B0 - p[1]) + p[2]
    B1 = (g1_a - g1_0) / alpha
    return BleisteinCoeffs((A0, g1_a), (B0, B1), g00, g0p0, alpha, "direct")
