"""Evaluation of ``F(a + eps*lam, b; c + lam; x)`` from the uniform expansions.

Both expansions share the form

    F ~ G(lam) exp(-lam psi_s) [ W_b(chi) lam**(-b/2) sum_k P_k / lam**k
                                + W_b'(chi) lam**(-(b+1)/2) sum_k Q_k / lam**k ]

with ``chi = alpha sqrt(lam)`` and ``G(lam) = Gamma(c+lam)/Gamma(c+lam-b)``.
``(P_k, Q_k)`` are the Bleistein pairs ``(A_k, B_k)`` in :func:`eval_theorem1`
and the regrouped Olver pairs ``(C_k, D_k)`` in :func:`eval_theorem2`.

Negative non-integer ``b`` is lifted to positive values with the contiguous
relation in ``b``; ``b = -m`` is a polynomial in ``x`` handled exactly or by
its large-``lam`` expansion.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import ddouble as dd
from .bleistein import BleisteinCoeffs, bleistein_AB
from .errors import ContractError, DomainError
from .kernel import _CHI_UNDERFLOW, gamma_ratio_G, s_k_recurrence, w_kernel, w_kernel_scaled
from .olver import (
    OlverCoeffs,
    ckdk_polynomials,
    pk_coeffs,
    regroup_CD,
    required_p_order,
)
from .saddle import DELTA_SWITCH, ProblemParams, SaddleData, alpha_param

__all__ = [
    "BRANCHES",
    "EVAL_TAIL_DEPTH",
    "TRUNCATIONS",
    "EvalResult",
    "PolyCase",
    "prefactor",
    "olver_coefficients",
    "eval_theorem1",
    "eval_theorem2",
    "eval_coalescent",
    "eval_negative_b",
    "contiguous_weights",
    "eval_poly_exact",
    "eval_poly_asym",
    "poly_case",
    "evaluate",
]

BRANCHES = (
    "theorem1",
    "theorem2",
    "coalescent",
    "contiguous_reduction",
    "polynomial_exact",
    "polynomial_asym",
)
_EXP_LIMIT = 700.0
# alpha-tail depth used by evaluate() for the regrouped form
EVAL_TAIL_DEPTH = 12
TRUNCATIONS = ("tail", "index")
# |eps*x - 1| below which the polynomial case uses its coalescent expansions
_POLY_COALESCE_TOL = 1e-14


@dataclass(frozen=True)
class EvalResult:
    value: float
    branch: str
    k_order: int
    est_error: float


def _check_core(params: ProblemParams, lam: float) -> None:
    if not params.b > 0.0:
        raise DomainError(f"the uniform expansions need b > 0, got {params.b!r}")
    if not lam > 0.0:
        raise DomainError(f"lambda must be positive, got {lam!r}")
    if not params.c - params.b + lam > 0.0:
        raise DomainError("the integral representation needs c - b + lambda > 0")


def prefactor(params: ProblemParams, saddle: SaddleData, lam: float) -> float:
    """``G(lam) exp(-lam psi_s)``."""
    expo = -lam * saddle.psi_s
    if abs(expo) > _EXP_LIMIT:
        raise OverflowError(f"exp({expo:.1f}) is outside the double range")
    return gamma_ratio_G(lam, params.b, params.c) * math.exp(expo)


def _kernel_and_prefactor(params: ProblemParams, saddle: SaddleData, lam: float):
    """``(pref, kv)`` whose product ``pref * kv.w`` is ``G exp(-lam psi_s) W_b(chi)``.

    Since ``lam psi_s = -chi**2/2``, for large negative ``chi`` the
    exponential is moved into the scaled kernel, where it cancels.
    """
    chi = saddle.alpha * math.sqrt(lam)
    if chi < _CHI_UNDERFLOW:
        return gamma_ratio_G(lam, params.b, params.c), w_kernel_scaled(params.b, chi)
    return prefactor(params, saddle, lam), w_kernel(params.b, chi)


@lru_cache(maxsize=256)
def _saddle_p(params: ProblemParams, K: int) -> tuple[SaddleData, np.ndarray]:
    saddle = alpha_param(params)
    return saddle, pk_coeffs(params, saddle, K)


@lru_cache(maxsize=256)
def _olver(params: ProblemParams, k_max: int, tail_depth, max_index) -> tuple[SaddleData, OlverCoeffs]:
    need = required_p_order(k_max, tail_depth, max_index)
    saddle, p = _saddle_p(params, max(need, 7))
    polys = ckdk_polynomials(params.b, need)
    return saddle, regroup_CD(p, polys, saddle.alpha, k_max, tail_depth, max_index)


@lru_cache(maxsize=256)
def _bleistein(params: ProblemParams) -> tuple[SaddleData, BleisteinCoeffs]:
    saddle, p = _saddle_p(params, 24)
    return saddle, bleistein_AB(params, saddle, p)


def olver_coefficients(params: ProblemParams, k_order: int = 3, tail_depth: int | None = None) -> OlverCoeffs:
    """Regrouped ``C_k, D_k`` under the same truncation rule as :func:`eval_theorem2`."""
    if tail_depth is None:
        return _olver(params, k_order, None, 2 * k_order)[1]
    return _olver(params, k_order, tail_depth, None)[1]


def _assemble(params, saddle, lam, P, Q):
    b = params.b
    pref, kv = _kernel_and_prefactor(params, saddle, lam)
    inv = 1.0 / lam
    sP = sum(pk * inv**k for k, pk in enumerate(P))
    sQ = sum(qk * inv**k for k, qk in enumerate(Q))
    return pref, kv, pref * (kv.w * lam ** (-0.5 * b) * sP + kv.w_prime * lam ** (-0.5 * (b + 1)) * sQ)


def _omitted(pref, kv, lam, b, k, Pk, Qk):
    return pref * (
        abs(kv.w * Pk) * lam ** (-0.5 * b - k) + abs(kv.w_prime * Qk) * lam ** (-0.5 * (b + 1) - k)
    )


def eval_theorem1(params: ProblemParams, lam: float, k_order: int = 1) -> EvalResult:
    """Bleistein-form expansion with ``A_k, B_k`` for ``k <= k_order <= 1``.

    The error estimate uses the regrouped pair ``C_{k+1}, D_{k+1}`` as a
    stand-in for the first omitted Bleistein pair.
    """
    _check_core(params, lam)
    if k_order not in (0, 1):
        raise ContractError(f"Bleistein coefficients are available for k <= 1, got {k_order}")
    saddle, bc = _bleistein(params)
    P, Q = bc.A[: k_order + 1], bc.B[: k_order + 1]
    pref, kv, value = _assemble(params, saddle, lam, P, Q)
    _, oc = _olver(params, k_order + 1, None, 2 * k_order + 3)
    est = _omitted(pref, kv, lam, params.b, k_order + 1, oc.curlyC[-1], oc.curlyD[-1])
    return EvalResult(value, "theorem1", k_order, est)


def eval_theorem2(
    params: ProblemParams,
    lam: float,
    k_order: int = 3,
    tail_depth: int | None = None,
    max_index: int | None = None,
) -> EvalResult:
    """Regrouped (Olver-form) expansion with ``C_k, D_k`` for ``k <= k_order``.

    By default every term built from ``p_0 .. p_{2 k_order}`` is kept, which
    retains ``C_0 .. C_k`` and ``D_0 .. D_{k-1}`` (``D_k`` starts at
    ``p_{2k+1}``) and truncates the alpha tails at the same index.  Passing
    ``tail_depth`` instead keeps ``alpha**j`` tail terms up to ``j = tail_depth``
    in every coefficient through ``D_k``.  The error estimate is the change
    produced by admitting the next ``p`` index (or the next pair), plus, for
    tail truncation, the change from deepening the tails by two.
    """
    _check_core(params, lam)
    if k_order < 0:
        raise ContractError("k_order must be non-negative")
    if tail_depth is None and max_index is None:
        max_index = 2 * k_order
    saddle, oc = _olver(params, k_order, tail_depth, max_index)
    pref, kv, value = _assemble(params, saddle, lam, oc.curlyC, oc.curlyD)
    if max_index is not None:
        _, nxt = _olver(params, k_order + 1, tail_depth, max_index + 1)
    else:
        _, nxt = _olver(params, k_order + 1, tail_depth, None)
    est = abs(_assemble(params, saddle, lam, nxt.curlyC, nxt.curlyD)[2] - value)
    if tail_depth is not None:
        # the alpha tails converge slowly once |alpha| is of order 1
        _, deeper = _olver(params, k_order, tail_depth + 2, max_index)
        est += abs(_assemble(params, saddle, lam, deeper.curlyC, deeper.curlyD)[2] - value)
    return EvalResult(value, "theorem2", k_order, est)


def eval_coalescent(params: ProblemParams, lam: float, K: int = 7, delta_switch: float = DELTA_SWITCH) -> EvalResult:
    """Unregrouped sum ``sum_{k<=K} p_k S_k(chi) lam**(-(b+k)/2)`` near ``eps*x = 1``.

    At ``alpha = 0`` the moments are ``S_k(0) = 2**(k/2 + b/2 - 1) Gamma((b+k)/2)/Gamma(b)``
    and the sum is ``G/(2 Gamma(b)) sum p_k(0) Gamma((b+k)/2) (lam/2)**(-(b+k)/2)``.
    """
    _check_core(params, lam)
    saddle, p = _saddle_p(params, max(K + 2, 7))
    if abs(saddle.delta) >= delta_switch:
        raise ContractError(
            f"coalescent evaluation needs |eps*x - 1| < {delta_switch}, got {saddle.delta!r}"
        )
    b = params.b
    terms = np.empty(K + 3)
    if saddle.alpha == 0.0:
        pref = prefactor(params, saddle, lam)
        half = lam / 2.0
        lg_b = math.lgamma(b)
        for k in range(K + 3):
            terms[k] = p[k] * math.exp(math.lgamma(0.5 * (b + k)) - lg_b) / (2.0 * half ** (0.5 * (b + k)))
    else:
        pref, kv = _kernel_and_prefactor(params, saddle, lam)
        s = s_k_recurrence(b, kv.chi, kv.w, kv.w_prime, K + 2)
        k = np.arange(K + 3)
        terms = p[: K + 3] * s * lam ** (-0.5 * (b + k))
    # two omitted terms: single coefficients can vanish by accident
    est = pref * (abs(terms[K + 1]) + abs(terms[K + 2]))
    return EvalResult(pref * float(terms[: K + 1].sum()), "coalescent", K // 2, est)


def contiguous_weights(params: ProblemParams, lam: float, b: float) -> tuple[float, float]:
    """``(w1, w2)`` with ``F(.., b; ..) = w1 F(.., b+1; ..) + w2 F(.., b+2; ..)``."""
    p = params
    den = lam + p.c - b - 1.0
    if den == 0.0:
        raise DomainError("contiguous relation is singular: lambda + c - b - 1 = 0")
    ex = p.eps * p.x
    A = (p.c - b - 1.0) * ex - (p.a - b - 1.0) * p.x - b - 1.0
    B = (1.0 + b) * (1.0 - p.x)
    return 1.0 - ex + A / den, B / den


def _is_int(v: float) -> bool:
    return v == math.floor(v)


def eval_negative_b(params: ProblemParams, lam: float, k_order: int = 3, leaf=None, **kw) -> EvalResult:
    """Negative non-integer ``b``: repeated contiguous steps, then two positive-``b`` leaves.

    ``ceil(-b)`` applications of the relation leave ``F`` as a combination of
    two functions with second parameters ``beta`` and ``beta + 1``, ``beta > 0``.
    The leaves are evaluated by ``leaf(params, lam)`` (default: the regrouped
    form with ``k_order`` and ``**kw``).
    """
    b = params.b
    if not b < 0.0:
        raise ContractError(f"eval_negative_b needs b < 0, got {b!r}")
    if _is_int(b):
        raise ContractError(f"b = {b!r} is a negative integer; use the polynomial evaluators")
    u, v = contiguous_weights(params, lam, b)
    beta = b + 1.0
    while beta <= 0.0:
        w1, w2 = contiguous_weights(params, lam, beta)
        u, v = v + u * w1, u * w2
        beta += 1.0
    if leaf is None:
        def leaf(q, lam_):
            return eval_theorem2(q, lam_, k_order, **kw)
    r1 = leaf(params.replace(b=beta), lam)
    r2 = leaf(params.replace(b=beta + 1.0), lam)
    value = u * r1.value + v * r2.value
    est = abs(u) * r1.est_error + abs(v) * r2.est_error
    return EvalResult(value, "contiguous_reduction", k_order, est)


# ---------------------------------------------------------------------------
# b = -m


def eval_poly_exact(m: int, params: ProblemParams, lam: float) -> float:
    """``F(a + eps lam, -m; c + lam; x)`` as the finite sum over ``T_r(lam)``.

    ``(eps x)**r T_r = prod_{s<r} x (eps lam + a + s)/(lam + c + s)``.  The
    alternating sum cancels heavily when ``eps*x`` is near 1, so the products
    and the sum are carried in double-double arithmetic.
    """
    if m < 0 or int(m) != m:
        raise DomainError(f"m must be a non-negative integer, got {m!r}")
    if not lam > 0.0:
        raise DomainError(f"lambda must be positive, got {lam!r}")
    p = params
    m = int(m)
    big_a = dd.two_prod(p.eps, lam)
    term = (1.0, 0.0)
    total = (1.0, 0.0)
    for r in range(1, m + 1):
        s = r - 1.0
        num = dd.dd_add_d(dd.dd_add_d(big_a, p.a), s)
        den = dd.dd_add_d(dd.dd_add_d((lam, 0.0), p.c), s)
        if den[0] == 0.0:
            raise DomainError(f"T_r has a pole at c + {r - 1} + lambda = 0")
        # ratio of consecutive summands: -(m - r + 1)/r * x * num/den
        term = dd.dd_mul(term, dd.dd_div(dd.dd_mul_d(dd.dd_mul_d(num, -p.x), m - r + 1.0), dd.dd_mul_d(den, float(r))))
        total = dd.dd_add(total, term)
    return dd.dd_to_float(total)


@dataclass(frozen=True)
class PolyCase:
    m: int
    X: float  # eps x / (1 - eps x); inf at coalescence
    omega: dict
    upsilon: dict


def poly_case(m: int, params: ProblemParams) -> PolyCase:
    p = params
    a, c, e = p.a, p.c, p.eps
    ex = e * p.x
    coalescent = abs(ex - 1.0) <= _POLY_COALESCE_TOL
    omega = {}
    X = math.inf
    if not coalescent:
        X = ex / (1.0 - ex)
        r = 1.0 / ex
        omega = {
            "01": a - e * c,
            "02": 0.5 * (m - 1) * (e - 1.0),
            "11": a * a - e * e * c * c,
            "12": (a - e * c) ** 2 * (m - r) - (m - 1) * (a - e * e * c),
            "13": (m - 1) * (e - 1.0) * ((a - e * c) * (m - 2 * r) - (1.0 + e) * (2 * m - 1 - 3 * r) / 6.0),
            "14": 0.25 * (m - 1) * (1.0 - e) ** 2 * ((m - 1) * (m - 4 * r) + 2 * r * r),
        }
    upsilon = {
        2: a * (a + 1) - 2 * e * a * (c + 1) + e * (e - 1 + c * (3 * e - 2 + e * c)),
        3: (
            a * (a + 1) * (a + 2)
            - 3 * e * a * (a * (c + 2) + 5 + 4 * c)
            + 3 * e * e * a * (c + 1) * (c + 5)
            - e * (c + 1) * (6 - 9 * e * (c + 2) + e * e * (12 + 11 * c + c * c))
        ),
        4: 3 * a * a + 7 * a + 3 - 2 * e * (a * (7 + 3 * c) + 9 + 5 * c) + e * e * (18 + 17 * c + 3 * c * c),
    }
    return PolyCase(m, X, omega, upsilon)


def eval_poly_asym(m: int, params: ProblemParams, lam: float) -> EvalResult:
    """Large-``lam`` expansion of the ``b = -m`` polynomial.

    Away from ``eps*x = 1`` this is ``(1 - eps x)**m`` times a two-term series
    in ``1/lam`` with coefficients polynomial in ``X = eps x/(1 - eps x)``.  At
    ``eps*x = 1`` the leading terms vanish and the explicit forms for
    ``m <= 4`` are used.
    """
    if m < 1 or int(m) != m:
        raise DomainError(f"m must be a positive integer, got {m!r}")
    pc = poly_case(m, params)
    a, c, e = params.a, params.c, params.eps
    L = lam
    if math.isinf(pc.X):
        if m > 4:
            raise ContractError("coalescent polynomial expansions are available for m <= 4 only")
        U = pc.upsilon
        if m == 1:
            lead = (e * c - a) / (e * L)
            value = lead * (1 - c / L + c * c / L**2)
            est = abs(lead * c**3 / L**3)
        elif m == 2:
            value = -(e - 1) / (e * L) + U[2] / (e * e * L * L)
            est = abs(U[2]) / (e * e * L**3)
        elif m == 3:
            value = (e - 1) * (2 + 3 * a - e * (4 + 3 * c)) / (e * e * L * L) - U[3] / (e**3 * L**3)
            est = abs(U[3]) / (e**3 * L**4)
        else:
            value = 3 * (e - 1) ** 2 / (e * e * L * L) - 2 * (e - 1) * U[4] / (e**3 * L**3)
            est = abs(U[4]) / (e**3 * L**4)
        return EvalResult(value, "polynomial_asym", 2, est)
    X, om = pc.X, pc.omega
    first = om["01"] * X + om["02"] * X**2
    second = om["11"] * X + om["12"] * X**2 + om["13"] * X**3 + om["14"] * X**4
    scale = (1.0 - e * params.x) ** m
    value = scale * (1.0 - m / (e * L) * first + m / (2 * e * e * L * L) * second)
    est = abs(scale * m * second) / (2 * e * e * L**3)
    return EvalResult(value, "polynomial_asym", 2, est)


# ---------------------------------------------------------------------------


def evaluate(
    params: ProblemParams,
    lam: float,
    method: str = "auto",
    k_order: int | None = None,
    tail_depth: int | None = None,
    m: int | None = None,
    truncation: str = "tail",
) -> EvalResult:
    """Dispatch to the appropriate evaluator.

    ``method`` is one of ``"auto"``, ``"t1"``, ``"t2"``, ``"coalescent"``.
    ``m`` (or an integer ``b <= 0``) selects the polynomial case, which is
    summed exactly under ``"auto"`` and expanded otherwise.

    ``truncation`` picks how the regrouped coefficients are cut off:
    ``"tail"`` keeps alpha tails to depth ``tail_depth`` (default
    ``EVAL_TAIL_DEPTH``), which is accurate for any saddle position;
    ``"index"`` is the cheaper ``p``-index rule of :func:`eval_theorem2`,
    which degrades as ``|alpha|`` grows.
    """
    if method not in ("auto", "t1", "t2", "coalescent"):
        raise ValueError(f"unknown method {method!r}")
    if truncation not in TRUNCATIONS:
        raise ValueError(f"unknown truncation {truncation!r}")
    if truncation == "tail" and tail_depth is None:
        tail_depth = EVAL_TAIL_DEPTH
    b = params.b
    if m is None and b <= 0.0 and _is_int(b):
        m = int(-b)
    if m is not None:
        if method == "auto" or m == 0:
            return EvalResult(eval_poly_exact(m, params, lam), "polynomial_exact", m, 0.0)
        return eval_poly_asym(m, params, lam)

    def positive(q: ProblemParams, lam_: float) -> EvalResult:
        if method == "t1":
            return eval_theorem1(q, lam_, 1 if k_order is None else k_order)
        k = 3 if k_order is None else k_order
        if method == "coalescent" or (method == "auto" and abs(q.delta) < DELTA_SWITCH):
            # the unregrouped sum to p_{2k+1} is what both truncations keep at alpha = 0
            # (the index rule stops at p_{2k})
            return eval_coalescent(q, lam_, 2 * k + (truncation == "tail"))
        r = eval_theorem2(q, lam_, k, tail_depth)
        if method == "auto" and k_order is None and truncation == "tail":
            # far from coalescence the alpha tails leave an error floor that the
            # Bleistein form, built on their exact limits, does not have
            alt = eval_theorem1(q, lam_, 1)
            if alt.est_error < r.est_error:
                return alt
        return r

    if b < 0.0:
        k = 3 if k_order is None else k_order
        return eval_negative_b(params, lam, k, leaf=positive)
    return positive(params, lam)
