"""Parabolic cylinder kernel and the moment integrals ``S_k``.

    W_b(chi) = (1/Gamma(b)) int_0^inf tau**(b-1) exp(-(tau - chi)**2 / 2) dtau
             = exp(-chi**2/4) D_{-b}(-chi)

    S_k(chi) = (1/Gamma(b)) int_0^inf tau**(b-1) (tau - chi)**k exp(-(tau - chi)**2 / 2) dtau

so ``S_0 = W_b`` and ``S_1 = W_b'``.  The integrals are computed by double
exponential quadrature: tanh-sinh on ``[0, tau*]`` and exp-sinh on
``[tau*, inf)``, where ``tau*`` is the peak of the integrand.  Each rule is
refined by halving the step until successive levels agree.  When ``b < 1``
a short stretch next to the singular endpoint is integrated term by term
instead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AccuracyError, DomainError

__all__ = [
    "KernelValues",
    "w_kernel",
    "w_kernel_scaled",
    "s_k_quadrature",
    "s_k_recurrence",
    "log_gamma",
    "gamma_ratio_G",
    "gamma_ratio_asymptotic",
    "h_coefficients",
]

QUAD_TOL = 1e-14
_MAX_LEVEL = 10
_T_HI_ES = 3.6  # exp-sinh upper truncation; the Gaussian factor is dead beyond
_LOG_TINY = 40.0  # endpoint mass below exp(-_LOG_TINY) is dropped
_CHI_UNDERFLOW = -30.0
_WATSON_MAX = 400
_PEAK_TINY = 1e-6
_HEAD_DELTA = 0.25  # length of the series-integrated stretch [0, delta] when b < 1
_HEAD_TERMS = 48
_HALF_PI = 0.5 * math.pi


@dataclass(frozen=True)
class KernelValues:
    chi: float
    w: float
    w_prime: float
    underflow: bool = False


def _ts_nodes(a, b, t):
    """tanh-sinh abscissae on [a, b] and weights (without the step h)."""
    u = _HALF_PI * np.sinh(t)
    # distances to the nearer endpoint, computed without cancellation
    left = (b - a) / (1.0 + np.exp(np.minimum(-2.0 * u, 700.0)))
    right = (b - a) / (1.0 + np.exp(np.minimum(2.0 * u, 700.0)))
    x = np.where(t < 0, a + left, b - right)
    w = (b - a) * _HALF_PI * np.cosh(t) / (2.0 * np.cosh(np.minimum(np.abs(u), 350.0)) ** 2)
    return x, w


def _es_nodes(a, scale, t):
    """exp-sinh abscissae on [a, inf) and weights (without the step h)."""
    e = scale * np.exp(_HALF_PI * np.sinh(t))
    return a + e, e * _HALF_PI * np.cosh(t)


def _refine(nodes, f, t_lo, t_hi, tol):
    """Step-halving driver shared by both double exponential rules.

    Returns (value, abs_error_estimate, l1_norm).  Convergence is declared
    against the L1 norm of the integrand so that integrals with cancelling
    parts (odd moments) are judged on the scale of their terms.
    """
    h = 0.5
    t = np.arange(math.ceil(t_lo / h), math.floor(t_hi / h) + 1) * h
    x, w = nodes(t)
    fx = f(x) * w
    total, l1 = h * fx.sum(), h * np.abs(fx).sum()
    err = math.inf
    for _ in range(_MAX_LEVEL):
        h *= 0.5
        t = np.arange(math.ceil((t_lo - h) / (2 * h)), math.floor((t_hi - h) / (2 * h)) + 1) * 2 * h + h
        x, w = nodes(t)
        fx = f(x) * w
        new_total = 0.5 * total + h * fx.sum()
        l1 = 0.5 * l1 + h * np.abs(fx).sum()
        err = abs(new_total - total)
        total = new_total
        if err <= tol * l1:
            return total, err, l1
    raise AccuracyError(f"quadrature did not converge (error estimate {err:.3e})", bound=err)


def _peak(b, chi):
    if b > 1.0:
        disc = math.sqrt(chi * chi + 4.0 * (b - 1.0))
        return 0.5 * (chi + disc) if chi >= 0 else 2.0 * (b - 1.0) / (disc - chi)
    return max(chi, 0.0)


def _head(b, chi, k, delta):
    """``int_0^delta tau**(b-1) (tau-chi)**k exp(-(tau-chi)**2/2) dtau`` by series.

    ``exp(-(tau-chi)**2/2) = exp(-chi**2/2) sum_n He_n(chi) tau**n / n!`` (the
    Hermite generating function), so every term integrates in closed form and
    the ``tau**(b-1)`` singularity costs nothing.  Needs ``delta |chi| <= 1``.
    Returns (value, l1).
    """
    # (tau - chi)**k in ascending powers of tau
    poly = [math.comb(k, j) * (-chi) ** (k - j) for j in range(k + 1)]
    h_prev, h = 0.0, 1.0  # He_{n-1}/(n-1)!, He_n/n!
    hs = []
    for n in range(_HEAD_TERMS + k + 1):
        hs.append(h)
        h_prev, h = h, (chi * h - h_prev) / (n + 1)
    total = l1 = 0.0
    dpow = delta**b
    for m in range(_HEAD_TERMS + k + 1):
        cm = sum(poly[j] * hs[m - j] for j in range(min(k, m) + 1))
        term = cm * dpow / (m + b)
        total += term
        l1 += abs(term)
        dpow *= delta
    g = math.exp(-0.5 * chi * chi)
    return total * g, l1 * g


def _tail(f, start, peak, scale, tol):
    """``int_start^inf f``: tanh-sinh on ``[start, peak]`` then exp-sinh from ``peak``.

    Returns (value, abs_error_estimate, l1_norm).
    """
    t_ts = math.asinh(_LOG_TINY / math.pi) + 0.25
    t_es = math.asinh(_LOG_TINY / _HALF_PI) + 0.25
    total = l1 = err = 0.0
    if peak > start:
        v, e, n = _refine(lambda t: _ts_nodes(start, peak, t), f, -t_ts, t_ts, tol)
        total, err, l1 = v, e, n
    # starting at tau = 0 (b >= 1 only) the rule must also resolve the endpoint
    t_lo = -t_es if peak == 0.0 else -4.0
    v, e, n = _refine(lambda t: _es_nodes(peak, scale, t), f, t_lo, _T_HI_ES, tol)
    return total + v, err + e, l1 + n


def _head_start(chi, limit=math.inf):
    d = min(_HEAD_DELTA, 1.0 / abs(chi)) if chi != 0.0 else _HEAD_DELTA
    return min(d, limit)


def _moment(b, chi, k, tol=QUAD_TOL):
    """``Gamma(b) * S_k(chi)`` together with its L1 norm.

    For ``b >= 1`` the integrand is bounded and the two double exponential
    rules start at ``tau = 0``.  For ``b < 1`` the singular stretch
    ``[0, delta]`` is summed by :func:`_head` and quadrature takes the rest.
    """
    with np.errstate(over="ignore", under="ignore"):
        def f(tau):
            s = tau - chi
            return tau ** (b - 1.0) * s**k * np.exp(-0.5 * s * s)

        start = head = head_l1 = 0.0
        if b < 1.0:
            start = _head_start(chi)
            head, head_l1 = _head(b, chi, k, start)
        peak = max(_peak(b, chi), start)
        if peak - start < _PEAK_TINY:
            peak = start
        # width of the decaying tail: about 1 near the Gaussian peak, 1/|chi| when the
        # integrand is squeezed against tau = 0
        scale = 1.0 / max(1.0, -chi) if chi < 0 else 1.0
        v, e, n = _tail(f, start, peak, scale, tol)
    return head + v, e, head_l1 + n


def _first_moment_by_parts(b, chi, tol=QUAD_TOL):
    """``Gamma(b) * S_1(chi)`` for ``b < 1``, ``chi > 1``.

    Split at ``c = chi/2``; on ``[c, inf)`` integrate by parts,

        int_c^inf tau**(b-1) (tau-chi) e dtau = c**(b-1) e(c) + (b-1) int_c^inf tau**(b-2) e dtau

    with ``e = exp(-(tau-chi)**2/2)``.  The last integrand is positive and
    carries the result; the other pieces are ``O(exp(-chi**2/8))``.
    """
    c = 0.5 * chi
    with np.errstate(over="ignore", under="ignore"):
        def f1(tau):
            s = tau - chi
            return tau ** (b - 1.0) * s * np.exp(-0.5 * s * s)

        def f2(tau):
            s = tau - chi
            return tau ** (b - 2.0) * np.exp(-0.5 * s * s)

        d = _head_start(chi, c)
        near, near_l1 = _head(b, chi, 1, d)
        if c > d:
            t_ts = math.asinh(_LOG_TINY / math.pi) + 0.25
            v, _, n = _refine(lambda t: _ts_nodes(d, c, t), f1, -t_ts, t_ts, tol)
            near, near_l1 = near + v, near_l1 + n
        boundary = c ** (b - 1.0) * math.exp(-0.125 * chi * chi)
        far, _, far_l1 = _tail(f2, c, chi, 1.0, tol)
    return near + boundary + (b - 1.0) * far


def _check_b(b):
    if not b > 0.0:
        raise DomainError(f"kernel requires b > 0, got {b!r}")


def w_kernel(b: float, chi: float) -> KernelValues:
    """``W_b(chi)`` and ``W_b'(chi)`` by quadrature of their defining integrals.

    For ``chi < -30`` both values are replaced by the bound
    ``exp(-chi**2/2) |chi|**-b`` (which dominates ``W_b`` and, up to a factor
    ``b``, ``W_b'``) and ``underflow`` is set.
    """
    _check_b(b)
    if not math.isfinite(chi):
        raise DomainError(f"chi must be finite, got {chi!r}")
    if chi < _CHI_UNDERFLOW:
        bound = math.exp(-0.5 * chi * chi - b * math.log(-chi))
        return KernelValues(chi, bound, b * bound, underflow=True)
    w = _moment(b, chi, 0)[0] * math.exp(-math.lgamma(b))
    return KernelValues(chi, w, _w_prime(b, chi))


def _watson(b: float, chi: float) -> float:
    """``exp(chi**2/2) W_b(chi)`` for large negative ``chi``.

    With ``r = -chi``, expanding ``exp(-tau**2/2)`` in
    ``(1/Gamma(b)) int tau**(b-1) exp(-r tau - tau**2/2) dtau`` gives

        r**-b sum_n (-1/2)**n (b)_{2n} / (n! r**(2n))

    whose terms shrink until ``n ~ r**2/2``; for ``r >= 30`` that is far
    beyond double precision.
    """
    r = -chi
    inv = 1.0 / (r * r)
    term = total = 1.0
    for n in range(_WATSON_MAX):
        term *= -0.5 * (b + 2 * n) * (b + 2 * n + 1) * inv / (n + 1)
        total += term
        if abs(term) < 1e-17 * abs(total):
            return total * r ** (-b)
    raise AccuracyError(f"asymptotic series for W_{b}({chi}) did not settle", bound=abs(term))


def w_kernel_scaled(b: float, chi: float) -> KernelValues:
    """``exp(chi**2/2) W_b(chi)`` and ``exp(chi**2/2) W_b'(chi)``.

    The scaled values stay of moderate size as ``chi -> -inf``, where
    :func:`w_kernel` only returns a bound; they are what a caller needs when
    the factor ``exp(-chi**2/2)`` is cancelled by a large prefactor.  For
    ``chi < -30`` they come from the asymptotic series, with
    ``W_b' = b W_{b+1} - chi W_b`` (both terms positive).
    """
    _check_b(b)
    if not math.isfinite(chi):
        raise DomainError(f"chi must be finite, got {chi!r}")
    if chi < _CHI_UNDERFLOW:
        w = _watson(b, chi)
        return KernelValues(chi, w, b * _watson(b + 1.0, chi) - chi * w)
    kv = w_kernel(b, chi)
    g = math.exp(0.5 * chi * chi)
    return KernelValues(chi, kv.w * g, kv.w_prime * g)


def _w_prime(b, chi):
    # For chi > 0 the first moment cancels between tau < chi and tau > chi.
    # Integrating by parts gives W_b' = W_{b-1} for b > 1 (positive integrand)
    # and W_1' = exp(-chi**2/2); for b < 1 see _first_moment_by_parts.
    if chi > 0.0 and b > 1.0:
        return _moment(b - 1.0, chi, 0)[0] * math.exp(-math.lgamma(b - 1.0))
    if chi > 0.0 and b == 1.0:
        return math.exp(-0.5 * chi * chi)
    if chi > 1.0:
        return _first_moment_by_parts(b, chi) * math.exp(-math.lgamma(b))
    return _moment(b, chi, 1)[0] * math.exp(-math.lgamma(b))


def s_k_quadrature(b: float, chi: float, k: int) -> float:
    _check_b(b)
    if k < 0:
        raise ValueError("k must be non-negative")
    v, _, _ = _moment(b, chi, k)
    return v * math.exp(-math.lgamma(b))


def s_k_recurrence(b: float, chi: float, s0: float, s1: float, k_max: int) -> np.ndarray:
    """``S_0 .. S_kmax`` from the three-term-plus-one recurrence.

    ``S_k = -chi S_{k-1} + (b + k - 2) S_{k-2} + chi (k - 2) S_{k-3}``.
    """
    s = np.zeros(k_max + 1)
    s[0] = s0
    if k_max >= 1:
        s[1] = s1
    for k in range(2, k_max + 1):
        s[k] = -chi * s[k - 1] + (b + k - 2) * s[k - 2]
        if k >= 3:
            s[k] += chi * (k - 2) * s[k - 3]
    return s


def log_gamma(z: float) -> float:
    if not z > 0.0:
        raise DomainError(f"log_gamma requires z > 0, got {z!r}")
    return math.lgamma(z)


# Stirling correction phi(z) = lgamma(z) - (z - 1/2) log z + z - log(2 pi)/2
_STIRLING = (1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680, 1.0 / 1188, -691.0 / 360360)
_STIRLING_MIN = 15.0


def _stirling_phi(z: float) -> float:
    iz2 = 1.0 / (z * z)
    acc = 0.0
    for coef in reversed(_STIRLING):
        acc = acc * iz2 + coef
    return acc / z


def gamma_ratio_G(lam: float, b: float, c: float) -> float:
    """``Gamma(c + lam) / Gamma(c + lam - b)`` to near full relative precision.

    With ``z = c + lam`` and ``y = z - b`` the logarithm is assembled as
    ``-(y - 1/2) log1p(-b/z) + b (log z - 1) + phi(z) - phi(y)``, which avoids
    subtracting two large log-gamma values and never differentiates through the
    rounded ``y``.  Small ``y`` is first shifted up
    with the functional equation.
    """
    z = c + lam
    y = z - b
    if not (z > 0.0 and y > 0.0):
        raise DomainError(f"Gamma ratio has a pole or sign change at c+lam={z!r}, b={b!r}")
    scale = 1.0
    while y < _STIRLING_MIN:
        scale *= y / z
        y += 1.0
        z += 1.0
    log_ratio = -(y - 0.5) * math.log1p(-b / z) + b * (math.log(z) - 1.0) + (_stirling_phi(z) - _stirling_phi(y))
    return scale * math.exp(log_ratio)


def h_coefficients(b: float, c: float) -> tuple[float, float, float]:
    """Leading coefficients of ``G(lam) ~ lam**b sum h_k / lam**k``."""
    s = 2.0 * c - b - 1.0
    return 1.0, 0.5 * b * s, b * (b - 1.0) * (3.0 * s * s - b - 1.0) / 24.0


def gamma_ratio_asymptotic(lam: float, b: float, c: float, terms: int = 3) -> float:
    h = h_coefficients(b, c)[:terms]
    return lam**b * sum(hk / lam**k for k, hk in enumerate(h))
