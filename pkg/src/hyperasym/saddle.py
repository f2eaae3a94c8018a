"""Phase, amplitude and saddle-point geometry of the Euler integral.

For ``0 < x < 1`` and ``eps > 1`` the hypergeometric function
``F(a + eps*lam, b; c + lam; x)`` is an integral over ``0 <= t <= 1`` of
``t**(b-1) f(x, t) exp(-lam * psi(x, t))`` with

    psi(x, t) = eps * log(1 - x t) - log(1 - t)
    f(x, t)   = (1 - t)**(c - b - 1) / (1 - x t)**a

The phase has a single saddle ``t_s``, which moves through the endpoint
``t = 0`` as ``eps*x`` passes through 1.  The quadratic change of variable
``psi(t) - psi(t_s) = (u - alpha)**2 / 2`` maps ``t = 0`` to ``u = 0``
and ``t = t_s`` to ``u = alpha``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractError, DomainError
from .series import TruncatedSeries, ts_pow_real

__all__ = [
    "DELTA_SWITCH",
    "ProblemParams",
    "SaddleData",
    "phase_psi",
    "log1pmx",
    "phase_derivative",
    "amp_f",
    "amp_f_prime_at0",
    "saddle_point",
    "alpha_param",
    "w_of_t_series",
    "phase_taylor",
    "amp_taylor",
]

# below this |eps*x - 1| the saddle quantities come from power series in delta
DELTA_SWITCH = 1e-3
_DELTA_SERIES_TERMS = 24


@dataclass(frozen=True)
class ProblemParams:
    """Parameters of ``F(a + eps*lam, b; c + lam; x)``."""

    a: float
    b: float
    c: float
    eps: float
    x: float

    def __post_init__(self):
        for name in ("a", "b", "c", "eps", "x"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, float(v))
        if not self.eps > 1.0:
            raise DomainError(f"eps must exceed 1, got {self.eps!r}")
        if not 0.0 < self.x < 1.0:
            raise DomainError(f"x must lie in (0, 1), got {self.x!r}")

    @property
    def delta(self) -> float:
        """Signed distance ``eps*x - 1`` from coalescence."""
        return self.eps * self.x - 1.0

    @property
    def mu(self) -> float:
        return self.b - 1.0

    def replace(self, **changes) -> "ProblemParams":
        kw = dict(a=self.a, b=self.b, c=self.c, eps=self.eps, x=self.x)
        kw.update(changes)
        return ProblemParams(**kw)


@dataclass(frozen=True)
class SaddleData:
    t_s: float
    alpha: float
    psi_s: float
    psi1_at0: float
    psi2_at_ts: float
    delta: float
    branch: str  # "direct" or "series"


def _check_t(params: ProblemParams, t: float) -> None:
    if not (t < 1.0 and params.x * t < 1.0):
        raise DomainError(f"t = {t!r} is at or beyond a logarithmic singularity")


def phase_psi(params: ProblemParams, t: float) -> float:
    _check_t(params, t)
    return params.eps * math.log1p(-params.x * t) - math.log1p(-t)


def phase_derivative(params: ProblemParams, t: float, n: int) -> float:
    """``n``-th t-derivative of the phase, ``n >= 1``, in closed form."""
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_t(params, t)
    x, eps = params.x, params.eps
    fact = math.factorial(n - 1)
    return fact * (1.0 / (1.0 - t) ** n - eps * x**n / (1.0 - x * t) ** n)


def amp_f(params: ProblemParams, t: float) -> float:
    _check_t(params, t)
    p = params
    return (1.0 - t) ** (p.c - p.b - 1.0) * (1.0 - p.x * t) ** (-p.a)


def amp_f_prime_at0(params: ProblemParams) -> float:
    """``df/dt`` at ``t = 0``: ``a x + b + 1 - c``."""
    p = params
    return p.a * p.x + p.b + 1.0 - p.c


def saddle_point(params: ProblemParams) -> float:
    p = params
    return p.delta / ((p.eps - 1.0) * p.x)


def _psi_s_series(delta: float, eps: float) -> float:
    # psi(t_s) = (eps-1) log(1 - delta/(eps-1)) + log(1 + delta), expanded in delta
    acc = 0.0
    for n in range(_DELTA_SERIES_TERMS, 1, -1):
        coef = ((-1.0) ** (n + 1) - (eps - 1.0) ** (1 - n)) / n
        acc = (acc + coef) * delta
    return acc * delta


def log1pmx(z: float) -> float:
    """``log(1 + z) - z`` without cancellation for small ``z``."""
    if abs(z) >= 0.5:
        return math.log1p(z) - z
    # log(1+z) = 2 atanh(s), s = z/(2+z); 2s - z = -z**2/(2+z)
    s = z / (2.0 + z)
    s2 = s * s
    acc, term, n = 0.0, s * s2, 3
    while True:
        inc = term / n
        acc += inc
        if abs(inc) <= 1e-17 * abs(acc):
            break
        term *= s2
        n += 2
    return -z * z / (2.0 + z) + 2.0 * acc


def _psi_s_direct(delta: float, eps: float) -> float:
    # with x = (1 + delta)/eps the saddle value is
    # (eps-1) log(1 - delta/(eps-1)) + log(1 + delta); the linear parts cancel
    # exactly, leaving two terms of the same sign
    return log1pmx(delta) + (eps - 1.0) * log1pmx(-delta / (eps - 1.0))


def alpha_param(params: ProblemParams, delta_switch: float = DELTA_SWITCH) -> SaddleData:
    """Saddle location, transition parameter and phase data.

    ``alpha`` carries the sign of ``t_s``.  Within ``delta_switch`` of
    coalescence ``psi(t_s)`` is summed from its power series in
    ``delta = eps*x - 1``; elsewhere it is the closed form in ``delta``,
    arranged so that the two logarithms never cancel.
    """
    p = params
    delta = p.delta
    t_s = saddle_point(p)
    if abs(delta) < delta_switch:
        psi_s = _psi_s_series(delta, p.eps)
        branch = "series"
    else:
        psi_s = _psi_s_direct(delta, p.eps)
        branch = "direct"
    psi_s = min(psi_s, 0.0)
    alpha = math.copysign(math.sqrt(-2.0 * psi_s), t_s) if t_s != 0.0 else 0.0
    return SaddleData(
        t_s=t_s,
        alpha=alpha,
        psi_s=psi_s,
        psi1_at0=-delta,
        psi2_at_ts=phase_derivative(p, t_s, 2),
        delta=delta,
        branch=branch,
    )


def phase_taylor(params: ProblemParams, t0: float, K: int) -> TruncatedSeries:
    """Taylor series of ``psi(t0 + tau)`` in ``tau`` to order ``K``."""
    c = np.empty(K + 1)
    c[0] = phase_psi(params, t0)
    for n in range(1, K + 1):
        c[n] = phase_derivative(params, t0, n) / math.factorial(n)
    return TruncatedSeries(t0, c)


def amp_taylor(params: ProblemParams, t0: float, K: int) -> TruncatedSeries:
    """Taylor series of ``f(x, t0 + tau)`` in ``tau`` to order ``K``."""
    p = params
    _check_t(p, t0)
    one_minus = TruncatedSeries(t0, np.r_[1.0, -1.0 / (1.0 - t0), np.zeros(K - 1)][: K + 1])
    one_minus_x = TruncatedSeries(
        t0, np.r_[1.0, -p.x / (1.0 - p.x * t0), np.zeros(K - 1)][: K + 1]
    )
    s = ts_pow_real(one_minus, p.c - p.b - 1.0) * ts_pow_real(one_minus_x, -p.a)
    return s * amp_f(p, t0)


def w_of_t_series(params: ProblemParams, K: int, saddle: SaddleData | None = None) -> TruncatedSeries:
    """Series of ``w = u - alpha`` in powers of ``t - t_s``.

    Solves ``psi(t) - psi(t_s) = w**2 / 2`` with the branch ``dw/dt > 0``,
    so the path ``0 <= t <= 1`` maps increasingly onto ``0 <= u < inf``.
    """
    if saddle is None:
        saddle = alpha_param(params)
    t_s = saddle.t_s
    psi = phase_taylor(params, t_s, K + 1)
    if not psi.coeffs[2] > 0.0:
        raise ContractError(f"psi'' at the saddle must be positive, got {2 * psi.coeffs[2]!r}")
    # (psi - psi_s) / tau**2 = sum_{k>=2} psi_k tau**(k-2)
    q = TruncatedSeries(t_s, 2.0 * psi.coeffs[2:])
    root = ts_pow_real(q, 0.5)
    w = np.zeros(K + 1)
    w[1:] = root.coeffs[:K]
    return TruncatedSeries(t_s, w)
