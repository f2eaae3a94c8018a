"""Taylor coefficients of the amplitude about the saddle and their regrouping.

The transformed amplitude is

    g0(u) = f(x, t) (t/u)**(b-1) dt/du = sum_k p_k(alpha) (u - alpha)**k

Integrating term by term against the Gaussian produces the moments
``S_k(alpha*sqrt(lam))``, each of which is a polynomial combination
``c_k(chi) S_0 + d_k(chi) S_1``.  Substituting ``chi = alpha*sqrt(lam)`` and
collecting integer powers of ``1/lam`` gives the coefficient sequences
``C_n(alpha)`` (multiplying ``W_b``) and ``D_n(alpha)`` (multiplying ``W_b'``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import ContractError
from .saddle import ProblemParams, SaddleData, alpha_param, amp_taylor, w_of_t_series
from .series import TruncatedSeries, ts_compose, ts_deriv, ts_pow_real, ts_revert

__all__ = [
    "DEFAULT_TAIL_DEPTH",
    "CkDkPolys",
    "OlverCoeffs",
    "g0_series",
    "pk_coeffs",
    "ckdk_symbolic",
    "ckdk_polynomials",
    "required_p_order",
    "regroup_CD",
]

DEFAULT_TAIL_DEPTH = 6
# extra working order carried through reversion/composition; the quotient
# t(w)/(w + alpha) is an infinite sum over higher coefficients (see g0_series)
_GUARD_ORDER = 16
# |alpha| from which t/u is formed by recursive division by alpha instead of
# the alternating sum, which diverges once |alpha| exceeds the radius of t(w)
_RATIO_DIVIDE = 0.5


def g0_series(params: ProblemParams, K: int, saddle: SaddleData | None = None) -> TruncatedSeries:
    """Series of ``g0`` about ``u = alpha`` to order ``K``.

    Built from the reversion ``t(w)`` of ``w(t) = u - alpha``.  The factor
    ``t/u = t(w)/(w + alpha)`` is formed by exact polynomial division of
    ``t(w) - t(-alpha)`` by ``w + alpha``, using ``t(-alpha) = 0``:

        [t/u]_i = sum_{j > i} t_j (-alpha)**(j - 1 - i)

    which stays well conditioned as ``alpha -> 0``, unlike recursive division
    by the small constant ``alpha``.  The sum only converges while ``|alpha|``
    is inside the disc of convergence of ``t(w)``, so for ``|alpha| >=
    _RATIO_DIVIDE`` the recursion ``[t/u]_i = (t_i - [t/u]_{i-1})/alpha`` is
    used instead; it is stable there.
    """
    if saddle is None:
        saddle = alpha_param(params)
    Kw = K + _GUARD_ORDER + 1
    t_w = ts_revert(w_of_t_series(params, Kw, saddle))
    dt_dw = ts_deriv(t_w)
    amp = ts_compose(amp_taylor(params, saddle.t_s, Kw), t_w).truncate(Kw - 1)

    tc = t_w.coeffs
    ratio = np.empty(Kw)
    if abs(saddle.alpha) >= _RATIO_DIVIDE:
        prev = 0.0
        for i in range(Kw):
            prev = (tc[i] - prev) / saddle.alpha
            ratio[i] = prev
    else:
        neg_alpha = -saddle.alpha
        for i in range(Kw):
            j = np.arange(i + 1, Kw + 1)
            ratio[i] = np.dot(tc[j], neg_alpha ** (j - 1 - i))
    g = amp * dt_dw * ts_pow_real(TruncatedSeries(0.0, ratio), params.b - 1.0)
    return TruncatedSeries(saddle.alpha, g.coeffs[: K + 1])


def pk_coeffs(params: ProblemParams, saddle: SaddleData | None = None, K: int = 7) -> np.ndarray:
    """``p_0(alpha) .. p_K(alpha)``, the Taylor coefficients of ``g0`` at the saddle."""
    return g0_series(params, K, saddle).coeffs.copy()


# ---------------------------------------------------------------------------
# c_k, d_k polynomials


def _poly2_add(acc, poly, scale_mu0, scale_mu1, chi_shift):
    # acc += (scale_mu0 + scale_mu1*mu) * chi**chi_shift * poly
    for (i, j), v in poly.items():
        for di, s in ((0, scale_mu0), (1, scale_mu1)):
            if s:
                key = (i + di, j + chi_shift)
                acc[key] = acc.get(key, 0) + s * v
    return acc


def ckdk_symbolic(k_max: int) -> list[tuple[dict, dict]]:
    """``c_k, d_k`` as exact integer polynomials in ``(mu, chi)``.

    Each polynomial is a dict mapping ``(power of mu, power of chi)`` to an
    integer coefficient.  Generated from the moment recurrence with
    ``b = mu + 1``:  ``S_k = -chi S_{k-1} + (mu + k - 1) S_{k-2} + (k-2) chi S_{k-3}``.
    """
    out = [({(0, 0): 1}, {}), ({}, {(0, 0): 1})]
    for k in range(2, k_max + 1):
        pair = []
        for which in (0, 1):
            acc: dict = {}
            _poly2_add(acc, out[k - 1][which], -1, 0, 1)
            _poly2_add(acc, out[k - 2][which], k - 1, 1, 0)
            if k >= 3:
                _poly2_add(acc, out[k - 3][which], k - 2, 0, 1)
            pair.append({key: v for key, v in acc.items() if v != 0})
        out.append(tuple(pair))
    return out[: k_max + 1]


@dataclass(frozen=True)
class CkDkPolys:
    """Numeric ``c_k(chi)``, ``d_k(chi)`` for a fixed ``mu = b - 1``.

    ``pairs[k]`` holds two coefficient arrays in ascending powers of ``chi``.
    """

    mu: float
    pairs: list = field(repr=False)

    @property
    def k_max(self) -> int:
        return len(self.pairs) - 1

    def eval(self, k: int, chi: float) -> tuple[float, float]:
        c, d = self.pairs[k]
        return float(np.polyval(c[::-1], chi)), float(np.polyval(d[::-1], chi))


def _numeric(poly: dict, mu: float, k: int) -> np.ndarray:
    arr = np.zeros(max(k, 1))
    for (i, j), v in poly.items():
        arr[j] += v * mu**i
    return arr


def ckdk_polynomials(b: float, k_max: int) -> CkDkPolys:
    mu = b - 1.0
    sym = ckdk_symbolic(k_max)
    return CkDkPolys(mu, [(_numeric(c, mu, k), _numeric(d, mu, k)) for k, (c, d) in enumerate(sym)])


# ---------------------------------------------------------------------------
# regrouping into integer powers of 1/lambda


@dataclass(frozen=True)
class OlverCoeffs:
    p: np.ndarray
    curlyC: np.ndarray
    curlyD: np.ndarray
    tail_depth: int | None
    max_index: int | None = None


def required_p_order(k_max: int, tail_depth: int | None, max_index: int | None = None) -> int:
    """Highest ``p`` index consumed by :func:`regroup_CD`."""
    if tail_depth is None and max_index is None:
        raise ValueError("need a tail depth or a maximum p index")
    need = 2 * k_max + 1 + tail_depth if tail_depth is not None else max_index
    return need if max_index is None else min(need, max_index)


def regroup_CD(
    p,
    polys: CkDkPolys,
    alpha: float,
    k_max: int,
    tail_depth: int | None = DEFAULT_TAIL_DEPTH,
    max_index: int | None = None,
) -> OlverCoeffs:
    """Collect ``sum_k p_k S_k(chi) lam**(-(b+k)/2)`` into integer powers of ``1/lam``.

    The monomial ``p_k * coef * chi**j`` of ``c_k`` (``d_k``) with
    ``chi = alpha lam**(1/2)`` carries ``lam**(-(k-j)/2)`` relative to
    ``W_b lam**(-b/2)`` (``lam**(-(k-j-1)/2)`` relative to
    ``W_b' lam**(-(b+1)/2)``), and the parity of ``c_k``, ``d_k`` makes these
    exponents integers.  Within each power, terms are kept up to ``j <=
    tail_depth``; ``max_index`` additionally caps the ``p`` index used.
    """
    p = np.asarray(p, dtype=float)
    need = required_p_order(k_max, tail_depth, max_index)
    if p.size <= need:
        raise ContractError(f"regrouping needs p_0..p_{need}, got only {p.size} coefficients")
    if polys.k_max < need:
        raise ContractError(f"regrouping needs c_k, d_k up to k={need}, got {polys.k_max}")
    j_cap = tail_depth if tail_depth is not None else need
    C = np.zeros(k_max + 1)
    D = np.zeros(k_max + 1)
    for k in range(need + 1):
        for target, poly, offset in ((C, polys.pairs[k][0], 0), (D, polys.pairs[k][1], 1)):
            for j, coef in enumerate(poly):
                power = Fraction(k - j - offset, 2)
                if power.denominator != 1:
                    if coef != 0.0:
                        raise AssertionError(
                            f"half-integer power of lambda from k={k}, chi**{j}: parity broken"
                        )
                    continue
                n = int(power)
                if coef == 0.0 or n > k_max or j > j_cap:
                    continue
                target[n] += p[k] * coef * alpha**j
    return OlverCoeffs(p=p[: need + 1].copy(), curlyC=C, curlyD=D, tail_depth=tail_depth, max_index=max_index)
