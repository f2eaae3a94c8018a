"""Truncated Taylor series arithmetic.

A :class:`TruncatedSeries` of order ``K`` stores the coefficients
``c_0 .. c_K`` of

    s(z) = c_0 + c_1 (z - z0) + ... + c_K (z - z0)**K + O((z - z0)**(K+1))

where ``z0`` is the ``center``.  Coefficients beyond ``K`` are unknown, not
zero, so every binary operation returns the smaller of the two orders.

The operations needed by the saddle-point machinery are multiplication,
real powers, composition, reversion, differentiation and re-centering.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractError, DomainError, SingularReversionError

__all__ = [
    "TruncatedSeries",
    "ts_mul",
    "ts_pow_real",
    "ts_compose",
    "ts_revert",
    "ts_deriv",
    "ts_recenter",
]

# tolerance used when checking that two centers coincide
_CENTER_TOL = 1e-14


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    center: float
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float).copy()
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coeffs must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(c)):
            raise ValueError("series coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "center", float(self.center))

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @classmethod
    def variable(cls, center: float, order: int) -> "TruncatedSeries":
        """The identity map ``z`` expanded about ``center``."""
        c = np.zeros(order + 1)
        c[0] = center
        if order >= 1:
            c[1] = 1.0
        return cls(center, c)

    @classmethod
    def constant(cls, value: float, center: float, order: int) -> "TruncatedSeries":
        c = np.zeros(order + 1)
        c[0] = value
        return cls(center, c)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ContractError(
                f"cannot raise order {self.order} to {order}: higher terms are unknown"
            )
        return TruncatedSeries(self.center, self.coeffs[: order + 1])

    def __call__(self, z):
        """Horner evaluation of the truncated polynomial at ``z``."""
        h = np.asarray(z, dtype=float) - self.center
        acc = np.zeros_like(h) + self.coeffs[-1]
        for ck in self.coeffs[-2::-1]:
            acc = acc * h + ck
        return acc if acc.ndim else float(acc)

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            _check_centers(self, other)
            k = min(self.order, other.order)
            return TruncatedSeries(self.center, self.coeffs[: k + 1] + other.coeffs[: k + 1])
        c = self.coeffs.copy()
        c[0] += other
        return TruncatedSeries(self.center, c)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.center, -self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return ts_mul(self, other)
        return TruncatedSeries(self.center, self.coeffs * other)

    __rmul__ = __mul__

    def __pow__(self, r):
        return ts_pow_real(self, r)

    def __repr__(self):
        return f"TruncatedSeries(center={self.center!r}, coeffs={self.coeffs.tolist()!r})"


def _check_centers(a: TruncatedSeries, b: TruncatedSeries) -> None:
    if abs(a.center - b.center) > _CENTER_TOL * max(1.0, abs(a.center)):
        raise ContractError(f"center mismatch: {a.center!r} vs {b.center!r}")


def ts_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, truncated at the smaller order."""
    _check_centers(a, b)
    k = min(a.order, b.order)
    prod = np.convolve(a.coeffs[: k + 1], b.coeffs[: k + 1])[: k + 1]
    return TruncatedSeries(a.center, prod)


def ts_pow_real(a: TruncatedSeries, r: float) -> TruncatedSeries:
    """Series of ``a(z)**r`` for real ``r``.

    Uses the recurrence that follows from ``a * (a**r)' = r * a' * a**r``.
    The leading coefficient must be positive so that the principal branch
    is real.
    """
    c = a.coeffs
    if not c[0] > 0.0:
        raise DomainError(f"real power needs a positive leading coefficient, got {c[0]!r}")
    n_max = a.order
    out = np.zeros(n_max + 1)
    out[0] = c[0] ** r
    for n in range(1, n_max + 1):
        k = np.arange(1, n + 1)
        out[n] = np.dot((r * k - (n - k)) * c[1 : n + 1], out[n - 1 :: -1][:n]) / (n * c[0])
    return TruncatedSeries(a.center, out)


def ts_compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """Taylor series of ``outer(inner(z))`` about ``inner.center``.

    ``inner`` must take the value ``outer.center`` at its own center, so
    that ``inner - outer.center`` has no constant term and the result is a
    genuine rearrangement rather than an extrapolation.
    """
    c0 = inner.coeffs[0]
    if abs(c0 - outer.center) > _CENTER_TOL * max(1.0, abs(outer.center)):
        raise ContractError(
            f"inner constant term {c0!r} does not match outer center {outer.center!r}"
        )
    k = min(outer.order, inner.order)
    h = inner.coeffs[: k + 1].copy()
    h[0] = 0.0
    acc = np.zeros(k + 1)
    acc[0] = outer.coeffs[k]
    for ck in outer.coeffs[k - 1 :: -1]:
        acc = np.convolve(acc, h)[: k + 1]
        acc[0] += ck
    return TruncatedSeries(inner.center, acc)


def ts_revert(a: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse of a series with zero constant term.

    If ``a`` expands ``y = a(z)`` about ``z0`` with ``a(z0) = 0``, the
    result expands ``z(y)`` about ``y = 0``; its constant term is ``z0``.
    Coefficients are fixed one order at a time: the order-``n`` residual of
    ``a(z(y)) - y`` is linear in the new coefficient with slope ``a_1``.
    """
    c = a.coeffs
    if a.order < 1:
        raise ContractError("reversion needs a series of order >= 1")
    if c[0] != 0.0:
        raise ContractError(f"reversion needs a zero constant term, got {c[0]!r}")
    if c[1] == 0.0:
        raise SingularReversionError("linear coefficient is zero; series is not invertible")
    K = a.order
    inv = np.zeros(K + 1)
    inv[0] = a.center
    inv[1] = 1.0 / c[1]
    # powers of the (constant-free) inverse, rebuilt as coefficients are fixed
    for n in range(2, K + 1):
        h = inv[: n + 1].copy()
        h[0] = 0.0
        resid = 0.0
        p = h.copy()
        for k in range(2, n + 1):
            p = np.convolve(p, h)[: n + 1]
            resid += c[k] * p[n]
        inv[n] = -resid / c[1]
    return TruncatedSeries(0.0, inv)


def ts_deriv(a: TruncatedSeries) -> TruncatedSeries:
    """Term-by-term derivative; the order drops by one."""
    if a.order == 0:
        raise ContractError("derivative of an order-0 series carries no information")
    k = np.arange(1, a.order + 1)
    return TruncatedSeries(a.center, a.coeffs[1:] * k)


def ts_recenter(a: TruncatedSeries, new_center: float) -> TruncatedSeries:
    """Re-expand the truncated polynomial about ``new_center``.

    This is exact for the stored polynomial; when the true function has
    nonzero terms beyond ``a.order`` the result carries a truncation error of
    size ``|c_{K+1}| * |new_center - center|**(K+1-j)`` in coefficient ``j``.
    """
    s = new_center - a.center
    K = a.order
    out = np.zeros(K + 1)
    for j in range(K + 1):
        k = np.arange(j, K + 1)
        binom = np.array([math.comb(int(kk), j) for kk in k], dtype=float)
        out[j] = np.dot(a.coeffs[j:] * binom, s ** (k - j))
    return TruncatedSeries(new_center, out)
