"""Reference values of 2F1 from the Gauss series.

    2F1(A, B; C; x) = sum_n (A)_n (B)_n / ((C)_n n!) x**n

Terms come from the ratio recurrence, so the large Pochhammer symbols that
appear for ``A ~ 400`` are never formed.  The ``"extended"`` precision mode
carries both the term and the running sum in double-double arithmetic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from . import ddouble as dd
from .errors import AccuracyError, DomainError

__all__ = ["OracleConfig", "gauss_series_2f1", "X_GUARD"]

X_GUARD = 0.95


@dataclass(frozen=True)
class OracleConfig:
    rel_tol: float = 1e-18
    max_terms: int = 100_000
    precision: str = "extended"  # "standard" or "extended"

    def __post_init__(self):
        if not self.rel_tol > 0.0:
            raise ValueError("rel_tol must be positive")
        if self.max_terms < 1000:
            raise ValueError("max_terms must be at least 1000")
        if self.precision not in ("standard", "extended"):
            raise ValueError(f"unknown precision {self.precision!r}")


def _nonpositive_int(v: float) -> bool:
    return v <= 0 and v == math.floor(v)


def gauss_series_2f1(A: float, B: float, C: float, x: float, cfg: OracleConfig | None = None) -> float:
    cfg = cfg or OracleConfig()
    if not abs(x) < 1.0:
        raise DomainError(f"series needs |x| < 1, got {x!r}")
    if x > X_GUARD:
        raise DomainError(f"x = {x!r} is too close to 1 for the direct series")
    # a terminating numerator parameter is fine as long as C stays off its poles
    # for the surviving terms
    n_stop = math.inf
    for v in (A, B):
        if _nonpositive_int(v):
            n_stop = min(n_stop, -v)
    if _nonpositive_int(C) and -C < n_stop:
        raise DomainError(f"C = {C!r} hits a pole of the series")
    if x == 0.0:
        return 1.0
    if cfg.precision == "extended":
        return _sum_extended(A, B, C, x, cfg)
    return _sum_standard(A, B, C, x, cfg)


def _sum_standard(A, B, C, x, cfg):
    term = 1.0
    total, comp = 1.0, 0.0
    small = 0
    for n in range(cfg.max_terms):
        term *= (A + n) * (B + n) * x / ((C + n) * (n + 1.0))
        if term == 0.0:
            return total + comp
        # Neumaier compensated summation
        t = total + term
        if abs(total) >= abs(term):
            comp += (total - t) + term
        else:
            comp += (term - t) + total
        total = t
        small = small + 1 if abs(term) < cfg.rel_tol * abs(total + comp) else 0
        if small >= 3:
            return total + comp
    raise AccuracyError(f"Gauss series did not converge in {cfg.max_terms} terms", bound=abs(term))


def _sum_extended(A, B, C, x, cfg):
    term = (1.0, 0.0)
    total = (1.0, 0.0)
    a_dd, b_dd, c_dd = (A, 0.0), (B, 0.0), (C, 0.0)
    small = 0
    for n in range(cfg.max_terms):
        num = dd.dd_mul_d(dd.dd_mul(dd.dd_add_d(a_dd, n), dd.dd_add_d(b_dd, n)), x)
        den = dd.dd_mul_d(dd.dd_add_d(c_dd, n), n + 1.0)
        term = dd.dd_mul(term, dd.dd_div(num, den))
        if term[0] == 0.0:
            break
        total = dd.dd_add(total, term)
        small = small + 1 if abs(term[0]) < cfg.rel_tol * abs(total[0]) else 0
        if small >= 3:
            break
    else:
        raise AccuracyError(f"Gauss series did not converge in {cfg.max_terms} terms", bound=abs(term[0]))
    return dd.dd_to_float(total)
