"""Minimal double-double arithmetic.

A value is a pair ``(hi, lo)`` of floats with ``|lo| <= ulp(hi)/2`` whose
exact sum is the represented number, giving about 106 bits of precision.
Only the operations needed by the series oracle are provided.
"""
from __future__ import annotations

_SPLITTER = 134217729.0  # 2**27 + 1


def two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def quick_two_sum(a: float, b: float) -> tuple[float, float]:
    # requires |a| >= |b|
    s = a + b
    return s, b - (s - a)


def _split(a: float) -> tuple[float, float]:
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a: float, b: float) -> tuple[float, float]:
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def dd_add(x: tuple, y: tuple) -> tuple[float, float]:
    s, e = two_sum(x[0], y[0])
    t, f = two_sum(x[1], y[1])
    e += t
    s, e = quick_two_sum(s, e)
    e += f
    return quick_two_sum(s, e)


def dd_add_d(x: tuple, b: float) -> tuple[float, float]:
    s, e = two_sum(x[0], b)
    e += x[1]
    return quick_two_sum(s, e)


def dd_mul(x: tuple, y: tuple) -> tuple[float, float]:
    p, e = two_prod(x[0], y[0])
    e += x[0] * y[1] + x[1] * y[0]
    return quick_two_sum(p, e)


def dd_mul_d(x: tuple, b: float) -> tuple[float, float]:
    p, e = two_prod(x[0], b)
    e += x[1] * b
    return quick_two_sum(p, e)


def dd_div(x: tuple, y: tuple) -> tuple[float, float]:
    q1 = x[0] / y[0]
    r = dd_add(x, dd_mul_d(y, -q1))
    q2 = r[0] / y[0]
    r = dd_add(r, dd_mul_d(y, -q2))
    q3 = r[0] / y[0]
    q = quick_two_sum(q1, q2)
    return dd_add_d(q, q3)


def dd_to_float(x: tuple) -> float:
    return x[0] + x[1]
