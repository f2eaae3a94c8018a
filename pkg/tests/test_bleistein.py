import math

import numpy as np
import pytest
from _reference import AB_PRINTED

from hyperasym.bleistein import bleistein_AB, g0_endpoint_values
from hyperasym.errors import ContractError
from hyperasym.olver import g0_series, pk_coeffs
from hyperasym.saddle import ProblemParams, alpha_param


def coeffs(params, alpha_switch=1e-3, K=24):
    s = alpha_param(params)
    return bleistein_AB(params, s, pk_coeffs(params, s, K=K), alpha_switch=alpha_switch)


@pytest.mark.parametrize("x", [0.6, 0.5])
def test_printed_values(base_params, x):
    bl = coeffs(base_params(x))
    got = (bl.A[0], bl.B[0], bl.A[1], bl.B[1])
    np.testing.assert_allclose(got, AB_PRINTED[x], atol=1e-9)


def test_coalescent_closed_forms(base_params):
    # at alpha = 0: A_1 = b g0''(0)/2, B_1 = (1 + b) g0'''(0)/6
    p = base_params(0.5)
    s = alpha_param(p)
    pk = pk_coeffs(p, s, K=8)
    bl = bleistein_AB(p, s, pk)
    b = p.b
    assert bl.branch == "coalescent"
    assert bl.A == (pk[0], b * pk[2])
    assert bl.B[0] == pk[1]
    assert bl.B[1] == pytest.approx((1.0 + b) * pk[3], rel=1e-15)


def test_endpoint_values_match_g0_series(base_params):
    # g0(0), g0'(0) from the closed forms agree with the re-expanded saddle series
    for x in (0.45, 0.55, 0.6):
        p = base_params(x)
        s = alpha_param(p)
        g0 = g0_series(p, 40, s)
        ref0 = g0(0.0)
        ref1 = sum(k * c * (-s.alpha) ** (k - 1) for k, c in enumerate(g0.coeffs) if k)
        got0, got1 = g0_endpoint_values(p, s)
        assert got0 == pytest.approx(ref0, rel=1e-12)
        assert got1 == pytest.approx(ref1, rel=1e-10)


def test_endpoint_limit_at_coalescence(base_params):
    p = base_params(0.5)
    g00, g0p0 = g0_endpoint_values(p, alpha_param(p))
    assert g00 == pytest.approx(2.0**0.75, rel=1e-15)
    assert g0p0 == pytest.approx(2.0**0.75 * (1.0 + 2.5 * 3.0 / 3.0 - 2.0) / math.sqrt(2.0), rel=1e-15)


@pytest.mark.parametrize("eps,x", [(2.0, 0.6), (2.0, 0.45), (3.5, 0.2), (1.4, 0.8)])
def test_decomposition_identity(eps, x):
    # g0(u) - A_0 - B_0 (u - alpha) vanishes at u = 0 and u = alpha
    p = ProblemParams(a=0.8, b=1.7, c=0.6, eps=eps, x=x)
    s = alpha_param(p)
    g0 = g0_series(p, 40, s)
    bl = bleistein_AB(p, s, g0.coeffs)
    assert g0(0.0) - bl.A[0] - bl.B[0] * (0.0 - s.alpha) == pytest.approx(0.0, abs=1e-12)


def test_branches_agree_at_switch(base_params):
    # just outside the switch the two evaluations of A, B overlap
    p = base_params((1.0 + 5e-3) / 2.0)
    s = alpha_param(p)
    pk = pk_coeffs(p, s, K=24)
    d = bleistein_AB(p, s, pk, alpha_switch=0.0)
    c = bleistein_AB(p, s, pk, alpha_switch=1.0)
    assert d.branch == "direct" and c.branch == "coalescent"
    np.testing.assert_allclose(d.A + d.B, c.A + c.B, rtol=1e-8)


def test_needs_four_coefficients(base_params):
    p = base_params(0.6)
    with pytest.raises(ContractError):
        bleistein_AB(p, alpha_param(p), [1.0, 2.0, 3.0])
