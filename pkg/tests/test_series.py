import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qradii.qseries import QDomainError, QDomainParams, c_nu, qpoch_finite
from qradii.series import (
    Family,
    FunctionKind,
    Parity,
    TruncationError,
    derivative_series,
    direct_qbessel,
    evaluate,
    normalized_coefficients,
)

KINDS = tuple(FunctionKind)
params_st = st.builds(QDomainParams, st.floats(-0.95, 5.0), st.floats(0.05, 0.95))


def direct_b(kind, p, n):
    """Oracle: coefficient straight from the defining products."""
    q, nu = p.q, p.nu
    den = qpoch_finite(q, q, n) * qpoch_finite(q ** (nu + 1), q, n)
    if kind.family is Family.JACKSON:
        return (-1) ** n * q ** (n * (n + nu)) / (4**n * den)
    return (-1) ** n * q ** (n * (n + 1) / 2) / den


def jbessel_scale(kind, p):
    return (2**p.nu if kind.family is Family.JACKSON else 1.0) * c_nu(p)


def test_g2_first_coefficient(p0):
    s = normalized_coefficients(FunctionKind.G2, p0, 1.0)
    assert s.coeffs[0] == 1.0
    assert s.coeffs[1] == pytest.approx(-0.5, rel=1e-15)


def test_g3_first_coefficient(p0):
    s = normalized_coefficients(FunctionKind.G3, p0, 1.0)
    assert s.coeffs[1] == pytest.approx(-2.0, rel=1e-15)


def test_parities(p0):
    assert normalized_coefficients(FunctionKind.G2, p0, 1.0).parity is Parity.ODD
    assert normalized_coefficients(FunctionKind.H3, p0, 1.0).parity is Parity.GENERAL


@pytest.mark.parametrize("kind", KINDS)
def test_value_at_origin_and_slope(kind, p0):
    s = normalized_coefficients(kind, p0, 1.0)
    assert evaluate(s, 0.0) == 0
    assert evaluate(derivative_series(s, 1), 0.0) == pytest.approx(1.0)


def test_g2_small_argument(p0):
    s = normalized_coefficients(FunctionKind.G2, p0, 1.0)
    assert evaluate(s, 0.1) == pytest.approx(0.1 - 0.5e-3, abs=1e-6)


def test_derivative_examples(p0):
    g = normalized_coefficients(FunctionKind.G2, p0, 1.0)
    assert evaluate(derivative_series(g, 2), 0.0) == 0
    h = normalized_coefficients(FunctionKind.H2, p0, 1.0)
    assert evaluate(derivative_series(h, 1), 0.0) == pytest.approx(1.0)
    assert evaluate(derivative_series(h, 2), 0.0) == pytest.approx(-1.0)


def test_derivative_order_checked(p0):
    with pytest.raises(ValueError):
        derivative_series(normalized_coefficients(FunctionKind.G2, p0, 1.0), 3)


def test_evaluate_outside_radius_rejected(p0):
    s = normalized_coefficients(FunctionKind.G2, p0, 1.0)
    with pytest.raises(ValueError):
        evaluate(s, 1.5)


def test_term_cap(monkeypatch):
    monkeypatch.setenv("QRADII_MAX_TERMS", "8")
    with pytest.raises(TruncationError):
        normalized_coefficients(FunctionKind.H3, QDomainParams(0.0, 0.99), 50.0)


def test_direct_relation_jackson():
    p = QDomainParams(0.5, 0.3)
    x = 0.4
    g = evaluate(normalized_coefficients(FunctionKind.G2, p, 1.0), x)
    rhs = 2**p.nu * c_nu(p) * x ** (1 - p.nu) * direct_qbessel(Family.JACKSON, p, x)
    assert g == pytest.approx(rhs, rel=1e-12)


def test_direct_relation_hahn_exton():
    p = QDomainParams(1.0, 0.5)
    x = 0.2
    g = evaluate(normalized_coefficients(FunctionKind.G3, p, 1.0), x)
    assert g == pytest.approx(c_nu(p) * direct_qbessel(Family.HAHN_EXTON, p, x), rel=1e-12)


def test_direct_small_argument_limit():
    p = QDomainParams(0.0, 0.5)
    x = 1e-6
    g_over_x = 2**p.nu * c_nu(p) * x ** (-p.nu) * direct_qbessel(Family.JACKSON, p, x)
    assert g_over_x == pytest.approx(1.0, abs=1e-11)


def test_direct_rejects_nonpositive(p0):
    with pytest.raises(QDomainError):
        direct_qbessel(Family.JACKSON, p0, 0.0)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(KINDS), params_st)
def test_coefficients_match_direct_products(kind, p):
    s = normalized_coefficients(kind, p, 1.0)
    for n, c in enumerate(s.coeffs[:8]):
        ref = direct_b(kind, p, n)
        assert c == pytest.approx(ref, rel=1e-11, abs=1e-300)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(KINDS), params_st)
def test_signs_alternate_and_decay(kind, p):
    c = normalized_coefficients(kind, p, 1.0).coeffs
    assert c[0] == 1.0
    nonzero = [x for x in c if x != 0.0]
    assert all(a * b < 0 for a, b in zip(nonzero, nonzero[1:]))
    # unimodal magnitudes: once decreasing, decreasing for good
    mags = [abs(x) for x in nonzero]
    n0 = next(i for i in range(len(mags) - 1) if mags[i + 1] < mags[i])
    assert all(b < a for a, b in zip(mags[n0:], mags[n0 + 1 :]))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([Family.JACKSON, Family.HAHN_EXTON]), params_st, st.floats(0.01, 0.9))
def test_odd_and_full_forms_related(family, p, z):
    g_kind, h_kind = (
        (FunctionKind.G2, FunctionKind.H2) if family is Family.JACKSON else (FunctionKind.G3, FunctionKind.H3)
    )
    g = evaluate(normalized_coefficients(g_kind, p, 1.0), z)
    h = evaluate(normalized_coefficients(h_kind, p, 1.0), z * z)
    assert h == pytest.approx(z * g, rel=1e-12, abs=1e-300)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(KINDS), params_st, st.floats(0.05, 1.0))
def test_alternating_partial_sums_enclose(kind, p, x):
    s = normalized_coefficients(kind, p, 1.0)
    full = evaluate(s, x)
    partial = 0.0
    for n, c in enumerate(s.coeffs[:6]):
        partial += c * x ** s.exponent(n)
        nxt = s.coeffs[n + 1] * x ** s.exponent(n + 1) if n + 1 < len(s.coeffs) else 0.0
        assert abs(full - partial) <= abs(nxt) * (1 + 1e-9) + 1e-15


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(KINDS), params_st, st.floats(0.05, 0.9))
def test_direct_sum_matches_normalized(kind, p, x):
    s = normalized_coefficients(kind, p, 1.0)
    if kind.odd_type:
        rhs = jbessel_scale(kind, p) * x ** (1 - p.nu) * direct_qbessel(kind.family, p, x)
    else:
        w = math.sqrt(x)
        rhs = jbessel_scale(kind, p) * x ** (1 - p.nu / 2) * direct_qbessel(kind.family, p, w)
    # cancellation in the alternating sum sets the attainable accuracy
    cond = sum(abs(c) * x ** s.exponent(n) for n, c in enumerate(s.coeffs))
    assert abs(evaluate(s, x) - rhs) <= 1e-14 * cond


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(KINDS), params_st, st.floats(0.05, 0.8))
def test_derivative_matches_finite_difference(kind, p, x):
    s = normalized_coefficients(kind, p, 1.0)
    h = 1e-5
    fd = (evaluate(s, x + h) - evaluate(s, x - h)) / (2 * h)
    assert evaluate(derivative_series(s, 1), x) == pytest.approx(fd, rel=1e-7, abs=1e-9)


def test_deep_terms_underflow_quietly():
    # deep terms underflow to zero rather than raising
    s = normalized_coefficients(FunctionKind.G2, QDomainParams(0.0, 0.01), 1e6)
    assert math.isfinite(evaluate(s, 10.0))
