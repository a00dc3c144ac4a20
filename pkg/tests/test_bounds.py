import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qradii.bounds import (
    aux_polynomials,
    classical_limit_bounds,
    classical_radius,
    comparison_report,
    scaled_radius,
    t_poly,
    theorem_bounds,
)
from qradii.eulerray import newton_brackets_in_radius, smallest_positive_root
from qradii.qseries import QDomainError, QDomainParams
from qradii.series import FunctionKind

KINDS = tuple(FunctionKind)
G2, H2, G3, H3 = KINDS
params_st = st.builds(QDomainParams, st.floats(-0.9, 5.0), st.floats(0.05, 0.95))


def test_aux_examples(p0):
    ax = aux_polynomials(p0)
    assert ax.T == pytest.approx(-1.3125)
    assert ax.S == pytest.approx(-84.875)
    assert ax.U == pytest.approx(7.875)
    assert ax.E == pytest.approx(-6.75)
    assert ax.Y == pytest.approx(-78.625)


@given(st.floats(0.001, 0.999))
def test_t_negative(q):
    assert t_poly(q) < 0


@settings(max_examples=60)
@given(params_st)
def test_aux_finite(p):
    assert all(math.isfinite(v) for v in vars(aux_polynomials(p)).values())


def test_theorem_bound_examples(p0):
    g = theorem_bounds(G2, p0)
    assert g.lower_k1 == pytest.approx(math.sqrt(1 / 4.5), rel=1e-14)
    assert g.upper_k1 == pytest.approx(0.48846, abs=1e-5)
    h = theorem_bounds(H2, p0)
    assert h.lower_k1 == pytest.approx(0.5, rel=1e-14)
    assert h.upper_k1 == pytest.approx(4 / 7, rel=1e-14)
    assert theorem_bounds(H3, p0).lower_k1 == pytest.approx(0.125, rel=1e-14)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(KINDS), params_st)
def test_theorem_bounds_equal_newton_brackets(kind, p):
    b = theorem_bounds(kind, p)
    assert b.status == "ok"
    (lo1, up1), (lo2, up2) = newton_brackets_in_radius(kind, p)
    got = (b.lower_k1, b.upper_k1, b.lower_k2, b.upper_k2)
    for x, y in zip(got, (lo1, up1, lo2, up2)):
        assert x == pytest.approx(y, rel=1e-9)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(KINDS), params_st)
def test_bounds_nested(kind, p):
    b = theorem_bounds(kind, p)
    assert b.lower_k1 <= b.lower_k2 * (1 + 1e-12)
    assert b.lower_k2 < b.upper_k2
    assert b.upper_k2 <= b.upper_k1 * (1 + 1e-12)


def test_classical_examples():
    g = classical_limit_bounds(G2, 0.0)
    assert g.lower_k1 == pytest.approx(2 / 3)
    assert g.upper_k1 == pytest.approx(6 * math.sqrt(2 / 137))
    h = classical_limit_bounds(H2, 0.0)
    assert (h.lower_k1, h.upper_k1) == (pytest.approx(1.0), pytest.approx(32 / 23))
    assert classical_limit_bounds(H3, 0.0).lower_k1 == pytest.approx(0.25)
    g3 = classical_limit_bounds(G3, 0.0)
    assert (g3.lower_k1, g3.upper_k1) == (pytest.approx(1 / 3), pytest.approx(3 * math.sqrt(2 / 137)))


def test_classical_rejects_domain():
    with pytest.raises(QDomainError):
        classical_limit_bounds(G2, -1.0)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("nu", (-0.5, 0.0, 1.0, 2.5))
def test_classical_radius_inside_classical_windows(kind, nu):
    r = classical_radius(kind, nu)
    b = classical_limit_bounds(kind, nu)
    assert b.lower_k1 <= b.lower_k2 < r < b.upper_k2 <= b.upper_k1


def test_classical_radius_values():
    assert classical_radius(G2, 0.0) == pytest.approx(0.69575, abs=1e-5)
    assert classical_radius(G2, 1.0) == pytest.approx(1.0, abs=1e-12)
    assert classical_radius(H2, 0.0) == pytest.approx(1.18679, abs=1e-5)
    assert classical_radius(G3, 0.5) == pytest.approx(classical_radius(G2, 0.5) / 2)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("nu", (0.0, 1.0))
def test_limit_within_two_percent(kind, nu):
    p = QDomainParams(nu, 0.999)
    s = scaled_radius(kind, p, smallest_positive_root(kind, p).radius)
    assert s == pytest.approx(classical_radius(kind, nu), rel=0.02)


def test_scale_examples():
    assert scaled_radius(G2, QDomainParams(0.0, 0.5), 0.48) == pytest.approx(0.96)
    assert scaled_radius(H2, QDomainParams(0.0, 0.9), 0.012) == pytest.approx(1.2)


def test_g3_high_q_inside_window():
    p = QDomainParams(0.0, 0.999)
    s = scaled_radius(G3, p, smallest_positive_root(G3, p).radius)
    assert 1 / 3 < s < 3 * math.sqrt(2 / 137)


@pytest.mark.parametrize("nu", (-0.5, 0.0, 1.0, 2.5, 10.0))
def test_comparison_all_true(nu):
    rep = comparison_report(nu)
    assert len(rep.rows) == 8
    assert rep.all_true


def test_comparison_examples():
    rows = {r.claim: r for r in comparison_report(0.0).rows}
    r = rows["g3.lower_k1 <= g2.lower_k1"]
    assert (r.left, r.right) == (pytest.approx(1 / 3), pytest.approx(2 / 3))
    r = rows["g3.upper_k1 <= g2.upper_k1"]
    assert r.left == pytest.approx(r.right / 2)
    r = rows["h3.lower_k1 <= h2.lower_k1"]
    assert (r.left, r.right) == (pytest.approx(0.25), pytest.approx(1.0))
