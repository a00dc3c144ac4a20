"""Auxiliary polynomials, two-sided radius bounds and their classical limits.

Bounds are written with every factor that is positive on the domain
(1 - q^c, 1 + q, -S, ...) gathered explicitly, so radicands stay positive in
floating point as q approaches 1.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

from qradii.qseries import QDomainError, QDomainParams, one_minus_q_power, q_power
from qradii.series import FunctionKind

# The commonly quoted P_nu and R_nu of the Jackson g-form disagree with its
# Taylor coefficients in the q^(nu+7) (P), q^6 and q^(2nu+8) (R) terms.
# literal = corrected - 49 q^6 (1 - q^(nu+1))^2.
LITERAL_P_NU7, CORRECTED_P_NU7 = 479.0, 381.0
LITERAL_R_Q6, CORRECTED_R_Q6 = 98.0, 147.0
LITERAL_R_2NU8, CORRECTED_R_2NU8 = 152.0, 201.0


@dataclass(frozen=True)
class AuxPolynomials:
    S: float
    P: float
    R: float
    T: float
    U: float
    M: float
    N: float
    Y: float
    theta: float
    phi: float
    E: float
    K: float
    L: float


@dataclass(frozen=True)
class ConvexityBounds:
    kind: FunctionKind
    lower_k1: float
    upper_k1: float
    lower_k2: float
    upper_k2: float
    status: str = "ok"

    def as_window(self, k: int = 1) -> tuple[float, float]:
        return (self.lower_k1, self.upper_k1) if k == 1 else (self.lower_k2, self.upper_k2)


def t_poly(q: float) -> float:
    return (q - 1.0) * (q**3 + 2 * q**2 + 2 * q + 1)


def aux_polynomials(params: QDomainParams, literal: bool = False) -> AuxPolynomials:
    """The thirteen auxiliary polynomials at (nu, q).

    ``literal=True`` returns the commonly quoted P and R; the default returns
    the corrected pair whose sum matches the Newton-identity value of epsilon_3.
    """
    q = params.q

    def qn(c):
        return q_power(q, params.nu + c)

    def q2n(c):
        return q_power(q, 2 * params.nu + c)

    p7, r6, r8 = (
        (LITERAL_P_NU7, LITERAL_R_Q6, LITERAL_R_2NU8)
        if literal
        else (CORRECTED_P_NU7, CORRECTED_R_Q6, CORRECTED_R_2NU8)
    )
    S = 31 * qn(3) + 81 * qn(2) + 50 * q**2 - 81 * q - 81
    P = (
        1458 * q - 729 * qn(2) - 1512 * qn(3) - 2241 * qn(4) - 837 * qn(5)
        - 54 * qn(6) + p7 * qn(7) + 729 * q2n(5)
    )
    R = (
        783 * q2n(6) + 783 * q2n(7) + r8 * q2n(8)
        + r6 * q**6 - 675 * q**4 + 54 * q**3 + 783 * q**2 + 729
    )
    U = 8 * q - 8 * qn(2) + qn(3) - 9 * q**2 + 8
    M = 32 * q - 16 * qn(2) - 21 * qn(3) - 37 * qn(4) + 6 * qn(5) + 11 * qn(6) + 3 * qn(7)
    N = (
        16 * q2n(5) + 5 * q2n(6) + 5 * q2n(7) + q2n(8)
        + 5 * q**2 - 11 * q**3 - 27 * q**4 + 12 * q**6 + 16
    )
    Y = 81 * qn(3) + 31 * qn(2) - 31 * q - 81
    theta = (
        261 * q - 18 * qn(2) - 504 * qn(3) - 620 * qn(4) - 504 * qn(5)
        - 18 * qn(6) + 67 * q2n(5)
    )
    phi = 261 * q2n(6) + 261 * q2n(7) + 243 * q2n(8) + 67 * q**3 + 261 * q**2 + 243
    E = 8 * qn(3) - qn(2) + q - 8
    K = 5 * q + 11 * qn(2) - 21 * qn(3) - 34 * qn(4) - 21 * qn(5) + 11 * qn(6)
    L = q2n(5) + 5 * q2n(6) + 5 * q2n(7) + 16 * q2n(8) + 5 * q**2 + q**3 + 16
    return AuxPolynomials(S, P, R, t_poly(q), U, M, N, Y, theta, phi, E, K, L)


def _root(value: float, degree: int) -> float:
    if not value > 0:
        raise ArithmeticError(f"non-positive radicand {value}")
    return value ** (1.0 / degree)


def _formula_bounds(kind: FunctionKind, params: QDomainParams) -> tuple[float, float, float, float]:
    q = params.q
    a = q_power(q, params.nu + 1)
    om1, om2, om3 = (one_minus_q_power(q, params.nu + c) for c in (1, 2, 3))
    omq, opq = 1.0 - q, 1.0 + q
    cubic = q**3 + 2 * q**2 + 2 * q + 1  # T(q) = -(1 - q) * cubic
    ax = aux_polynomials(params)

    if kind is FunctionKind.G2:
        lo1 = _root(4 * om1 * omq / (9 * a), 2)
        up1 = _root(36 * omq * opq * om1 * om2 / (a * -ax.S), 2)
        lo2 = 2 * _root(opq * omq**2 * om1**2 * om2 / (a**2 * -ax.S), 4)
        up2 = _root(4 * om1 * om3 * omq * cubic * -ax.S / (a * opq * (ax.P + ax.R)), 2)
    elif kind is FunctionKind.H2:
        lo1 = omq * om1 / a
        up1 = 8 * om1 * om2 * omq * opq / (a * ax.U)
        lo2 = _root(8 * omq**2 * opq * om1**2 * om2 / (a**2 * ax.U), 2)
        up2 = 2 * om1 * om3 * ax.U * omq * cubic / (opq * a * (ax.M + ax.N))
    elif kind is FunctionKind.G3:
        lo1 = _root(om1 * omq / (9 * q), 2)
        up1 = _root(9 * omq * opq * om1 * om2 / (q * -ax.Y), 2)
        lo2 = _root(opq * omq**2 * om1**2 * om2 / (q**2 * -ax.Y), 4)
        up2 = _root(om1 * om3 * omq * cubic * -ax.Y / (3 * q * opq * (ax.theta + ax.phi)), 2)
    else:
        lo1 = omq * om1 / (4 * q)
        up1 = 2 * om1 * om2 * omq * opq / (q * -ax.E)
        lo2 = _root(omq**2 * opq * om1**2 * om2 / (2 * q**2 * -ax.E), 2)
        up2 = om1 * om3 * -ax.E * omq * cubic / (2 * q * opq * (ax.K + ax.L))
    return lo1, up1, lo2, up2


def theorem_bounds(kind: FunctionKind, params: QDomainParams) -> ConvexityBounds:
    """The four explicit bounds on the radius of convexity of ``kind`` at (nu, q).

    These are the Euler-Rayleigh brackets for k = 1, 2 in closed form. If a
    value comes out non-positive the brackets are recomputed from Newton sums
    and the result carries status ``"newton_fallback"``.
    """
    try:
        values = _formula_bounds(kind, params)
        if all(math.isfinite(v) and v > 0 for v in values):
            return ConvexityBounds(kind, *values)
    except (ArithmeticError, ValueError):
        pass
    from qradii.eulerray import newton_brackets_in_radius

    warnings.warn(f"closed-form bounds invalid for {kind.value} at {params}; using Newton sums")
    (lo1, up1), (lo2, up2) = newton_brackets_in_radius(kind, params)
    return ConvexityBounds(kind, lo1, up1, lo2, up2, status="newton_fallback")


def classical_limit_bounds(kind: FunctionKind, nu: float) -> ConvexityBounds:
    """q -> 1 limits of the scaled bounds: the classical Bessel-function windows."""
    if nu <= -1:
        raise QDomainError(f"nu must be > -1 (got {nu})")
    n1, n2, n3 = nu + 1, nu + 2, nu + 3
    if kind.odd_type:
        d1 = 56 * nu + 137
        d2 = 208 * nu**2 + 1172 * nu + 1693
        lo1 = 2 * math.sqrt(n1) / 3
        up1 = 6 * math.sqrt(n1 * n2 / d1)
        lo2 = 2 * (n1**2 * n2 / d1) ** 0.25
        up2 = math.sqrt(2 * n1 * n3 * d1 / d2)
        if kind is FunctionKind.G3:
            lo1, up1, lo2 = lo1 / 2, up1 / 2, lo2 / 2
            up2 = math.sqrt(n1 * n3 * d1 / (2 * d2))
    else:
        d1 = 7 * nu + 23
        d2 = 9 * nu**2 + 60 * nu + 115
        lo1 = n1
        up1 = 16 * n1 * n2 / d1
        lo2 = math.sqrt(16 * n1**2 * n2 / d1)
        up2 = 2 * n1 * n3 * d1 / d2
        if kind is FunctionKind.H3:
            lo1, up1, lo2 = lo1 / 4, up1 / 4, lo2 / 4
            up2 = n1 * n3 * d1 / (2 * d2)
    return ConvexityBounds(kind, lo1, up1, lo2, up2)


def scale_factor(kind: FunctionKind, q: float) -> float:
    return 1.0 / (1.0 - q) if kind.odd_type else 1.0 / (1.0 - q) ** 2


def scaled_radius(kind: FunctionKind, params: QDomainParams, radius: float) -> float:
    """Radius multiplied by (1-q)^-1 (g-forms) or (1-q)^-2 (h-forms)."""
    return radius * scale_factor(kind, params.q)


def scaled_bounds(kind: FunctionKind, params: QDomainParams) -> ConvexityBounds:
    b = theorem_bounds(kind, params)
    s = scale_factor(kind, params.q)
    return ConvexityBounds(
        kind, b.lower_k1 * s, b.upper_k1 * s, b.lower_k2 * s, b.upper_k2 * s, b.status
    )


@dataclass(frozen=True)
class Comparison:
    claim: str
    left: float
    right: float

    @property
    def holds(self) -> bool:
        return self.left <= self.right


@dataclass(frozen=True)
class ComparisonReport:
    nu: float
    rows: tuple[Comparison, ...] = field(default_factory=tuple)

    @property
    def all_true(self) -> bool:
        return all(r.holds for r in self.rows)


def comparison_report(nu: float) -> ComparisonReport:
    """Check that the Hahn-Exton limit windows sit below the Jackson ones."""
    g2 = classical_limit_bounds(FunctionKind.G2, nu)
    g3 = classical_limit_bounds(FunctionKind.G3, nu)
    h2 = classical_limit_bounds(FunctionKind.H2, nu)
    h3 = classical_limit_bounds(FunctionKind.H3, nu)
    rows = (
        Comparison("g3.lower_k1 <= g2.lower_k1", g3.lower_k1, g2.lower_k1),
        Comparison("g3.lower_k2 <= g2.lower_k2", g3.lower_k2, g2.lower_k2),
        Comparison("g3.upper_k1 <= g2.upper_k1", g3.upper_k1, g2.upper_k1),
        Comparison("g3.upper_k2 <= g2.upper_k2", g3.upper_k2, g2.upper_k2),
        Comparison("h3.lower_k1 <= h2.lower_k1", h3.lower_k1, h2.lower_k1),
        Comparison("h3.lower_k2 <= h2.lower_k2", h3.lower_k2, h2.lower_k2),
        Comparison("h3.upper_k1 <= h2.upper_k1", h3.upper_k1, h2.upper_k1),
        Comparison("h3.upper_k2 <= h2.upper_k2", h3.upper_k2, h2.upper_k2),
    )
    return ComparisonReport(nu=nu, rows=rows)


def classical_radius(kind: FunctionKind, nu: float, tol: float = 1e-14) -> float:
    """Radius of convexity of the classical Bessel counterpart (the q -> 1 target).

    Uses sum (-1)^n w(n) u^n / (4^n n! (nu+1)_n) with w(n) = (2n+1)^2 (u = z^2)
    or (n+1)^2 (u = z); the Hahn-Exton targets are the Jackson ones divided by
    2 (g) or 4 (h).
    """
    from qradii.eulerray import _bisect

    base = FunctionKind.G2 if kind.odd_type else FunctionKind.H2
    window = classical_limit_bounds(base, nu)
    lo, hi = window.lower_k1, window.upper_k1
    if kind.odd_type:
        lo, hi = lo * lo, hi * hi

    coeffs = []
    c = 1.0
    n = 0
    while True:
        w = (2 * n + 1) ** 2 if kind.odd_type else (n + 1) ** 2
        term = c * w
        coeffs.append(term)
        if n > 4 and abs(term) * (2 * hi) ** n < 1e-18:
            break
        n += 1
        c *= -1.0 / (4 * n * (nu + n))

    def f(u):
        acc = 0.0
        for v in reversed(coeffs):
            acc = acc * u + v
        return acc

    a, b, _, _ = _bisect(f, lo, hi, tol)
    u = 0.5 * (a + b)
    r = math.sqrt(u) if kind.odd_type else u
    if kind is FunctionKind.G3:
        r /= 2
    elif kind is FunctionKind.H3:
        r /= 4
    return r
