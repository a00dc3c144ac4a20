"""Euler-Rayleigh sums of the convexity transform and its first positive zero.

The convexity transform of a normalized form f is (z f'(z))'. For g-forms it
is even in z and is handled in the working variable t = z^2; for h-forms the
working variable is z itself. In the working variable the transform is
sum_n c_n u^n with c_0 = 1, and its zeros u_1 < u_2 < ... are real and positive.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from qradii.bounds import aux_polynomials
from qradii.qseries import (
    PrecisionLossError,
    QDomainError,
    QDomainParams,
    one_minus_q_power,
    q_power,
)
from qradii.series import (
    Family,
    FunctionKind,
    PowerSeries,
    direct_qbessel,
    evaluate,
    generate_coefficients,
)

CLOSED_FORM_KMAX = 3


class SumFamily(enum.Enum):
    EPSILON = "epsilon"
    MU = "mu"
    ETA = "eta"
    SIGMA = "sigma"


SUM_FAMILY = {
    FunctionKind.G2: SumFamily.EPSILON,
    FunctionKind.H2: SumFamily.MU,
    FunctionKind.G3: SumFamily.ETA,
    FunctionKind.H3: SumFamily.SIGMA,
}


class Status(str, enum.Enum):
    CONVERGED = "converged"
    BRACKET_FAILED = "bracket_failed"
    PRECISION_LIMITED = "precision_limited"


@dataclass(frozen=True)
class EulerRayleighSums:
    family: SumFamily | None
    values: dict[int, float]
    method: str  # closed_form, newton or zero_sum

    def __getitem__(self, k: int) -> float:
        return self.values[k]


@dataclass(frozen=True)
class RadiusResult:
    kind: FunctionKind
    params: QDomainParams
    radius: float
    bracket: tuple[float, float]
    root: float  # first zero in the working variable
    residual_series: float
    residual_theorem: float
    theorem_scale: float
    iterations: int
    status: Status

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED

    @property
    def normalized_theorem_residual(self) -> float:
        return abs(self.residual_theorem) / abs(self.theorem_scale)


def convexity_coefficients(
    kind: FunctionKind,
    params: QDomainParams,
    r_max: float = 1.0,
    tol: float = 1e-18,
    min_terms: int = 1,
) -> PowerSeries:
    """(z f')' as a series in the working variable, valid for |u| <= r_max."""
    if kind.odd_type:
        weight = lambda n: float((2 * n + 1) ** 2)  # noqa: E731
        variable = "t"
    else:
        weight = lambda n: float((n + 1) ** 2)  # noqa: E731
        variable = "z"
    coeffs, tail = generate_coefficients(kind, params, weight, r_max, tol, min_terms, 0, 1)
    return PowerSeries(
        kind=kind,
        coeffs=coeffs,
        offset=0,
        step=1,
        variable=variable,
        tail=tail,
        transform="convexity",
    )


def newton_power_sums(series: PowerSeries, K: int) -> EulerRayleighSums:
    """Power sums of the reciprocal zeros from the Taylor coefficients.

    If sum d_j u^j = prod (1 - u/u_n), then p_k = sum u_n^-k satisfies
    p_k = -k d_k - sum_{j=1}^{k-1} d_j p_(k-j).
    """
    d = series.coeffs
    if series.offset != 0 or series.step != 1:
        raise ValueError("newton_power_sums expects a plain series in its working variable")
    if d[0] != 1.0:
        raise ValueError(f"constant term must be 1 (got {d[0]})")
    if K < 1:
        raise ValueError("K must be >= 1")
    if K >= len(d) and series.transform == "polynomial":
        d = d + (0.0,) * (K + 1 - len(d))  # missing polynomial coefficients are exact zeros
    if K >= len(d):
        raise ValueError(f"series holds {len(d)} coefficients; p_{K} needs d_1..d_{K}")
    p = [0.0]
    for k in range(1, K + 1):
        p.append(-k * d[k] - math.fsum(d[j] * p[k - j] for j in range(1, k)))
    family = SUM_FAMILY.get(series.kind) if series.transform == "convexity" else None
    return EulerRayleighSums(family, {k: p[k] for k in range(1, K + 1)}, "newton")


def newton_sums(kind: FunctionKind, params: QDomainParams, K: int = CLOSED_FORM_KMAX + 1) -> EulerRayleighSums:
    # only d_0..d_K are needed; a tiny r_max stops generation right after them
    series = convexity_coefficients(kind, params, r_max=1e-300, min_terms=K + 1)
    return newton_power_sums(series, K)


def closed_form_sums(kind: FunctionKind, params: QDomainParams) -> EulerRayleighSums:
    """epsilon_k, mu_k, eta_k or sigma_k for k = 1, 2, 3 in closed form.

    Written with all positive factors made explicit; every value is positive.
    """
    q = params.q
    a = q_power(q, params.nu + 1)
    om1, om2, om3 = (one_minus_q_power(q, params.nu + c) for c in (1, 2, 3))
    omq, opq = 1.0 - q, 1.0 + q
    cubic = q**3 + 2 * q**2 + 2 * q + 1
    ax = aux_polynomials(params)
    den1 = om1 * omq
    den2 = om1**2 * om2 * omq**2 * opq
    den3 = om1**3 * om2 * om3 * omq**3 * cubic

    if kind is FunctionKind.G2:
        s = (9 * a / (4 * den1), a**2 * -ax.S / (16 * den2), a**3 * (ax.P + ax.R) / (64 * den3))
    elif kind is FunctionKind.H2:
        s = (a / den1, a**2 * ax.U / (8 * den2), a**3 * (ax.M + ax.N) / (16 * den3))
    elif kind is FunctionKind.G3:
        s = (9 * q / den1, q**2 * -ax.Y / den2, 3 * q**3 * (ax.theta + ax.phi) / den3)
    else:
        s = (4 * q / den1, 2 * q**2 * -ax.E / den2, 4 * q**3 * (ax.K + ax.L) / den3)
    return EulerRayleighSums(SUM_FAMILY[kind], {k + 1: v for k, v in enumerate(s)}, "closed_form")


def literal_closed_forms(kind: FunctionKind, params: QDomainParams) -> dict[int, float]:
    """The three closed forms in their commonly quoted factor order, unrepaired.

    Kept only to document where they depart from the Newton sums; use
    ``closed_form_sums`` for computation.
    """
    q = params.q
    x = q_power(q, params.nu)
    a = x * q
    qn2, qn3 = x * q**2, x * q**3
    ax = aux_polynomials(params, literal=True)
    T = ax.T
    if kind is FunctionKind.G2:
        return {
            1: 9 * a / (4 * (a - 1) * (q - 1)),
            2: a**2 * ax.S / (16 * (a - 1) ** 2 * (qn2 - 1) * (q - 1) ** 2 * (q + 1)),
            3: a**3 * (ax.P + ax.R) / (64 * (a - 1) ** 3 * (1 - qn2) * (1 - qn3) * (q - 1) ** 2 * T),
        }
    if kind is FunctionKind.H2:
        return {
            1: a / ((a - 1) * (q - 1)),
            2: a**2 * ax.U / (8 * (a - 1) ** 2 * (1 - qn2) * (q - 1) ** 2 * (q + 1)),
            3: a**3 * (ax.M + ax.N) / (16 * (a - 1) ** 3 * (qn2 - 1) * (qn3 - 1) * (q - 1) ** 2 * T),
        }
    if kind is FunctionKind.G3:
        return {
            1: 9 * q / ((a - 1) * (q - 1)),
            2: q**2 * ax.Y / ((a - 1) ** 2 * (qn2 - 1) * (q - 1) ** 2 * (q + 1)),
            3: 3 * q**3 * (ax.theta + ax.phi)
            / (64 * (a - 1) ** 3 * (1 - qn2) * (1 - qn3) * (q - 1) ** 2 * T),
        }
    return {
        1: 4 * q / ((a - 1) * (q - 1)),
        2: 2 * q**2 * ax.E / ((a - 1) ** 2 * (1 - qn2) * (1 - q) ** 2 * (1 - q)),
        3: 4 * q**3 * (ax.K + ax.L) / ((1 - a) ** 3 * (1 - qn2) * (1 - qn3) * (1 - q) ** 2 * T),
    }


def reference_sums(kind: FunctionKind, params: QDomainParams, rel_tol: float = 1e-8) -> EulerRayleighSums:
    """Closed forms, unless they disagree with the Newton sums beyond rel_tol."""
    closed = closed_form_sums(kind, params)
    newton = newton_sums(kind, params, CLOSED_FORM_KMAX)
    for k, v in newton.values.items():
        if not abs(closed[k] - v) <= rel_tol * abs(v):
            return newton
    return closed


def er_bracket(sums: EulerRayleighSums, k: int) -> tuple[float, float]:
    """(p_k^(-1/k), p_k / p_(k+1)): encloses the first zero in the working variable."""
    if k < 1:
        raise ValueError("k must be >= 1")
    pk, pk1 = sums[k], sums[k + 1]
    lo, hi = pk ** (-1.0 / k), pk / pk1
    if lo > hi * (1 + 1e-14):
        raise ArithmeticError(f"inconsistent Euler-Rayleigh bracket ({lo}, {hi}) at k={k}")
    return lo, hi


def _to_radius(kind: FunctionKind, u: float) -> float:
    return math.sqrt(u) if kind.odd_type else u


def newton_brackets_in_radius(kind: FunctionKind, params: QDomainParams):
    sums = newton_sums(kind, params, 3)
    return tuple(tuple(_to_radius(kind, v) for v in er_bracket(sums, k)) for k in (1, 2))


def theorem_expression(kind: FunctionKind, params: QDomainParams, r: float) -> float:
    """The J-form equation whose smallest positive root is the radius.

    g-forms: (1-nu)^2 J(r) + (3-2nu) r J'(r) + r^2 J''(r).
    h-forms: (2-nu)^2 J(w) + (5-2nu) w J'(w) + w^2 J''(w) with w = sqrt(r),
    the primes being derivatives of J with respect to its argument.
    """
    nu = params.nu
    fam = kind.family
    if kind.odd_type:
        x, c0, c1 = r, (1 - nu) ** 2, 3 - 2 * nu
    else:
        x, c0, c1 = math.sqrt(r), (2 - nu) ** 2, 5 - 2 * nu
    j0, j1, j2 = (direct_qbessel(fam, params, x, derivative=m) for m in (0, 1, 2))
    return c0 * j0 + c1 * x * j1 + x * x * j2


def _first_sign_change(f, lo, hi, limit, pieces=32):
    """Scan [lo, ...) for the first sign change of f, widening past hi up to limit."""
    width = hi - lo
    lo_val = f(lo)
    # lo is a proven lower bound; only rounding can make f(lo) <= 0 here
    while lo_val <= 0 and lo > 0:
        lo = max(lo - 0.02 * width, 0.0)
        lo_val = f(lo) if lo > 0 else 1.0
    h = width / pieces
    a, fa = lo, lo_val
    while a < limit:
        b = min(a + h, limit)
        if b > hi:
            h = 0.02 * width
        fb = f(b)
        if fa > 0 >= fb:
            return a, b
        a, fa = b, fb
    return None


def _bisect(f, a, b, rel_tol, max_iter=400):
    fa = f(a)
    iterations = 0
    while b - a > rel_tol * a:
        m = 0.5 * (a + b)
        if m <= a or m >= b or iterations >= max_iter:
            return a, b, iterations, False
        fm = f(m)
        iterations += 1
        if fm == 0.0:
            return m, m, iterations, True
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return a, b, iterations, True


def smallest_positive_root(kind: FunctionKind, params: QDomainParams, tol: float = 1e-12) -> RadiusResult:
    """Radius of convexity: first positive zero of (z f')', located by bisection."""
    if tol <= 0:
        raise QDomainError("tol must be positive")
    sums = reference_sums(kind, params)
    try:
        lo, hi = er_bracket(sums, 2)
    except ArithmeticError:
        lo, hi = er_bracket(sums, 1)
    _, hi1 = er_bracket(sums, 1)
    limit = 4.0 * max(hi, hi1)
    series = convexity_coefficients(kind, params, r_max=limit)
    f = lambda u: evaluate(series, u)  # noqa: E731

    found = _first_sign_change(f, lo, hi, limit)
    if found is None:
        nan = math.nan
        return RadiusResult(kind, params, nan, (nan, nan), nan, nan, nan, nan, 0, Status.BRACKET_FAILED)
    a, b, iterations, ok = _bisect(f, *found, rel_tol=tol)
    root = 0.5 * (a + b)
    radius = _to_radius(kind, root)
    return RadiusResult(
        kind=kind,
        params=params,
        radius=radius,
        bracket=(_to_radius(kind, a), _to_radius(kind, b)),
        root=root,
        residual_series=f(root),
        residual_theorem=theorem_expression(kind, params, radius),
        theorem_scale=theorem_expression(kind, params, 0.5 * radius),
        iterations=iterations,
        status=Status.CONVERGED if ok else Status.PRECISION_LIMITED,
    )


def growth_ratio(kind: FunctionKind, q: float) -> float:
    """Asymptotic ratio of consecutive zeros in the working variable."""
    return q**-2 if kind.family is Family.JACKSON else 1.0 / q


def zero_scan(kind: FunctionKind, params: QDomainParams, M: int, tol: float = 1e-15) -> list[float]:
    """First M positive zeros of the convexity transform in the working variable."""
    if M < 1:
        raise ValueError("M must be >= 1")
    rho = growth_ratio(kind, params.q)
    factor = 1.0 + (rho - 1.0) / 16.0
    start = 0.5 / newton_sums(kind, params, 1)[1]
    end = start * rho ** (M + 4)
    for _ in range(8):
        series = convexity_coefficients(kind, params, r_max=end)
        f = lambda u: evaluate(series, u)  # noqa: E731
        zeros = []
        a, fa = start, f(start)
        while a < end and len(zeros) < M:
            b = min(a * factor, end)
            fb = f(b)
            if not math.isfinite(fb):
                raise PrecisionLossError(
                    f"convexity series overflows binary64 near u={b:.3g} after {len(zeros)} zeros"
                )
            if (fa > 0) != (fb > 0):
                lo, hi, _, _ = _bisect(f, a, b, tol)
                zeros.append(0.5 * (lo + hi))
            a, fa = b, fb
        if len(zeros) == M:
            return zeros
        end *= rho**4
    raise ArithmeticError(f"found only {len(zeros)} of {M} zeros below u={end:.3g}")


def zero_sum_tail(zeros: list[float], k: int, rho: float) -> float:
    """Geometric estimate of sum_{n > M} u_n^-k given u_(n+1) >= rho * u_n beyond the scan."""
    r = rho**-k
    return zeros[-1] ** -k * r / (1.0 - r)


def zero_power_sums(zeros: list[float], K: int) -> EulerRayleighSums:
    values = {k: math.fsum(u**-k for u in zeros) for k in range(1, K + 1)}
    return EulerRayleighSums(None, values, "zero_sum")
