"""Cross-checks of every closed form against independent numerical routes.

One grid point runs: closed form vs Newton sums, the bound sandwich around
the bisected radius, the J-form residual at the radius, and a sampled
convexity certificate on circles just inside and outside the radius.
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from qradii import __version__
from qradii.bounds import (
    classical_limit_bounds,
    classical_radius,
    scaled_radius,
    theorem_bounds,
)
from qradii.eulerray import (
    Status,
    closed_form_sums,
    newton_sums,
    smallest_positive_root,
)
from qradii.qseries import QDomainParams
from qradii.series import FunctionKind, derivative_series, evaluate, normalized_coefficients

DEFAULT_NUS = (-0.5, 0.0, 0.5, 1.0, 2.5)
DEFAULT_QS = (0.1, 0.3, 0.5, 0.7, 0.9)
LIMIT_QS = (0.9, 0.99, 0.999)
Q_CEILING = 0.999


@dataclass(frozen=True)
class Tolerances:
    root: float = 1e-12
    sums_rel: float = 1e-10
    theorem_rel: float = 1e-8
    sandwich_margin: float = 1e-9
    samples: int = 720
    inside: float = 0.99
    outside: float = 1.01

    def __post_init__(self):
        for name in ("root", "sums_rel", "theorem_rel", "sandwich_margin"):
            if not getattr(self, name) > 0:
                raise ValueError(f"tolerance {name} must be positive")
        if self.samples < 90:
            raise ValueError("need at least 90 boundary samples")
        if not (0 < self.inside < 1 < self.outside):
            raise ValueError("inside/outside scales must straddle 1")


@dataclass
class PointRecord:
    kind: str
    nu: float
    q: float
    radius: float = math.nan
    lower_k1: float = math.nan
    upper_k1: float = math.nan
    lower_k2: float = math.nan
    upper_k2: float = math.nan
    residual_series: float = math.nan
    residual_theorem: float = math.nan
    status: str = "error"
    sums_agreement: float = math.nan
    sandwich: bool = False
    sandwich_margins: tuple[float, float] = (math.nan, math.nan)
    theorem_residual_normalized: float = math.nan
    certificate_inside: float = math.nan
    certificate_outside: float = math.nan
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class LimitRow:
    kind: str
    nu: float
    q: float
    radius: float
    scaled: float
    window_k1: tuple[float, float]
    window_k2: tuple[float, float]
    classical: float
    distance_window: float
    distance_classical: float


@dataclass
class VerificationReport:
    grid: list[tuple[str, float, float]]
    points: list[PointRecord]
    limit_rows: list[LimitRow]
    limit_failures: list[str]

    @property
    def passed_count(self) -> int:
        return sum(p.passed for p in self.points)

    @property
    def failed_count(self) -> int:
        return len(self.points) - self.passed_count

    @property
    def passed(self) -> bool:
        return self.failed_count == 0 and not self.limit_failures

    def to_dict(self) -> dict:
        points = []
        for p in self.points:
            d = asdict(p)
            d["passed"] = p.passed
            points.append(d)
        return _jsonable(
            {
                "meta": {"version": __version__, "grid": [list(g) for g in self.grid]},
                "points": points,
                "limits": [asdict(r) for r in self.limit_rows],
                "limit_failures": self.limit_failures,
                "summary": {
                    "passed": self.passed_count,
                    "failed": self.failed_count,
                    "overall": "pass" if self.passed else "fail",
                },
            }
        )


def _jsonable(obj):
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def default_grid(kinds=tuple(FunctionKind), nus=DEFAULT_NUS, qs=DEFAULT_QS):
    return [(k.value, float(nu), float(q)) for k in kinds for nu in nus for q in qs]


def convexity_certificate(
    kind: FunctionKind,
    params: QDomainParams,
    radius: float,
    samples: int = 720,
    inside: float = 0.99,
    outside: float = 1.01,
) -> tuple[float, float]:
    """Minimum of Re(1 + z f''/f') over circles |z| = inside*radius and outside*radius.

    The minimum is sampled at equally spaced angles, so it is a certificate
    only up to that resolution.
    """
    if samples < 90:
        raise ValueError("need at least 90 boundary samples")
    if radius <= 0:
        raise ValueError("radius must be positive")
    f = normalized_coefficients(kind, params, r_max=outside * radius * 1.001)
    d1 = derivative_series(f, 1)
    d2 = derivative_series(f, 2)

    def min_on_circle(rho):
        best = math.inf
        for j in range(samples):
            theta = 2 * math.pi * j / samples
            z = rho * cmath.exp(1j * theta)
            fp = evaluate(d1, z)
            if abs(fp) < 1e-300:
                z = rho * cmath.exp(1j * (theta + math.pi / samples))
                fp = evaluate(d1, z)
                if abs(fp) < 1e-300:
                    raise ArithmeticError(f"f' vanishes near {z}")
            best = min(best, (1 + z * evaluate(d2, z) / fp).real)
        return best

    return min_on_circle(inside * radius), min_on_circle(outside * radius)


def verify_point(kind: str, nu: float, q: float, tol: Tolerances | None = None) -> PointRecord:
    tol = tol or Tolerances()
    rec = PointRecord(kind=kind, nu=nu, q=q)
    try:
        fk = FunctionKind.parse(kind)
        params = QDomainParams(nu, q)
        closed = closed_form_sums(fk, params)
        newton = newton_sums(fk, params, 3)
        rec.sums_agreement = max(abs(closed[k] - newton[k]) / abs(newton[k]) for k in (1, 2, 3))
        if not rec.sums_agreement < tol.sums_rel:
            rec.failures.append(f"sums_agreement {rec.sums_agreement:.3e}")

        res = smallest_positive_root(fk, params, tol.root)
        rec.status = res.status.value
        if q > Q_CEILING:
            rec.status = Status.PRECISION_LIMITED.value
            return rec
        if not res.converged:
            rec.failures.append(f"root status {res.status.value}")
            return rec
        rec.radius = res.radius
        rec.residual_series = res.residual_series
        rec.residual_theorem = res.residual_theorem
        rec.theorem_residual_normalized = res.normalized_theorem_residual
        if not rec.theorem_residual_normalized < tol.theorem_rel:
            rec.failures.append(f"theorem residual {rec.theorem_residual_normalized:.3e}")

        b = theorem_bounds(fk, params)
        rec.lower_k1, rec.upper_k1, rec.lower_k2, rec.upper_k2 = (
            b.lower_k1, b.upper_k1, b.lower_k2, b.upper_k2,
        )
        r = res.radius
        margin = tol.sandwich_margin * r
        rec.sandwich_margins = ((r - b.lower_k2) / r, (b.upper_k2 - r) / r)
        rec.sandwich = (
            b.lower_k1 <= b.lower_k2
            and b.lower_k2 < r - margin
            and r + margin < b.upper_k2
            and b.upper_k2 <= b.upper_k1
        )
        if not rec.sandwich:
            rec.failures.append("bound sandwich violated")

        rec.certificate_inside, rec.certificate_outside = convexity_certificate(
            fk, params, r, tol.samples, tol.inside, tol.outside
        )
        if not (rec.certificate_inside > 0 and rec.certificate_outside < 0):
            rec.failures.append("convexity certificate")
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        rec.failures.append(f"{type(exc).__name__}: {exc}")
    return rec


def limit_rows(kind: FunctionKind, nu: float, qs=LIMIT_QS, root_tol: float = 1e-12) -> list[LimitRow]:
    """Scaled radii along q -> 1 next to the classical windows and limit radius."""
    cl = classical_limit_bounds(kind, nu)
    target = classical_radius(kind, nu)
    rows = []
    for q in qs:
        params = QDomainParams(nu, q)
        res = smallest_positive_root(kind, params, root_tol)
        s = scaled_radius(kind, params, res.radius)
        dist = max(cl.lower_k1 - s, s - cl.upper_k1, 0.0)
        rows.append(
            LimitRow(
                kind=kind.value, nu=nu, q=q, radius=res.radius, scaled=s,
                window_k1=(cl.lower_k1, cl.upper_k1), window_k2=(cl.lower_k2, cl.upper_k2),
                classical=target, distance_window=dist, distance_classical=abs(s - target),
            )
        )
    return rows


def check_limit_rows(rows: list[LimitRow]) -> list[str]:
    failures = []
    last = rows[-3:]
    for a, b in zip(last, last[1:]):
        if b.distance_classical > a.distance_classical:
            failures.append(f"{a.kind} nu={a.nu}: distance to classical radius grew at q={b.q}")
        if b.distance_window > a.distance_window:
            failures.append(f"{a.kind} nu={a.nu}: distance to classical window grew at q={b.q}")
    final = rows[-1]
    lo, hi = final.window_k1
    if not lo < final.scaled < hi:
        failures.append(f"{final.kind} nu={final.nu}: scaled radius outside window at q={final.q}")
    return failures


def _verify_args(args):
    return verify_point(*args)


def run_verification(
    grid=None,
    tolerances: Tolerances | None = None,
    limit_nus=(0.0, 1.0),
    limit_qs=LIMIT_QS,
    workers: int = 1,
) -> VerificationReport:
    """Run every per-point check over ``grid`` plus the q -> 1 limit study.

    Results are ordered as the grid regardless of ``workers``.
    """
    tol = tolerances or Tolerances()
    grid = default_grid() if grid is None else [(str(k), float(n), float(q)) for k, n, q in grid]
    if not grid:
        raise ValueError("grid must be non-empty")
    jobs = [(k, n, q, tol) for k, n, q in grid]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            points = list(pool.map(_verify_args, jobs))
    else:
        points = [verify_point(*j) for j in jobs]

    rows, failures = [], []
    kinds = sorted({FunctionKind.parse(k) for k, _, _ in grid}, key=lambda k: list(FunctionKind).index(k))
    for kind in kinds:
        for nu in limit_nus:
            r = limit_rows(kind, nu, limit_qs, tol.root)
            rows.extend(r)
            failures.extend(check_limit_rows(r))
    return VerificationReport(grid=grid, points=points, limit_rows=rows, limit_failures=failures)


def errata_report(nu: float = 0.0, q: float = 0.5) -> list[dict]:
    """Where the literal closed forms differ from the Newton sums at (nu, q)."""
    from qradii.eulerray import literal_closed_forms

    params = QDomainParams(nu, q)
    rows = []
    for kind in FunctionKind:
        lit = literal_closed_forms(kind, params)
        ref = newton_sums(kind, params, 3)
        for k in (1, 2, 3):
            rel = abs(lit[k] - ref[k]) / abs(ref[k])
            rows.append(
                {"kind": kind.value, "k": k, "literal": lit[k], "newton": ref[k], "rel_err": rel}
            )
    return rows
