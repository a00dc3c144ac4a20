"""Truncated power series for the four normalized q-Bessel forms.

A series is stored as coefficients c_n attached to the exponents
``offset + step * n``; g-forms use (offset, step) = (1, 2), h-forms (1, 1).
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass, replace

from qradii.qseries import (
    QDomainError,
    QDomainParams,
    c_nu,
    one_minus_q_power,
    q_power,
    qpoch_finite,
)

DEFAULT_MAX_TERMS = 512


class TruncationError(RuntimeError):
    """The requested accuracy needs more terms than the hard cap allows."""


class Family(enum.Enum):
    JACKSON = "jackson"
    HAHN_EXTON = "hahn_exton"


class FunctionKind(enum.Enum):
    G2 = "g2"
    H2 = "h2"
    G3 = "g3"
    H3 = "h3"

    @property
    def family(self) -> Family:
        return Family.JACKSON if self in (FunctionKind.G2, FunctionKind.H2) else Family.HAHN_EXTON

    @property
    def odd_type(self) -> bool:
        """g-forms are odd in z (powers z^(2n+1)); h-forms are full (z^(n+1))."""
        return self in (FunctionKind.G2, FunctionKind.G3)

    @classmethod
    def parse(cls, text: str) -> FunctionKind:
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise QDomainError(f"unknown kind {text!r}; expected one of g2, h2, g3, h3") from None


class Parity(enum.Enum):
    ODD = "odd_in_z"
    EVEN = "even_in_z"
    GENERAL = "general"


@dataclass(frozen=True)
class TailBound:
    r_max: float
    bound: float


@dataclass(frozen=True)
class PowerSeries:
    kind: FunctionKind | None
    coeffs: tuple[float, ...]
    offset: int
    step: int
    variable: str  # "z", or "t" for t = z^2
    tail: TailBound
    transform: str = "normalized"  # or "convexity" for (z f')'

    @property
    def parity(self) -> Parity:
        if self.step % 2:
            return Parity.GENERAL
        return Parity.ODD if self.offset % 2 else Parity.EVEN

    def exponent(self, n: int) -> int:
        return self.offset + self.step * n

    def __call__(self, z):
        return evaluate(self, z)


def max_terms() -> int:
    value = os.environ.get("QRADII_MAX_TERMS")
    return int(value) if value else DEFAULT_MAX_TERMS


def coefficient_ratio(kind: FunctionKind, params: QDomainParams, n: int) -> float:
    """b_n / b_(n-1) for n >= 1."""
    q, nu = params.q, params.nu
    den = one_minus_q_power(q, n) * one_minus_q_power(q, n + nu)
    if kind.family is Family.JACKSON:
        return -q_power(q, 2 * n - 1 + nu) / (4.0 * den)
    return -q_power(q, n) / den


def from_coefficients(coeffs, variable: str = "z", r_max: float = math.inf) -> PowerSeries:
    """Plain polynomial sum c_n x^n, mostly for toy inputs."""
    return PowerSeries(
        kind=None,
        coeffs=tuple(float(c) for c in coeffs),
        offset=0,
        step=1,
        variable=variable,
        tail=TailBound(r_max=r_max, bound=0.0),
        transform="polynomial",
    )


def generate_coefficients(kind, params, weight, r_max, tol, min_terms, offset, step):
    """Coefficients b_n * weight(n) until the next term at r_max drops below tol."""
    if r_max <= 0 or tol <= 0:
        raise QDomainError("r_max and tol must be positive")
    cap = max_terms()
    log_r = math.log(r_max)
    coeffs = []
    b = 1.0
    n = 0
    prev_size = math.inf
    while True:
        c = b * weight(n)
        e = offset + step * n
        log_size = math.log(abs(c)) + e * log_r if c else -math.inf
        size = math.exp(log_size) if log_size < 700 else math.inf
        if n >= min_terms and size < tol and size <= prev_size:
            return tuple(coeffs), TailBound(r_max=r_max, bound=2.0 * size)
        coeffs.append(c)
        prev_size = size
        n += 1
        if n > cap:
            raise TruncationError(
                f"{kind.value}: more than {cap} terms needed at nu={params.nu}, q={params.q}, "
                f"r_max={r_max}; q is too close to 1 for binary64"
            )
        try:
            b *= coefficient_ratio(kind, params, n)
        except ArithmeticError:
            b = 0.0  # coefficients have underflowed; the series is exhausted


def normalized_coefficients(
    kind: FunctionKind,
    params: QDomainParams,
    r_max: float,
    tol: float = 1e-18,
    min_terms: int = 1,
) -> PowerSeries:
    """Series of g_nu^(2), h_nu^(2), g_nu^(3) or h_nu^(3), valid for |z| <= r_max."""
    step = 2 if kind.odd_type else 1
    coeffs, tail = generate_coefficients(kind, params, lambda n: 1.0, r_max, tol, min_terms, 1, step)
    return PowerSeries(kind=kind, coeffs=coeffs, offset=1, step=step, variable="z", tail=tail)


def evaluate(series: PowerSeries, z):
    """Sum the series at z (real or complex), in the series' own variable."""
    if abs(z) > series.tail.r_max * (1 + 1e-12):
        raise ValueError(f"|z| = {abs(z)} exceeds r_max = {series.tail.r_max}; tail bound void")
    w = z**series.step
    acc = 0.0
    for c in reversed(series.coeffs):
        acc = acc * w + c
    return acc * z**series.offset if series.offset else acc


def derivative_series(series: PowerSeries, order: int = 1) -> PowerSeries:
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    out = series
    for _ in range(order):
        coeffs = [c * out.exponent(n) for n, c in enumerate(out.coeffs)]
        offset = out.offset - 1
        if out.offset == 0:
            coeffs = coeffs[1:]
            offset = out.step - 1
        r, b = out.tail.r_max, out.tail.bound
        # the bound is 2|c_N| R^e; differentiate the bounding monomial
        e = out.exponent(len(out.coeffs))
        tail = TailBound(r_max=r, bound=b * e / r if b else 0.0)
        out = replace(out, coeffs=tuple(coeffs), offset=offset, tail=tail)
    return out


def direct_qbessel(
    family: Family,
    params: QDomainParams,
    x: float,
    tol: float = 1e-17,
    derivative: int = 0,
) -> float:
    """J_nu^(2)(x; q) or J_nu^(3)(x; q) (or a derivative) for x > 0.

    Summed straight from the defining series with (a; q)_n products, without
    going through the normalized forms.
    """
    if x <= 0:
        raise QDomainError(f"x must be positive (got {x})")
    if derivative not in (0, 1, 2):
        raise ValueError("derivative must be 0, 1 or 2")
    q, nu = params.q, params.nu
    a = q_power(q, nu + 1)
    total = 0.0
    biggest = 0.0
    for n in range(max_terms()):
        p = 2 * n + nu
        if family is Family.JACKSON:
            qfac = math.exp(n * (n + nu) * math.log(q))
        else:
            qfac = math.exp(0.5 * n * (n + 1) * math.log(q))
        falling = 1.0
        for j in range(derivative):
            falling *= p - j
        scale = 0.5**p if family is Family.JACKSON else 1.0
        term = (-1) ** n * falling * scale * x ** (p - derivative) * qfac
        term /= qpoch_finite(q, q, n) * qpoch_finite(a, q, n)
        total += term
        biggest = max(biggest, abs(term))
        if n > 0 and (abs(term) <= tol * biggest or term == 0.0):
            break
    else:
        raise TruncationError("direct q-Bessel series did not converge within the term cap")
    return total / c_nu(params)
