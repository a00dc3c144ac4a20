"""q-Pochhammer symbols and the normalization constant c_nu(q).

Everything downstream funnels its q-arithmetic through this module, so an
extended-precision backend only has to replace these few functions.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass


class QDomainError(ValueError):
    """Raised when (nu, q) or a product argument is outside the supported domain."""


class PrecisionLossError(ArithmeticError):
    """Raised when binary64 cannot represent a requested quantity."""


@dataclass(frozen=True)
class QDomainParams:
    nu: float
    q: float

    def __post_init__(self):
        if not math.isfinite(self.nu) or self.nu <= -1.0:
            raise QDomainError(f"nu must be > -1 (got {self.nu})")
        check_base(self.q)


@dataclass(frozen=True)
class QPochhammerValue:
    value: float
    n_terms: int | None  # None marks an exact (finite) product
    trunc_error_bound: float


def check_base(q: float) -> None:
    if not (0.0 < q < 1.0):
        raise QDomainError(f"q must lie in (0, 1) (got {q})")


def q_power(q: float, exponent: float) -> float:
    """q**exponent computed as exp(exponent * ln q)."""
    check_base(q)
    value = math.exp(exponent * math.log(q))
    if exponent > 0 and value < sys.float_info.min:
        raise PrecisionLossError(f"q^{exponent} underflows binary64 (q={q})")
    return value


def one_minus_q_power(q: float, exponent: float) -> float:
    """1 - q**exponent without cancellation as q -> 1."""
    check_base(q)
    return -math.expm1(exponent * math.log(q))


def qpoch_finite(a: float, q: float, n: int) -> float:
    """(a; q)_n = prod_{k=1..n} (1 - a q^(k-1))."""
    check_base(q)
    if n < 0:
        raise QDomainError(f"n must be non-negative (got {n})")
    result = 1.0
    factor = a
    for _ in range(n):
        result *= 1.0 - factor
        factor *= q
    return result


def qpoch_infinite(a: float, q: float, tol: float = 1e-17) -> QPochhammerValue:
    """(a; q)_infinity for 0 <= a < 1.

    The product stops at the first factor with a q^(k-1) < tol, plus two guard
    factors. The omitted factors multiply the result by something in
    [exp(-s/(1-s)), 1] where s = sum of the omitted a q^j, so the absolute
    error is at most value * expm1(s / (1 - s)).
    """
    check_base(q)
    if not (0.0 <= a < 1.0):
        raise QDomainError(f"a must lie in [0, 1) (got {a})")
    if tol <= 0:
        raise QDomainError("tol must be positive")
    value = 1.0
    term = a
    n = 0
    guards = 2
    while True:
        value *= 1.0 - term
        n += 1
        done = term < tol
        term *= q
        if done:
            if guards == 0:
                break
            guards -= 1
    if value < sys.float_info.min:
        raise PrecisionLossError(f"({a}; {q})_inf underflows binary64; use log_qpoch_infinite")
    tail = term / (1.0 - q)
    bound = value * math.expm1(tail / (1.0 - tail)) if tail < 1.0 else value
    return QPochhammerValue(value=value, n_terms=n, trunc_error_bound=bound)


def log_qpoch_infinite(a: float, q: float, tol: float = 1e-17) -> float:
    """log (a; q)_inf, usable when the product itself underflows (q near 1)."""
    check_base(q)
    if not (0.0 <= a < 1.0):
        raise QDomainError(f"a must lie in [0, 1) (got {a})")
    terms = []
    term = a
    guards = 2
    while True:
        terms.append(math.log1p(-term))
        done = term < tol
        term *= q
        if done:
            if guards == 0:
                break
            guards -= 1
    return math.fsum(terms)


def c_nu(params: QDomainParams, tol: float = 1e-17) -> float:
    """c_nu(q) = (q; q)_inf / (q^(nu+1); q)_inf."""
    q = params.q
    num = log_qpoch_infinite(q, q, tol)
    den = log_qpoch_infinite(q_power(q, params.nu + 1.0), q, tol)
    return math.exp(num - den)
