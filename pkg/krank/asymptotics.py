"""
Asymptotic estimators and error bounds for p(n) and N_k(m, n).

Estimators return SignedLogReal so that values of size e^{B sqrt(n)} stay
representable. Checks whose relative size falls below double precision
(the p(n) - p_hat(n) constant, the truncation residual E_k) are evaluated
with mpmath at a precision chosen from n.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Union

import mpmath

from .engine import (
    KRankQuery,
    PartitionTable,
    TableRangeError,
    f_k_term,
    n_k_exact,
    p_at,
    partition_backward_difference,
)
from .logdomain import SignedLogReal, log_sum, relative_error

logger = logging.getLogger("krank.asymptotics")

# Shifts accepted by hat_p_shift are |x| <= DEFAULT_SHIFT_MULTIPLE * sqrt(n)
DEFAULT_SHIFT_MULTIPLE = 10.0

# Guard digits added on top of the cancellation depth in mpmath evaluations
_GUARD_DIGITS = 20


@dataclass(frozen=True)
class AsymptoticConstants:
    """Hardy-Ramanujan growth constant B = 2*pi/sqrt(6)."""

    B: float = 2 * math.pi / math.sqrt(6)
    pi: float = math.pi


CONSTANTS = AsymptoticConstants()
B = CONSTANTS.B


@dataclass(frozen=True)
class EstimateReport:
    """One exact-versus-estimate comparison with its error bound."""

    query: Union[KRankQuery, tuple]
    exact: SignedLogReal
    estimate: SignedLogReal
    rel_err: Optional[float]
    bound: float
    ratio: Optional[float]


def estimate_report(
    query: Union[KRankQuery, tuple],
    exact: SignedLogReal,
    estimate: SignedLogReal,
    bound: float,
) -> EstimateReport:
    """Build an EstimateReport; rel_err and ratio are None when exact is zero."""
    if bound <= 0:
        raise ValueError(f"bound must be positive, got {bound}")
    if exact.is_zero:
        return EstimateReport(query, exact, estimate, None, bound, None)
    err = relative_error(exact, estimate)
    return EstimateReport(query, exact, estimate, err, bound, err / bound)


def _log_hat_p(x: float) -> float:
    shifted = x - 1.0 / 24.0
    root = math.sqrt(shifted)
    return (
        B * root
        - math.log(4 * math.sqrt(3) * shifted)
        + math.log1p(-1.0 / (B * root))
    )


def hat_p(n: int) -> SignedLogReal:
    """
    Two-factor Hardy-Ramanujan approximation

        p_hat(n) = e^{B sqrt(n - 1/24)} / (4 sqrt(3) (n - 1/24))
                   * (1 - 1 / (B sqrt(n - 1/24)))

    Raises:
        ValueError: If n < 1
    """
    if n < 1:
        raise ValueError(f"p_hat(n) needs n >= 1, got {n}")
    return SignedLogReal(1, _log_hat_p(n))


def hat_p_mp(n: int, dps: int) -> mpmath.mpf:
    """p_hat(n) as an mpmath number with dps decimal digits."""
    if n < 1:
        raise ValueError(f"p_hat(n) needs n >= 1, got {n}")
    with mpmath.workdps(dps):
        shifted = mpmath.mpf(n) - mpmath.mpf(1) / 24
        root = mpmath.sqrt(shifted)
        bm = 2 * mpmath.pi / mpmath.sqrt(6)
        return (
            mpmath.exp(bm * root)
            / (4 * mpmath.sqrt(3) * shifted)
            * (1 - 1 / (bm * root))
        )


def _cancellation_dps(n: int) -> int:
    """Digits needed to resolve a relative difference of e^{-B sqrt(n)}."""
    return int(B * math.sqrt(max(n, 1)) / math.log(10)) + _GUARD_DIGITS


def lemma_constant(table: PartitionTable, n: int) -> float:
    """Return |p(n) - p_hat(n)| * n * e^{-B sqrt(n) / 2}."""
    if n < 1:
        raise ValueError(f"lemma constant needs n >= 1, got {n}")
    exact = p_at(table, n)
    dps = _cancellation_dps(n) // 2 + _GUARD_DIGITS
    with mpmath.workdps(dps):
        gap = abs(mpmath.mpf(exact) - hat_p_mp(n, dps))
        bm = 2 * mpmath.pi / mpmath.sqrt(6)
        return float(gap * n * mpmath.exp(-bm * mpmath.sqrt(n) / 2))


def lemma_constant_limit() -> float:
    """B / (8 pi): the value lemma_constant approaches from below."""
    return B / (8 * math.pi)


def hat_p_shift(
    n: int, x: int, max_multiple: float = DEFAULT_SHIFT_MULTIPLE
) -> SignedLogReal:
    """
    First-order shift (1 + B x / (2 sqrt(n))) * p_hat(n), approximating p_hat(n + x).

    Raises:
        ValueError: If |x| > max_multiple * sqrt(n) or n + x < 1
    """
    if n < 1:
        raise ValueError(f"p_hat shift needs n >= 1, got {n}")
    if abs(x) > max_multiple * math.sqrt(n):
        raise ValueError(
            f"shift |x|={abs(x)} exceeds {max_multiple} * sqrt({n})"
        )
    if n + x < 1:
        raise ValueError(f"shifted argument n + x = {n + x} must be >= 1")
    factor = 1 + B * x / (2 * math.sqrt(n))
    return SignedLogReal.from_float(factor) * hat_p(n)


def shift_error_ratio(n: int, x: int) -> float:
    """|p_hat(n+x) - shift(n, x)| / (((1 + |x| + x^2) / n) p_hat(n))."""
    approx = hat_p_shift(n, x)
    base = hat_p(n)
    exact_ratio = math.exp(_log_hat_p(n + x) - base.log_mag)
    approx_ratio = (approx / base).to_float()
    return abs(exact_ratio - approx_ratio) / ((1 + abs(x) + x * x) / n)


def _in_truncation_range(k: int, ell: int, m: int, n: int) -> bool:
    # m*l + (k - 1/2) l^2 <= n/2, doubled to stay in integers
    return 2 * m * ell + (2 * k - 1) * ell * ell <= n


def _hat_p_or_zero(r: int) -> SignedLogReal:
    return hat_p(r) if r >= 1 else SignedLogReal.zero()


def hat_f_k(k: int, ell: int, m: int, n: int) -> SignedLogReal:
    """
    p_hat analogue of F_k(ell; m, n).

    p_hat arguments below 1 contribute zero.

    Raises:
        ValueError: Outside m*ell + (k - 1/2) ell^2 <= n/2
    """
    if k < 1 or ell < 1 or m < 0:
        raise ValueError(f"Invalid arguments k={k}, ell={ell}, m={m}")
    if not _in_truncation_range(k, ell, m, n):
        raise ValueError(
            f"m*ell + (k - 1/2)*ell^2 <= n/2 fails for k={k}, ell={ell}, m={m}, n={n}"
        )
    quad = (2 * k - 1) * ell * ell
    upper = n - m * ell - (quad - ell) // 2
    return _hat_p_or_zero(upper) - _hat_p_or_zero(upper - ell)


def i_k_truncated(k: int, m: int, n: int) -> SignedLogReal:
    """
    Truncated alternating sum I_k(m, n) of hat_f_k over
    m*ell + (k - 1/2) ell^2 <= n/2.

    Raises:
        ValueError: If m > n/3
    """
    if m < 0 or 3 * m > n:
        raise ValueError(f"I_k(m, n) needs 0 <= m <= n/3, got m={m}, n={n}")
    terms = []
    ell = 1
    while _in_truncation_range(k, ell, m, n):
        term = hat_f_k(k, ell, m, n)
        terms.append(term if ell % 2 == 1 else -term)
        ell += 1
    return log_sum(terms)


def truncation_residual_ratio(table: PartitionTable, k: int, m: int, n: int) -> float:
    """
    Return |N_k(m, n) - I_k(m, n)| / e^{B sqrt(3n/5)}.

    I_k is summed in mpmath: the residual sits about B sqrt(n)/4.4 nats
    below N_k, out of reach of double-precision logs.
    """
    if m < 0 or 3 * m > n:
        raise ValueError(f"I_k(m, n) needs 0 <= m <= n/3, got m={m}, n={n}")
    exact = n_k_exact(table, KRankQuery(k, m, n)).value
    dps = _cancellation_dps(n)
    with mpmath.workdps(dps):
        total = mpmath.mpf(0)
        ell = 1
        while _in_truncation_range(k, ell, m, n):
            quad = (2 * k - 1) * ell * ell
            upper = n - m * ell - (quad - ell) // 2
            lower = upper - ell
            term = hat_p_mp(upper, dps) if upper >= 1 else mpmath.mpf(0)
            if lower >= 1:
                term -= hat_p_mp(lower, dps)
            total += term if ell % 2 == 1 else -term
            ell += 1
        bm = 2 * mpmath.pi / mpmath.sqrt(6)
        scale = mpmath.exp(bm * mpmath.sqrt(mpmath.mpf(3) * n / 5))
        return float(abs(mpmath.mpf(exact) - total) / scale)


def _log_sech_squared(u: float) -> float:
    """log sech^2(u) = log 4 - 2|u| - 2 log(1 + e^{-2|u|})."""
    u = abs(u)
    return math.log(4) - 2 * u - 2 * math.log1p(math.exp(-2 * u))


def dyson_sech_estimate(m: int, n: int, p_n: SignedLogReal) -> SignedLogReal:
    """
    Crank density estimate (pi / (4 sqrt(6n))) sech^2(pi m / (2 sqrt(6n))) p(n).

    Raises:
        ValueError: If n < 1 or p_n is not positive
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if p_n.sign <= 0:
        raise ValueError("p_n must be positive")
    scale = math.sqrt(6 * n)
    log_value = (
        math.log(math.pi / (4 * scale))
        + _log_sech_squared(math.pi * m / (2 * scale))
        + p_n.log_mag
    )
    return SignedLogReal(1, log_value)


def parry_rhoades_estimate(
    k: int, m: int, n: int, p_n: SignedLogReal
) -> SignedLogReal:
    """
    (pi / sqrt(6n)) (e^{v} + e^{-v})^{-2} p(n) with v = pi (m + k) / (2 sqrt(6n)).

    Kept to show the formula failing along m ~ n^{3/4}.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if p_n.sign <= 0:
        raise ValueError("p_n must be positive")
    scale = math.sqrt(6 * n)
    v = abs(math.pi * (m + k) / (2 * scale))
    log_value = (
        math.log(math.pi / scale)
        - 2 * v
        - 2 * math.log1p(math.exp(-2 * v))
        + p_n.log_mag
    )
    return SignedLogReal(1, log_value)


def main_term_exact(table: PartitionTable, k: int, m: int, n: int) -> int:
    """F_k(1; |m|, n) = p(n - (|m| + k) + 1) - p(n - (|m| + k))."""
    return f_k_term(table, k, 1, abs(m), n)


def main_term_asymptotic(k: int, m: int, n: int) -> SignedLogReal:
    """
    Leading term B/(8 sqrt(3)) e^{B sqrt(n-m)} / (n-m)^{3/2} of F_k(1; m, n).

    Relative error is O_k(1/sqrt(n - m)).
    """
    gap = n - abs(m)
    if gap < 1:
        raise ValueError(f"n - |m| must be >= 1, got {gap}")
    log_value = (
        math.log(B / (8 * math.sqrt(3))) + B * math.sqrt(gap) - 1.5 * math.log(gap)
    )
    return SignedLogReal(1, log_value)


def error_bound_zn1(m: int, n: int) -> float:
    """e^{-pi |m| / (2 sqrt(6n))} + m^2 / n^{3/2}."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return math.exp(-math.pi * abs(m) / (2 * math.sqrt(6 * n))) + m * m / n**1.5


def error_bound_main(k: int, m: int, n: int) -> float:
    """e^{-pi |m| / sqrt(6n)} + e^{-pi sqrt(n/6) / 5}."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return math.exp(-math.pi * abs(m) / math.sqrt(6 * n)) + math.exp(
        -math.pi * math.sqrt(n / 6) / 5
    )


def error_bound_dprz(m: int, n: int) -> float:
    """e^{-B m / (4 sqrt(n))} + m^2 / n^{3/2}."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return math.exp(-B * abs(m) / (4 * math.sqrt(n))) + m * m / n**1.5


def dprz_lhs(table: PartitionTable, m: int, n: int) -> SignedLogReal:
    """
    (p(n - m + 1) - p(n - m)) / p(n).

    Reads p one index past n - m, so m = 0 needs table.max_n >= n + 1.

    Raises:
        ValueError: If m is outside 0..n
        TableRangeError: If n - m + 1 > table.max_n
    """
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n, got m={m}, n={n}")
    if n - m + 1 > table.max_n:
        raise TableRangeError(
            f"p({n - m + 1}) requested but table only reaches {table.max_n}"
        )
    numerator = p_at(table, n - m + 1) - p_at(table, n - m)
    return SignedLogReal.from_int(numerator) / SignedLogReal.from_int(p_at(table, n))


def dprz_rhs(m: int, n: int) -> SignedLogReal:
    """(B / (8 sqrt(n))) sech^2(B m / (4 sqrt(n)))."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    root = math.sqrt(n)
    return SignedLogReal(
        1, math.log(B / (8 * root)) + _log_sech_squared(B * m / (4 * root))
    )


def breakdown_limit(c: float = 1.0) -> float:
    """
    Limit of dprz_lhs / dprz_rhs along m = c n^{3/4}.

    sqrt(n - m) + sqrt(n) = 2 sqrt(n) (1 - m/(4n) + O(m^2/n^2)) turns the
    exponent B m / (sqrt(n - m) + sqrt(n)) into B m/(2 sqrt(n)) + B m^2/(8 n^{3/2}),
    so the ratio tends to e^{-B c^2 / 8}.
    """
    return math.exp(-B * c * c / 8)


def corollary_prediction(r: int, m: int, n: int, p_nm: SignedLogReal) -> SignedLogReal:
    """(pi / sqrt(6 (n - m)))^{r + 1} p(n - m)."""
    gap = n - m
    if gap < 1:
        raise ValueError(f"n - m must be >= 1, got {gap}")
    if r < 0:
        raise ValueError(f"r must be >= 0, got {r}")
    return SignedLogReal(
        p_nm.sign, (r + 1) * math.log(math.pi / math.sqrt(6 * gap)) + p_nm.log_mag
    )


def corollary_error_bound(r: int, m: int, n: int) -> float:
    """1 / sqrt(n - m) + n^{(r + 1)/2} e^{-pi m / sqrt(6n)}."""
    gap = n - m
    if gap < 1:
        raise ValueError(f"n - m must be >= 1, got {gap}")
    return 1 / math.sqrt(gap) + math.exp(
        (r + 1) / 2 * math.log(n) - math.pi * m / math.sqrt(6 * n)
    )


def partition_difference_ratio(table: PartitionTable, r: int, big_n: int) -> float:
    """Delta^r p(N) (sqrt(6N)/pi)^r / p(N); tends to 1 as N grows."""
    if big_n < 1:
        raise ValueError(f"N must be >= 1, got {big_n}")
    diff = SignedLogReal.from_int(partition_backward_difference(table, r, big_n))
    scale = SignedLogReal(1, r * math.log(math.sqrt(6 * big_n) / math.pi))
    return (diff * scale / SignedLogReal.from_int(p_at(table, big_n))).to_float()
