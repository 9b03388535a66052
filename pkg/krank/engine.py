"""
Exact engine for partition numbers and Garvan k-rank counts.

Everything here is exact integer arithmetic:

  - p(n) for 0 <= n <= max_n via Euler's pentagonal recurrence
  - F_k(l; m, n) and N_k(m, n) as the finite alternating sum of p-differences
  - an independent q-series oracle for N_k(m, n) by direct convolution
  - brute-force rank/crank histograms for small n
  - backward finite differences

A PartitionTable is immutable once built, so every function taking one is a
pure function of its arguments and may be called from several threads.
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Sequence, Tuple

logger = logging.getLogger("krank.engine")

# Largest table build_partition_table accepts unless told otherwise
DEFAULT_TABLE_BUDGET = 2_000_000

# Largest n enumerate_statistic accepts (p(45) = 89134 partitions)
DEFAULT_ENUMERATION_BUDGET = 45

STATISTICS = ("rank", "crank")


class EngineError(Exception):
    """Base class for exact engine failures."""

    pass


class TableRangeError(EngineError, IndexError):
    """Raised when a partition table is too small for the requested value."""

    pass


class BudgetError(EngineError):
    """Raised when a computation exceeds its configured size budget."""

    pass


@dataclass(frozen=True)
class PartitionTable:
    """Exact values p(0), ..., p(max_n)."""

    max_n: int
    values: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class KRankQuery:
    """One N_k(m, n) evaluation."""

    k: int
    m: int
    n: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.n < 0:
            raise ValueError(f"n must be >= 0, got {self.n}")


@dataclass(frozen=True)
class KRankValue:
    """Exact N_k(m, n); negative only in the crank's n = 1 case."""

    value: int


@dataclass(frozen=True)
class CoefficientSeries:
    """Coefficients [q^0 .. q^max_n] of the k-rank generating function."""

    k: int
    m: int
    coeffs: Tuple[int, ...]


def _generalized_pentagonals(limit: int) -> List[Tuple[int, int]]:
    """Return (offset, sign) pairs j(3j-1)/2, j(3j+1)/2 up to limit, ascending."""
    pairs = []
    j = 1
    while True:
        sign = 1 if j % 2 == 1 else -1
        first = j * (3 * j - 1) // 2
        if first > limit:
            break
        pairs.append((first, sign))
        second = j * (3 * j + 1) // 2
        if second <= limit:
            pairs.append((second, sign))
        j += 1
    return pairs


def build_partition_table(
    max_n: int, budget: int = DEFAULT_TABLE_BUDGET
) -> PartitionTable:
    """
    Build p(0..max_n) with Euler's pentagonal recurrence.

    Args:
        max_n: Largest index to compute
        budget: Largest max_n accepted

    Returns:
        PartitionTable with values[i] = p(i)

    Raises:
        ValueError: If max_n is negative
        BudgetError: If max_n exceeds budget
    """
    if max_n < 0:
        raise ValueError(f"max_n must be >= 0, got {max_n}")
    if max_n > budget:
        raise BudgetError(
            f"Table size {max_n} exceeds budget {budget}; lower max_n or raise table.maxN"
        )

    pentagonals = _generalized_pentagonals(max_n)
    values = [0] * (max_n + 1)
    values[0] = 1
    for i in range(1, max_n + 1):
        total = 0
        for offset, sign in pentagonals:
            if offset > i:
                break
            if sign > 0:
                total += values[i - offset]
            else:
                total -= values[i - offset]
        values[i] = total
        if i % 10000 == 0:
            logger.debug(f"Partition table at {i}/{max_n}")

    logger.info(f"Built partition table up to {max_n}")
    return PartitionTable(max_n=max_n, values=tuple(values))


def pentagonal_recurrence_holds(values: Sequence[int], i: int) -> bool:
    """Check Euler's recurrence for values[i] against the earlier values."""
    if i == 0:
        return values[0] == 1
    total = 0
    for offset, sign in _generalized_pentagonals(i):
        total += sign * values[i - offset]
    return values[i] == total


def p_at(table: PartitionTable, r: int) -> int:
    """
    Return p(r), with p(r) = 0 for r < 0.

    Raises:
        TableRangeError: If r > table.max_n
    """
    if r < 0:
        return 0
    if r > table.max_n:
        raise TableRangeError(
            f"p({r}) requested but table only reaches {table.max_n}"
        )
    return table.values[r]


def _f_k_arguments(k: int, ell: int, m: int, n: int) -> Tuple[int, int]:
    """Return the two p-arguments of F_k(ell; m, n)."""
    quad = (2 * k - 1) * ell * ell
    # ell^2 and ell share parity, so both halves are integral
    assert (quad - ell) % 2 == 0 and (quad + ell) % 2 == 0
    return n - m * ell - (quad - ell) // 2, n - m * ell - (quad + ell) // 2


def f_k_term(table: PartitionTable, k: int, ell: int, m: int, n: int) -> int:
    """
    Return F_k(ell; m, n) = p(n - m*ell - ((2k-1)ell^2 - ell)/2)
                          - p(n - m*ell - ((2k-1)ell^2 + ell)/2).

    Raises:
        ValueError: If k < 1, ell < 1 or m < 0
        TableRangeError: If an argument exceeds table.max_n
    """
    if k < 1 or ell < 1:
        raise ValueError(f"k and ell must be >= 1, got k={k}, ell={ell}")
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    upper, lower = _f_k_arguments(k, ell, m, n)
    return p_at(table, upper) - p_at(table, lower)


def n_k_exact(table: PartitionTable, query: KRankQuery) -> KRankValue:
    """
    Return N_k(m, n) as the alternating sum of F_k(ell; |m|, n).

    The sum stops at the first ell whose larger p-argument is negative;
    every later term is p(<0) - p(<0) = 0.

    Raises:
        TableRangeError: If query.n > table.max_n
    """
    if query.n > table.max_n:
        raise TableRangeError(
            f"N_{query.k}(m, {query.n}) requested but table only reaches {table.max_n}"
        )
    m = abs(query.m)
    total = 0
    ell = 1
    while True:
        upper, _ = _f_k_arguments(query.k, ell, m, query.n)
        if upper < 0:
            break
        term = f_k_term(table, query.k, ell, m, query.n)
        total += term if ell % 2 == 1 else -term
        ell += 1
    return KRankValue(total)


@lru_cache(maxsize=8)
def partition_series(max_n: int) -> Tuple[int, ...]:
    """Coefficients of prod_{r>=1} (1 - q^r)^-1 by the coin-change recurrence."""
    coeffs = [0] * (max_n + 1)
    coeffs[0] = 1
    for part in range(1, max_n + 1):
        for i in range(part, max_n + 1):
            coeffs[i] += coeffs[i - part]
    return tuple(coeffs)


def theta_series(k: int, m: int, max_n: int) -> Tuple[int, ...]:
    """Coefficients of sum_{l>=1} (-1)^(l-1) q^(l((2k-1)l-1)/2 + m*l) (1 - q^l)."""
    coeffs = [0] * (max_n + 1)
    ell = 1
    while True:
        exponent = ell * ((2 * k - 1) * ell - 1) // 2 + m * ell
        if exponent > max_n:
            break
        sign = 1 if ell % 2 == 1 else -1
        coeffs[exponent] += sign
        if exponent + ell <= max_n:
            coeffs[exponent + ell] -= sign
        ell += 1
    return tuple(coeffs)


def n_k_oracle_series(k: int, m: int, max_n: int) -> CoefficientSeries:
    """
    Expand the k-rank generating function to q^max_n by direct convolution.

    Shares no code with n_k_exact: p-coefficients come from partition_series,
    not from a PartitionTable.

    Raises:
        ValueError: If k < 1, m < 0 or max_n < 0
    """
    if k < 1 or m < 0 or max_n < 0:
        raise ValueError(f"Invalid oracle arguments k={k}, m={m}, max_n={max_n}")
    p_coeffs = partition_series(max_n)
    theta = theta_series(k, m, max_n)
    coeffs = [0] * (max_n + 1)
    for j, t in enumerate(theta):
        if t == 0:
            continue
        for i in range(j, max_n + 1):
            coeffs[i] += t * p_coeffs[i - j]
    return CoefficientSeries(k=k, m=m, coeffs=tuple(coeffs))


def _partitions(n: int) -> Iterator[List[int]]:
    """Yield every partition of n as an ascending list of parts."""
    if n == 0:
        yield []
        return
    parts = [0] * (n + 1)
    k = 1
    y = n - 1
    while k != 0:
        x = parts[k - 1] + 1
        k -= 1
        while 2 * x <= y:
            parts[k] = x
            y -= x
            k += 1
        last = k + 1
        while x <= y:
            parts[k] = x
            parts[last] = y
            yield parts[: k + 2]
            x += 1
            y -= 1
        parts[k] = x + y
        y = x + y - 1
        yield parts[: k + 1]


def _rank(parts: List[int]) -> int:
    if not parts:
        return 0
    return parts[-1] - len(parts)


def _crank(parts: List[int]) -> int:
    ones = parts.count(1)
    if ones == 0:
        return parts[-1] if parts else 0
    return sum(1 for part in parts if part > ones) - ones


def enumerate_statistic(
    n: int, statistic: str, budget: int = DEFAULT_ENUMERATION_BUDGET
) -> Dict[int, int]:
    """
    Histogram of rank or crank over all partitions of n, by brute force.

    Args:
        n: Partition size
        statistic: "rank" or "crank"
        budget: Largest n accepted

    Returns:
        Mapping statistic value -> number of partitions

    Raises:
        ValueError: If n < 0 or statistic is unknown
        BudgetError: If n exceeds budget
    """
    if statistic not in STATISTICS:
        raise ValueError(
            f"statistic must be one of: {', '.join(STATISTICS)}, got {statistic!r}"
        )
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n > budget:
        raise BudgetError(f"Enumeration of n={n} exceeds budget {budget}")

    measure = _rank if statistic == "rank" else _crank
    return dict(Counter(measure(parts) for parts in _partitions(n)))


def backward_difference(r: int, values: Sequence[int]) -> List[int]:
    """
    Apply sum_{j=0}^{r} (-1)^j C(r, j) values[i + j] at every valid offset i.

    This is (-1)^r times the r-fold backward difference read at i + r.

    Raises:
        ValueError: If r < 0 or values has fewer than r + 1 entries
    """
    if r < 0:
        raise ValueError(f"r must be >= 0, got {r}")
    if len(values) < r + 1:
        raise ValueError(
            f"Need at least {r + 1} values for a difference of order {r}, got {len(values)}"
        )
    weights = [(-1) ** j * math.comb(r, j) for j in range(r + 1)]
    return [
        sum(w * values[i + j] for j, w in enumerate(weights))
        for i in range(len(values) - r)
    ]


def exact_regime_threshold(k: int, n: int) -> int:
    """
    Least m >= 0 from which N_k(m, n) = F_k(1; m, n) holds for every larger m.

    The l = 2 term vanishes exactly when 2m > n + 3 - 4k, so the threshold is
    the least integer strictly above (n + 3)/2 - 2k, clamped at 0.
    """
    return max(0, (n + 3 - 4 * k) // 2 + 1)


def k_rank_difference(table: PartitionTable, k: int, r: int, m: int, n: int) -> int:
    """Return sum_{j=0}^{r} (-1)^j C(r, j) N_k(m + j, n)."""
    column = [n_k_exact(table, KRankQuery(k, m + j, n)).value for j in range(r + 1)]
    return backward_difference(r, column)[0]


def partition_backward_difference(table: PartitionTable, r: int, big_n: int) -> int:
    """Return the r-fold backward difference of p at big_n."""
    column = [p_at(table, big_n - r + i) for i in range(r + 1)]
    # Reversed weights turn the forward-indexed sum into Delta^r p(big_n)
    return backward_difference(r, column[::-1])[0]


def k_rank_mass(table: PartitionTable, k: int, n: int) -> int:
    """Return the sum of N_k(m, n) over all integers m."""
    total = n_k_exact(table, KRankQuery(k, 0, n)).value
    for m in range(1, n + 1):
        total += 2 * n_k_exact(table, KRankQuery(k, m, n)).value
    return total
