"""
Acceptance suite run by `krank verify`.

Each criterion is a function of (plan, table, threads) returning a
CriterionResult. Exact checks have zero tolerance; asymptotic checks fit
the O-constant with fit_bound_constant and compare slices of the n grid
using the tolerances in VerifyPlan.thresholds.
"""

import logging
import math
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .asymptotics import breakdown_limit, shift_error_ratio
from .config import DEFAULT_THRESHOLDS
from .engine import (
    DEFAULT_ENUMERATION_BUDGET,
    KRankQuery,
    PartitionTable,
    enumerate_statistic,
    k_rank_mass,
    n_k_exact,
    p_at,
)
from .harness import (
    MRule,
    ReportRow,
    SweepSpec,
    fit_bound_constant,
    format_report,
    run_sweep,
)
from .table_cache import encode_table, load_table, save_table

logger = logging.getLogger("krank.acceptance")

# Exact checks run on 0 <= n <= EXACT_MAX_N
EXACT_MAX_N = 200

# Enumeration checks run on n <= ENUMERATION_MAX_N
ENUMERATION_MAX_N = 40

# Start of the lower window for the p(n) - p_hat(n) constant
LEMMA_LOWER_START = 100

# Lowest main-term slice; the geometric m range ceil(sqrt(n) log n) .. floor(n/5)
# is empty below about n = 1500
MAIN_MIN_N = 2_000


@dataclass(frozen=True)
class CriterionResult:
    """Outcome of one acceptance criterion."""

    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def verdict_line(self) -> str:
        mark = "✓" if self.passed else "✗"
        return f"{mark} {self.number:>2}. {self.title}: {self.detail} ({self.seconds:.1f}s)"


@dataclass(frozen=True)
class VerifyPlan:
    """Grids and tolerances of one acceptance run."""

    max_n: int
    zn1_grid: Tuple[int, ...]
    breakdown_grid: Tuple[int, ...]
    main_grid: Tuple[int, ...]
    corollary_grid: Tuple[int, ...]
    shift_grid: Tuple[int, ...] = (1_000, 10_000)
    lemma_split: int = 0
    enumeration_budget: int = DEFAULT_ENUMERATION_BUDGET
    thresholds: Dict[str, float] = field(default_factory=lambda: dict(DEFAULT_THRESHOLDS))

    @classmethod
    def for_max_n(
        cls,
        max_n: int,
        thresholds: Optional[Dict[str, float]] = None,
        enumeration_budget: int = DEFAULT_ENUMERATION_BUDGET,
    ) -> "VerifyPlan":
        """Scale every grid to a table of size max_n."""
        if max_n < 1_000:
            raise ValueError(f"verify needs max_n >= 1000, got {max_n}")
        merged = dict(DEFAULT_THRESHOLDS)
        merged.update(thresholds or {})
        spread = (max_n // 10, 2 * max_n // 5, max_n)
        return cls(
            max_n=max_n,
            zn1_grid=spread,
            breakdown_grid=spread,
            main_grid=tuple(sorted({min(max(max_n // 10, MAIN_MIN_N), max_n), max_n})),
            corollary_grid=(max_n // 10, max_n),
            lemma_split=max_n // 2,
            thresholds=merged,
            enumeration_budget=enumeration_budget,
        )

    @classmethod
    def full(
        cls,
        thresholds: Optional[Dict[str, float]] = None,
        max_n: int = 100_000,
        enumeration_budget: int = DEFAULT_ENUMERATION_BUDGET,
    ) -> "VerifyPlan":
        return cls.for_max_n(max_n, thresholds, enumeration_budget)

    @classmethod
    def quick(
        cls,
        thresholds: Optional[Dict[str, float]] = None,
        max_n: int = 10_000,
        enumeration_budget: int = DEFAULT_ENUMERATION_BUDGET,
    ) -> "VerifyPlan":
        return cls.for_max_n(max_n, thresholds, enumeration_budget)


def _slice_fit(rows: Sequence[ReportRow], n: int) -> Optional[float]:
    """Fitted constant of the rows at n, or None when none has a finite ratio."""
    try:
        return fit_bound_constant([row for row in rows if row.n == n]).value
    except ValueError:
        return None


def _empty_slices(first_n: int, first: Optional[float], last_n: int) -> str:
    empty = first_n if first is None else last_n
    return f"no cell with a finite ratio at n={empty}; the grid is too small for this check"


# ============================================================================
# Criteria
# ============================================================================


def check_oracle_equivalence(plan: VerifyPlan, table: PartitionTable, threads: Optional[int]) -> Tuple[bool, str]:
    spec = SweepSpec(
        kind="oracle_equivalence",
        n_grid=(EXACT_MAX_N,),
        m_rule=MRule.parse("all"),
        k_list=(1, 2, 3),
    )
    rows = run_sweep(spec, table, threads)
    failed = [row for row in rows if not row.passed]
    if failed:
        first = failed[0]
        return False, f"{len(failed)} (k, m) prefixes differ, first k={first.k} m={first.m}"
    return True, f"{len(rows)} (k, m) prefixes up to n={EXACT_MAX_N} equal"


def check_enumeration(plan: VerifyPlan, table: PartitionTable, threads: Optional[int]) -> Tuple[bool, str]:
    top = min(ENUMERATION_MAX_N, plan.enumeration_budget)
    mismatches = []
    # Generating-function rank has no q^0 term, so the rank check starts at n = 1
    for statistic, k, start in (("crank", 1, 2), ("rank", 2, 1)):
        for n in range(start, top + 1):
            histogram = enumerate_statistic(n, statistic, budget=plan.enumeration_budget)
            for m in range(-n, n + 1):
                expected = histogram.get(m, 0)
                if n_k_exact(table, KRankQuery(k, m, n)).value != expected:
                    mismatches.append((statistic, m, n))

    anomaly = {m: n_k_exact(table, KRankQuery(1, m, 1)).value for m in (-1, 0, 1)}
    if anomaly != {-1: 1, 0: -1, 1: 1}:
        return False, f"crank at n=1 gives {anomaly}, expected M(0,1)=-1, M(+-1,1)=1"
    if mismatches:
        return False, f"{len(mismatches)} histogram cells differ, first {mismatches[0]}"
    return True, f"rank and crank histograms match up to n={top}; n=1 crank anomaly reproduced"


def check_mass_and_symmetry(plan: VerifyPlan, table: PartitionTable, threads: Optional[int]) -> Tuple[bool, str]:
    for k, start in ((1, 0), (2, 1)):
        for n in range(start, EXACT_MAX_N + 1):
            mass = k_rank_mass(table, k, n)
            if mass != p_at(table, n):
                return False, f"sum_m N_{k}(m, {n}) = {mass} != p({n})"
    for k in (1, 2, 3):
        for n in range(EXACT_MAX_N + 1):
            for m in range(1, n + 1):
                plus = n_k_exact(table, KRankQuery(k, m, n)).value
                minus = n_k_exact(table, KRankQuery(k, -m, n)).value
                if plus != minus:
                    return False, f"N_{k}({m}, {n}) != N_{k}({-m}, {n})"
    return True, f"mass equals p(n) and N_k(m,n) = N_k(-m,n) for n <= {EXACT_MAX_N}"


def check_exact_regime(plan: VerifyPlan, table: PartitionTable, threads: Optional[int]) -> Tuple[bool, str]:
    spec = SweepSpec(
        kind="exact_regime",
        n_grid=tuple(range(1, EXACT_MAX_N + 1)),
        m_rule=MRule.parse("from_threshold"),
        k_list=(1, 2, 3),
    )
    rows = run_sweep(spec, table, threads)
    failed = [row for row in rows if not row.passed]
    if failed:
        first = failed[0]
        return False, f"{len(failed)} cells differ, first k={first.k} n={first.n} m={first.m}"
    return True, f"N_k(m,n) = F_k(1;m,n) on all {len(rows)} cells past the threshold"


def check_lemma_constant(plan: VerifyPlan, table: PartitionTable, threads: Optional[int]) -> Tuple[bool, str]:
    spec = SweepSpec(
        kind="lemma1_constant",
        n_grid=tuple(range(2, plan.max_n + 1)),
        m_rule=MRule.parse("list 0"),
    )
    rows = run_sweep(spec, table, threads)
    overall = fit_bound_constant(rows)
    lower = max(row.ratio for row in rows if LEMMA_LOWER_START <= row.n < plan.lemma_split)
    upper = max(row.ratio for row in rows if row.n >= plan.lemma_split)
    growth = plan.thresholds["lemma_growth"]
    passed = math.isfinite(overall.value) and upper <= lower * (1 + growth)
    return passed, (
        f"max {overall.value:.6g} at n={overall.row.n}; "
        f"[{plan.lemma_split}, {plan.max_n}] max {upper:.6g} vs "
        f"[{LEMMA_LOWER_START}, {plan.lemma_split}] max {lower:.6g} (growth tolerance {growth:g})"
    )


def check_zn1_bound(plan: VerifyPlan, table: PartitionTable, threads: Optional[int]) -> Tuple[bool, str]:
    spec = SweepSpec(
        kind="crank_accuracy",
        n_grid=plan.zn1_grid,
        m_rule=MRule.parse("power 0.55 0.6 0.65 0.7"),
        k_list=(1,),
        estimator="dyson_sech",
    )
    rows = run_sweep(spec, table, threads)
    first, last = _slice_fit(rows, plan.zn1_grid[0]), _slice_fit(rows, plan.zn1_grid[-1])
    if first is None or last is None:
        return False, _empty_slices(plan.zn1_grid[0], first, plan.zn1_grid[-1])
    fit = fit_bound_constant(rows)
    tolerance = plan.thresholds["stability"]
    passed = last <= first * (1 + tolerance)
    return passed, (
        f"C = {fit.value:.6g} at n={fit.row.n} m={fit.row.m}; "
        f"slice n={plan.zn1_grid[0]} {first:.6g} -> n={plan.zn1_grid[-1]} {last:.6g}"
    )


def check_breakdown(plan: VerifyPlan, table: PartitionTable, threads: Optional[int]) -> Tuple[bool, str]:
    ceiling = plan.thresholds["breakdown_ceiling"]
    spec = SweepSpec(
        kind="threshold_breakdown",
        n_grid=plan.breakdown_grid,
        m_rule=MRule.parse("power 0.75"),
        k_list=(1,),
        estimator="dyson_sech",
        ratio_ceiling=ceiling,
    )
    rows = run_sweep(spec, table, threads)
    limit = breakdown_limit(1.0)
    gaps = [abs(row.ratio - limit) for row in rows]
    below = all(row.passed for row in rows)
    shrinking = all(later < earlier for earlier, later in zip(gaps, gaps[1:]))
    ratios = ", ".join(f"{row.ratio:.4f}" for row in rows)
    return below and shrinking, (
        f"exact/estimate = {ratios} (ceiling {ceiling:g}) -> e^(-B/8) = {limit:.4f}"
    )


def check_main_bound(plan: VerifyPlan, table: PartitionTable, threads: Optional[int]) -> Tuple[bool, str]:
    spec = SweepSpec(
        kind="main_theorem",
        n_grid=plan.main_grid,
        m_rule=MRule.parse("geometric 20"),
        k_list=(1, 2, 3),
    )
    rows = run_sweep(spec, table, threads)
    first, last = _slice_fit(rows, plan.main_grid[0]), _slice_fit(rows, plan.main_grid[-1])
    if first is None or last is None:
        return False, _empty_slices(plan.main_grid[0], first, plan.main_grid[-1])
    fit = fit_bound_constant(rows)
    tolerance = plan.thresholds["stability"]
    passed = abs(last / first - 1) <= tolerance
    return passed, (
        f"C = {fit.value:.6g} at k={fit.row.k} n={fit.row.n} m={fit.row.m}; "
        f"slice n={plan.main_grid[0]} {first:.6g} vs n={plan.main_grid[-1]} {last:.6g} "
        f"(tolerance {tolerance:g})"
    )


def check_corollary(plan: VerifyPlan, table: PartitionTable, threads: Optional[int]) -> Tuple[bool, str]:
    low, high = plan.thresholds["corollary_low"], plan.thresholds["corollary_high"]
    first_n, last_n = plan.corollary_grid[0], plan.corollary_grid[-1]
    notes = []
    passed = True
    for r in (1, 2):
        spec = SweepSpec(
            kind="finite_difference",
            n_grid=plan.corollary_grid,
            m_rule=MRule.parse("sqrtlog 3"),
            k_list=(1, 2),
            r=r,
        )
        rows = run_sweep(spec, table, threads)
        for k in (1, 2):
            by_n = {row.n: row.quotient() for row in rows if row.k == k}
            start, end = by_n[first_n], by_n[last_n]
            ok = low <= start <= high and abs(end - 1) < abs(start - 1)
            passed = passed and ok
            notes.append(f"r={r} k={k}: {start:.4f} -> {end:.4f}")
    return passed, "; ".join(notes) + f" (window [{low:g}, {high:g}])"


def check_shift(plan: VerifyPlan, table: PartitionTable, threads: Optional[int]) -> Tuple[bool, str]:
    ratios = []
    for n in plan.shift_grid:
        step = math.isqrt(n)
        for x in (-step, -1, 1, step):
            ratios.append((shift_error_ratio(n, x), n, x))
    value, n, x = max(ratios)
    passed = all(math.isfinite(ratio) for ratio, _, _ in ratios)
    return passed, f"C = {value:.6g} at n={n} x={x} over {len(ratios)} cells"


def check_engineering(plan: VerifyPlan, table: PartitionTable, threads: Optional[int]) -> Tuple[bool, str]:
    sample = PartitionTable(max_n=1_000, values=table.values[:1_001])
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "ptab.bin"
        save_table(sample, path)
        loaded = load_table(path)
        round_trip = loaded == sample and path.read_bytes() == encode_table(loaded)

    spec = SweepSpec(
        kind="main_theorem",
        n_grid=plan.main_grid[:1],
        m_rule=MRule.parse("geometric 20"),
        k_list=(1, 2, 3),
    )
    serial = format_report(run_sweep(spec, table, threads=1))
    parallel = format_report(run_sweep(spec, table, threads=max(2, threads or 4)))
    identical = serial == parallel
    return round_trip and identical, (
        f"cache round trip {'identical' if round_trip else 'differs'}; "
        f"serial and parallel CSV {'identical' if identical else 'differ'}"
    )


CRITERIA: List[Tuple[int, str, Callable]] = [
    (1, "Oracle equivalence", check_oracle_equivalence),
    (2, "Combinatorial equivalence", check_enumeration),
    (3, "Mass and symmetry", check_mass_and_symmetry),
    (4, "Exact regime", check_exact_regime),
    (5, "p(n) - p_hat(n) constant", check_lemma_constant),
    (6, "Crank density bound", check_zn1_bound),
    (7, "Breakdown at m ~ n^(3/4)", check_breakdown),
    (8, "Main term bound", check_main_bound),
    (9, "Finite differences", check_corollary),
    (10, "p_hat shift bound", check_shift),
    (11, "Engineering", check_engineering),
]


def run_acceptance(
    plan: VerifyPlan, table: PartitionTable, threads: Optional[int] = None
) -> List[CriterionResult]:
    """
    Run every criterion in order.

    A criterion that raises is reported as failed with the error as detail.
    """
    if table.max_n < plan.max_n:
        raise ValueError(f"verify needs a table up to {plan.max_n}, got {table.max_n}")

    results = []
    for number, title, check in CRITERIA:
        start = time.perf_counter()
        try:
            passed, detail = check(plan, table, threads)
        except Exception as e:
            logger.error(f"Criterion {number} ({title}) raised: {e}")
            passed, detail = False, f"error: {e}"
        elapsed = time.perf_counter() - start
        result = CriterionResult(number, title, passed, detail, elapsed)
        logger.info(result.verdict_line())
        results.append(result)
    return results
