"""
Declarative sweep runner.

A SweepSpec names a kind of check, a grid of n, a rule producing m for each
n, the k values and (for differences) an order r. run_sweep evaluates one
ReportRow per (k, r, n, m) cell, possibly in a thread pool, and returns the
rows sorted so that the CSV written by write_report is byte-identical no
matter how many threads ran.

Spec files are flat text:

    # crank density accuracy along m = n^a
    kind      = crank_accuracy
    n_grid    = 10000, 40000, 100000
    m_rule    = power 0.55 0.6 0.65 0.7
    k_list    = 1
    estimator = dyson_sech
    output    = zn1.csv
"""

import csv
import io
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, IO, List, Optional, Sequence, Tuple, Union

from .asymptotics import (
    B,
    breakdown_limit,
    corollary_error_bound,
    corollary_prediction,
    dprz_lhs,
    dprz_rhs,
    dyson_sech_estimate,
    error_bound_dprz,
    error_bound_main,
    error_bound_zn1,
    hat_p,
    i_k_truncated,
    lemma_constant,
    main_term_exact,
    parry_rhoades_estimate,
    truncation_residual_ratio,
)
from .engine import (
    KRankQuery,
    PartitionTable,
    TableRangeError,
    exact_regime_threshold,
    k_rank_difference,
    n_k_exact,
    n_k_oracle_series,
    p_at,
)
from .logdomain import SignedLogReal, exact_relative_error, relative_error

logger = logging.getLogger("krank.harness")

# Sweep kind -> the claim its rows check
KINDS: Dict[str, str] = {
    "oracle_equivalence": "prop-pro1-vs-eq-fk",
    "crank_accuracy": "theorem-zn1",
    "threshold_breakdown": "theorem-zn1-iff",
    "main_theorem": "theorem-main",
    "finite_difference": "corollary-eqic",
    "lemma1_constant": "lemma-lem1",
    "dprz_ratio": "lemma-dprz",
    "exact_regime": "theorem-main-exact",
    "truncation_residual": "proposition-pro2",
}

# Kinds whose rows pass on exact integer equality
EQUALITY_KINDS = ("oracle_equivalence", "exact_regime")

# Kinds that do not depend on k; their rows carry k = 0
K_FREE_KINDS = ("lemma1_constant", "dprz_ratio")

# (n, m) an estimator is defined at; cells outside are dropped from the sweep
_CELL_DOMAINS: Dict[str, Callable[[int, int], bool]] = {
    "finite_difference": lambda n, m: m < n,
    "truncation_residual": lambda n, m: 3 * m <= n,
}

ESTIMATORS = ("dyson_sech", "dyson_sech_hat", "parry_rhoades")

M_RULE_FORMS = ("power", "list", "all", "geometric", "sqrtlog", "from_threshold")

CSV_HEADER = [
    "kind", "k", "r", "n", "m", "exact", "estimate_log",
    "rel_err", "bound", "ratio", "pass",
]

SPEC_KEYS = (
    "kind", "n_grid", "m_rule", "k_list", "r", "estimator",
    "output", "max_ratio", "ratio_ceiling",
)

# m_rule used when a spec file leaves it out
_DEFAULT_M_RULES = {
    "oracle_equivalence": "all",
    "exact_regime": "from_threshold",
    "lemma1_constant": "list 0",
}

# Relative slack absorbing pow() landing one ulp below an exact integer power
_FLOOR_SLACK = 1e-12


class SpecError(Exception):
    """Raised when a sweep spec is malformed."""

    pass


@dataclass(frozen=True)
class MRule:
    """
    Rule producing the m values of a sweep for a given (k, n).

    Forms:
        power E1 E2 ... [coef=C]   m = floor(C * n^E) for each exponent
        list M1 M2 ...             fixed values
        all                        0..n
        geometric STEPS            ceil(sqrt(n) log n) .. floor(n/5), geometric
        sqrtlog C                  floor(C * sqrt(n) * log n)
        from_threshold             exact_regime_threshold(k, n) .. n
    """

    form: str
    args: Tuple[float, ...] = ()
    coef: float = 1.0

    @classmethod
    def parse(cls, text: str) -> "MRule":
        """
        Parse the text form of a rule.

        Raises:
            SpecError: On an unknown form or bad arguments
        """
        tokens = text.replace(",", " ").split()
        if not tokens:
            raise SpecError("m_rule is empty")
        form, rest = tokens[0], tokens[1:]
        if form not in M_RULE_FORMS:
            raise SpecError(
                f"Unknown m_rule form '{form}'; expected one of: {', '.join(M_RULE_FORMS)}"
            )

        coef = 1.0
        args: List[float] = []
        try:
            for token in rest:
                if token.startswith("coef="):
                    coef = float(token[len("coef="):])
                elif form == "list":
                    args.append(int(token))
                else:
                    args.append(float(token))
        except ValueError:
            raise SpecError(f"Bad number in m_rule '{text}'")

        if form in ("all", "from_threshold") and args:
            raise SpecError(f"m_rule '{form}' takes no arguments")
        if form in ("power", "list") and not args:
            raise SpecError(f"m_rule '{form}' needs at least one value")
        if form in ("geometric", "sqrtlog") and len(args) != 1:
            raise SpecError(f"m_rule '{form}' takes exactly one value")
        if form == "geometric" and (args[0] < 1 or args[0] != int(args[0])):
            raise SpecError("m_rule 'geometric' needs a positive integer step count")
        if coef != 1.0 and form != "power":
            raise SpecError("coef= only applies to m_rule 'power'")
        return cls(form=form, args=tuple(args), coef=coef)

    def values(self, k: int, n: int) -> List[int]:
        """Sorted distinct m values in 0..n produced for (k, n)."""
        if self.form == "power":
            raw = [
                math.floor(self.coef * n**e * (1 + _FLOOR_SLACK)) for e in self.args
            ]
        elif self.form == "list":
            raw = [int(v) for v in self.args]
        elif self.form == "all":
            raw = list(range(n + 1))
        elif self.form == "geometric":
            raw = _geometric_steps(n, int(self.args[0]))
        elif self.form == "sqrtlog":
            raw = (
                [math.floor(self.args[0] * math.sqrt(n) * math.log(n))] if n > 1 else [0]
            )
        else:
            raw = list(range(exact_regime_threshold(k, n), n + 1))
        return sorted({m for m in raw if 0 <= m <= n})

    def __str__(self) -> str:
        parts = [self.form] + [f"{v:g}" for v in self.args]
        if self.coef != 1.0:
            parts.append(f"coef={self.coef:g}")
        return " ".join(parts)


def _geometric_steps(n: int, steps: int) -> List[int]:
    if n < 2:
        return []
    lo = math.ceil(math.sqrt(n) * math.log(n))
    hi = n // 5
    if lo > hi:
        return []
    if steps == 1:
        return [lo]
    growth = hi / lo
    return [
        min(hi, max(lo, round(lo * growth ** (i / (steps - 1)))))
        for i in range(steps)
    ]


@dataclass(frozen=True)
class SweepSpec:
    """One declarative sweep."""

    kind: str
    n_grid: Tuple[int, ...]
    m_rule: MRule
    k_list: Tuple[int, ...] = (1,)
    r: int = 0
    estimator: str = "dyson_sech"
    output: Optional[str] = None
    max_ratio: Optional[float] = None
    ratio_ceiling: Optional[float] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SpecError(
                f"Unknown kind '{self.kind}'; expected one of: {', '.join(KINDS)}"
            )
        if not self.n_grid:
            raise SpecError("n_grid must not be empty")
        if any(n < 1 for n in self.n_grid):
            raise SpecError("n_grid values must be positive")
        if list(self.n_grid) != sorted(self.n_grid):
            raise SpecError("n_grid must be sorted")
        if not self.k_list or any(k < 1 for k in self.k_list):
            raise SpecError("k_list must hold integers >= 1")
        if self.r < 0:
            raise SpecError(f"r must be >= 0, got {self.r}")
        if self.estimator not in ESTIMATORS:
            raise SpecError(
                f"Unknown estimator '{self.estimator}'; expected one of: {', '.join(ESTIMATORS)}"
            )

    @property
    def claim(self) -> str:
        return KINDS[self.kind]

    def grid(self) -> List[Tuple[int, int, int, int]]:
        """Every (k, r, n, m) the m rule produces, in row order."""
        k_values = (0,) if self.kind in K_FREE_KINDS else sorted(set(self.k_list))
        return [
            (k, self.r, n, m)
            for k in k_values
            for n in self.n_grid
            for m in self.m_rule.values(max(k, 1), n)
        ]

    def cells(self) -> List[Tuple[int, int, int, int]]:
        """The grid cells inside the kind's estimator domain."""
        inside = _CELL_DOMAINS.get(self.kind)
        cells = self.grid()
        if inside is None:
            return cells
        return [cell for cell in cells if inside(cell[2], cell[3])]


@dataclass(frozen=True)
class ReportRow:
    """One CSV row; rel_err, bound and ratio are None when exact is zero."""

    kind: str
    claim: str
    k: int
    r: int
    n: int
    m: int
    exact: Union[int, SignedLogReal]
    estimate: SignedLogReal
    rel_err: Optional[float]
    bound: Optional[float]
    ratio: Optional[float]
    passed: bool

    @property
    def sort_key(self) -> Tuple[int, int, int, int]:
        return (self.k, self.r, self.n, self.m)

    def quotient(self) -> Optional[float]:
        """exact / estimate as a float, or None when the estimate is zero."""
        if self.estimate.is_zero:
            return None
        return (_as_log(self.exact) / self.estimate).to_float()


@dataclass(frozen=True)
class BoundFit:
    """Fitted O-constant: the largest ratio and the row it came from."""

    value: float
    row: ReportRow


def _as_log(value: Union[int, SignedLogReal]) -> SignedLogReal:
    if isinstance(value, SignedLogReal):
        return value
    return SignedLogReal.from_int(value)


def _is_zero(value: Union[int, SignedLogReal]) -> bool:
    return value.is_zero if isinstance(value, SignedLogReal) else value == 0


def _finite_or_none(x: Optional[float]) -> Optional[float]:
    if x is None or not math.isfinite(x):
        return None
    return x


# ============================================================================
# Cell evaluators
# ============================================================================

CellResult = Tuple[Union[int, SignedLogReal], SignedLogReal, Optional[float], Optional[float], Optional[float]]


def _relative_error(exact: Union[int, SignedLogReal], estimate: Union[int, SignedLogReal]) -> float:
    # two integers: subtract before taking logs
    if isinstance(exact, int) and isinstance(estimate, int):
        return exact_relative_error(exact, estimate)
    return relative_error(_as_log(exact), _as_log(estimate))


def _bounded(
    exact: Union[int, SignedLogReal], estimate: Union[int, SignedLogReal], bound: float
) -> CellResult:
    """|exact - estimate| / |exact| and its ratio to bound."""
    if _is_zero(exact):
        return exact, _as_log(estimate), None, None, None
    err = _relative_error(exact, estimate)
    return exact, _as_log(estimate), err, bound, err / bound if bound > 0 else None


def _oracle_cell(spec: SweepSpec, table: PartitionTable, k: int, r: int, n: int, m: int):
    series = n_k_oracle_series(k, m, n).coeffs
    prefix = tuple(n_k_exact(table, KRankQuery(k, m, i)).value for i in range(n + 1))
    exact, coeff = prefix[n], series[n]
    err = None if exact == 0 else exact_relative_error(exact, coeff)
    return (exact, SignedLogReal.from_int(coeff), err, None, None), prefix == series


def _estimator_value(spec: SweepSpec, table: PartitionTable, k: int, m: int, n: int) -> SignedLogReal:
    if spec.estimator == "dyson_sech_hat":
        return dyson_sech_estimate(m, n, hat_p(n))
    p_n = SignedLogReal.from_int(p_at(table, n))
    if spec.estimator == "parry_rhoades":
        return parry_rhoades_estimate(k, m, n, p_n)
    return dyson_sech_estimate(m, n, p_n)


def _crank_accuracy_cell(spec, table, k, r, n, m):
    exact = n_k_exact(table, KRankQuery(k, m, n)).value
    return _bounded(exact, _estimator_value(spec, table, k, m, n), error_bound_zn1(m, n)), None


def _threshold_breakdown_cell(spec, table, k, r, n, m):
    exact = n_k_exact(table, KRankQuery(k, m, n)).value
    estimate = _estimator_value(spec, table, k, m, n)
    bound = breakdown_limit(m / n**0.75)
    if exact == 0:
        return (exact, estimate, None, None, None), None
    err = relative_error(SignedLogReal.from_int(exact), estimate)
    quotient = (SignedLogReal.from_int(exact) / estimate).to_float()
    return (exact, estimate, err, bound, quotient), None


def _main_theorem_cell(spec, table, k, r, n, m):
    exact = n_k_exact(table, KRankQuery(k, m, n)).value
    return _bounded(exact, main_term_exact(table, k, m, n), error_bound_main(k, m, n)), None


def _finite_difference_cell(spec, table, k, r, n, m):
    exact = k_rank_difference(table, k, r, m, n)
    estimate = corollary_prediction(r, m, n, SignedLogReal.from_int(p_at(table, n - m)))
    return _bounded(exact, estimate, corollary_error_bound(r, m, n)), None


def _lemma1_cell(spec, table, k, r, n, m):
    exact = p_at(table, n)
    estimate = hat_p(n)
    err = relative_error(SignedLogReal.from_int(exact), estimate)
    # e^{B sqrt(n)/2} / (n p(n)), the scale the constant is measured against
    bound = math.exp(
        B * math.sqrt(n) / 2 - math.log(n) - SignedLogReal.from_int(exact).log_mag
    )
    return (exact, estimate, err, bound, lemma_constant(table, n)), None


def _dprz_cell(spec, table, k, r, n, m):
    exact = dprz_lhs(table, m, n)
    return _bounded(exact, dprz_rhs(m, n), error_bound_dprz(m, n)), None


def _exact_regime_cell(spec, table, k, r, n, m):
    exact = n_k_exact(table, KRankQuery(k, m, n)).value
    main = main_term_exact(table, k, m, n)
    err = None if exact == 0 else exact_relative_error(exact, main)
    return (exact, SignedLogReal.from_int(main), err, None, None), exact == main


def _truncation_residual_cell(spec, table, k, r, n, m):
    exact = n_k_exact(table, KRankQuery(k, m, n)).value
    estimate = i_k_truncated(k, m, n)
    if exact == 0:
        return (exact, estimate, None, None, None), None
    err = relative_error(SignedLogReal.from_int(exact), estimate)
    bound = math.exp(
        B * math.sqrt(3 * n / 5) - SignedLogReal.from_int(abs(exact)).log_mag
    )
    return (exact, estimate, err, bound, truncation_residual_ratio(table, k, m, n)), None


_CELL_EVALUATORS: Dict[str, Callable] = {
    "oracle_equivalence": _oracle_cell,
    "crank_accuracy": _crank_accuracy_cell,
    "threshold_breakdown": _threshold_breakdown_cell,
    "main_theorem": _main_theorem_cell,
    "finite_difference": _finite_difference_cell,
    "lemma1_constant": _lemma1_cell,
    "dprz_ratio": _dprz_cell,
    "exact_regime": _exact_regime_cell,
    "truncation_residual": _truncation_residual_cell,
}


def _evaluate_cell(
    spec: SweepSpec, table: PartitionTable, cell: Tuple[int, int, int, int]
) -> ReportRow:
    k, r, n, m = cell
    (exact, estimate, err, bound, ratio), equal = _CELL_EVALUATORS[spec.kind](
        spec, table, k, r, n, m
    )
    err, bound, ratio = _finite_or_none(err), _finite_or_none(bound), _finite_or_none(ratio)

    if spec.kind in EQUALITY_KINDS:
        passed = equal
    elif spec.kind == "threshold_breakdown" and spec.ratio_ceiling is not None:
        passed = ratio is None or ratio < spec.ratio_ceiling
    elif spec.max_ratio is not None and spec.kind != "threshold_breakdown":
        passed = ratio is None or ratio <= spec.max_ratio
    else:
        passed = True

    return ReportRow(
        kind=spec.kind,
        claim=spec.claim,
        k=k,
        r=r,
        n=n,
        m=m,
        exact=exact,
        estimate=estimate,
        rel_err=err,
        bound=bound,
        ratio=ratio,
        passed=passed,
    )


def required_max_n(spec: SweepSpec) -> int:
    """Largest p-index a sweep reads."""
    top = spec.n_grid[-1]
    # dprz_lhs reads p(n - m + 1), one past n at m = 0
    return top + 1 if spec.kind == "dprz_ratio" else top


def run_sweep(
    spec: SweepSpec, table: PartitionTable, threads: Optional[int] = None
) -> List[ReportRow]:
    """
    Evaluate every cell of spec against table.

    Args:
        spec: The sweep to run
        table: Partition table reaching at least max(spec.n_grid)
        threads: Worker count; None for the executor default, 1 for serial

    Returns:
        One ReportRow per cell, sorted by (k, r, n, m)

    Raises:
        TableRangeError: If the table is too small for the grid
        ValueError: If threads < 1
    """
    if threads is not None and threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    needed = required_max_n(spec)
    if table.max_n < needed:
        raise TableRangeError(
            f"{spec.kind} sweep needs p up to {needed}, table reaches {table.max_n}"
        )

    cells = spec.cells()
    skipped = len(spec.grid()) - len(cells)
    if skipped:
        logger.info(f"{spec.kind} sweep: skipped {skipped} cells outside the estimator domain")
    logger.info(
        f"Running {spec.kind} sweep ({spec.claim}): {len(cells)} cells, m_rule '{spec.m_rule}'"
    )
    if threads == 1 or len(cells) <= 1:
        rows = [_evaluate_cell(spec, table, cell) for cell in cells]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda cell: _evaluate_cell(spec, table, cell), cells))

    rows.sort(key=lambda row: row.sort_key)
    failed = sum(1 for row in rows if not row.passed)
    if failed:
        logger.warning(f"{spec.kind} sweep: {failed} of {len(rows)} rows failed")
    return rows


def fit_bound_constant(rows: Sequence[ReportRow]) -> BoundFit:
    """
    Return the largest finite ratio and the first row attaining it.

    Raises:
        ValueError: If no row has a finite ratio
    """
    candidates = [row for row in rows if row.ratio is not None and math.isfinite(row.ratio)]
    if not candidates:
        raise ValueError("No rows with a finite ratio to fit")
    best = max(candidates, key=lambda row: row.ratio)
    logger.info(
        f"Fitted constant {best.ratio:.17g} at k={best.k} r={best.r} n={best.n} m={best.m}"
    )
    return BoundFit(value=best.ratio, row=best)


# ============================================================================
# CSV output
# ============================================================================


def _format_real(x: Optional[float]) -> str:
    return "" if x is None else format(x, ".17g")


def _format_exact(value: Union[int, SignedLogReal]) -> str:
    return value.format() if isinstance(value, SignedLogReal) else str(value)


def write_report(rows: Sequence[ReportRow], stream: IO[str]) -> None:
    """Write rows as CSV with LF line endings and 17-digit reals."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([
            row.kind,
            row.k,
            row.r,
            row.n,
            row.m,
            _format_exact(row.exact),
            row.estimate.format(),
            _format_real(row.rel_err),
            _format_real(row.bound),
            _format_real(row.ratio),
            "true" if row.passed else "false",
        ])


def format_report(rows: Sequence[ReportRow]) -> str:
    """Return the CSV text write_report would produce."""
    buffer = io.StringIO()
    write_report(rows, buffer)
    return buffer.getvalue()


def save_report(rows: Sequence[ReportRow], path: Union[str, Path]) -> None:
    """Write the CSV report to path, creating parent directories."""
    path = Path(path).expanduser()
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        write_report(rows, f)
    logger.info(f"Wrote {len(rows)} rows to {path}")


# ============================================================================
# Spec files
# ============================================================================


def _parse_int_list(text: str) -> List[int]:
    return [int(token) for token in text.replace(",", " ").split()]


def _parse_n_grid(text: str) -> Tuple[int, ...]:
    """Either an explicit list or 'range START STOP [STEP]', STOP inclusive."""
    tokens = text.replace(",", " ").split()
    if tokens and tokens[0] == "range":
        bounds = [int(t) for t in tokens[1:]]
        if len(bounds) not in (2, 3):
            raise ValueError("range needs START STOP [STEP]")
        step = bounds[2] if len(bounds) == 3 else 1
        if step < 1:
            raise ValueError("range STEP must be >= 1")
        return tuple(range(bounds[0], bounds[1] + 1, step))
    return tuple(int(t) for t in tokens)


def _split_fields(text: str) -> Dict[str, str]:
    fields: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SpecError(f"line {lineno}: expected 'key = value', got '{line}'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in fields:
            raise SpecError(f"line {lineno}: duplicate key '{key}'")
        fields[key] = value
    return fields


def validate_sweep_spec(fields: Dict[str, str]) -> List[str]:
    """
    Validate raw spec file fields.

    Returns:
        List of error messages (empty if valid)
    """
    errors = []

    for key in fields:
        if key not in SPEC_KEYS:
            errors.append(f"Unknown key '{key}'; expected one of: {', '.join(SPEC_KEYS)}")

    kind = fields.get("kind")
    if kind is None:
        errors.append("Missing required key 'kind'")
    elif kind not in KINDS:
        errors.append(f"Unknown kind '{kind}'; expected one of: {', '.join(KINDS)}")

    if "n_grid" not in fields:
        errors.append("Missing required key 'n_grid'")
    else:
        try:
            grid = _parse_n_grid(fields["n_grid"])
            if not grid:
                errors.append("'n_grid' must not be empty")
            elif any(n < 1 for n in grid):
                errors.append("'n_grid' values must be positive")
            elif list(grid) != sorted(grid):
                errors.append("'n_grid' must be sorted")
        except ValueError as e:
            errors.append(f"'n_grid' is invalid: {e}")

    if "m_rule" in fields:
        try:
            MRule.parse(fields["m_rule"])
        except SpecError as e:
            errors.append(str(e))
    elif kind in KINDS and kind not in _DEFAULT_M_RULES:
        errors.append(f"Missing required key 'm_rule' for kind '{kind}'")

    if "k_list" in fields:
        try:
            k_list = _parse_int_list(fields["k_list"])
            if not k_list or any(k < 1 for k in k_list):
                errors.append("'k_list' must hold integers >= 1")
        except ValueError:
            errors.append("'k_list' must hold integers")

    if "r" in fields:
        try:
            if int(fields["r"]) < 0:
                errors.append("'r' must be >= 0")
        except ValueError:
            errors.append("'r' must be an integer")

    if "estimator" in fields and fields["estimator"] not in ESTIMATORS:
        errors.append(
            f"Unknown estimator '{fields['estimator']}'; expected one of: {', '.join(ESTIMATORS)}"
        )

    for key in ("max_ratio", "ratio_ceiling"):
        if key in fields:
            try:
                float(fields[key])
            except ValueError:
                errors.append(f"'{key}' must be a number")

    return errors


def parse_sweep_spec(text: str) -> SweepSpec:
    """
    Parse spec file text into a SweepSpec.

    Raises:
        SpecError: If the text is malformed or fails validation
    """
    fields = _split_fields(text)
    errors = validate_sweep_spec(fields)
    if errors:
        raise SpecError("; ".join(errors))

    kind = fields["kind"]
    return SweepSpec(
        kind=kind,
        n_grid=_parse_n_grid(fields["n_grid"]),
        m_rule=MRule.parse(fields.get("m_rule", _DEFAULT_M_RULES.get(kind, ""))),
        k_list=tuple(_parse_int_list(fields.get("k_list", "1"))),
        r=int(fields.get("r", "0")),
        estimator=fields.get("estimator", "dyson_sech"),
        output=fields.get("output"),
        max_ratio=float(fields["max_ratio"]) if "max_ratio" in fields else None,
        ratio_ceiling=float(fields["ratio_ceiling"]) if "ratio_ceiling" in fields else None,
    )


def load_sweep_spec(path: Union[str, Path]) -> SweepSpec:
    """
    Read and parse a spec file.

    Raises:
        SpecError: If the file cannot be read or is invalid
    """
    path = Path(path).expanduser()
    try:
        text = path.read_text(encoding="utf-8")
    except IOError as e:
        raise SpecError(f"Error reading {path}: {e}")
    try:
        return parse_sweep_spec(text)
    except SpecError as e:
        raise SpecError(f"{path}: {e}")
