"""Evaluation harness: per-case metrics, corpus loading, threshold sweep.

Runtime covers only the diff computation, never file loading. Each algorithm
is timed as the median of three runs when the first run is fast, one run
otherwise, and a budget overrun records the -1.0 sentinel instead.
"""

from __future__ import annotations

import csv
import json
import logging
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping, Sequence

from .baselines import DEFAULT_KEYWORDS, bigram_diff, diff_output_lines, keyword_search
from .editscript import added_count, build_script, cidiff_script, lcs_diff, script_size
from .lcs import DiffTimeout, lcs_lines
from .logmodel import Log, load_log
from .matching import additional_seeds, extend_seeds, initial_seeds, remove_overlaps
from .similarity import SimilarityParams
from .synthetic import MutationRates, RegressionCase, generate_synthetic_case

logger = logging.getLogger(__name__)

TIMEOUT_SENTINEL = -1.0
DEFAULT_TIMEOUT_S = 600.0
SINGLE_RUN_THRESHOLD_S = 60.0

CSV_HEADER = [
    "case_id",
    "algorithm",
    "script_size",
    "added_count",
    "runtime_ms",
    "timed_out",
    "p_size",
    "p_added",
    "precision",
    "recall",
]


@dataclass(frozen=True)
class AlgorithmOutput:
    """What one algorithm produced on one case."""

    flagged: frozenset[int]
    script_size: int | None = None
    added_count: int | None = None


DiffAlgorithm = Callable[[Log, Log, SimilarityParams, float | None], AlgorithmOutput]


def _run_cidiff(passing, failing, params, deadline) -> AlgorithmOutput:
    script = cidiff_script(passing, failing, params, deadline)
    return AlgorithmOutput(
        flagged=diff_output_lines(script).mod_indices,
        script_size=script_size(script),
        added_count=added_count(script),
    )


def _run_lcs(passing, failing, params, deadline) -> AlgorithmOutput:
    script = lcs_diff(passing, failing, params, deadline)
    return AlgorithmOutput(
        flagged=diff_output_lines(script).mod_indices,
        script_size=script_size(script),
        added_count=added_count(script),
    )


def _run_keyword(passing, failing, params, deadline) -> AlgorithmOutput:
    del passing, params, deadline
    flags = keyword_search(failing, DEFAULT_KEYWORDS)
    return AlgorithmOutput(flagged=flags.mod_indices)


def _run_bigram(passing, failing, params, deadline) -> AlgorithmOutput:
    del params, deadline
    flags = bigram_diff(passing, failing)
    return AlgorithmOutput(flagged=flags.mod_indices)


DEFAULT_ALGORITHMS: Mapping[str, DiffAlgorithm] = {
    "cidiff": _run_cidiff,
    "lcs": _run_lcs,
    "keyword": _run_keyword,
    "bigram": _run_bigram,
}


def percentage_difference(m_cidiff: float, m_lcs: float) -> float:
    """100 * (m_cidiff - m_lcs) / (m_lcs + 1); the +1 guards division by zero."""
    return 100.0 * (m_cidiff - m_lcs) / (m_lcs + 1.0)


def precision_recall(output: set[int] | frozenset[int], annotated: set[int]) -> tuple[float, float | None]:
    """Precision of the flagged lines against the annotation, and recall.

    An empty output has no false positives, so precision is reported as 1.0.
    Recall is undefined for an empty annotation set and reported as None.
    """
    hits = len(set(output) & set(annotated))
    precision = 1.0 if not output else hits / len(output)
    recall = None if not annotated else hits / len(annotated)
    return precision, recall


@dataclass
class AlgorithmMetrics:
    script_size: int | None = None
    added_count: int | None = None
    runtime_s: float = TIMEOUT_SENTINEL
    timed_out: bool = False
    flagged: frozenset[int] = frozenset()
    precision: float | None = None
    recall: float | None = None


@dataclass
class CaseMetrics:
    case_id: str
    algorithms: dict[str, AlgorithmMetrics] = field(default_factory=dict)
    p_size: float | None = None
    p_added: float | None = None


def _timed_run(
    algo: DiffAlgorithm,
    case: RegressionCase,
    params: SimilarityParams,
    timeout_s: float,
) -> tuple[AlgorithmOutput | None, float, bool]:
    deadline = time.monotonic() + timeout_s
    start = time.perf_counter()
    try:
        output = algo(case.passing, case.failing, params, deadline)
    except DiffTimeout:
        return None, 0.0, True
    elapsed = time.perf_counter() - start
    if elapsed > timeout_s:
        return output, elapsed, True
    return output, elapsed, False


def run_case(
    case: RegressionCase,
    algorithms: Sequence[str] | Mapping[str, DiffAlgorithm] = ("cidiff", "lcs"),
    params: SimilarityParams | None = None,
    timeout_s: float = DEFAULT_TIMEOUT_S,
) -> CaseMetrics:
    """Measure every requested algorithm on one case."""
    if timeout_s <= 0:
        raise ValueError("timeout must be positive")
    params = params or SimilarityParams()
    if isinstance(algorithms, Mapping):
        selected = dict(algorithms)
    else:
        selected = {name: DEFAULT_ALGORITHMS[name] for name in algorithms}
    metrics = CaseMetrics(case_id=case.id)
    for name, algo in selected.items():
        entry = AlgorithmMetrics()
        output, elapsed, timed_out = _timed_run(algo, case, params, timeout_s)
        if timed_out:
            entry.timed_out = True
            entry.runtime_s = TIMEOUT_SENTINEL
        else:
            runtimes = [elapsed]
            if elapsed < SINGLE_RUN_THRESHOLD_S:
                for _ in range(2):
                    output2, elapsed2, timed_out2 = _timed_run(algo, case, params, timeout_s)
                    if timed_out2:
                        entry.timed_out = True
                        break
                    runtimes.append(elapsed2)
                    output = output2
            if entry.timed_out:
                entry.runtime_s = TIMEOUT_SENTINEL
            else:
                entry.runtime_s = statistics.median(runtimes)
        if output is not None and not entry.timed_out:
            entry.script_size = output.script_size
            entry.added_count = output.added_count
            entry.flagged = output.flagged
            if case.annotations is not None:
                entry.precision, entry.recall = precision_recall(output.flagged, case.annotations)
        metrics.algorithms[name] = entry
    cidiff_m = metrics.algorithms.get("cidiff")
    lcs_m = metrics.algorithms.get("lcs")
    if (
        cidiff_m is not None
        and lcs_m is not None
        and not cidiff_m.timed_out
        and not lcs_m.timed_out
        and cidiff_m.script_size is not None
        and lcs_m.script_size is not None
    ):
        metrics.p_size = percentage_difference(cidiff_m.script_size, lcs_m.script_size)
        metrics.p_added = percentage_difference(cidiff_m.added_count, lcs_m.added_count)
    return metrics


def run_corpus(
    cases: Sequence[RegressionCase],
    algorithms: Sequence[str] | Mapping[str, DiffAlgorithm] = ("cidiff", "lcs"),
    params: SimilarityParams | None = None,
    timeout_s: float = DEFAULT_TIMEOUT_S,
    jobs: int = 1,
) -> list[CaseMetrics]:
    """Evaluate all cases, optionally in parallel, sorted by case id."""
    ordered = sorted(cases, key=lambda c: c.id)
    if jobs <= 1:
        results = [run_case(c, algorithms, params, timeout_s) for c in ordered]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(
                pool.map(lambda c: run_case(c, algorithms, params, timeout_s), ordered)
            )
    return results


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def metrics_rows(results: Sequence[CaseMetrics]) -> list[list[str]]:
    rows = []
    for case in results:
        for name, entry in case.algorithms.items():
            runtime_ms = (
                TIMEOUT_SENTINEL if entry.timed_out else entry.runtime_s * 1000.0
            )
            rows.append(
                [
                    case.case_id,
                    name,
                    _fmt(entry.script_size),
                    _fmt(entry.added_count),
                    _fmt(runtime_ms),
                    _fmt(entry.timed_out),
                    _fmt(case.p_size if name == "cidiff" else None),
                    _fmt(case.p_added if name == "cidiff" else None),
                    _fmt(entry.precision),
                    _fmt(entry.recall),
                ]
            )
    return rows


def write_metrics_csv(results: Sequence[CaseMetrics], path) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_HEADER)
        writer.writerows(metrics_rows(results))


def grid_values(step: float) -> list[float]:
    if not 0.0 < step <= 1.0:
        raise ValueError("grid step must be in (0, 1]")
    count = round(1.0 / step)
    return [round(i * step, 10) for i in range(count + 1)]


@dataclass(frozen=True)
class SweepCell:
    line_threshold: float
    token_threshold: float
    cases: int
    precision_q1: float
    precision_median: float
    precision_q3: float
    recall_q1: float
    recall_median: float
    recall_q3: float


def _quartiles(values: list[float]) -> tuple[float, float, float]:
    if len(values) == 1:
        v = values[0]
        return v, v, v
    q = statistics.quantiles(values, n=4, method="inclusive")
    return q[0], q[1], q[2]


def sweep_thresholds(
    cases: Sequence[RegressionCase],
    grid_step: float = 0.1,
    jobs: int = 1,
) -> list[SweepCell]:
    """Precision/recall summary of the full matcher over the threshold grid.

    The LCS of each case does not depend on the thresholds, so it is computed
    once per case and reused across the whole grid.
    """
    annotated = [c for c in sorted(cases, key=lambda c: c.id) if c.annotations]
    if not annotated:
        raise ValueError("threshold sweep needs at least one annotated case")
    values = grid_values(grid_step)
    pairings = {c.id: lcs_lines(c.passing, c.failing) for c in annotated}

    def evaluate(cell: tuple[float, float]) -> SweepCell:
        ls, ts = cell
        params = SimilarityParams(line_threshold=ls, token_threshold=ts)
        precisions: list[float] = []
        recalls: list[float] = []
        for case in annotated:
            initial = initial_seeds(case.passing, case.failing, pairings[case.id])
            extended = extend_seeds(initial, case.passing, case.failing, params)
            final_initial = remove_overlaps(extended)
            extra = additional_seeds(case.passing, case.failing, final_initial, params)
            script = build_script(case.passing, case.failing, final_initial, extra, params)
            output = diff_output_lines(script).mod_indices
            precision, recall = precision_recall(output, case.annotations)
            precisions.append(precision)
            if recall is not None:
                recalls.append(recall)
        pq1, pmed, pq3 = _quartiles(precisions)
        rq1, rmed, rq3 = _quartiles(recalls)
        return SweepCell(ls, ts, len(annotated), pq1, pmed, pq3, rq1, rmed, rq3)

    cells = [(ls, ts) for ls in values for ts in values]
    if jobs <= 1:
        return [evaluate(cell) for cell in cells]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(evaluate, cells))


SWEEP_HEADER = [
    "line_threshold",
    "token_threshold",
    "cases",
    "precision_q1",
    "precision_median",
    "precision_q3",
    "recall_q1",
    "recall_median",
    "recall_q3",
]


def write_sweep_csv(cells: Sequence[SweepCell], path) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(SWEEP_HEADER)
        for cell in cells:
            writer.writerow(
                [
                    _fmt(cell.line_threshold),
                    _fmt(cell.token_threshold),
                    cell.cases,
                    _fmt(cell.precision_q1),
                    _fmt(cell.precision_median),
                    _fmt(cell.precision_q3),
                    _fmt(cell.recall_q1),
                    _fmt(cell.recall_median),
                    _fmt(cell.recall_q3),
                ]
            )


def load_corpus(root, strip_timestamps: bool = True) -> list[RegressionCase]:
    """Read cases from ``<root>/<case-id>/{pass.log,fail.log[,annotations.json]}``.

    Malformed case directories are logged and skipped.
    """
    root = Path(root)
    if not root.is_dir():
        raise OSError(f"corpus root {root} is not a directory")
    cases: list[RegressionCase] = []
    for entry in sorted(root.iterdir()):
        if not entry.is_dir():
            continue
        pass_path = entry / "pass.log"
        fail_path = entry / "fail.log"
        if not pass_path.is_file() or not fail_path.is_file():
            logger.warning("skipping %s: missing pass.log or fail.log", entry)
            continue
        try:
            passing = load_log(pass_path, strip_timestamps=strip_timestamps)
            failing = load_log(fail_path, strip_timestamps=strip_timestamps)
        except OSError as exc:
            logger.warning("skipping %s: %s", entry, exc)
            continue
        annotations: set[int] | None = None
        ann_path = entry / "annotations.json"
        if ann_path.is_file():
            try:
                raw = json.loads(ann_path.read_text())
                annotations = {int(i) for i in raw}
            except (ValueError, TypeError) as exc:
                logger.warning("skipping %s: bad annotations.json (%s)", entry, exc)
                continue
            if any(i < 0 or i >= len(failing) for i in annotations):
                logger.warning("skipping %s: annotation index out of range", entry)
                continue
        cases.append(
            RegressionCase(id=entry.name, passing=passing, failing=failing, annotations=annotations)
        )
    return cases


def write_case(case: RegressionCase, root) -> Path:
    """Materialize one case in the corpus layout. Returns the case directory."""
    case_dir = Path(root) / case.id
    case_dir.mkdir(parents=True, exist_ok=True)
    (case_dir / "pass.log").write_text(
        "".join(line.raw + "\n" for line in case.passing)
    )
    (case_dir / "fail.log").write_text(
        "".join(line.raw + "\n" for line in case.failing)
    )
    if case.annotations is not None:
        (case_dir / "annotations.json").write_text(json.dumps(sorted(case.annotations)))
    return case_dir


def generate_corpus(
    out_root,
    count: int,
    size: int = 500,
    seed: int = 0,
    rates: MutationRates | None = None,
) -> list[Path]:
    """Write ``count`` synthetic cases under ``out_root``."""
    Path(out_root).mkdir(parents=True, exist_ok=True)
    written = []
    for i in range(count):
        case = generate_synthetic_case(seed + i, size=size, rates=rates)
        written.append(write_case(case, out_root))
    return written
