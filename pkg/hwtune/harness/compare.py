import csv
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from hwtune.optimizers import ObjectiveSpec, best_so_far, build_optimizer
from hwtune.shared.util import HwtuneException, InvalidFormat, logger
from hwtune.shared.util.otel import make_span
from hwtune.space import SearchSpace
from hwtune.trials import TrialLog

from .evaluator import Evaluator
from .exceptions import ComparisonFailed
from .run import evaluate_rounds


REPORT_FILE = "report.json"
TRACES_FILE = "traces.csv"
PLOT_FILE = "convergence.png"


@dataclass(frozen=True)
class Cell:
    row: int
    optimizer: str
    seed: int

    @property
    def label(self) -> str:
        return f"{self.row}-{self.optimizer}-seed{self.seed}"


@dataclass
class CellResult:
    cell: Cell
    trace: List[float] = field(default_factory=list)
    error: Optional[str] = None

    @property
    def final(self) -> float:
        return self.trace[-1]


@dataclass
class ComparisonRow:
    optimizer: str
    seeds: List[int]
    finals: List[float]
    traces: List[List[float]]
    failed: List[int] = field(default_factory=list)

    @property
    def runs(self) -> int:
        return len(self.finals)

    @property
    def mean(self) -> Optional[float]:
        return float(np.mean(self.finals)) if self.finals else None

    @property
    def stderr(self) -> Optional[float]:
        if len(self.finals) < 2:
            return None
        return float(np.std(self.finals, ddof=1) / math.sqrt(len(self.finals)))

    def mean_trace(self) -> List[float]:
        return np.mean(np.asarray(self.traces), axis=0).tolist() if self.traces else []

    def to_dict(self) -> Dict[str, Any]:
        return {
            "optimizer": self.optimizer,
            "runs": self.runs,
            "mean": self.mean,
            "stderr": self.stderr,
            "seeds": self.seeds,
            "finals": self.finals,
            "traces": self.traces,
            "failed_seeds": self.failed,
        }


@dataclass
class ComparisonReport:
    objective: ObjectiveSpec
    budget: int
    seeds: List[int]
    rows: List[ComparisonRow]
    failed: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "objective": self.objective.name,
            "direction": self.objective.direction.value,
            "budget": self.budget,
            "seeds": self.seeds,
            "rows": [row.to_dict() for row in self.rows],
            "failed": self.failed,
        }


def run_cell(
    cell: Cell,
    space: SearchSpace,
    evaluator: Evaluator,
    budget: int,
    objective: ObjectiveSpec,
    output_dir: Path,
    options: Dict[str, Any],
) -> CellResult:
    with make_span("comparison cell", {"optimizer": cell.optimizer, "seed": cell.seed}):
        try:
            optimizer = build_optimizer(
                cell.optimizer,
                space,
                cell.seed,
                budget,
                evaluator.objectives,
                **options,
            )
            log = TrialLog(output_dir / cell.label)
            evaluate_rounds(optimizer, evaluator, log, {})
        except HwtuneException as e:
            logger.error(f"Comparison run {cell.label} failed: {e.msg}")
            return CellResult(cell, error=e.msg)
    trace = best_so_far(log.records, objective.name, objective.direction)
    return CellResult(cell, trace)


def compare_optimizers(
    space: SearchSpace,
    evaluator: Evaluator,
    names: Sequence[str],
    seeds: Sequence[int],
    budget: int,
    output_dir: Path,
    max_workers: int = 1,
    optimizer_options: Optional[Dict[str, Dict[str, Any]]] = None,
    objective: Optional[ObjectiveSpec] = None,
) -> ComparisonReport:
    """
    Runs every (optimizer, seed) cell against the same evaluator, so each seed
    index sees identical evaluator randomness across optimizers. A name listed twice
    gives two rows. The report is written before failed cells are raised as
    ComparisonFailed.
    """
    if len(names) < 2:
        raise InvalidFormat("A comparison needs at least two optimizers")
    if len(seeds) < 2:
        raise InvalidFormat("A comparison needs at least two seeds")
    objective = objective or evaluator.objectives[0]
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    optimizer_options = optimizer_options or {}

    cells = [
        Cell(row, name, seed) for row, name in enumerate(names) for seed in seeds
    ]
    logger.info(
        f"Comparing {', '.join(names)} over {len(seeds)} seeds, budget {budget}"
    )
    with ThreadPoolExecutor(max_workers=max(1, max_workers)) as executor:
        results = list(
            executor.map(
                lambda cell: run_cell(
                    cell,
                    space,
                    evaluator,
                    budget,
                    objective,  # type: ignore
                    output_dir,
                    optimizer_options.get(cell.optimizer, {}),  # type: ignore
                ),
                cells,
            )
        )

    report = build_report(names, seeds, budget, objective, results)
    write_report(output_dir, report)
    if report.failed:
        raise ComparisonFailed(report.failed)
    return report


def build_report(
    names: Sequence[str],
    seeds: Sequence[int],
    budget: int,
    objective: ObjectiveSpec,
    results: List[CellResult],
) -> ComparisonReport:
    rows = [ComparisonRow(name, [], [], []) for name in names]
    failed: List[str] = []
    for result in results:
        row = rows[result.cell.row]
        if result.error is not None:
            row.failed.append(result.cell.seed)
            failed.append(result.cell.label)
            continue
        row.seeds.append(result.cell.seed)
        row.finals.append(result.final)
        row.traces.append(result.trace)
    return ComparisonReport(objective, budget, list(seeds), rows, failed)


def trace_rows(report: ComparisonReport) -> List[Tuple[str, int, int, float]]:
    return [
        (row.optimizer, seed, index + 1, value)
        for row in report.rows
        for seed, trace in zip(row.seeds, row.traces)
        for index, value in enumerate(trace)
    ]


def write_report(output_dir: Path, report: ComparisonReport) -> None:
    (output_dir / REPORT_FILE).write_text(json.dumps(report.to_dict(), indent=2))
    with (output_dir / TRACES_FILE).open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["optimizer", "seed", "round", "best_so_far"])
        for optimizer, seed, round, value in trace_rows(report):
            writer.writerow([optimizer, seed, round, repr(value)])
    plot_convergence(output_dir / PLOT_FILE, report)


def plot_convergence(path: Path, report: ComparisonReport) -> None:
    figure = Figure(figsize=(8, 5))
    FigureCanvasAgg(figure)
    axes = figure.subplots()
    for row in report.rows:
        trace = row.mean_trace()
        if trace:
            rounds = range(1, len(trace) + 1)
            axes.plot(rounds, trace, marker="o", label=row.optimizer)
    axes.set_xlabel("Round")
    axes.set_ylabel(f"Best {report.objective.name} so far (mean over seeds)")
    axes.grid(True, alpha=0.3)
    axes.legend()
    figure.tight_layout()
    figure.savefig(path, dpi=120)
