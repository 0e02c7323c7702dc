"""Cost accounting shared by every search strategy.

A CostLedger counts the resources a run consumed; summaries average them
over Monte-Carlo trials, and the comparison table puts strategies side by
side so the measurement reduction and the parallel iteration-depth
advantage are directly visible. Run-time is reported as critical-path
Grover iteration depth, not wall-clock: offset arithmetic between global
and local indices is counted as zero cost.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import TYPE_CHECKING, Iterable, Sequence

from .errors import UsageError

if TYPE_CHECKING:
    from .distributed import RunReport


@dataclass(frozen=True)
class CostLedger:
    """Non-negative resource counts; addition is fieldwise."""

    qubits_measured: int = 0
    quantum_oracle_calls: int = 0
    classical_oracle_calls: int = 0
    grover_iterations: int = 0
    decision_steps: int = 0

    def __post_init__(self) -> None:
        for field in fields(self):
            if getattr(self, field.name) < 0:
                raise ValueError(f"{field.name} must be non-negative")

    def __add__(self, other: "CostLedger") -> "CostLedger":
        return ledger_add(self, other)


ZERO_LEDGER = CostLedger()


def ledger_add(a: CostLedger, b: CostLedger) -> CostLedger:
    """Fieldwise sum of two ledgers."""
    return CostLedger(
        **{f.name: getattr(a, f.name) + getattr(b, f.name) for f in fields(CostLedger)}
    )


def ledger_total(ledgers: Iterable[CostLedger]) -> CostLedger:
    total = ZERO_LEDGER
    for ledger in ledgers:
        total = total + ledger
    return total


@dataclass(frozen=True)
class TrialSummary:
    """Aggregate of repeated runs of one strategy on one configuration.

    ``mean_ledger`` holds per-field averages of the total ledgers;
    ``mean_iteration_depth`` averages the critical-path iteration count
    (the deepest single sub-system, since sub-systems run in parallel).
    """

    strategy: str
    db_size: int
    num_subsystems: int
    marked: frozenset[int]
    trials: int
    successes: int
    misses: int
    empirical_success_rate: float
    mean_ledger: dict[str, float]
    mean_iteration_depth: float


@dataclass(frozen=True)
class StrategyRow:
    """One comparison-table row; iteration column is critical-path depth."""

    strategy: str
    success_rate: float
    mean_qubits_measured: float
    mean_quantum_oracle_calls: float
    mean_classical_oracle_calls: float
    mean_grover_iterations: float
    mean_decision_steps: float


def summarize(reports: Sequence["RunReport"]) -> TrialSummary:
    """Aggregate trial reports that share one strategy and configuration."""
    if not reports:
        raise UsageError("cannot summarize an empty report list")
    first = reports[0]
    for report in reports:
        if report.strategy != first.strategy:
            raise UsageError(
                f"mixed strategies in summary: {first.strategy!r} vs {report.strategy!r}"
            )
        if report.config != first.config:
            raise UsageError("mixed configurations in summary")
    n = len(reports)
    successes = sum(1 for r in reports if r.correct)
    misses = sum(1 for r in reports if r.missed)
    mean_ledger = {
        f.name: sum(getattr(r.total_ledger, f.name) for r in reports) / n
        for f in fields(CostLedger)
    }
    depth = sum(r.iteration_depth for r in reports) / n
    return TrialSummary(
        strategy=first.strategy,
        db_size=first.config.db_size,
        num_subsystems=first.config.num_subsystems,
        marked=first.config.global_marked,
        trials=n,
        successes=successes,
        misses=misses,
        empirical_success_rate=successes / n,
        mean_ledger=mean_ledger,
        mean_iteration_depth=depth,
    )


def strategy_row(summary: TrialSummary) -> StrategyRow:
    """Comparison row for one summary."""
    return StrategyRow(
        strategy=summary.strategy,
        success_rate=summary.empirical_success_rate,
        mean_qubits_measured=summary.mean_ledger["qubits_measured"],
        mean_quantum_oracle_calls=summary.mean_ledger["quantum_oracle_calls"],
        mean_classical_oracle_calls=summary.mean_ledger["classical_oracle_calls"],
        mean_grover_iterations=summary.mean_iteration_depth,
        mean_decision_steps=summary.mean_ledger["decision_steps"],
    )


def compare_strategies(summaries: Sequence[TrialSummary]) -> list[StrategyRow]:
    """Side-by-side comparison of strategies on the same search problem.

    All summaries must share the database size and marked set; distributed
    strategies must also share the sub-system count. A sequential baseline
    (single machine over the whole database) is exempt from the sub-system
    check.
    """
    if len(summaries) < 2:
        raise UsageError("comparison requires at least two summaries")
    first = summaries[0]
    distributed = [s for s in summaries if s.strategy != "sequential"]
    for summary in summaries:
        if (summary.db_size, summary.marked) != (first.db_size, first.marked):
            raise UsageError(
                "summaries compare different search problems: "
                f"(db_size={summary.db_size}) vs (db_size={first.db_size})"
            )
    for summary in distributed:
        if summary.num_subsystems != distributed[0].num_subsystems:
            raise UsageError("distributed summaries use different sub-system counts")
    return [strategy_row(s) for s in summaries]
