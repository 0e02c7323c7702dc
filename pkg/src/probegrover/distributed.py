"""Distributed Grover search over equal power-of-two database slices.

The protocol has three stages: the database is partitioned across
independent sub-systems, each sub-system runs its own Grover search in
parallel, and a merge stage turns the per-sub-system readouts into a
final global index. The stages differ only in how a sub-system reports
and how the merge decides, which gives three interchangeable strategies:

- ``probe``: each sub-system answers through a single ancilla qubit that
  the oracle writes into, so the merge reads one bit per sub-system and
  measures the full register only inside the winning sub-system.
- ``semiclassical-verify``: every sub-system measures its whole register
  and the merge checks each candidate with one classical oracle call.
- ``semiclassical-repeat``: every sub-system repeats its search-and-measure
  several times and reports only a candidate that all rounds agree on.

A ``sequential`` baseline (one machine searching the whole database) is
included for cost comparisons. All randomness descends from the
configuration seed through a fixed splitting scheme, so reports are
reproducible and independent of sub-system scheduling.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .errors import ConfigurationError, ProtocolError
from .grover import is_power_of_two, run_grover
from .ledger import CostLedger, ZERO_LEDGER, ledger_total
from .seeding import child_rng
from .statevector import (
    MAX_QUBITS,
    MeasurementRecord,
    StateVector,
    apply_boolean_oracle,
    compose_with_probe,
    measure_probe,
    measure_register,
)

PROBE = "probe"
SEMICLASSICAL_VERIFY = "semiclassical-verify"
SEMICLASSICAL_REPEAT = "semiclassical-repeat"
SEQUENTIAL = "sequential"
ALL_STRATEGIES = (PROBE, SEMICLASSICAL_VERIFY, SEMICLASSICAL_REPEAT, SEQUENTIAL)

# Seed-tree namespaces: (strategy slot, trial, sub-system, stage).
_SEED_SLOT = {name: slot for slot, name in enumerate(ALL_STRATEGIES)}
_STAGE_OPERATE = 0
_STAGE_RECOVER = 1


@dataclass(frozen=True)
class SubsystemDescriptor:
    """One equal-size slice of the database: global index = offset + local."""

    id: int
    offset: int
    size: int
    local_marked: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        if self.size < 2 or not is_power_of_two(self.size):
            raise ValueError(f"sub-system size must be a power of two >= 2, got {self.size}")
        if self.id < 0 or self.offset != self.id * self.size:
            raise ValueError(
                f"offset {self.offset} does not match id {self.id} times size {self.size}"
            )
        for index in self.local_marked:
            if not 0 <= index < self.size:
                raise ValueError(f"local marked index {index} out of range [0, {self.size})")
        object.__setattr__(self, "local_marked", frozenset(self.local_marked))

    @property
    def num_qubits(self) -> int:
        return self.size.bit_length() - 1


@dataclass(frozen=True)
class ExperimentConfig:
    """Search problem, strategy, and reproducibility parameters."""

    db_size: int
    num_subsystems: int
    global_marked: frozenset[int]
    strategy: str
    seed: int
    trials: int = 1
    repeat_rounds: int = 3

    def __post_init__(self) -> None:
        object.__setattr__(self, "global_marked", frozenset(self.global_marked))

    def validate(self) -> None:
        """Raise ConfigurationError unless every parameter is usable."""
        _check_partition_args(self.db_size, self.num_subsystems)
        for index in self.global_marked:
            if not 0 <= index < self.db_size:
                raise ConfigurationError(
                    f"marked index {index} out of range for db-size {self.db_size}"
                )
        if self.strategy not in ALL_STRATEGIES:
            raise ConfigurationError(
                f"strategy must be one of {', '.join(ALL_STRATEGIES)} (got {self.strategy!r})"
            )
        if self.trials < 1:
            raise ConfigurationError(f"trials must be >= 1 (got {self.trials})")
        if self.seed < 0:
            raise ConfigurationError(f"seed must be non-negative (got {self.seed})")
        if self.strategy == SEMICLASSICAL_REPEAT:
            _check_repeat_rounds(self.repeat_rounds, self.db_size)

    @property
    def subsystem_size(self) -> int:
        return self.db_size // self.num_subsystems


@dataclass(frozen=True)
class SubsystemOutcome:
    """What one sub-system reported, and what its run cost.

    The probe strategy fills ``probe_bit`` and keeps the post-measurement
    register for later recovery; the semi-classical strategies fill
    ``reported_local_index`` instead.
    """

    id: int
    ledger: CostLedger
    probe_bit: int | None = None
    reported_local_index: int | None = None
    post_state: StateVector | None = None


@dataclass(frozen=True)
class RunReport:
    """One complete trial: merge decision, recovered indices, cost totals.

    ``correct`` means the trial reported exactly what the marked set
    demands: at least one index with every reported index a true solution,
    or nothing at all when no solution exists.
    """

    strategy: str
    config: ExperimentConfig
    winners: tuple[int, ...]
    recovered: tuple[int, ...]
    correct: bool
    total_ledger: CostLedger
    per_subsystem: tuple[SubsystemOutcome, ...]

    @property
    def winner_subsystem(self) -> int | None:
        return self.winners[0] if len(self.winners) == 1 else None

    @property
    def recovered_global_index(self) -> int | None:
        return self.recovered[0] if len(self.recovered) == 1 else None

    @property
    def missed(self) -> bool:
        """A solution exists but no sub-system reported a result."""
        return bool(self.config.global_marked) and not self.recovered

    @property
    def iteration_depth(self) -> int:
        """Critical-path Grover iterations across parallel sub-systems."""
        return max((o.ledger.grover_iterations for o in self.per_subsystem), default=0)


@dataclass(frozen=True)
class WinnerDecision:
    """Result of scanning probe bits: set-bit positions and the number of
    binary-tree decisions the scan consumed."""

    winners: tuple[int, ...]
    decision_steps: int


def _check_partition_args(db_size: int, num_subsystems: int) -> None:
    if db_size < 2 or not is_power_of_two(db_size):
        raise ConfigurationError(f"db-size must be a power of two (got {db_size})")
    if db_size > (1 << MAX_QUBITS):
        raise ConfigurationError(
            f"db-size must be at most 2**{MAX_QUBITS} (got {db_size})"
        )
    if num_subsystems < 1 or not is_power_of_two(num_subsystems):
        raise ConfigurationError(
            f"subsystems must be a power of two (got {num_subsystems})"
        )
    if num_subsystems * 2 > db_size:
        raise ConfigurationError(
            "subsystems must divide db-size with at least 2 items per sub-system "
            f"(got db-size={db_size}, subsystems={num_subsystems})"
        )


def _check_repeat_rounds(rounds: int, db_size: int) -> None:
    # Birthday-paradox bound: rounds must stay below sqrt(db-size).
    if rounds < 2:
        raise ConfigurationError(f"repeat-rounds must be at least 2 (got {rounds})")
    if rounds * rounds >= db_size:
        raise ConfigurationError(
            f"repeat-rounds must be below sqrt(db-size) (got rounds={rounds}, "
            f"db-size={db_size})"
        )


def partition(db_size: int, num_subsystems: int) -> list[SubsystemDescriptor]:
    """Split the database into equal power-of-two slices with running offsets."""
    _check_partition_args(db_size, num_subsystems)
    size = db_size // num_subsystems
    return [
        SubsystemDescriptor(id=i, offset=i * size, size=size)
        for i in range(num_subsystems)
    ]


def localize_marked(
    global_marked: frozenset[int], sub: SubsystemDescriptor
) -> frozenset[int]:
    """Marked indices falling inside the slice, shifted to local coordinates."""
    return frozenset(
        g - sub.offset for g in global_marked if sub.offset <= g < sub.offset + sub.size
    )


def _localized_subsystems(config: ExperimentConfig) -> list[SubsystemDescriptor]:
    return [
        replace(sub, local_marked=localize_marked(config.global_marked, sub))
        for sub in partition(config.db_size, config.num_subsystems)
    ]


def run_subsystem_probe(
    sub: SubsystemDescriptor, rng: np.random.Generator
) -> SubsystemOutcome:
    """Search one slice and answer through the probe qubit.

    Runs the Grover loop, attaches a probe in |0>, lets the oracle write
    its predicate into the probe, then measures the probe alone. The
    conditional register state is kept so a later recovery step can read
    the solution index out of a winning sub-system.
    """
    state, stats = run_grover(sub.num_qubits, sub.local_marked)
    composed = apply_boolean_oracle(compose_with_probe(state), sub.local_marked)
    outcome, register = measure_probe(composed, rng)
    ledger = CostLedger(
        qubits_measured=outcome.qubits_measured,
        quantum_oracle_calls=stats.oracle_calls + 1,
        grover_iterations=stats.iterations,
    )
    return SubsystemOutcome(
        id=sub.id, ledger=ledger, probe_bit=outcome.bit, post_state=register
    )


def find_winner(probe_bits: Sequence[int]) -> WinnerDecision:
    """Locate set bits with a balanced OR-reduction tree.

    With exactly one bit set among M, the descent takes ceil(log2 M)
    decisions; all-zeros returns no winners without descending; several
    set bits are all returned (result multiplicity).
    """
    bits = [int(b) for b in probe_bits]
    if not bits:
        raise ValueError("probe_bits must be non-empty")
    if any(b not in (0, 1) for b in bits):
        raise ValueError(f"probe_bits must contain only 0 or 1, got {probe_bits!r}")

    winners: list[int] = []
    steps = 0

    def descend(lo: int, hi: int) -> None:
        nonlocal steps
        if hi - lo == 1:
            winners.append(lo)
            return
        steps += 1
        mid = (lo + hi) // 2
        if any(bits[lo:mid]):
            descend(lo, mid)
        if any(bits[mid:hi]):
            descend(mid, hi)

    if any(bits):
        descend(0, len(bits))
    return WinnerDecision(winners=tuple(winners), decision_steps=steps)


def recover_global(
    sub: SubsystemDescriptor,
    outcome: SubsystemOutcome,
    rng: np.random.Generator,
) -> tuple[int, MeasurementRecord]:
    """Read the solution index out of a winning sub-system.

    Measures the retained probe-conditioned register (for a singleton
    solution this state is exactly the solution basis state) and maps the
    local index back to the global database through the slice offset.
    """
    if outcome.probe_bit != 1:
        raise ProtocolError(
            f"recovery requires a probe that read 1; sub-system {sub.id} "
            f"read {outcome.probe_bit!r}"
        )
    if outcome.post_state is None:
        raise ProtocolError(f"sub-system {sub.id} has no retained register state")
    record = measure_register(outcome.post_state, rng)
    return sub.offset + record.outcome, record


def _make_report(
    strategy: str,
    config: ExperimentConfig,
    winners: Sequence[int],
    recovered: Sequence[int],
    outcomes: Sequence[SubsystemOutcome],
    merge_ledger: CostLedger,
) -> RunReport:
    recovered = tuple(recovered)
    marked = config.global_marked
    if marked:
        correct = bool(recovered) and all(g in marked for g in recovered)
    else:
        correct = not recovered
    total = ledger_total(o.ledger for o in outcomes) + merge_ledger
    return RunReport(
        strategy=strategy,
        config=config,
        winners=tuple(winners),
        recovered=recovered,
        correct=correct,
        total_ledger=total,
        per_subsystem=tuple(outcomes),
    )


def _require_strategy(config: ExperimentConfig, expected: str) -> None:
    config.validate()
    if config.strategy != expected:
        raise ConfigurationError(
            f"config selects strategy {config.strategy!r}, expected {expected!r}"
        )


def run_distributed_probe(config: ExperimentConfig, trial: int = 0) -> RunReport:
    """One trial of the probe strategy.

    Measures one qubit per sub-system plus, on success, the winning
    register: M + log2(slice size) qubits in total. If every probe reads 0
    despite a marked item the trial reports nothing and counts as a miss;
    there is no automatic retry.
    """
    _require_strategy(config, PROBE)
    slot = _SEED_SLOT[PROBE]
    subs = _localized_subsystems(config)
    outcomes = [
        run_subsystem_probe(
            sub, child_rng(config.seed, slot, trial, sub.id, _STAGE_OPERATE)
        )
        for sub in subs
    ]
    decision = find_winner([o.probe_bit for o in outcomes])
    merge = CostLedger(decision_steps=decision.decision_steps)
    recovered = []
    for winner_id in decision.winners:
        rng = child_rng(config.seed, slot, trial, winner_id, _STAGE_RECOVER)
        global_index, record = recover_global(subs[winner_id], outcomes[winner_id], rng)
        recovered.append(global_index)
        merge = merge + CostLedger(qubits_measured=record.qubits_measured)
    return _make_report(PROBE, config, decision.winners, recovered, outcomes, merge)


def run_semiclassical_verify(config: ExperimentConfig, trial: int = 0) -> RunReport:
    """One trial of the verify strategy.

    Every sub-system measures its full register after the search; the
    merge stage spends one classical oracle evaluation per candidate and
    keeps those that check out.
    """
    _require_strategy(config, SEMICLASSICAL_VERIFY)
    slot = _SEED_SLOT[SEMICLASSICAL_VERIFY]
    subs = _localized_subsystems(config)
    outcomes = []
    for sub in subs:
        state, stats = run_grover(sub.num_qubits, sub.local_marked)
        record = measure_register(
            state, child_rng(config.seed, slot, trial, sub.id, _STAGE_OPERATE)
        )
        outcomes.append(
            SubsystemOutcome(
                id=sub.id,
                ledger=CostLedger(
                    qubits_measured=record.qubits_measured,
                    quantum_oracle_calls=stats.oracle_calls,
                    grover_iterations=stats.iterations,
                ),
                reported_local_index=record.outcome,
            )
        )
    merge = CostLedger(classical_oracle_calls=len(subs))
    winners, recovered = [], []
    for sub, outcome in zip(subs, outcomes):
        candidate = sub.offset + outcome.reported_local_index
        if candidate in config.global_marked:
            winners.append(sub.id)
            recovered.append(candidate)
    return _make_report(
        SEMICLASSICAL_VERIFY, config, winners, recovered, outcomes, merge
    )


def run_semiclassical_repeat(config: ExperimentConfig, trial: int = 0) -> RunReport:
    """One trial of the repeat strategy.

    Every sub-system reruns search-and-measure for the configured number
    of rounds and reports a candidate only when all rounds agree; agreeing
    candidates from several sub-systems are all reported (multiplicity).
    """
    _require_strategy(config, SEMICLASSICAL_REPEAT)
    slot = _SEED_SLOT[SEMICLASSICAL_REPEAT]
    subs = _localized_subsystems(config)
    outcomes = []
    for sub in subs:
        results = []
        ledger = ZERO_LEDGER
        for round_index in range(config.repeat_rounds):
            state, stats = run_grover(sub.num_qubits, sub.local_marked)
            record = measure_register(
                state, child_rng(config.seed, slot, trial, sub.id, round_index)
            )
            results.append(record.outcome)
            ledger = ledger + CostLedger(
                qubits_measured=record.qubits_measured,
                quantum_oracle_calls=stats.oracle_calls,
                grover_iterations=stats.iterations,
            )
        agreed = results[0] if all(r == results[0] for r in results) else None
        outcomes.append(
            SubsystemOutcome(id=sub.id, ledger=ledger, reported_local_index=agreed)
        )
    winners, recovered = [], []
    for sub, outcome in zip(subs, outcomes):
        if outcome.reported_local_index is not None:
            winners.append(sub.id)
            recovered.append(sub.offset + outcome.reported_local_index)
    return _make_report(
        SEMICLASSICAL_REPEAT, config, winners, recovered, outcomes, ZERO_LEDGER
    )


def run_sequential(config: ExperimentConfig, trial: int = 0) -> RunReport:
    """One trial of the non-distributed baseline: a single machine searches
    the whole database and measures every register qubit."""
    _require_strategy(config, SEQUENTIAL)
    slot = _SEED_SLOT[SEQUENTIAL]
    num_qubits = config.db_size.bit_length() - 1
    state, stats = run_grover(num_qubits, config.global_marked)
    record = measure_register(
        state, child_rng(config.seed, slot, trial, 0, _STAGE_OPERATE)
    )
    outcome = SubsystemOutcome(
        id=0,
        ledger=CostLedger(
            qubits_measured=record.qubits_measured,
            quantum_oracle_calls=stats.oracle_calls,
            grover_iterations=stats.iterations,
        ),
        reported_local_index=record.outcome,
    )
    return _make_report(
        SEQUENTIAL, config, (0,), (record.outcome,), (outcome,), ZERO_LEDGER
    )


_RUNNERS = {
    PROBE: run_distributed_probe,
    SEMICLASSICAL_VERIFY: run_semiclassical_verify,
    SEMICLASSICAL_REPEAT: run_semiclassical_repeat,
    SEQUENTIAL: run_sequential,
}


def run_trials(config: ExperimentConfig) -> list[RunReport]:
    """Run the configured number of trials of the configured strategy."""
    config.validate()
    runner = _RUNNERS[config.strategy]
    return [runner(config, trial=t) for t in range(config.trials)]
