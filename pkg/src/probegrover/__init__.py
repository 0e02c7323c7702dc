"""Distributed Grover search with probe qubits: simulator and experiment harness."""

__version__ = "0.1.0"

from .distributed import (
    ALL_STRATEGIES,
    ExperimentConfig,
    PROBE,
    RunReport,
    SEMICLASSICAL_REPEAT,
    SEMICLASSICAL_VERIFY,
    SEQUENTIAL,
    SubsystemDescriptor,
    SubsystemOutcome,
    WinnerDecision,
    find_winner,
    localize_marked,
    partition,
    recover_global,
    run_distributed_probe,
    run_semiclassical_repeat,
    run_semiclassical_verify,
    run_sequential,
    run_subsystem_probe,
    run_trials,
)
from .errors import ConfigurationError, InvariantError, ProtocolError, UsageError
from .grover import (
    GroverRunStats,
    is_power_of_two,
    iteration_count,
    run_grover,
    success_probability,
)
from .ledger import (
    CostLedger,
    StrategyRow,
    TrialSummary,
    ZERO_LEDGER,
    compare_strategies,
    ledger_add,
    ledger_total,
    strategy_row,
    summarize,
)
from .seeding import child_rng
from .statevector import (
    ComposedState,
    MarkedSet,
    MeasurementRecord,
    ProbeOutcome,
    StateVector,
    apply_boolean_oracle,
    apply_diffusion,
    apply_phase_oracle,
    compose_with_probe,
    dense_reference_step,
    measure_probe,
    measure_register,
    new_uniform,
    state_from_amplitudes,
)

__all__ = [
    "ALL_STRATEGIES",
    "ComposedState",
    "ConfigurationError",
    "CostLedger",
    "ExperimentConfig",
    "GroverRunStats",
    "InvariantError",
    "MarkedSet",
    "MeasurementRecord",
    "PROBE",
    "ProbeOutcome",
    "ProtocolError",
    "RunReport",
    "SEMICLASSICAL_REPEAT",
    "SEMICLASSICAL_VERIFY",
    "SEQUENTIAL",
    "StateVector",
    "StrategyRow",
    "SubsystemDescriptor",
    "SubsystemOutcome",
    "TrialSummary",
    "UsageError",
    "WinnerDecision",
    "ZERO_LEDGER",
    "apply_boolean_oracle",
    "apply_diffusion",
    "apply_phase_oracle",
    "child_rng",
    "compare_strategies",
    "compose_with_probe",
    "dense_reference_step",
    "find_winner",
    "is_power_of_two",
    "iteration_count",
    "ledger_add",
    "ledger_total",
    "localize_marked",
    "measure_probe",
    "measure_register",
    "new_uniform",
    "partition",
    "recover_global",
    "run_distributed_probe",
    "run_grover",
    "run_semiclassical_repeat",
    "run_semiclassical_verify",
    "run_sequential",
    "run_subsystem_probe",
    "run_trials",
    "state_from_amplitudes",
    "strategy_row",
    "success_probability",
    "summarize",
]
