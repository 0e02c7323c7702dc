"""Shared test utilities."""

from __future__ import annotations

import numpy as np

from probegrover import StateVector


def random_state(rng: np.random.Generator, num_qubits: int) -> StateVector:
    """Haar-ish random normalized state: complex Gaussian, renormalized."""
    dim = 1 << num_qubits
    amps = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    amps /= np.linalg.norm(amps)
    return StateVector(num_qubits, amps)


def random_marked(rng: np.random.Generator, num_qubits: int) -> frozenset[int]:
    """Random marked set of size 0..dim/2."""
    dim = 1 << num_qubits
    count = int(rng.integers(0, dim // 2 + 1))
    return frozenset(int(i) for i in rng.choice(dim, size=count, replace=False))


class FixedDraw:
    """Stands in for a Generator when a test needs to pin one uniform draw."""

    def __init__(self, value: float):
        self.value = value

    def random(self) -> float:
        return self.value


def norm_sq(amplitudes: np.ndarray) -> float:
    return float(np.sum(np.abs(amplitudes) ** 2))
