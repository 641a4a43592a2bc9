"""Exact statevector simulation with per-gate kernels, sampling, and
expectation values.

Little-endian throughout: qubit q is bit q of the basis index, which is axis
n-1-q of the amplitude tensor; outcome strings put qubit 0 rightmost.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Gate, GateKind
from .distributions import Distribution
from .linalg import gate_unitary

SIM_QUBIT_CAP = 24
NORM_TOL = 1e-9
PRUNE_EPS = 1e-16


@dataclass(frozen=True)
class Statevector:
    num_qubits: int
    amplitudes: np.ndarray

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def _apply_1q(psi: np.ndarray, mat: np.ndarray, axis: int) -> np.ndarray:
    out = np.tensordot(mat, psi, axes=([1], [axis]))
    return np.moveaxis(out, 0, axis)


def _apply_cx(psi: np.ndarray, control_axis: int, target_axis: int) -> None:
    idx: list = [slice(None)] * psi.ndim
    idx[control_axis] = 1
    view_target = target_axis - 1 if target_axis > control_axis else target_axis
    psi[tuple(idx)] = np.flip(psi[tuple(idx)], axis=view_target)


def run_statevector(c: Circuit) -> Statevector:
    """Apply gates in order to |0...0> without forming any 2^n x 2^n matrix."""
    n = c.num_qubits
    if n > SIM_QUBIT_CAP:
        raise ValueError(f"{n} qubits exceeds the simulation cap of {SIM_QUBIT_CAP}")
    if n == 0:
        raise ValueError("cannot simulate a circuit with no qubits")
    psi = np.zeros((2,) * n, dtype=complex)
    psi[(0,) * n] = 1.0
    for g in c.gates:
        if g.kind is GateKind.CX:
            control, target = g.qubits
            _apply_cx(psi, n - 1 - control, n - 1 - target)
        else:
            psi = _apply_1q(psi, gate_unitary(g), n - 1 - g.qubits[0])
    flat = psi.reshape(-1)
    norm = float(np.sum(np.abs(flat) ** 2))
    if abs(norm - 1.0) > NORM_TOL:
        raise ArithmeticError(f"statevector norm drifted to {norm!r}")
    return Statevector(n, flat)


def ideal_distribution(c: Circuit) -> Distribution:
    """|amplitude|^2 outcome probabilities, marginalized onto the measured
    qubits (all qubits when none are marked)."""
    sv = run_statevector(c)
    n = c.num_qubits
    measured = tuple(sorted(c.measured_qubits)) or tuple(range(n))
    probs = sv.probabilities().reshape((2,) * n)
    drop_axes = tuple(n - 1 - q for q in range(n) if q not in set(measured))
    if drop_axes:
        probs = probs.sum(axis=drop_axes)
    m = len(measured)
    flat = probs.reshape(-1)
    outcomes = {
        format(i, f"0{m}b"): float(p) for i, p in enumerate(flat) if p > PRUNE_EPS
    }
    total = sum(outcomes.values())
    outcomes = {s: p / total for s, p in outcomes.items()}
    return Distribution(m, outcomes, "probability")


def sample(c: Circuit, shots: int, seed: int) -> Distribution:
    """Multinomial draw from the ideal distribution; counts kind."""
    if shots < 1:
        raise ValueError("shots must be at least 1")
    ideal = ideal_distribution(c)
    keys = sorted(ideal.outcomes)
    pvals = np.array([ideal.outcomes[s] for s in keys])
    pvals = pvals / pvals.sum()
    rng = np.random.default_rng(seed)
    draws = rng.multinomial(shots, pvals)
    outcomes = {s: float(k) for s, k in zip(keys, draws) if k > 0}
    return Distribution(ideal.num_bits, outcomes, "counts")


def expectation(d: Distribution, observable) -> float:
    """Sum of p(s) * observable[s] over the support (counts normalized)."""
    p = d.normalized()
    total = 0.0
    for s, v in p.outcomes.items():
        try:
            total += v * float(observable[s])
        except KeyError as exc:
            raise ValueError(f"observable has no value for outcome {s!r}") from exc
    return total
