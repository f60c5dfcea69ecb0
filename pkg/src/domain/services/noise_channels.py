"""
Quantum channels on density matrices.

Matrices are 2^n x 2^n with qubit 0 as the most significant index bit. The
array-level helpers work on raw ndarrays so the simulator can chain them
without re-validating; the ``apply_*`` functions wrap them for DensityState.
"""

from typing import Sequence, Tuple
import math

import numpy as np

from ..models.errors import CalibrationError
from ..models.state import DensityState


def _blocks(rho: np.ndarray, n: int, qubits: Sequence[int]) -> Tuple[np.ndarray, list]:
    """View rho as (d_k, d_rest, d_k, d_rest) with the given qubits first"""
    k = len(qubits)
    rest = [q for q in range(n) if q not in qubits]
    perm = list(qubits) + rest + [n + q for q in qubits] + [n + q for q in rest]
    tensor = np.transpose(rho.reshape((2,) * (2 * n)), perm)
    return tensor.reshape(2 ** k, 2 ** (n - k), 2 ** k, 2 ** (n - k)), perm


def _unblock(blocks: np.ndarray, n: int, perm: list) -> np.ndarray:
    tensor = blocks.reshape((2,) * (2 * n))
    return np.transpose(tensor, np.argsort(perm)).reshape(2 ** n, 2 ** n)


def hermitize(rho: np.ndarray) -> np.ndarray:
    return (rho + rho.conj().T) / 2


def unitary_on(rho: np.ndarray, n: int, unitary: np.ndarray, qubits: Sequence[int]) -> np.ndarray:
    blocks, perm = _blocks(rho, n, qubits)
    blocks = np.einsum("ij,jakb,lk->ialb", unitary, blocks, unitary.conj(), optimize=True)
    return _unblock(blocks, n, perm)


def depolarize_on(rho: np.ndarray, n: int, p: float, qubits: Sequence[int]) -> np.ndarray:
    if p == 0.0:
        return rho
    blocks, perm = _blocks(rho, n, qubits)
    dim = blocks.shape[0]
    reduced = np.einsum("iaib->ab", blocks)
    mixed = np.einsum("ab,ij->iajb", reduced, np.eye(dim) / dim)
    return _unblock((1 - p) * blocks + p * mixed, n, perm)


def relaxation_factors(t1: float, t2: float, duration: float) -> Tuple[float, float]:
    """Amplitude damping gamma and off-diagonal decay factor for an interval"""
    if t1 <= 0 or t2 <= 0:
        raise CalibrationError(f"t1 and t2 must be positive, got t1={t1}, t2={t2}")
    if t2 > 2 * t1 * (1 + 1e-12):
        raise CalibrationError(f"t2={t2} exceeds 2*t1={2 * t1}")
    if duration < 0:
        raise ValueError(f"duration must be >= 0, got {duration}")
    return 1.0 - math.exp(-duration / t1), math.exp(-duration / t2)


def relax_on(rho: np.ndarray, n: int, qubit: int, t1: float, t2: float, duration: float) -> np.ndarray:
    gamma, coherence = relaxation_factors(t1, t2, duration)
    if duration == 0.0:
        return rho
    blocks, perm = _blocks(rho, n, [qubit])
    out = np.empty_like(blocks)
    out[0, :, 0, :] = blocks[0, :, 0, :] + gamma * blocks[1, :, 1, :]
    out[1, :, 1, :] = (1 - gamma) * blocks[1, :, 1, :]
    out[0, :, 1, :] = coherence * blocks[0, :, 1, :]
    out[1, :, 0, :] = coherence * blocks[1, :, 0, :]
    return _unblock(out, n, perm)


def readout_flip(probs: np.ndarray, n: int, qubit: int, error: float) -> np.ndarray:
    """Symmetric bit-flip confusion of one qubit on a probability vector"""
    if error == 0.0:
        return probs
    tensor = probs.reshape((2,) * n)
    tensor = (1 - error) * tensor + error * np.flip(tensor, axis=qubit)
    return tensor.reshape(-1)


def apply_unitary(state: DensityState, unitary: np.ndarray, qubits: Sequence[int]) -> DensityState:
    return DensityState(state.n, hermitize(unitary_on(state.matrix, state.n, unitary, qubits)))


def apply_depolarizing(state: DensityState, p: float, qubits: Sequence[int]) -> DensityState:
    """(1-p) rho + p Tr_q(rho) (x) I/2^k on the gate's qubits"""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"depolarizing probability must be in [0, 1], got {p}")
    return DensityState(state.n, hermitize(depolarize_on(state.matrix, state.n, p, qubits)))


def apply_thermal_relaxation(state: DensityState, qubit: int, t1: float, t2: float,
                             duration: float) -> DensityState:
    """Amplitude damping with gamma = 1 - exp(-t/t1) plus dephasing to exp(-t/t2) coherence"""
    return DensityState(state.n, hermitize(relax_on(state.matrix, state.n, qubit, t1, t2, duration)))
