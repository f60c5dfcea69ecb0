"""
Deterministic benchmark circuit generators (GHZ, Hamiltonian simulation, QAOA, VQE).
"""

from typing import List, Tuple
import logging

import numpy as np

from config.config import BenchmarkAngles, benchmark_angles
from ..models.circuit import Circuit, Gate, GateKind
from ..models.errors import BenchmarkError
from ..models.experiment import BenchmarkFamily, BenchmarkSpec

logger = logging.getLogger(__name__)


def ring_edges(n: int) -> List[Tuple[int, int]]:
    """Nearest-neighbour ring, even-indexed edges first then odd-indexed ones"""
    if n == 2:
        return [(0, 1)]
    return [(i, (i + 1) % n) for i in range(0, n, 2)] + [(i, (i + 1) % n) for i in range(1, n, 2)]


def ghz(n: int) -> List[Gate]:
    gates = [Gate(GateKind.H, (0,))]
    gates += [Gate(GateKind.CNOT, (i, i + 1)) for i in range(n - 1)]
    return gates


def hamiltonian_simulation(n: int, steps: int, angles: BenchmarkAngles) -> List[Gate]:
    """Trotterized transverse-field Ising evolution"""
    rz = 2 * angles.hs_longitudinal_field * angles.hs_dt
    rzz = 2 * angles.hs_coupling * angles.hs_dt
    rx = 2 * angles.hs_transverse_field * angles.hs_dt

    gates: List[Gate] = []
    for _ in range(steps):
        gates += [Gate(GateKind.RZ, (q,), rz) for q in range(n)]
        gates += [Gate(GateKind.RZZ, (q, q + 1), rzz) for q in range(n - 1)]
        gates += [Gate(GateKind.RX, (q,), rx) for q in range(n)]
    return gates


def qaoa(n: int, angles: BenchmarkAngles) -> List[Gate]:
    gates = [Gate(GateKind.H, (q,)) for q in range(n)]
    gates += [Gate(GateKind.RZZ, edge, 2 * angles.qaoa_gamma) for edge in ring_edges(n)]
    gates += [Gate(GateKind.RX, (q,), 2 * angles.qaoa_beta) for q in range(n)]
    return gates


def vqe(n: int, layers: int, angles: BenchmarkAngles) -> List[Gate]:
    rng = np.random.default_rng(angles.vqe_seed)
    thetas = rng.uniform(0.0, 2 * np.pi, size=(layers, n))

    gates: List[Gate] = []
    for layer in range(layers):
        gates += [Gate(GateKind.RY, (q,), float(thetas[layer, q])) for q in range(n)]
        gates += [Gate(GateKind.CNOT, (q, q + 1)) for q in range(n - 1)]
    return gates


def generate_benchmark(family, n: int, steps: int = 1, layers: int = 1,
                       angles: BenchmarkAngles = benchmark_angles) -> Circuit:
    """Build a benchmark circuit with every qubit measured at the end"""
    try:
        family = BenchmarkFamily(family)
    except ValueError:
        raise BenchmarkError(f"unsupported benchmark family '{family}'")
    if n < 2:
        raise BenchmarkError(f"benchmarks need at least 2 qubits, got {n}")
    if steps < 1 or layers < 1:
        raise BenchmarkError(f"steps and layers must be >= 1, got steps={steps}, layers={layers}")

    if family is BenchmarkFamily.GHZ:
        gates = ghz(n)
    elif family is BenchmarkFamily.HS:
        gates = hamiltonian_simulation(n, steps, angles)
    elif family is BenchmarkFamily.QAOA:
        gates = qaoa(n, angles)
    else:
        gates = vqe(n, layers, angles)

    circuit = Circuit(n, gates).measure_all()
    logger.debug(f"Generated {family.value}({n}) with {len(circuit)} operations")
    return circuit


def benchmark_from_spec(spec: BenchmarkSpec) -> Circuit:
    return generate_benchmark(spec.family, spec.qubits, steps=spec.steps, layers=spec.layers)
