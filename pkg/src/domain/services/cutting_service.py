"""
Wire cutting: cut search on the gate dependency graph, variant generation,
classical recombination and the cut-then-mitigate orderings.

A cut replaces the wire with three measurement bases upstream and four
preparations downstream. Recombination uses rho = 1/2 sum_P Tr(P rho) P per
cut, so K cuts cost 4^K Pauli terms.
"""

from dataclasses import dataclass
from itertools import combinations, product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple
import logging

import networkx as nx
import numpy as np

from ..interfaces import NoiseSimulator
from ..models.circuit import Circuit, Gate, GateKind
from ..models.cutting import (
    MEASUREMENT_BASES,
    PREPARATIONS,
    CutPlan,
    SubcircuitVariant,
    Termination,
    WireCut,
)
from ..models.device import DeviceModel, NoiseConfig
from ..models.errors import CuttingError, NoCutWithinBudgetError, RecombinationError, UnreliableCutError
from ..models.mitigation import MitigationConfig
from ..models.state import Distribution, Reliability
from .circuit_service import compute_latency
from .mitigation_service import rzne_state, slzne
from .reliability_service import compute_esp, effective_reliability

logger = logging.getLogger(__name__)

VariantKey = Tuple[int, Tuple[Termination, ...]]

# Pauli order I, X, Y, Z
_MEASURE_BASIS_FOR_PAULI = (
    Termination.MEASURE_Z,
    Termination.MEASURE_X,
    Termination.MEASURE_Y,
    Termination.MEASURE_Z,
)
_SIGNS_FOR_PAULI = np.array([[1.0, 1.0], [1.0, -1.0], [1.0, -1.0], [1.0, -1.0]])
# rows: Pauli, columns: preparation |0>, |1>, |+>, |+i>
_PREP_COEFFICIENTS = np.array([
    [1.0, 1.0, 0.0, 0.0],
    [-1.0, -1.0, 2.0, 0.0],
    [-1.0, -1.0, 0.0, 2.0],
    [1.0, -1.0, 0.0, 0.0],
])

_BASIS_CHANGE = {
    Termination.MEASURE_X: (GateKind.H,),
    Termination.MEASURE_Y: (GateKind.SDG, GateKind.H),
    Termination.MEASURE_Z: (),
}
_PREPARATION = {
    Termination.PREP_ZERO: (),
    Termination.PREP_ONE: (GateKind.X,),
    Termination.PREP_PLUS: (GateKind.H,),
    Termination.PREP_PLUS_I: (GateKind.H, GateKind.S),
}


def dependency_graph(circuit: Circuit) -> nx.MultiGraph:
    """Unitary gates as nodes, one edge (keyed by qubit) between consecutive gates on a wire

    Qubits without unitary gates get a ``("wire", q)`` node so they land in a component.
    """
    graph = nx.MultiGraph()
    last_on: Dict[int, int] = {}
    for index, gate in enumerate(circuit.gates):
        if gate.is_measurement:
            continue
        graph.add_node(index, qubits=gate.qubits)
        for q in gate.qubits:
            if q in last_on:
                graph.add_edge(last_on[q], index, key=q)
            last_on[q] = index
    for q in range(circuit.width):
        if q not in last_on:
            graph.add_node(("wire", q), qubits=(q,))
    return graph


def _component_qubits(graph: nx.MultiGraph, component) -> Tuple[int, ...]:
    return tuple(sorted({q for node in component for q in graph.nodes[node]["qubits"]}))


def _first_node_key(node) -> Tuple[int, int]:
    # gate indices before gate-free wires
    return (1, node[1]) if isinstance(node, tuple) else (0, node)


def _evaluate(graph: nx.MultiGraph, width: int, edges: Sequence[Tuple[int, int, int]]) -> Optional[CutPlan]:
    trimmed = graph.copy()
    trimmed.remove_edges_from(edges)
    components = list(nx.connected_components(trimmed))
    if len(components) != 2:
        return None

    if edges:
        upstream = next(c for c in components if edges[0][0] in c)
        if any(u not in upstream or v in upstream for u, v, _ in edges):
            return None
    else:
        upstream = min(components, key=lambda c: min(_first_node_key(node) for node in c))
    downstream = next(c for c in components if c is not upstream)

    up_qubits = _component_qubits(graph, upstream)
    down_qubits = _component_qubits(graph, downstream)
    if len(up_qubits) >= width or len(down_qubits) >= width:
        return None

    assignment = {
        node: (CutPlan.UPSTREAM if node in upstream else CutPlan.DOWNSTREAM)
        for node in graph.nodes
        if not isinstance(node, tuple)
    }
    cuts = tuple(sorted(WireCut(after_gate=u, qubit=q, before_gate=v) for u, v, q in edges))
    return CutPlan(
        width=width,
        cuts=cuts,
        subcircuit_assignment=assignment,
        subcircuit_qubits=(up_qubits, down_qubits),
    )


def _rank(plan: CutPlan):
    imbalance = abs(len(plan.upstream_qubits) - len(plan.downstream_qubits))
    later_first = tuple(sorted((-cut.after_gate, cut.qubit) for cut in plan.cuts))
    return (imbalance, later_first)


def find_cut(circuit: Circuit, max_cuts: int = 2) -> CutPlan:
    """Exhaustive search for the plan with the fewest wire cuts, then the most balanced split"""
    if circuit.width < 2:
        raise CuttingError("cutting needs a circuit with at least 2 qubits")

    graph = dependency_graph(circuit)
    wires = sorted((min(u, v), max(u, v), q) for u, v, q in graph.edges(keys=True))

    for num_cuts in range(0, max_cuts + 1):
        plans = []
        for edges in combinations(wires, num_cuts):
            plan = _evaluate(graph, circuit.width, list(edges))
            if plan is not None:
                plans.append(plan)
        if plans:
            best = min(plans, key=_rank)
            logger.info(
                f"Cut plan: {best.num_cuts} cut(s) {[c.to_dict() for c in best.cuts]}, "
                f"subcircuit widths {len(best.upstream_qubits)}/{len(best.downstream_qubits)} "
                f"({len(plans)} candidate(s))"
            )
            return best

    raise NoCutWithinBudgetError(
        f"no cut within budget: {circuit.width}-qubit circuit cannot be split into two "
        f"narrower subcircuits with at most {max_cuts} wire cut(s)"
    )


def _subcircuit_gates(circuit: Circuit, plan: CutPlan, sid: int, local: Dict[int, int]) -> List[Gate]:
    return [
        circuit.gates[i].remap(local)
        for i in sorted(plan.subcircuit_assignment)
        if plan.subcircuit_assignment[i] == sid
    ]


def _measures(qubits: Sequence[int]) -> List[Gate]:
    return [Gate(GateKind.MEASURE, (q,)) for q in sorted(qubits)]


def build_subcircuits(circuit: Circuit, plan: CutPlan) -> List[SubcircuitVariant]:
    """All measurement variants of the upstream subcircuit, then all preparation variants downstream"""
    measured = circuit.measured
    variants: List[SubcircuitVariant] = []

    up_qubits = plan.upstream_qubits
    up_local = {q: i for i, q in enumerate(up_qubits)}
    up_body = _subcircuit_gates(circuit, plan, CutPlan.UPSTREAM, up_local)
    up_measured = [up_local[q] for q in up_qubits if q in measured or q in plan.cut_qubits]
    for bases in product(MEASUREMENT_BASES, repeat=plan.num_cuts):
        gates = list(up_body)
        for cut, basis in zip(plan.cuts, bases):
            gates += [Gate(kind, (up_local[cut.qubit],)) for kind in _BASIS_CHANGE[basis]]
        gates += _measures(up_measured)
        variants.append(SubcircuitVariant(
            base=CutPlan.UPSTREAM,
            terminations=tuple(bases),
            circuit=Circuit(len(up_qubits), gates),
            qubits=up_qubits,
        ))

    down_qubits = plan.downstream_qubits
    down_local = {q: i for i, q in enumerate(down_qubits)}
    down_body = _subcircuit_gates(circuit, plan, CutPlan.DOWNSTREAM, down_local)
    down_measured = [down_local[q] for q in down_qubits if q in measured]
    for preps in product(PREPARATIONS, repeat=plan.num_cuts):
        gates = []
        for cut, prep in zip(plan.cuts, preps):
            gates += [Gate(kind, (down_local[cut.qubit],)) for kind in _PREPARATION[prep]]
        gates += down_body
        gates += _measures(down_measured)
        variants.append(SubcircuitVariant(
            base=CutPlan.DOWNSTREAM,
            terminations=tuple(preps),
            circuit=Circuit(len(down_qubits), gates),
            qubits=down_qubits,
        ))

    logger.debug(f"Built {len(variants)} subcircuit variants for {plan.num_cuts} cut(s)")
    return variants


def _lookup(results: Mapping[VariantKey, Distribution], key: VariantKey, width: int) -> np.ndarray:
    if key not in results:
        raise RecombinationError(
            f"missing result for subcircuit {key[0]} variant {[t.value for t in key[1]]}"
        )
    dist = results[key]
    if dist.n != width:
        raise RecombinationError(
            f"subcircuit {key[0]} variant {[t.value for t in key[1]]} has width {dist.n}, expected {width}"
        )
    return dist.as_tensor()


def recombine(results: Mapping[VariantKey, Distribution], plan: CutPlan) -> Distribution:
    """Full-circuit distribution from per-variant distributions"""
    n = plan.width
    k = plan.num_cuts
    up_qubits = plan.upstream_qubits
    down_qubits = plan.downstream_qubits
    up_out = plan.upstream_output_qubits
    if sorted(up_out + down_qubits) != list(range(n)):
        raise RecombinationError("subcircuit qubits do not cover the circuit exactly once")

    pauli_labels = [n + i for i in range(k)]
    prep_labels = [n + k + i for i in range(k)]

    # Upstream: E[x_out, P] = sum over cut outcomes of sign_P(outcome) * p(x_out, outcome | basis(P))
    up_axes = list(range(len(up_qubits)))
    cut_axes = [up_qubits.index(cut.qubit) for cut in plan.cuts]
    out_axes = [a for a in up_axes if a not in cut_axes]
    upstream = np.zeros((2,) * len(up_out) + (4,) * k)
    for paulis in product(range(4), repeat=k):
        key = (CutPlan.UPSTREAM, tuple(_MEASURE_BASIS_FOR_PAULI[p] for p in paulis))
        operands = [_lookup(results, key, len(up_qubits)), up_axes]
        for p, axis in zip(paulis, cut_axes):
            operands += [_SIGNS_FOR_PAULI[p], [axis]]
        upstream[(...,) + paulis] = np.einsum(*operands, out_axes)

    # Downstream: D[x, P] = sum over preparations of coefficient(P, prep) * p(x | prep)
    by_prep = np.zeros((2,) * len(down_qubits) + (4,) * k)
    for preps in product(range(4), repeat=k):
        key = (CutPlan.DOWNSTREAM, tuple(PREPARATIONS[s] for s in preps))
        by_prep[(...,) + preps] = _lookup(results, key, len(down_qubits))
    operands = [by_prep, list(down_qubits) + prep_labels]
    for pauli_label, prep_label in zip(pauli_labels, prep_labels):
        operands += [_PREP_COEFFICIENTS, [pauli_label, prep_label]]
    downstream = np.einsum(*operands, list(down_qubits) + pauli_labels)

    full = np.einsum(
        upstream, list(up_out) + pauli_labels,
        downstream, list(down_qubits) + pauli_labels,
        list(range(n)),
    ) / 2 ** k
    return Distribution.normalized(n, full.reshape(-1))


@dataclass
class CutExecution:
    """Variants of a cut circuit and their simulated distributions"""
    plan: CutPlan
    variants: List[SubcircuitVariant]
    results: Dict[VariantKey, Distribution]
    reliabilities: Dict[VariantKey, Reliability]
    latencies: Dict[VariantKey, float]

    def subcircuit_reliabilities(self) -> List[Reliability]:
        """Reliability of each subcircuit's base variant (Z measurement, |0> preparation)"""
        return [
            self.reliabilities[v.key] for v in self.variants if v.is_base_variant
        ]

    def subcircuit_latencies(self) -> List[float]:
        return [self.latencies[v.key] for v in self.variants if v.is_base_variant]


class CuttingService:
    """Runs cut circuits on a simulator and mitigates around recombination"""

    def __init__(self, simulator: NoiseSimulator):
        self.simulator = simulator

    def execute(self, circuit: Circuit, device: DeviceModel, noise: NoiseConfig,
                mitigation: MitigationConfig) -> CutExecution:
        plan = find_cut(circuit, mitigation.max_cuts)
        variants = build_subcircuits(circuit, plan)
        self._check_reliability_gain(circuit, device, variants)

        results: Dict[VariantKey, Distribution] = {}
        reliabilities: Dict[VariantKey, Reliability] = {}
        latencies: Dict[VariantKey, float] = {}
        for variant in variants:
            local_device = device.restricted_to(variant.qubits)
            results[variant.key] = self.simulator.simulate(variant.circuit, local_device, noise)
            reliabilities[variant.key] = effective_reliability(variant.circuit, local_device, noise)
            latencies[variant.key] = compute_latency(variant.circuit, local_device)

        return CutExecution(plan, variants, results, reliabilities, latencies)

    @staticmethod
    def _check_reliability_gain(circuit: Circuit, device: DeviceModel, variants: List[SubcircuitVariant]):
        """Each subcircuit must be at least as reliable as the uncut circuit"""
        original = compute_esp(circuit, device).r
        for variant in variants:
            if not variant.is_base_variant:
                continue
            esp = compute_esp(variant.circuit, device.restricted_to(variant.qubits)).r
            if esp < original * (1 - 1e-12):
                logger.error(f"Subcircuit {variant.base} ESP {esp:.4f} is below the uncut circuit's {original:.4f}")
                raise UnreliableCutError(
                    f"subcircuit {variant.base} has ESP {esp:.4f}, below the uncut circuit's {original:.4f}"
                )

    def combine_unmitigated(self, execution: CutExecution) -> Distribution:
        return recombine(execution.results, execution.plan)

    def mitigate_then_combine(self, execution: CutExecution, device: DeviceModel, noise: NoiseConfig,
                              mitigation: MitigationConfig) -> Distribution:
        """Mitigate every variant with its own reliability, then recombine"""
        mitigated = {}
        for variant in execution.variants:
            dist = execution.results[variant.key]
            latency = execution.latencies[variant.key]
            t1 = device.restricted_to(variant.qubits).min_t1(variant.circuit.touched_qubits())
            if noise.thermal_enabled and latency > mitigation.slzne_latency_fraction * t1:
                dist = slzne(dist, latency, t1, zero_state_rule=mitigation.zero_state_rule)
            mitigated[variant.key] = rzne_state(dist, execution.reliabilities[variant.key])
        return recombine(mitigated, execution.plan)

    def combine_then_mitigate(self, execution: CutExecution) -> Distribution:
        """Recombine noisy variants, then mitigate with the geometric-mean subcircuit reliability"""
        combined = recombine(execution.results, execution.plan)
        r = Reliability.geometric_mean(execution.subcircuit_reliabilities())
        logger.info(f"CutQC-CM: combined reliability {r.r:.4f}")
        return rzne_state(combined, r)

    def cutqc_unmitigated(self, circuit: Circuit, device: DeviceModel, noise: NoiseConfig,
                          mitigation: MitigationConfig) -> Distribution:
        return self.combine_unmitigated(self.execute(circuit, device, noise, mitigation))

    def cutqc_mc(self, circuit: Circuit, device: DeviceModel, noise: NoiseConfig,
                 mitigation: MitigationConfig) -> Distribution:
        execution = self.execute(circuit, device, noise, mitigation)
        return self.mitigate_then_combine(execution, device, noise, mitigation)

    def cutqc_cm(self, circuit: Circuit, device: DeviceModel, noise: NoiseConfig,
                 mitigation: MitigationConfig) -> Distribution:
        return self.combine_then_mitigate(self.execute(circuit, device, noise, mitigation))
