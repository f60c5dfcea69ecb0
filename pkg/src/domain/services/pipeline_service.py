"""
The mitigation flow: route unreliable circuits through cutting, apply SLZNE to
long circuits under thermal noise, then RZNE.
"""

from typing import Optional
import logging

from ..interfaces import NoiseSimulator
from ..models.circuit import Circuit
from ..models.device import DeviceModel, NoiseConfig
from ..models.errors import NoCutWithinBudgetError, UnreliableCutError
from ..models.mitigation import MitigationConfig, PipelineRoute
from ..models.state import Distribution
from .circuit_service import compute_latency
from .cutting_service import CuttingService
from .mitigation_service import rzne_state, slzne
from .reliability_service import effective_reliability

logger = logging.getLogger(__name__)


def plan_pipeline(circuit: Circuit, device: DeviceModel, noise: NoiseConfig,
                  mitigation: MitigationConfig) -> PipelineRoute:
    esp = effective_reliability(circuit, device, noise).r
    latency = compute_latency(circuit, device)
    threshold = mitigation.slzne_latency_fraction * device.min_t1(circuit.touched_qubits())
    return PipelineRoute(
        cut=esp <= mitigation.esp_threshold,
        apply_slzne=noise.thermal_enabled and latency > threshold,
        esp=esp,
        latency=latency,
        latency_threshold=threshold,
    )


class PipelineService:
    """Runs the full mitigation flow for one circuit"""

    def __init__(self, simulator: NoiseSimulator, cutting_service: Optional[CuttingService] = None):
        self.simulator = simulator
        self.cutting_service = cutting_service or CuttingService(simulator)

    def mitigate_direct(self, circuit: Circuit, device: DeviceModel, noise: NoiseConfig,
                        mitigation: MitigationConfig, route: PipelineRoute,
                        noisy: Optional[Distribution] = None) -> Distribution:
        """SLZNE (when the route asks for it) followed by RZNE on the uncut circuit"""
        r = effective_reliability(circuit, device, noise).require_positive()
        if noisy is None:
            noisy = self.simulator.simulate(circuit, device, noise)

        dist = noisy
        if route.apply_slzne:
            t1 = device.min_t1(circuit.touched_qubits())
            dist = slzne(dist, route.latency, t1, mitigation.top_k, mitigation.zero_state_rule)
        return rzne_state(dist, r, mitigation.top_k)

    def mitigate_pipeline(self, circuit: Circuit, device: DeviceModel, noise: NoiseConfig,
                          mitigation: MitigationConfig,
                          noisy: Optional[Distribution] = None) -> Distribution:
        route = plan_pipeline(circuit, device, noise, mitigation)
        logger.info(
            f"Pipeline route: {[s.value for s in route.stages]} "
            f"(esp {route.esp:.4f}, latency {route.latency * 1e9:.0f} ns, "
            f"SLZNE threshold {route.latency_threshold * 1e9:.0f} ns)"
        )

        if route.cut:
            try:
                return self.cutting_service.cutqc_mc(circuit, device, noise, mitigation)
            except (NoCutWithinBudgetError, UnreliableCutError) as e:
                logger.warning(f"Pipeline: {e}; mitigating the uncut circuit instead")

        return self.mitigate_direct(circuit, device, noise, mitigation, route, noisy)
