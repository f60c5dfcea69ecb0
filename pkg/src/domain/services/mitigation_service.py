"""
Zero-noise extrapolation on distributions and expectation values.

RZNE extrapolates linearly in mu = 1 - r through the maximally mixed point.
SLZNE undoes per-state T1 decay exponentially in the circuit latency.
DZNE is the folding-based baseline: run the circuit at odd scale factors and
fit an unconstrained line.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple
import logging
import math

import numpy as np

from ..interfaces import NoiseSimulator
from ..models.circuit import Circuit, PauliString
from ..models.device import DeviceModel, NoiseConfig
from ..models.errors import MitigationError
from ..models.state import Distribution, Reliability, RznePoint
from .circuit_service import fold_with_measurements, scale_factor_to_folds
from .observables import expectation

logger = logging.getLogger(__name__)


def _selected(dist: Distribution, top_k: Optional[int]) -> np.ndarray:
    if dist.probs.size == 0:
        raise MitigationError("empty distribution")
    if top_k is None or top_k >= dist.probs.size:
        return np.arange(dist.probs.size)
    if top_k < 1:
        raise MitigationError(f"top_k must be positive, got {top_k}")
    return dist.top_indices(top_k)


def _finish(n: int, values: np.ndarray, method: str) -> Distribution:
    clamped = int((values < 0).sum())
    if clamped:
        logger.debug(f"{method}: clamped {clamped} negative entries before renormalizing")
    try:
        return Distribution.normalized(n, values)
    except MitigationError:
        raise MitigationError(f"{method} produced no positive probability mass")


def rzne_state(noisy: Distribution, r: Reliability, top_k: Optional[int] = None) -> Distribution:
    """p'(s) = p(s)/r - ((1-r)/r)/2^n on the selected states, then clamp and renormalize"""
    r.require_positive()
    selected = _selected(noisy, top_k)
    values = noisy.probs.copy()
    uniform = 1.0 / 2 ** noisy.n
    values[selected] = values[selected] / r.r - (r.mu / r.r) * uniform
    return _finish(noisy.n, values, "rzne_state")


def rzne_fit(points: Sequence[RznePoint], infinite_point: RznePoint) -> float:
    """Least-squares line through the fixed infinite-noise point, evaluated at mu = 0"""
    if not points:
        raise MitigationError("rzne_fit needs at least one point")
    if infinite_point.mu != 1.0:
        raise MitigationError(f"infinite-noise point must sit at mu = 1, got {infinite_point.mu}")

    dx = np.array([p.mu - 1.0 for p in points])
    dy = np.array([p.value - infinite_point.value for p in points])
    denominator = float(np.dot(dx, dx))
    if denominator == 0.0:
        raise MitigationError("all points lie at mu = 1; slope is undetermined")
    slope = float(np.dot(dx, dy)) / denominator
    return infinite_point.value - slope


def rzne_expectation(noisy_value: float, r: Reliability, infinite_value: float = 0.0) -> float:
    """Expectation-level RZNE from a single circuit"""
    r.require_positive()
    return rzne_fit([RznePoint(r.mu, noisy_value)], RznePoint(1.0, infinite_value))


def rzne_state_multi(observations: Sequence[Tuple[Distribution, Reliability]],
                     top_k: Optional[int] = None) -> Distribution:
    """Per-state constrained fit over several (distribution, reliability) observations

    Observations come from equivalent circuits with different reliabilities,
    for example the same circuit on several devices. States are chosen on the
    mean distribution.
    """
    if not observations:
        raise MitigationError("rzne_state_multi needs at least one observation")
    n = observations[0][0].n
    if any(dist.n != n for dist, _ in observations):
        raise MitigationError("observations have different widths")

    dx = np.array([r.mu - 1.0 for _, r in observations])
    if float(np.dot(dx, dx)) == 0.0:
        raise MitigationError("every observation has reliability 0; slope is undetermined")

    stacked = np.stack([dist.probs for dist, _ in observations])
    mean = Distribution(n, stacked.mean(axis=0))
    selected = _selected(mean, top_k)

    uniform = 1.0 / 2 ** n
    slopes = (dx @ (stacked[:, selected] - uniform)) / np.dot(dx, dx)
    values = mean.probs.copy()
    values[selected] = uniform - slopes
    return _finish(n, values, "rzne_state_multi")


def excitation_counts(n: int) -> np.ndarray:
    """Number of one-bits of every basis index"""
    indices = np.arange(2 ** n)
    return np.array([bin(i).count("1") for i in indices])


def slzne(noisy: Distribution, t: float, t1: float, top_k: Optional[int] = None,
          zero_state_rule: str = "verbatim") -> Distribution:
    """Undo T1 decay of each state with c excited qubits by exp(-c t / t1)

    ``verbatim`` sets the all-zeros state to (1 - p)/exp(-t/t1) clamped to [0, 1].
    ``residual`` gives the all-zeros state whatever mass the excited states leave.
    """
    if t < 0:
        raise MitigationError(f"latency must be >= 0, got {t}")
    if t1 <= 0:
        raise MitigationError(f"t1 must be > 0, got {t1}")
    if zero_state_rule not in ("verbatim", "residual"):
        raise MitigationError(f"unknown zero-state rule '{zero_state_rule}'")

    selected = _selected(noisy, top_k)
    counts = excitation_counts(noisy.n)
    values = noisy.probs.copy()

    excited = selected[counts[selected] > 0]
    values[excited] = values[excited] / np.exp(-counts[excited] * t / t1)

    if 0 in selected:
        if zero_state_rule == "verbatim":
            values[0] = min(1.0, max(0.0, (1.0 - noisy.probs[0]) / math.exp(-t / t1)))
        else:
            values[0] = max(0.0, 1.0 - (values.sum() - values[0]))
    return _finish(noisy.n, values, "slzne")


def linear_intercept(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Unconstrained least-squares line, value at x = 0"""
    if len(xs) < 2:
        raise MitigationError(f"need at least 2 points for a linear fit, got {len(xs)}")
    if len(set(xs)) < 2:
        raise MitigationError("linear fit needs at least two distinct x values")
    _, intercept = np.polyfit(np.asarray(xs, dtype=float), np.asarray(ys, dtype=float), 1)
    return float(intercept)


@dataclass
class DzneResult:
    expectation: Optional[float]
    distribution: Distribution
    scaled_values: List[float] = field(default_factory=list)


class MitigationService:
    """Folding-based extrapolation that needs to execute circuits"""

    def __init__(self, simulator: NoiseSimulator):
        self.simulator = simulator

    def _folded_runs(self, circuit: Circuit, device: DeviceModel, noise: NoiseConfig,
                     scale_factors: Sequence[float]) -> List[Distribution]:
        if len(scale_factors) < 2:
            raise MitigationError(f"DZNE needs at least 2 scale factors, got {len(scale_factors)}")
        try:
            folds = [scale_factor_to_folds(s) for s in scale_factors]
        except ValueError as e:
            raise MitigationError(str(e))

        runs = []
        for scale, fold in zip(scale_factors, folds):
            folded = fold_with_measurements(circuit, fold)
            logger.debug(f"DZNE: scale {scale} -> {fold} fold(s), {len(folded)} operations")
            runs.append(self.simulator.simulate(folded, device, noise))
        return runs

    def dzne_extrapolate(self, circuit: Circuit, device: DeviceModel, noise: NoiseConfig,
                         scale_factors: Sequence[float],
                         observable: Optional[PauliString] = None) -> DzneResult:
        """Expectation-level and state-level DZNE from one set of folded runs"""
        runs = self._folded_runs(circuit, device, noise, scale_factors)
        xs = np.asarray(scale_factors, dtype=float)

        stacked = np.stack([dist.probs for dist in runs])
        _, intercepts = np.polyfit(xs, stacked, 1)
        distribution = _finish(circuit.width, intercepts, "dzne_state")

        value = None
        values: List[float] = []
        if observable is not None:
            values = [expectation(dist, observable) for dist in runs]
            value = linear_intercept(scale_factors, values)
            logger.info(f"DZNE: expectations {[round(v, 6) for v in values]} -> {value:.6f}")
        return DzneResult(expectation=value, distribution=distribution, scaled_values=values)

    def dzne_baseline(self, circuit: Circuit, device: DeviceModel, noise: NoiseConfig,
                      scale_factors: Sequence[float], observable: PauliString) -> float:
        """Extrapolated expectation of ``observable`` from globally folded circuits"""
        return self.dzne_extrapolate(circuit, device, noise, scale_factors, observable).expectation

    def dzne_state(self, circuit: Circuit, device: DeviceModel, noise: NoiseConfig,
                   scale_factors: Sequence[float]) -> Distribution:
        """Per-state DZNE, clamped and renormalized"""
        return self.dzne_extrapolate(circuit, device, noise, scale_factors).distribution
