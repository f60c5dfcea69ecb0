"""
Evaluation metrics for mitigated results.
"""

import numpy as np

from ..models.errors import DistributionWidthError, ZeroNoisyError
from ..models.state import Distribution


def abe(ideal: float, observed: float) -> float:
    """Absolute observable error"""
    return abs(ideal - observed)


def abr(ideal: float, mitigated: float, noisy: float) -> float:
    """Mitigated error over unmitigated error; below 1 means the mitigation helped"""
    noisy_error = abs(ideal - noisy)
    if noisy_error == 0.0:
        raise ZeroNoisyError("ideal and noisy expectations are equal; error ratio is undefined")
    return abs(ideal - mitigated) / noisy_error


def _check_widths(p: Distribution, q: Distribution):
    if p.n != q.n:
        raise DistributionWidthError(f"distributions have different widths: {p.n} and {q.n}")


def hellinger_fidelity(p: Distribution, q: Distribution) -> float:
    _check_widths(p, q)
    overlap = float(np.sum(np.sqrt(np.clip(p.probs, 0, None) * np.clip(q.probs, 0, None))))
    return min(1.0, overlap ** 2)


def total_variation(p: Distribution, q: Distribution) -> float:
    _check_widths(p, q)
    return 0.5 * float(np.abs(p.probs - q.probs).sum())
