"""
Shot sampling and diagonal observables on distributions.
"""

import numpy as np

from ..models.circuit import PauliString
from ..models.errors import ObservableError
from ..models.state import Distribution


def sample_counts(dist: Distribution, shots: int, seed: int) -> Distribution:
    """Empirical frequencies of ``shots`` multinomial draws"""
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    rng = np.random.default_rng(seed)
    probs = np.clip(dist.probs, 0.0, None)
    counts = rng.multinomial(shots, probs / probs.sum())
    return Distribution(dist.n, counts / shots)


def parity_signs(n: int, positions) -> np.ndarray:
    """(-1)^(parity of the bits at ``positions``) for every basis index"""
    indices = np.arange(2 ** n)
    parity = np.zeros(2 ** n, dtype=np.int64)
    for q in positions:
        parity ^= (indices >> (n - 1 - q)) & 1
    return 1 - 2 * parity


def expectation(dist: Distribution, obs: PauliString) -> float:
    if not obs.is_diagonal:
        raise ObservableError(f"observable {obs.label} is not diagonal; only I and Z are supported")
    if len(obs) != dist.n:
        raise ObservableError(f"observable {obs.label} has length {len(obs)}, distribution has {dist.n} qubits")
    return float(np.dot(dist.probs, parity_signs(dist.n, obs.z_positions())))
