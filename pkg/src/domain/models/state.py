from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple
import math

import numpy as np

from .errors import MitigationError, SimulationError, ZeroReliabilityError


def bitstring(index: int, n: int) -> str:
    """Basis-state label with qubit 0 leftmost"""
    return format(index, f"0{n}b")


@dataclass(frozen=True, eq=False)
class DensityState:
    """2^n x 2^n density matrix"""
    n: int
    matrix: np.ndarray

    def __post_init__(self):
        dim = 2 ** self.n
        matrix = np.asarray(self.matrix, dtype=complex)
        if matrix.shape != (dim, dim):
            raise SimulationError(f"density matrix shape {matrix.shape} does not match {self.n} qubits")
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def zero_state(cls, n: int) -> "DensityState":
        matrix = np.zeros((2 ** n, 2 ** n), dtype=complex)
        matrix[0, 0] = 1.0
        return cls(n, matrix)

    @classmethod
    def from_statevector(cls, psi) -> "DensityState":
        psi = np.asarray(psi, dtype=complex).reshape(-1)
        n = int(round(math.log2(psi.size)))
        return cls(n, np.outer(psi, psi.conj()))

    @classmethod
    def maximally_mixed(cls, n: int) -> "DensityState":
        return cls(n, np.eye(2 ** n, dtype=complex) / 2 ** n)

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.matrix)))

    def is_hermitian(self, atol: float = 1e-10) -> bool:
        return bool(np.allclose(self.matrix, self.matrix.conj().T, atol=atol))

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.matrix).min())

    def diagonal(self) -> np.ndarray:
        return np.real(np.diag(self.matrix)).copy()


@dataclass(frozen=True, eq=False)
class Distribution:
    """Probability vector over the 2^n computational basis states"""
    n: int
    probs: np.ndarray

    def __post_init__(self):
        probs = np.array(self.probs, dtype=float).reshape(-1)
        if probs.size != 2 ** self.n:
            raise SimulationError(f"distribution of length {probs.size} does not match {self.n} qubits")
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    @classmethod
    def from_dict(cls, n: int, values: Dict[str, float]) -> "Distribution":
        probs = np.zeros(2 ** n)
        for label, p in values.items():
            probs[int(label, 2)] = p
        return cls(n, probs)

    @classmethod
    def uniform(cls, n: int) -> "Distribution":
        return cls(n, np.full(2 ** n, 1.0 / 2 ** n))

    @classmethod
    def normalized(cls, n: int, values) -> "Distribution":
        """Clamp negatives to zero and rescale to unit mass"""
        values = np.clip(np.asarray(values, dtype=float), 0.0, None)
        total = values.sum()
        if not np.isfinite(total) or total <= 0:
            raise MitigationError("distribution has no positive mass to normalize")
        return cls(n, values / total)

    @property
    def total(self) -> float:
        return float(self.probs.sum())

    def is_valid(self, atol: float = 1e-9) -> bool:
        return bool((self.probs >= 0).all() and abs(self.total - 1.0) <= atol)

    def as_tensor(self) -> np.ndarray:
        return self.probs.reshape((2,) * self.n)

    def top_indices(self, k: Optional[int] = None) -> np.ndarray:
        """Indices of the k largest probabilities, ties by ascending index"""
        order = np.argsort(-self.probs, kind="stable")
        return order if k is None else order[:k]

    def top_states(self, k: int = 16) -> List[Tuple[str, float]]:
        return [(bitstring(int(i), self.n), float(self.probs[i])) for i in self.top_indices(k)]

    def as_dict(self, tol: float = 0.0) -> Dict[str, float]:
        return {
            bitstring(i, self.n): float(p) for i, p in enumerate(self.probs) if p > tol
        }

    def __getitem__(self, label: str) -> float:
        return float(self.probs[int(label, 2)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Distribution):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.probs, other.probs)

    __hash__ = None


@dataclass(frozen=True)
class Reliability:
    """Circuit success probability r and its noise scale mu = 1 - r"""
    r: float

    def __post_init__(self):
        if not 0.0 <= self.r <= 1.0:
            raise ValueError(f"reliability must be in [0, 1], got {self.r}")

    @property
    def mu(self) -> float:
        return 1.0 - self.r

    def require_positive(self) -> "Reliability":
        if self.r <= 0.0:
            raise ZeroReliabilityError("circuit reliability is 0; zero-noise extrapolation is undefined")
        return self

    @classmethod
    def geometric_mean(cls, values: List["Reliability"]) -> "Reliability":
        if not values:
            raise ValueError("geometric mean of no reliabilities")
        if any(v.r == 0.0 for v in values):
            return cls(0.0)
        return cls(float(math.exp(sum(math.log(v.r) for v in values) / len(values))))


@dataclass(frozen=True)
class RznePoint:
    """Observation at noise scale mu"""
    mu: float
    value: float

    def __post_init__(self):
        if not 0.0 <= self.mu <= 1.0:
            raise ValueError(f"mu must be in [0, 1], got {self.mu}")
