"""
Entanglement entropy of a pure two-atom state, computed two independent ways:
from the eigenvalues of a reduced density matrix, and from the magnitude of a
single atom's mean spin vector. Entropies are in bits, with 0 log 0 = 0.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Tuple, Union

import numpy as np

from .errors import InvalidArgumentError, OutOfRangeError, PurityError
from .qstate_core import (
    DensityMatrix1Q,
    MeanSpinVector,
    PureTwoQubitState,
    mean_spin_vector,
    partial_trace,
    spin_magnitude,
)
from .schmidt import clamp_magnitude, schmidt_probs_from_magnitude

UNENTANGLED_EPS = 1e-9
PROBABILITY_TOL = 1e-12
PURITY_TOL = 1e-10


class Entanglement(str, Enum):
    ENTANGLED = "entangled"
    UNENTANGLED = "unentangled"


def binary_entropy_bits(p: float) -> float:
    p = float(p)
    if not np.isfinite(p) or p < -PROBABILITY_TOL or p > 1.0 + PROBABILITY_TOL:
        raise OutOfRangeError(f"probability {p!r} is outside [0, 1]")
    p = min(max(p, 0.0), 1.0)
    total = 0.0
    for x in (p, 1.0 - p):
        if x > 0.0:
            total -= x * float(np.log2(x))
    return total


def reduced_eigenvalues(
    rho: Union[DensityMatrix1Q, np.ndarray]
) -> Tuple[float, float]:
    """Closed-form eigenvalues (largest first) of a single-atom density matrix."""
    if not isinstance(rho, DensityMatrix1Q):
        rho = DensityMatrix1Q(rho)
    m = rho.matrix
    a, d, b = m[0, 0].real, m[1, 1].real, m[0, 1]
    half_trace = 0.5 * (a + d)
    # (Tr/2)^2 - det, written without the cancellation
    half_gap = float(np.sqrt(0.25 * (a - d) ** 2 + abs(b) ** 2))
    return (
        min(max(half_trace + half_gap, 0.0), 1.0),
        min(max(half_trace - half_gap, 0.0), 1.0),
    )


def entropy_eigen(rho: Union[DensityMatrix1Q, np.ndarray]) -> float:
    largest, _ = reduced_eigenvalues(rho)
    return binary_entropy_bits(largest)


def entropy_from_magnitude(r: float) -> float:
    p1, _ = schmidt_probs_from_magnitude(r)
    return binary_entropy_bits(p1)


def entropy_derivative(r: float) -> float:
    """dS/dr = log2((1/2 - r) / (1/2 + r)); -inf at r = 1/2."""
    r = clamp_magnitude(r)
    if r == 0.5:
        return float("-inf")
    return float(np.log2((0.5 - r) / (0.5 + r)))


def classify_entanglement(r: float, eps: float = UNENTANGLED_EPS) -> Entanglement:
    if not eps > 0.0:
        raise InvalidArgumentError(f"eps must be positive, got {eps!r}")
    if clamp_magnitude(r) >= 0.5 - eps:
        return Entanglement.UNENTANGLED
    return Entanglement.ENTANGLED


@dataclass(frozen=True)
class EntropyReport:
    s_eigen_atom1: float
    s_eigen_atom2: float
    s_from_magnitude: float
    magnitude_atom1: float
    magnitude_atom2: float
    entangled: bool
    mean_spin_atom1: MeanSpinVector
    mean_spin_atom2: MeanSpinVector
    schmidt_probabilities: Tuple[float, float]

    def __post_init__(self) -> None:
        gap = abs(self.s_eigen_atom1 - self.s_eigen_atom2)
        if gap > PURITY_TOL:
            raise PurityError(
                f"marginal entropies differ by {gap:.3e}; the global state is not pure"
            )

    @property
    def classification(self) -> Entanglement:
        return Entanglement.ENTANGLED if self.entangled else Entanglement.UNENTANGLED

    def to_dict(self) -> Dict[str, Any]:
        return {
            "s_eigen_atom1": self.s_eigen_atom1,
            "s_eigen_atom2": self.s_eigen_atom2,
            "s_from_magnitude": self.s_from_magnitude,
            "magnitude_atom1": self.magnitude_atom1,
            "magnitude_atom2": self.magnitude_atom2,
            "entangled": self.entangled,
            "classification": self.classification.value,
            "mean_spin_atom1": self.mean_spin_atom1.as_list(),
            "mean_spin_atom2": self.mean_spin_atom2.as_list(),
            "schmidt_probabilities": list(self.schmidt_probabilities),
        }


def analyze(psi: PureTwoQubitState, eps: float = UNENTANGLED_EPS) -> EntropyReport:
    rho1, rho2 = partial_trace(psi, 1), partial_trace(psi, 2)
    j1, j2 = mean_spin_vector(psi, 1), mean_spin_vector(psi, 2)
    r1, r2 = spin_magnitude(j1), spin_magnitude(j2)
    return EntropyReport(
        s_eigen_atom1=entropy_eigen(rho1),
        s_eigen_atom2=entropy_eigen(rho2),
        s_from_magnitude=entropy_from_magnitude(r1),
        magnitude_atom1=r1,
        magnitude_atom2=r2,
        entangled=classify_entanglement(r1, eps) is Entanglement.ENTANGLED,
        mean_spin_atom1=j1,
        mean_spin_atom2=j2,
        schmidt_probabilities=reduced_eigenvalues(rho1),
    )
