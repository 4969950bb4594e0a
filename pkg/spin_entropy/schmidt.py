"""
Schmidt decomposition of a pure two-atom state and its inverse.

The 2x2 case is solved in closed form from the atom-1 reduced state M M^dagger
instead of a general SVD routine. Phase convention: the larger-magnitude
component of each u_i is real and nonnegative; the compensating phase lives in
the matching v_i.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import OutOfRangeError, SchmidtInvariantError
from .qstate_core import PureTwoQubitState, SingleQubitState

SCHMIDT_TOL = 1e-10
DEGENERACY_TOL = 1e-10
RANGE_TOL = 1e-12


@dataclass(frozen=True)
class SchmidtDecomposition:
    """psi = c1 * (u1 (x) v1) + c2 * (u2 (x) v2) with c1 >= c2 >= 0.

    ``degenerate`` is set when c1 and c2 coincide within DEGENERACY_TOL; the
    local bases are then not unique.
    """

    c1: float
    c2: float
    u1: SingleQubitState
    u2: SingleQubitState
    v1: SingleQubitState
    v2: SingleQubitState
    degenerate: bool = False

    @property
    def probabilities(self) -> Tuple[float, float]:
        return self.c1**2, self.c2**2

    def check_invariants(self) -> None:
        if self.c2 < -RANGE_TOL or self.c1 < self.c2 - RANGE_TOL:
            raise SchmidtInvariantError(
                f"coefficients must satisfy c1 >= c2 >= 0, got ({self.c1!r}, {self.c2!r})"
            )
        total = self.c1**2 + self.c2**2
        if abs(total - 1.0) > SCHMIDT_TOL:
            raise SchmidtInvariantError(f"c1^2 + c2^2 = {total!r}, expected 1")
        for name, first, second in (
            ("u", self.u1, self.u2),
            ("v", self.v1, self.v2),
        ):
            overlap = abs(complex(np.vdot(first.vector, second.vector)))
            if overlap > SCHMIDT_TOL:
                raise SchmidtInvariantError(
                    f"{name}1 and {name}2 are not orthogonal (overlap {overlap:.3e})"
                )


def _phase_fix(vector: np.ndarray) -> np.ndarray:
    pivot = vector[0] if abs(vector[0]) >= abs(vector[1]) else vector[1]
    return vector * (np.conj(pivot) / abs(pivot))


def _complement(vector: np.ndarray) -> np.ndarray:
    return np.array([-np.conj(vector[1]), np.conj(vector[0])])


def _leading_eigenvector(h: np.ndarray) -> np.ndarray:
    a, d, b = h[0, 0].real, h[1, 1].real, h[0, 1]
    half_gap = float(np.sqrt(0.25 * (a - d) ** 2 + abs(b) ** 2))
    top = 0.5 * (a + d) + half_gap
    # pick the row of (h - top) with the larger pivot
    if a >= d:
        vector = np.array([top - d, np.conj(b)], dtype=complex)
    else:
        vector = np.array([b, top - a], dtype=complex)
    norm = float(np.linalg.norm(vector))
    if norm == 0.0:
        return np.array([1.0, 0.0], dtype=complex)
    return vector / norm


def schmidt_decompose(psi: PureTwoQubitState) -> SchmidtDecomposition:
    m = psi.matrix
    u1 = _phase_fix(_leading_eigenvector(m @ m.conj().T))
    # u_i^dagger M = c_i v_i^T
    w1 = m.T @ u1.conj()
    c1 = float(np.linalg.norm(w1))
    v1 = w1 / c1

    u2 = _phase_fix(_complement(u1))
    v2 = _complement(v1)
    projection = complex(np.vdot(v2, m.T @ u2.conj()))
    c2 = abs(projection)
    if c2 > 0.0:
        v2 = v2 * (projection / c2)

    return SchmidtDecomposition(
        c1=c1,
        c2=c2,
        u1=SingleQubitState(*u1),
        u2=SingleQubitState(*u2),
        v1=SingleQubitState(*v1),
        v2=SingleQubitState(*v2),
        degenerate=bool(c1 - c2 <= DEGENERACY_TOL),
    )


def reconstruct(d: SchmidtDecomposition) -> PureTwoQubitState:
    d.check_invariants()
    amps = d.c1 * np.kron(d.u1.vector, d.v1.vector) + d.c2 * np.kron(
        d.u2.vector, d.v2.vector
    )
    return PureTwoQubitState(amps)


def clamp_magnitude(r: float) -> float:
    """Clamp a mean-spin magnitude into [0, 1/2], rejecting real overshoot."""
    r = float(r)
    if not np.isfinite(r) or r < -RANGE_TOL or r > 0.5 + RANGE_TOL:
        raise OutOfRangeError(f"mean spin magnitude {r!r} is outside [0, 1/2]")
    return min(max(r, 0.0), 0.5)


def schmidt_probs_from_magnitude(r: float) -> Tuple[float, float]:
    """(c1^2, c2^2) = (1/2 + r, 1/2 - r); the pair sums to exactly 1."""
    p1 = 0.5 + clamp_magnitude(r)
    return p1, 1.0 - p1


def is_product_state(psi: PureTwoQubitState, eps: float = 1e-9) -> bool:
    """True when the smaller Schmidt weight c2^2 is at most ``eps``."""
    _, p2 = schmidt_decompose(psi).probabilities
    return p2 <= eps
