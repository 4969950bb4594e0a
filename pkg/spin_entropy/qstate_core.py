"""
State algebra for a pair of two-level atoms.

Amplitudes of a two-atom state are kept in the fixed basis order
[(+1/2, +1/2), (+1/2, -1/2), (-1/2, +1/2), (-1/2, -1/2)] with atom 1 first,
so index k = 2 * (atom 1 is -1/2) + (atom 2 is -1/2). Reshaping the
4-vector to 2x2 gives the coefficient matrix M[a][b], rows indexing atom 1.

All quantities use hbar = 1; spin components take the values +1/2 and -1/2.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import (
    CancellationError,
    DensityMatrixError,
    ExpectationValueError,
    InvalidArgumentError,
    NormalizationError,
    OutOfRangeError,
)

NORM_TOL = 1e-9
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-10
PSD_TOL = 1e-12
IMAG_RESIDUE_TOL = 1e-10
CANCELLATION_FLOOR = 1e-12
UNITARY_TOL = 1e-10
CONSTRAINT_TOL = 1e-10
MAGNITUDE_SLACK = 1e-12

BASIS_LABELS = ("++", "+-", "-+", "--")
ATOMS = (1, 2)


class Axis(str, Enum):
    X = "X"
    Y = "Y"
    Z = "Z"


AXES = (Axis.X, Axis.Y, Axis.Z)

_IDENTITY = np.eye(2, dtype=complex)
_SPIN_MATRICES = {
    Axis.X: 0.5 * np.array([[0, 1], [1, 0]], dtype=complex),
    Axis.Y: 0.5 * np.array([[0, -1j], [1j, 0]], dtype=complex),
    Axis.Z: 0.5 * np.array([[1, 0], [0, -1]], dtype=complex),
}
for _matrix in _SPIN_MATRICES.values():
    _matrix.setflags(write=False)


def as_axis(axis: Union[Axis, str]) -> Axis:
    try:
        return Axis(str(getattr(axis, "value", axis)).upper())
    except ValueError as error:
        raise InvalidArgumentError(f"unknown axis {axis!r}, expected X, Y or Z") from error


def check_atom(atom: int) -> int:
    if atom not in ATOMS:
        raise InvalidArgumentError(f"atom must be 1 or 2, got {atom!r}")
    return int(atom)


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class SingleQubitState:
    """amp_up * |+1/2> + amp_down * |-1/2>, normalized on construction."""

    amp_up: complex
    amp_down: complex

    def __post_init__(self) -> None:
        up, down = complex(self.amp_up), complex(self.amp_down)
        if not np.all(np.isfinite([up, down])):
            raise NormalizationError("single-atom amplitudes must be finite")
        norm = float(np.hypot(abs(up), abs(down)))
        if abs(norm - 1.0) > NORM_TOL:
            raise NormalizationError(
                f"single-atom state has norm {norm!r}, expected 1 within {NORM_TOL}"
            )
        object.__setattr__(self, "amp_up", up / norm)
        object.__setattr__(self, "amp_down", down / norm)

    @classmethod
    def from_amplitudes(
        cls, amp_up: complex, amp_down: complex, renormalize: bool = False
    ) -> "SingleQubitState":
        if renormalize:
            norm = float(np.hypot(abs(complex(amp_up)), abs(complex(amp_down))))
            if not norm > CANCELLATION_FLOOR:
                raise CancellationError("cannot renormalize a zero single-atom state")
            amp_up, amp_down = complex(amp_up) / norm, complex(amp_down) / norm
        return cls(amp_up, amp_down)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.amp_up, self.amp_down], dtype=complex)


SPIN_UP = SingleQubitState(1.0, 0.0)
SPIN_DOWN = SingleQubitState(0.0, 1.0)


@dataclass(frozen=True, eq=False)
class PureTwoQubitState:
    """Pure state of two atoms.

    ``raw_norm`` records the norm the amplitudes had before they were scaled to
    unit length, so renormalizations stay visible to callers.
    """

    amps: np.ndarray
    label: Optional[str] = None
    raw_norm: float = 1.0

    def __post_init__(self) -> None:
        amps = np.array(self.amps, dtype=complex).reshape(-1)
        if amps.shape != (4,):
            raise InvalidArgumentError(f"expected 4 amplitudes, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise NormalizationError("amplitudes must be finite")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_TOL:
            raise NormalizationError(
                f"state has norm {norm!r}, expected 1 within {NORM_TOL}"
            )
        object.__setattr__(self, "amps", _frozen(amps / norm))

    @classmethod
    def from_amplitudes(
        cls,
        amps: Sequence[complex],
        renormalize: bool = False,
        label: Optional[str] = None,
    ) -> "PureTwoQubitState":
        raw = np.array(amps, dtype=complex).reshape(-1)
        if not np.all(np.isfinite(raw)):
            raise NormalizationError("amplitudes must be finite")
        norm = float(np.linalg.norm(raw))
        if renormalize:
            if norm < CANCELLATION_FLOOR:
                raise CancellationError(f"cannot renormalize a state of norm {norm!r}")
            raw = raw / norm
        return cls(raw, label=label, raw_norm=norm)

    @property
    def matrix(self) -> np.ndarray:
        return self.amps.reshape(2, 2)

    @property
    def renormalized(self) -> bool:
        return abs(self.raw_norm - 1.0) > NORM_TOL


@dataclass(frozen=True, eq=False)
class SpinOperator:
    matrix: np.ndarray
    axis: Axis


@dataclass(frozen=True, eq=False)
class DensityMatrix1Q:
    """Reduced state of one atom: Hermitian, unit trace, positive semidefinite."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=complex)
        if matrix.shape != (2, 2):
            raise DensityMatrixError(f"expected a 2x2 matrix, got shape {matrix.shape}")
        if not np.all(np.isfinite(matrix)):
            raise DensityMatrixError("density matrix entries must be finite")
        asymmetry = float(np.max(np.abs(matrix - matrix.conj().T)))
        if asymmetry > HERMITIAN_TOL:
            raise DensityMatrixError(f"matrix is not Hermitian (deviation {asymmetry:.3e})")
        trace = complex(np.trace(matrix))
        if abs(trace - 1.0) > TRACE_TOL:
            raise DensityMatrixError(f"trace is {trace!r}, expected 1")
        matrix = 0.5 * (matrix + matrix.conj().T)
        smallest = float(np.linalg.eigvalsh(matrix)[0])
        if smallest < -PSD_TOL:
            raise DensityMatrixError(f"negative eigenvalue {smallest:.3e}")
        object.__setattr__(self, "matrix", _frozen(matrix))

    @property
    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues in descending order."""
        return np.linalg.eigvalsh(self.matrix)[::-1]


@dataclass(frozen=True)
class MeanSpinVector:
    jx: float
    jy: float
    jz: float

    def __post_init__(self) -> None:
        values = [float(self.jx), float(self.jy), float(self.jz)]
        if not np.all(np.isfinite(values)):
            raise OutOfRangeError("mean spin components must be finite")
        squared = sum(value * value for value in values)
        if squared > 0.25 + MAGNITUDE_SLACK:
            raise OutOfRangeError(
                f"mean spin vector of length {np.sqrt(squared):.12g} exceeds 1/2"
            )
        for name, value in zip(("jx", "jy", "jz"), values):
            object.__setattr__(self, name, value)

    def component(self, axis: Union[Axis, str]) -> float:
        return {Axis.X: self.jx, Axis.Y: self.jy, Axis.Z: self.jz}[as_axis(axis)]

    def as_array(self) -> np.ndarray:
        return np.array([self.jx, self.jy, self.jz])

    def as_list(self) -> List[float]:
        return [self.jx, self.jy, self.jz]


def spin_operator(axis: Union[Axis, str]) -> SpinOperator:
    axis = as_axis(axis)
    return SpinOperator(_SPIN_MATRICES[axis], axis)


def _as_matrix(operator: Any) -> np.ndarray:
    matrix = np.asarray(getattr(operator, "matrix", operator), dtype=complex)
    if matrix.shape != (2, 2):
        raise InvalidArgumentError(f"expected a 2x2 matrix, got shape {matrix.shape}")
    return matrix


def commutator(a: Any, b: Any) -> np.ndarray:
    a, b = _as_matrix(a), _as_matrix(b)
    return a @ b - b @ a


def _as_single(
    state: Union[SingleQubitState, Sequence[complex]], renormalize: bool
) -> SingleQubitState:
    if isinstance(state, SingleQubitState):
        return state
    amp_up, amp_down = state
    return SingleQubitState.from_amplitudes(amp_up, amp_down, renormalize=renormalize)


def tensor_product_state(
    s1: Union[SingleQubitState, Sequence[complex]],
    s2: Union[SingleQubitState, Sequence[complex]],
    renormalize: bool = False,
) -> PureTwoQubitState:
    s1, s2 = _as_single(s1, renormalize), _as_single(s2, renormalize)
    return PureTwoQubitState(np.kron(s1.vector, s2.vector))


def superpose(
    c1: float, p1: PureTwoQubitState, c2: float, p2: PureTwoQubitState
) -> PureTwoQubitState:
    """c1 * p1 + c2 * p2 with real weights.

    Orthogonal inputs must carry weights with c1^2 + c2^2 = 1. Overlapping
    inputs are renormalized and the pre-scaling norm is kept in ``raw_norm``.
    """
    c1, c2 = float(c1), float(c2)
    amps = c1 * p1.amps + c2 * p2.amps
    norm = float(np.linalg.norm(amps))
    if norm < CANCELLATION_FLOOR:
        raise CancellationError(f"superposition cancelled to norm {norm:.3e}")
    overlap = abs(complex(np.vdot(p1.amps, p2.amps)))
    weight = c1 * c1 + c2 * c2
    if overlap <= NORM_TOL and abs(weight - 1.0) > NORM_TOL:
        raise NormalizationError(
            f"weights give c1^2 + c2^2 = {weight!r} for orthogonal states, expected 1"
        )
    return PureTwoQubitState.from_amplitudes(amps, renormalize=True)


def partial_trace(psi: PureTwoQubitState, atom: int) -> DensityMatrix1Q:
    """Reduced density matrix of ``atom`` with the other atom traced out."""
    m = psi.matrix
    if check_atom(atom) == 1:
        rho = m @ m.conj().T
    else:
        rho = m.T @ m.conj()
    return DensityMatrix1Q(rho)


def mean_spin_vector(psi: PureTwoQubitState, atom: int) -> MeanSpinVector:
    rho = partial_trace(psi, atom).matrix
    components = []
    for axis in AXES:
        value = complex(np.trace(rho @ _SPIN_MATRICES[axis]))
        if abs(value.imag) > IMAG_RESIDUE_TOL:
            raise ExpectationValueError(
                f"<J_{axis.value}> of atom {atom} has imaginary part {value.imag:.3e}"
            )
        components.append(value.real)
    return MeanSpinVector(*components)


def _embed(operator: np.ndarray, atom: int) -> np.ndarray:
    if check_atom(atom) == 1:
        return np.kron(operator, _IDENTITY)
    return np.kron(_IDENTITY, operator)


def expectation_value(
    psi: PureTwoQubitState, axis: Union[Axis, str], atom: int
) -> complex:
    """<psi| J_axis (x) I |psi> (atom 1) or <psi| I (x) J_axis |psi> (atom 2)."""
    full = _embed(_SPIN_MATRICES[as_axis(axis)], atom)
    return complex(np.vdot(psi.amps, full @ psi.amps))


def spin_magnitude(j: Union[MeanSpinVector, Sequence[float]]) -> float:
    values = j.as_array() if isinstance(j, MeanSpinVector) else np.asarray(j, float)
    return float(np.sqrt(np.dot(values, values)))


def apply_local_unitary(
    psi: PureTwoQubitState, unitary: Any, atom: int
) -> PureTwoQubitState:
    u = _as_matrix(unitary)
    deviation = float(np.max(np.abs(u.conj().T @ u - _IDENTITY)))
    if deviation > UNITARY_TOL:
        raise InvalidArgumentError(f"matrix is not unitary (deviation {deviation:.3e})")
    return PureTwoQubitState(_embed(u, atom) @ psi.amps, label=psi.label)


def fidelity(a: PureTwoQubitState, b: PureTwoQubitState) -> float:
    return float(abs(complex(np.vdot(a.amps, b.amps))) ** 2)


def density_from_mean_spin(j: MeanSpinVector) -> DensityMatrix1Q:
    """The single-atom state fixed by a mean spin vector: I/2 + 2 j . J."""
    rho = 0.5 * _IDENTITY
    for axis in AXES:
        rho = rho + 2.0 * j.component(axis) * _SPIN_MATRICES[axis]
    return DensityMatrix1Q(rho)


@dataclass(frozen=True)
class SchmidtCoefficients:
    """The explicit product-basis form of a two-atom state.

    c1 and c2 are the real Schmidt weights; (c3, c4) and (c7, c8) are the
    components of atom 1's states u1 and u2, (c5, c6) and (c9, c10) those of
    atom 2's states v1 and v2, each over (|+1/2>, |-1/2>).
    """

    c1: float
    c2: float
    c3: complex
    c4: complex
    c5: complex
    c6: complex
    c7: complex
    c8: complex
    c9: complex
    c10: complex

    @property
    def u1(self) -> Tuple[complex, complex]:
        return complex(self.c3), complex(self.c4)

    @property
    def v1(self) -> Tuple[complex, complex]:
        return complex(self.c5), complex(self.c6)

    @property
    def u2(self) -> Tuple[complex, complex]:
        return complex(self.c7), complex(self.c8)

    @property
    def v2(self) -> Tuple[complex, complex]:
        return complex(self.c9), complex(self.c10)


def state_from_coefficients(
    coeffs: SchmidtCoefficients, renormalize: bool = False
) -> PureTwoQubitState:
    amps = coeffs.c1 * np.kron(coeffs.u1, coeffs.v1) + coeffs.c2 * np.kron(
        coeffs.u2, coeffs.v2
    )
    return PureTwoQubitState.from_amplitudes(amps, renormalize=renormalize)


def mean_spin_from_coefficients(
    coeffs: SchmidtCoefficients, atom: int
) -> MeanSpinVector:
    # Closed forms; cross terms drop out only when the partner atom's pair is orthogonal.
    if check_atom(atom) == 1:
        (a1, b1), (a2, b2) = coeffs.u1, coeffs.u2
    else:
        (a1, b1), (a2, b2) = coeffs.v1, coeffs.v2
    w1, w2 = coeffs.c1**2, coeffs.c2**2
    jx = 0.5 * (
        w1 * (a1 * b1.conjugate() + a1.conjugate() * b1)
        + w2 * (a2 * b2.conjugate() + a2.conjugate() * b2)
    )
    jy = (
        w1 * (a1.conjugate() * b1 - a1 * b1.conjugate())
        + w2 * (a2.conjugate() * b2 - a2 * b2.conjugate())
    ) / 2j
    jz = 0.5 * (w1 * (abs(a1) ** 2 - abs(b1) ** 2) + w2 * (abs(a2) ** 2 - abs(b2) ** 2))
    return MeanSpinVector(jx.real, jy.real, jz)


@dataclass(frozen=True)
class ConstraintCheck:
    name: str
    residual: float
    passed: bool


@dataclass(frozen=True)
class ConstraintReport:
    checks: Tuple[ConstraintCheck, ...]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> List[ConstraintCheck]:
        return [check for check in self.checks if not check.passed]

    def __getitem__(self, name: str) -> ConstraintCheck:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def to_dict(self) -> Dict[str, Dict[str, Any]]:
        return {
            check.name: {"residual": check.residual, "passed": check.passed}
            for check in self.checks
        }


def _normalized_overlap(a: Tuple[complex, complex], b: Tuple[complex, complex]) -> float:
    a_vec, b_vec = np.array(a, dtype=complex), np.array(b, dtype=complex)
    norms = float(np.linalg.norm(a_vec) * np.linalg.norm(b_vec))
    if norms == 0.0:
        return 1.0
    return abs(complex(np.vdot(a_vec, b_vec))) / norms


def validate_constraints(
    coeffs: SchmidtCoefficients, tol: float = CONSTRAINT_TOL
) -> ConstraintReport:
    """Report every normalization and orthogonality condition on the coefficients."""
    c3, c4, c5, c6, c7, c8, c9, c10 = (
        complex(value)
        for value in (
            coeffs.c3,
            coeffs.c4,
            coeffs.c5,
            coeffs.c6,
            coeffs.c7,
            coeffs.c8,
            coeffs.c9,
            coeffs.c10,
        )
    )
    residuals = [
        ("norm_u1", abs(abs(c3) ** 2 + abs(c4) ** 2 - 1.0)),
        ("norm_v1", abs(abs(c5) ** 2 + abs(c6) ** 2 - 1.0)),
        ("norm_u2", abs(abs(c7) ** 2 + abs(c8) ** 2 - 1.0)),
        ("norm_v2", abs(abs(c9) ** 2 + abs(c10) ** 2 - 1.0)),
        ("schmidt_norm", abs(coeffs.c1**2 + coeffs.c2**2 - 1.0)),
        ("u_orthogonality", abs(c3 * c7.conjugate() + c4 * c8.conjugate())),
        ("v_orthogonality", abs(c5 * c9.conjugate() + c6 * c10.conjugate())),
        ("u_modulus_c3_c8", abs(abs(c3) ** 2 - abs(c8) ** 2)),
        ("u_modulus_c4_c7", abs(abs(c4) ** 2 - abs(c7) ** 2)),
        ("v_modulus_c6_c9", abs(abs(c6) ** 2 - abs(c9) ** 2)),
        ("v_modulus_c5_c10", abs(abs(c5) ** 2 - abs(c10) ** 2)),
        ("u_inner_product", _normalized_overlap(coeffs.u1, coeffs.u2)),
        ("v_inner_product", _normalized_overlap(coeffs.v1, coeffs.v2)),
    ]
    return ConstraintReport(
        tuple(
            ConstraintCheck(name, float(residual), bool(residual <= tol))
            for name, residual in residuals
        )
    )
