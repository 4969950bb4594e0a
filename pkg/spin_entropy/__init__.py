"""Entanglement entropy of two two-level atoms from one atom's mean spin vector."""

from .entropy import (
    EntropyReport,
    Entanglement,
    analyze,
    binary_entropy_bits,
    classify_entanglement,
    entropy_derivative,
    entropy_eigen,
    entropy_from_magnitude,
    reduced_eigenvalues,
)
from .errors import (
    CancellationError,
    DensityMatrixError,
    ExpectationValueError,
    InvalidArgumentError,
    NormalizationError,
    OutOfRangeError,
    PurityError,
    SchmidtInvariantError,
    SpinEntropyError,
    StateFileError,
)
from .measurement_sim import (
    AxisCounts,
    MeasurementEstimate,
    RngStream,
    SpinEstimate,
    estimate_entropy,
    estimate_mean_spin,
    estimator_study,
    haar_random_state,
    haar_random_states,
    haar_random_unitary,
    measure_mean_spin,
    simulate_counts,
)
from .qstate_core import (
    AXES,
    Axis,
    DensityMatrix1Q,
    MeanSpinVector,
    PureTwoQubitState,
    SchmidtCoefficients,
    SingleQubitState,
    apply_local_unitary,
    commutator,
    density_from_mean_spin,
    expectation_value,
    fidelity,
    mean_spin_from_coefficients,
    mean_spin_vector,
    partial_trace,
    spin_magnitude,
    spin_operator,
    state_from_coefficients,
    superpose,
    tensor_product_state,
    validate_constraints,
)
from .schmidt import (
    SchmidtDecomposition,
    is_product_state,
    reconstruct,
    schmidt_decompose,
    schmidt_probs_from_magnitude,
)
from .state_file import load_state, read_state_file, state_to_document

__version__ = "1.0.0"
