"""
Simulated projective readout of one atom's spin components.

Each axis is measured with ideal +1/2 / -1/2 outcomes drawn from the Born-rule
probability; the sample means estimate the mean spin vector, and the plug-in
magnitude feeds the entropy formula. Intervals use the delta method.

Random numbers come from numpy's counter-based Philox generator keyed by a
SeedSequence built from (seed, stream id), so every (seed, stream) pair replays
the same outcomes bit for bit.
"""

import sys
from dataclasses import dataclass
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from tqdm import tqdm

from .entropy import (
    UNENTANGLED_EPS,
    Entanglement,
    classify_entanglement,
    entropy_derivative,
    entropy_from_magnitude,
)
from .errors import InvalidArgumentError
from .qstate_core import (
    AXES,
    Axis,
    PureTwoQubitState,
    as_axis,
    mean_spin_vector,
    spin_magnitude,
)

INVERSE_TRANSFORM_MAX_SHOTS = 10_000
Z_95 = 1.96
MAX_SEED = 2**64 - 1

STUDY_COLUMNS = ["shots", "rmse", "mean_magnitude", "mean_entropy", "coverage"]
STUDY_BAR_FORMAT = "{desc:<12} {n_fmt}/{total_fmt}{unit} [{elapsed}, {rate_fmt}]"


def checked_count(value: Any, name: str, minimum: int = 1) -> int:
    if isinstance(value, bool) or int(value) != value or value < minimum:
        raise InvalidArgumentError(
            f"{name} must be an integer of at least {minimum}, got {value!r}"
        )
    return int(value)


@dataclass(frozen=True)
class RngStream:
    seed: int
    stream: int = 0

    def __post_init__(self) -> None:
        if isinstance(self.seed, bool) or not 0 <= int(self.seed) <= MAX_SEED:
            raise InvalidArgumentError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if isinstance(self.stream, bool) or int(self.stream) < 0:
            raise InvalidArgumentError(f"stream id must be nonnegative, got {self.stream!r}")
        object.__setattr__(self, "seed", int(self.seed))
        object.__setattr__(self, "stream", int(self.stream))

    def generator(self) -> np.random.Generator:
        sequence = np.random.SeedSequence(self.seed, spawn_key=(self.stream,))
        return np.random.Generator(np.random.Philox(sequence))

    def substream(self, stream: int) -> "RngStream":
        return RngStream(self.seed, stream)


@dataclass(frozen=True)
class AxisCounts:
    axis: Axis
    shots: int
    plus_count: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "axis", as_axis(self.axis))
        object.__setattr__(self, "shots", checked_count(self.shots, "shots"))
        plus_count = checked_count(self.plus_count, "plus_count", minimum=0)
        object.__setattr__(self, "plus_count", plus_count)
        if plus_count > self.shots:
            raise InvalidArgumentError(
                f"plus_count {self.plus_count!r} is outside [0, {self.shots}]"
            )

    @property
    def fraction(self) -> float:
        return self.plus_count / self.shots


@dataclass(frozen=True)
class AxisEstimate:
    axis: Axis
    value: float
    std_error: float


@dataclass(frozen=True)
class SpinEstimate:
    estimates: Tuple[AxisEstimate, AxisEstimate, AxisEstimate]
    counts: Tuple[AxisCounts, ...] = ()

    @property
    def components(self) -> np.ndarray:
        return np.array([estimate.value for estimate in self.estimates])

    @property
    def std_errors(self) -> np.ndarray:
        return np.array([estimate.std_error for estimate in self.estimates])


@dataclass(frozen=True)
class MeasurementEstimate:
    estimates: Tuple[AxisEstimate, AxisEstimate, AxisEstimate]
    counts: Tuple[AxisCounts, ...]
    raw_magnitude: float
    magnitude_estimate: float
    magnitude_std_error: float
    entropy_estimate: float
    entropy_interval: Tuple[float, float]
    entropy_std_error: Optional[float]
    classification: Entanglement
    total_shots: int
    seed: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        shots = {counts.axis.value: counts for counts in self.counts}
        axes = {}
        for estimate in self.estimates:
            entry: Dict[str, Any] = {
                "estimate": estimate.value,
                "std_error": estimate.std_error,
            }
            if estimate.axis.value in shots:
                entry["shots"] = shots[estimate.axis.value].shots
                entry["plus_count"] = shots[estimate.axis.value].plus_count
            axes[estimate.axis.value] = entry
        return {
            "axes": axes,
            "raw_magnitude": self.raw_magnitude,
            "magnitude_estimate": self.magnitude_estimate,
            "magnitude_std_error": self.magnitude_std_error,
            "entropy_estimate": self.entropy_estimate,
            "entropy_interval": list(self.entropy_interval),
            "entropy_std_error": self.entropy_std_error,
            "classification": self.classification.value,
            "total_shots": self.total_shots,
            "seed": self.seed,
        }


def axis_outcome_prob(
    psi: PureTwoQubitState, atom: int, axis: Union[Axis, str]
) -> float:
    """Probability of the +1/2 outcome, so that p - 1/2 is the mean outcome."""
    component = mean_spin_vector(psi, atom).component(axis)
    return min(max(0.5 + component, 0.0), 1.0)


def simulate_counts(
    psi: PureTwoQubitState,
    atom: int,
    axis: Union[Axis, str],
    shots: int,
    rng: RngStream,
) -> AxisCounts:
    """Binomial draw of +1/2 outcomes.

    Up to INVERSE_TRANSFORM_MAX_SHOTS shots every shot is drawn by inverse
    transform; above that a rounded normal approximation is used.
    """
    shots = checked_count(shots, "shots")
    p = axis_outcome_prob(psi, atom, axis)
    generator = rng.generator()
    if shots <= INVERSE_TRANSFORM_MAX_SHOTS:
        plus_count = int(np.count_nonzero(generator.random(shots) < p))
    else:
        spread = float(np.sqrt(shots * p * (1.0 - p)))
        plus_count = int(np.rint(shots * p + spread * generator.standard_normal()))
        plus_count = min(max(plus_count, 0), shots)
    return AxisCounts(as_axis(axis), shots, plus_count)


def estimate_mean_spin(
    cx: AxisCounts, cy: AxisCounts, cz: AxisCounts
) -> SpinEstimate:
    counts = (cx, cy, cz)
    for expected, axis_counts in zip(AXES, counts):
        if axis_counts.axis is not expected:
            raise InvalidArgumentError(
                f"expected counts for axis {expected.value}, got {axis_counts.axis.value}"
            )
    estimates = tuple(
        AxisEstimate(
            axis_counts.axis,
            axis_counts.fraction - 0.5,
            float(
                np.sqrt(axis_counts.fraction * (1.0 - axis_counts.fraction) / axis_counts.shots)
            ),
        )
        for axis_counts in counts
    )
    return SpinEstimate(estimates, counts)  # type: ignore[arg-type]


def estimate_entropy(est: SpinEstimate, seed: Optional[int] = None) -> MeasurementEstimate:
    values, errors = est.components, est.std_errors
    raw = float(np.sqrt(np.dot(values, values)))
    combined = float(np.sqrt(np.dot(errors, errors)))
    if raw > 0.0:
        # gradient of |j| is j / |j|
        magnitude_se = float(np.sqrt(np.dot((values / raw) ** 2, errors**2)))
    else:
        magnitude_se = combined

    magnitude = min(raw, 0.5)
    entropy = entropy_from_magnitude(magnitude)

    r_low = min(max(raw - Z_95 * magnitude_se, 0.0), 0.5)
    r_high = min(max(raw + Z_95 * magnitude_se, 0.0), 0.5)
    low, high = entropy_from_magnitude(r_high), entropy_from_magnitude(r_low)
    if raw < combined:
        # delta method degenerates at r = 0
        high = 1.0
    low = min(max(min(low, entropy), 0.0), 1.0)
    high = min(max(max(high, entropy), 0.0), 1.0)

    entropy_se: Optional[float] = 0.0
    if magnitude_se > 0.0:
        slope = abs(entropy_derivative(magnitude))
        entropy_se = slope * magnitude_se if np.isfinite(slope) else None

    return MeasurementEstimate(
        estimates=est.estimates,
        counts=est.counts,
        raw_magnitude=raw,
        magnitude_estimate=magnitude,
        magnitude_std_error=magnitude_se,
        entropy_estimate=entropy,
        entropy_interval=(low, high),
        entropy_std_error=entropy_se,
        classification=classify_entanglement(
            magnitude, max(Z_95 * magnitude_se, UNENTANGLED_EPS)
        ),
        total_shots=sum(axis_counts.shots for axis_counts in est.counts),
        seed=seed,
    )


def measure_mean_spin(
    psi: PureTwoQubitState, atom: int, shots: int, seed: int
) -> MeasurementEstimate:
    """Equal shots on X, Y and Z, each axis on its own stream (0, 1, 2) of ``seed``."""
    base = RngStream(seed)
    counts = [
        simulate_counts(psi, atom, axis, shots, base.substream(index))
        for index, axis in enumerate(AXES)
    ]
    return estimate_entropy(estimate_mean_spin(*counts), seed=seed)


def haar_random_states(count: int, rng: RngStream) -> Iterator[PureTwoQubitState]:
    generator = rng.generator()
    for _ in range(count):
        amps = generator.standard_normal(4) + 1j * generator.standard_normal(4)
        yield PureTwoQubitState.from_amplitudes(amps, renormalize=True)


def haar_random_state(rng: RngStream) -> PureTwoQubitState:
    return next(haar_random_states(1, rng))


def haar_random_unitary(rng: RngStream) -> np.ndarray:
    generator = rng.generator()
    z = generator.standard_normal((2, 2)) + 1j * generator.standard_normal((2, 2))
    q, r = np.linalg.qr(z / np.sqrt(2.0))
    diagonal = np.diag(r)
    return q * (diagonal / np.abs(diagonal))


def estimator_study(
    psi: PureTwoQubitState,
    atom: int,
    shot_grid: Sequence[int],
    n_seeds: int,
    base_seed: int = 0,
    progress: bool = False,
) -> pd.DataFrame:
    """RMSE, mean estimates and 95% interval coverage per shot count.

    Runs seeds base_seed .. base_seed + n_seeds - 1 at every shot count.
    """
    if n_seeds < 1:
        raise InvalidArgumentError(f"n_seeds must be positive, got {n_seeds!r}")
    exact_magnitude = spin_magnitude(mean_spin_vector(psi, atom))
    exact_entropy = entropy_from_magnitude(exact_magnitude)

    rows: List[Dict[str, Any]] = []
    with tqdm(
        total=len(shot_grid) * n_seeds,
        desc="Simulating",
        unit=" runs",
        file=sys.stderr,
        disable=not progress,
        leave=False,
        bar_format=STUDY_BAR_FORMAT,
    ) as bar:
        for shots in shot_grid:
            magnitudes, entropies, covered = [], [], 0
            for offset in range(n_seeds):
                estimate = measure_mean_spin(psi, atom, shots, base_seed + offset)
                magnitudes.append(estimate.magnitude_estimate)
                entropies.append(estimate.entropy_estimate)
                low, high = estimate.entropy_interval
                covered += int(low <= exact_entropy <= high)
                bar.update(1)
            errors = np.asarray(magnitudes) - exact_magnitude
            rows.append(
                {
                    "shots": int(shots),
                    "rmse": float(np.sqrt(np.mean(errors**2))),
                    "mean_magnitude": float(np.mean(magnitudes)),
                    "mean_entropy": float(np.mean(entropies)),
                    "coverage": covered / n_seeds,
                }
            )
    return pd.DataFrame(rows, columns=STUDY_COLUMNS)
