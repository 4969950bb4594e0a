import json

import numpy as np
import pytest

from spin_entropy.measurement_sim import RngStream, haar_random_states
from spin_entropy.qstate_core import PureTwoQubitState

SQRT_HALF = float(np.sqrt(0.5))
SINGLET_AMPS = [0.0, SQRT_HALF, -SQRT_HALF, 0.0]
PHI_PLUS_AMPS = [SQRT_HALF, 0.0, 0.0, SQRT_HALF]
WEIGHTED_AMPS = [np.sqrt(0.75), 0.0, 0.0, np.sqrt(0.25)]
WEIGHTED_ENTROPY = 0.8112781244591328
HAAR_SAMPLES = 10_000
HAAR_SEED = 20_240_917
BELL_AMPS = {"bell": SINGLET_AMPS, "phi-plus": PHI_PLUS_AMPS}


@pytest.fixture
def bell_state():
    return PureTwoQubitState.from_amplitudes(SINGLET_AMPS, label="bell")


@pytest.fixture
def phi_plus_state():
    return PureTwoQubitState.from_amplitudes(PHI_PLUS_AMPS, label="phi-plus")


@pytest.fixture(params=sorted(BELL_AMPS))
def maximally_entangled_state(request):
    """Each Bell state in turn: the singlet and (|++> + |-->)/sqrt(2)."""
    return PureTwoQubitState.from_amplitudes(BELL_AMPS[request.param], label=request.param)


@pytest.fixture
def product_state():
    return PureTwoQubitState.from_amplitudes([1.0, 0.0, 0.0, 0.0], label="up-up")


@pytest.fixture
def weighted_state():
    return PureTwoQubitState.from_amplitudes(WEIGHTED_AMPS, label="weighted")


@pytest.fixture(scope="session")
def haar_states():
    return list(haar_random_states(HAAR_SAMPLES, RngStream(HAAR_SEED)))


@pytest.fixture
def write_state(tmp_path):
    """Write a state file from (re, im) pairs and return its path as a string."""

    def _write(amplitudes, label=None, name="state.json"):
        document = {"amplitudes": [[float(re), float(im)] for re, im in amplitudes]}
        if label is not None:
            document["label"] = label
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding="utf-8")
        return str(path)

    return _write
