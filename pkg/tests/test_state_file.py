import json

import numpy as np
import pytest

from spin_entropy.errors import NormalizationError, StateFileError
from spin_entropy.state_file import (
    StateFile,
    load_state,
    parse_state_document,
    read_state_file,
    state_to_document,
)

from conftest import SQRT_HALF


def test_parse_valid_document():
    state_file = parse_state_document(
        {"label": "bell", "amplitudes": [[0, 0], [SQRT_HALF, 0], [-SQRT_HALF, 0], [0, 0]]}
    )
    assert state_file.label == "bell"
    assert state_file.amplitudes[1] == (SQRT_HALF, 0.0)
    assert state_file.norm == pytest.approx(1.0)


@pytest.mark.parametrize(
    "document, field",
    [
        ([1, 2, 3, 4], "<root>"),
        ({"label": "x"}, "amplitudes"),
        ({"amplitudes": [[1, 0], [0, 0], [0, 0]]}, "amplitudes"),
        ({"amplitudes": "1,0,0,0"}, "amplitudes"),
        ({"amplitudes": [[1, 0], [0, 0], [0, "0"], [0, 0]]}, "amplitudes[2]"),
        ({"amplitudes": [[1, 0], [0], [0, 0], [0, 0]]}, "amplitudes[1]"),
        ({"amplitudes": [[1, 0], [0, 0], [0, 0], [True, 0]]}, "amplitudes[3]"),
        ({"amplitudes": [[float("nan"), 0], [0, 0], [0, 0], [0, 0]]}, "amplitudes[0]"),
        ({"amplitudes": [[1, 0], [0, 0], [0, 0], [0, 0]], "label": 7}, "label"),
    ],
)
def test_parse_rejects_malformed_documents(document, field):
    with pytest.raises(StateFileError) as excinfo:
        parse_state_document(document)
    assert excinfo.value.field == field
    assert str(excinfo.value).startswith(f"{field}: ")


def test_read_missing_file(tmp_path):
    with pytest.raises(StateFileError):
        read_state_file(str(tmp_path / "missing.json"))


def test_read_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(StateFileError) as excinfo:
        read_state_file(str(path))
    assert "invalid JSON" in str(excinfo.value)


def test_read_state_file(write_state):
    path = write_state([(0.6, 0), (0, 0), (0, 0.8), (0, 0)], label="tilted")
    state_file = read_state_file(path)
    assert state_file.label == "tilted"
    assert state_file.amplitudes[2] == (0.0, 0.8)


def test_load_tolerates_rounding_in_file():
    state_file = StateFile(((0.7071068, 0.0), (0.0, 0.0), (0.0, 0.0), (0.7071068, 0.0)))
    psi = load_state(state_file)
    assert np.linalg.norm(psi.amps) == pytest.approx(1.0, abs=1e-15)


def test_load_rejects_large_norm_error_without_flag():
    state_file = StateFile(((1.1, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0)))
    with pytest.raises(NormalizationError):
        load_state(state_file)
    psi = load_state(state_file, renormalize=True)
    assert psi.raw_norm == pytest.approx(1.1)
    np.testing.assert_allclose(psi.amps, [1, 0, 0, 0])


def test_load_rejects_zero_state():
    state_file = StateFile(((0.0, 0.0),) * 4)
    with pytest.raises(NormalizationError):
        load_state(state_file, renormalize=True)


def test_document_round_trip(weighted_state, tmp_path):
    path = tmp_path / "weighted.json"
    path.write_text(json.dumps(state_to_document(weighted_state)), encoding="utf-8")
    psi = load_state(read_state_file(str(path)))
    assert psi.label == "weighted"
    np.testing.assert_allclose(psi.amps, weighted_state.amps, atol=1e-15)
