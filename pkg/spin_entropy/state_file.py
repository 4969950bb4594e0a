"""
State files: JSON objects holding four [re, im] amplitude pairs in the basis
order (++), (+-), (-+), (--) and an optional label.

    {"label": "weighted", "amplitudes": [[0.8660254037844386, 0], [0, 0], [0, 0], [0.5, 0]]}
"""

import json
import numbers
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .errors import NormalizationError, StateFileError
from .qstate_core import PureTwoQubitState

STATE_FILE_NORM_TOL = 1e-6
AMPLITUDE_COUNT = 4


@dataclass(frozen=True)
class StateFile:
    amplitudes: Tuple[Tuple[float, float], ...]
    label: Optional[str] = None

    @property
    def norm(self) -> float:
        return float(np.linalg.norm([complex(re, im) for re, im in self.amplitudes]))


def _is_number(value: Any) -> bool:
    return (
        isinstance(value, numbers.Real)
        and not isinstance(value, bool)
        and bool(np.isfinite(value))
    )


def parse_state_document(document: Any) -> StateFile:
    if not isinstance(document, dict):
        raise StateFileError("<root>", "expected a JSON object")
    if "amplitudes" not in document:
        raise StateFileError("amplitudes", "missing")
    raw = document["amplitudes"]
    if not isinstance(raw, list) or len(raw) != AMPLITUDE_COUNT:
        found = len(raw) if isinstance(raw, list) else type(raw).__name__
        raise StateFileError(
            "amplitudes", f"expected {AMPLITUDE_COUNT} [re, im] pairs, got {found}"
        )
    pairs = []
    for index, pair in enumerate(raw):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(_is_number(value) for value in pair)
        ):
            raise StateFileError(
                f"amplitudes[{index}]", "expected an [re, im] pair of finite numbers"
            )
        pairs.append((float(pair[0]), float(pair[1])))
    label = document.get("label")
    if label is not None and not isinstance(label, str):
        raise StateFileError("label", "expected a string")
    return StateFile(tuple(pairs), label)


def read_state_file(path: str) -> StateFile:
    try:
        with open(path, encoding="utf-8") as handle:
            document = json.load(handle)
    except OSError as error:
        raise StateFileError(path, f"cannot read file ({error.strerror or error})") from error
    except json.JSONDecodeError as error:
        raise StateFileError(path, f"invalid JSON ({error.msg} at line {error.lineno})") from error
    return parse_state_document(document)


def load_state(state_file: StateFile, renormalize: bool = False) -> PureTwoQubitState:
    """Build the state, allowing STATE_FILE_NORM_TOL of rounding in the file.

    Beyond that tolerance the file is rejected unless ``renormalize`` is set;
    the returned state's ``raw_norm`` shows what was corrected.
    """
    norm = state_file.norm
    if norm == 0.0:
        raise NormalizationError("state file amplitudes are all zero")
    if abs(norm - 1.0) > STATE_FILE_NORM_TOL and not renormalize:
        raise NormalizationError(
            f"state norm is {norm:.12g}, more than {STATE_FILE_NORM_TOL:g} from 1 "
            "(use --renormalize to rescale)"
        )
    amps = [complex(re, im) for re, im in state_file.amplitudes]
    return PureTwoQubitState.from_amplitudes(
        amps, renormalize=True, label=state_file.label
    )


def state_to_document(state: PureTwoQubitState) -> Dict[str, Any]:
    amplitudes: List[List[float]] = [
        [float(amp.real), float(amp.imag)] for amp in state.amps
    ]
    document: Dict[str, Any] = {"amplitudes": amplitudes}
    if state.label is not None:
        document["label"] = state.label
    return document
