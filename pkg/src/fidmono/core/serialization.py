"""JSON state files.

Format::

    {"kind": "pure" | "mixed", "n_qubits": n, "data": [...]}

Complex numbers are ``[re, im]`` pairs. Pure data is a flat amplitude list,
mixed data a row-major list of rows. Floats are written with ``repr``
precision, so a write/read cycle is exact.
"""

import json
from pathlib import Path

import numpy as np

from ..errors import InputError
from .states import DensityMatrix, PureState, State


def _encode(z: complex) -> list:
    return [float(z.real), float(z.imag)]


def _decode(pair) -> complex:
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise InputError(f"complex entry must be [re, im], got {pair!r}")
    re, im = pair
    if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in (re, im)):
        raise InputError(f"complex entry must hold two numbers, got {pair!r}")
    return complex(re, im)


def state_to_dict(state: State) -> dict:
    if isinstance(state, PureState):
        return {"kind": "pure", "n_qubits": state.n_qubits, "data": [_encode(z) for z in state.amplitudes]}
    if isinstance(state, DensityMatrix):
        return {
            "kind": "mixed",
            "n_qubits": state.n_qubits,
            "data": [[_encode(z) for z in row] for row in state.matrix],
        }
    raise InputError(f"cannot serialize {type(state).__name__}")


def state_from_dict(obj) -> State:
    if not isinstance(obj, dict):
        raise InputError("state document must be a JSON object")
    missing = {"kind", "n_qubits", "data"} - obj.keys()
    if missing:
        raise InputError(f"state document missing fields: {sorted(missing)}")
    kind, n, data = obj["kind"], obj["n_qubits"], obj["data"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError(f"n_qubits must be a positive integer, got {n!r}")
    if not isinstance(data, list):
        raise InputError("data must be a list")
    d = 2**n
    if kind == "pure":
        if len(data) != d:
            raise InputError(f"pure data has {len(data)} amplitudes, expected {d}")
        return PureState(np.array([_decode(z) for z in data]))
    if kind == "mixed":
        if len(data) != d or any(not isinstance(row, list) or len(row) != d for row in data):
            raise InputError(f"mixed data must be a {d}x{d} list of rows")
        return DensityMatrix.validated(np.array([[_decode(z) for z in row] for row in data]))
    raise InputError(f"kind must be 'pure' or 'mixed', got {kind!r}")


def dumps_state(state: State) -> str:
    return json.dumps(state_to_dict(state))


def loads_state(text: str) -> State:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed state JSON: {exc}") from exc
    return state_from_dict(obj)


def save_state(state: State, path) -> None:
    Path(path).write_text(dumps_state(state) + "\n")


def load_state(path) -> State:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return loads_state(text)
