"""JSON state files and report documents.

A state file looks like::

    {"order": "lex", "amps": [[re, im], ... 8 pairs ...]}

``order`` may also be ``"paper"`` (c1..c8) when reading; writers always emit
``"lex"``.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Union

from .statevec import PureState, StateError

ORDERS = ("lex", "paper")
_MIXED_KEYS = ("rho", "density_matrix", "dm")


def state_to_dict(state: PureState) -> dict:
    return {"order": "lex",
            "amps": [[float(a.real), float(a.imag)] for a in state.amps]}


def state_from_dict(doc: Any, *, normalize: bool = False) -> PureState:
    if not isinstance(doc, dict):
        raise StateError("state: expected a JSON object")
    for key in _MIXED_KEYS:
        if key in doc:
            raise StateError(f"{key}: mixed states are not supported; give pure-state amps")
    order = doc.get("order", "lex")
    if order not in ORDERS:
        raise StateError(f"order: must be one of {ORDERS}, got {order!r}")
    amps = doc.get("amps")
    if not isinstance(amps, list) or len(amps) != 8:
        raise StateError("amps: expected a list of 8 [re, im] pairs")
    values = []
    for k, pair in enumerate(amps):
        if (not isinstance(pair, (list, tuple)) or len(pair) != 2
                or not all(isinstance(x, (int, float)) for x in pair)):
            raise StateError(f"amps[{k}]: expected a [re, im] pair of numbers")
        values.append(complex(pair[0], pair[1]))
    if order == "paper":
        return PureState.from_paper(values, normalize=normalize)
    return PureState(values, normalize=normalize)


def read_state(path: Union[str, Path], *, normalize: bool = False) -> PureState:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise StateError(f"file: cannot read {path}: {exc.strerror or exc}") from exc
    return parse_state(text, normalize=normalize)


def parse_state(text: str, *, normalize: bool = False) -> PureState:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateError(f"file: invalid JSON ({exc.msg})") from exc
    return state_from_dict(doc, normalize=normalize)


def write_state(state: PureState, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(state_to_dict(state)) + "\n")


def _clean(obj: Any) -> Any:
    # absent / non-finite values become null
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def dumps(doc: Any) -> str:
    return json.dumps(_clean(doc), indent=2, allow_nan=False)
