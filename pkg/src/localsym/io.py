"""JSON file formats for states, chains, and report envelopes.

State file: {"n": int, "amplitudes": [[re, im], ...]} with 2**n entries
in big-endian index order (qubit 1 = most significant bit).
Chain file: {"n": int, "group": "G"|"K"|"Gt"|"Kt",
"factors": [[[re, im] x2] x2 row-major, x n]} plus an optional
"scalar": [re, im].

Doubles are emitted with repr-exact precision, so a write/read round
trip is bit-exact.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .states import PureState, LocalOperatorChain

__all__ = [
    "state_to_dict", "state_from_dict", "write_state", "read_state",
    "chain_to_dict", "chain_from_dict", "write_chain", "read_chain",
    "complex_pair", "jsonify",
]


def complex_pair(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def state_to_dict(psi: PureState) -> dict:
    return {"n": psi.n, "amplitudes": [complex_pair(a) for a in psi.amplitudes]}


def state_from_dict(data: dict) -> PureState:
    n = int(data["n"])
    amps = data["amplitudes"]
    if len(amps) != 2**n:
        raise ValueError(f"state file: expected {2**n} amplitudes, got {len(amps)}")
    vec = np.array([complex(re, im) for re, im in amps])
    return PureState(n, vec)


def write_state(psi: PureState, path) -> None:
    with open(path, "w") as fh:
        json.dump(state_to_dict(psi), fh)
        fh.write("\n")


def read_state(path) -> PureState:
    with open(path) as fh:
        return state_from_dict(json.load(fh))


def chain_to_dict(chain: LocalOperatorChain) -> dict:
    return {
        "n": chain.n,
        "group": chain.group_tag,
        "factors": [[[complex_pair(chain.factors[k, i, j]) for j in (0, 1)]
                     for i in (0, 1)] for k in range(chain.n)],
        "scalar": complex_pair(chain.scalar),
    }


def chain_from_dict(data: dict) -> LocalOperatorChain:
    n = int(data["n"])
    factors = np.array(
        [[[complex(*data["factors"][k][i][j]) for j in (0, 1)]
          for i in (0, 1)] for k in range(n)]
    )
    scalar = complex(*data.get("scalar", [1.0, 0.0]))
    return LocalOperatorChain(factors, data["group"], scalar=scalar)


def write_chain(chain: LocalOperatorChain, path) -> None:
    with open(path, "w") as fh:
        json.dump(chain_to_dict(chain), fh)
        fh.write("\n")


def read_chain(path) -> LocalOperatorChain:
    with open(path) as fh:
        return chain_from_dict(json.load(fh))


def jsonify(obj: Any) -> Any:
    """Recursively convert numpy scalars/arrays and complex values to JSON."""
    if isinstance(obj, dict):
        return {k: jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonify(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonify(v) for v in obj.tolist()]
    if isinstance(obj, (complex, np.complexfloating)):
        if np.imag(obj) == 0:
            return float(np.real(obj))
        return complex_pair(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj
