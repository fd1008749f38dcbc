"""File formats: observable sets and states as JSON, sweeps as CSV.

Complex entries serialize as two-element [re, im] arrays (never
strings), so the files are language-neutral.  Floats round-trip
bit-identically because JSON serialization uses shortest-repr doubles.

Observable file schema::

    {"dim": 2,
     "labels": ["X", "Y"],          # optional
     "matrices": [ [[[re, im], ...], ...], ... ]}

State file schema::

    {"type": "pure", "vector": [[re, im], ...]}
    {"type": "density", "matrix": [[[re, im], ...], ...]}
"""

import json

import numpy as np

from .errors import SumUncertError
from .hermitian import Observable, QuantumState, validate_observable, validate_state


class FileFormatError(SumUncertError):
    """Input file is structurally malformed (before any math checks)."""


def _entry_pairs(matrix: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in matrix]


def _pairs_to_complex(rows, what: str) -> np.ndarray:
    try:
        data = np.asarray(rows, dtype=np.float64)
    except (TypeError, ValueError):
        raise FileFormatError(f"{what}: entries must be [re, im] number pairs") from None
    if data.ndim < 1 or data.shape[-1] != 2:
        raise FileFormatError(f"{what}: entries must be [re, im] number pairs")
    return data[..., 0] + 1j * data[..., 1]


def save_observables(path, observables, labels=None):
    """Write an observable set; round-trips to bit-identical matrices."""
    observables = tuple(observables)
    doc = {"dim": observables[0].dim}
    if labels is not None:
        doc["labels"] = list(labels)
    doc["matrices"] = [_entry_pairs(o.matrix) for o in observables]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def load_observables(path):
    """Read and validate an observable set; returns (observables, labels).

    Validation failures name the offending matrix index.
    """
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict) or "matrices" not in doc:
        raise FileFormatError(f"{path}: expected an object with a 'matrices' field")
    dim = doc.get("dim")
    if not isinstance(dim, int) or dim < 1:
        raise FileFormatError(f"{path}: 'dim' must be a positive integer")
    raw_list = doc["matrices"]
    if not isinstance(raw_list, list) or not raw_list:
        raise FileFormatError(f"{path}: 'matrices' must be a non-empty list")
    labels = doc.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != len(raw_list):
            raise FileFormatError(f"{path}: 'labels' must match 'matrices' in length")
        labels = tuple(str(x) for x in labels)

    observables = []
    for idx, raw in enumerate(raw_list):
        mat = _pairs_to_complex(raw, f"{path}: matrix {idx}")
        if mat.shape != (dim, dim):
            raise FileFormatError(
                f"{path}: matrix {idx} has shape {mat.shape}, expected ({dim}, {dim})"
            )
        try:
            observables.append(validate_observable(mat))
        except SumUncertError as exc:
            raise type(exc)(f"{path}: matrix {idx}: {exc}") from None
    return tuple(observables), labels


def save_state(path, state: QuantumState):
    """Write a state file in the representation the state carries."""
    if state.kind == "pure":
        doc = {
            "type": "pure",
            "vector": [[float(z.real), float(z.imag)] for z in state.vector],
        }
    else:
        doc = {"type": "density", "matrix": _entry_pairs(state.density)}
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def load_state(path) -> QuantumState:
    """Read and validate a state file (pure vector or density matrix)."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise FileFormatError(f"{path}: expected an object")
    kind = doc.get("type")
    if kind == "pure":
        if "vector" not in doc:
            raise FileFormatError(f"{path}: pure state needs a 'vector' field")
        vec = _pairs_to_complex(doc["vector"], f"{path}: vector")
        if vec.ndim != 1:
            raise FileFormatError(f"{path}: 'vector' must be a flat list of pairs")
        return validate_state(vec)
    if kind == "density":
        if "matrix" not in doc:
            raise FileFormatError(f"{path}: density state needs a 'matrix' field")
        mat = _pairs_to_complex(doc["matrix"], f"{path}: matrix")
        if mat.ndim != 2:
            raise FileFormatError(f"{path}: 'matrix' must be a 2-D list of pairs")
        return validate_state(mat)
    raise FileFormatError(f"{path}: 'type' must be 'pure' or 'density', got {kind!r}")


def format_float(x: float) -> str:
    """12-significant-digit, locale-independent float formatting."""
    return format(float(x), ".12g")


def write_sweep_csv(fh, result):
    """Emit `theta,lhs,cb_bound,tb_bound` rows with \\n newlines."""
    fh.write("theta,lhs,cb_bound,tb_bound\n")
    for theta, lhs, cb, tb in result.rows():
        fh.write(
            f"{format_float(theta)},{format_float(lhs)},"
            f"{format_float(cb)},{format_float(tb)}\n"
        )
