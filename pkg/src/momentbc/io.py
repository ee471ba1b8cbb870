"""JSON document formats and deterministic serialization.

Every file is a single JSON object {"kind": ..., "payload": ..., "meta": ...}
with complex numbers written as two-element [re, im] arrays.  Serialization
is deterministic byte for byte: fields keep a fixed order and every float is
rendered with 17 significant digits (value-preserving for doubles).
Wavefields are emitted as CSV with header ``n,t,re,im``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import __version__
from .errors import InputError

KINDS = ("jacobi", "moments", "measure", "response", "report")


@dataclass(frozen=True)
class Document:
    kind: str
    payload: dict
    meta: dict


def make_meta(tolerances: dict | None = None) -> dict:
    return {
        "tool": "momentbc",
        "version": __version__,
        "tolerances": dict(tolerances or {}),
    }


def cpx(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def cseq(values) -> list:
    return [cpx(z) for z in np.asarray(values).ravel()]


def cmat(matrix) -> list:
    return [[cpx(z) for z in row] for row in np.asarray(matrix)]


def _parse_cpx(obj, where: str) -> complex:
    if not (isinstance(obj, (list, tuple)) and len(obj) == 2):
        raise InputError(f"{where}: expected a [re, im] pair, got {obj!r}")
    return complex(float(obj[0]), float(obj[1]))


def parse_cseq(obj, where: str) -> np.ndarray:
    if not isinstance(obj, list):
        raise InputError(f"{where}: expected a list of [re, im] pairs")
    return np.array([_parse_cpx(z, where) for z in obj], dtype=complex)


def _format_float(x: float) -> str:
    if x != x or x in (float("inf"), float("-inf")):
        raise ValueError("non-finite float in document")
    if x == int(x) and abs(x) < 1e16:
        return f"{x:.1f}"
    return format(x, ".17g")


def _emit(obj) -> str:
    if isinstance(obj, dict):
        inner = ",".join(f"{json.dumps(str(k))}:{_emit(v)}" for k, v in obj.items())
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_emit(v) for v in obj) + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj)!r}")


def document_to_string(doc: Document) -> str:
    body = {"kind": doc.kind, "payload": doc.payload, "meta": doc.meta}
    return _emit(body) + "\n"


def write_document(doc: Document, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(document_to_string(doc))


def read_document(path: str, expected_kind: str | None = None) -> Document:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read document {path}: {exc}") from exc
    if not isinstance(raw, dict) or "kind" not in raw or "payload" not in raw:
        raise InputError(f"{path}: not a document (need 'kind' and 'payload')")
    kind = raw["kind"]
    if kind not in KINDS:
        raise InputError(f"{path}: unknown document kind {kind!r}")
    if expected_kind is not None and kind != expected_kind:
        raise InputError(f"{path}: expected a {expected_kind!r} document, got {kind!r}")
    return Document(kind=kind, payload=raw["payload"], meta=raw.get("meta", {}))


def jacobi_payload(spec) -> dict:
    return {"a0": cpx(spec.a0), "a": cseq(spec.a), "b": cseq(spec.b)}


def parse_jacobi(doc: Document):
    from .jacobi import JacobiSpec, validate

    payload = doc.payload
    for key in ("a0", "a", "b"):
        if key not in payload:
            raise InputError(f"jacobi payload missing {key!r}")
    spec = JacobiSpec(
        a0=_parse_cpx(payload["a0"], "a0"),
        a=parse_cseq(payload["a"], "a"),
        b=parse_cseq(payload["b"], "b"),
    )
    validate(spec)
    return spec


def values_payload(values) -> dict:
    return {"values": cseq(values)}


def parse_values(doc: Document) -> np.ndarray:
    if "values" not in doc.payload:
        raise InputError(f"{doc.kind} payload missing 'values'")
    return parse_cseq(doc.payload["values"], "values")


def measure_payload(measure) -> dict:
    return {"support": cseq(measure.support), "weights": cseq(measure.weights)}


def parse_measure(doc: Document):
    from .spectral import DiscreteMeasure

    for key in ("support", "weights"):
        if key not in doc.payload:
            raise InputError(f"measure payload missing {key!r}")
    return DiscreteMeasure(
        support=parse_cseq(doc.payload["support"], "support"),
        weights=parse_cseq(doc.payload["weights"], "weights"),
    )


def wavefield_csv(field) -> str:
    """CSV rows ``n,t,re,im`` for t = 0..horizon, nodes 0..n_interior."""
    lines = ["n,t,re,im"]
    for n in range(field.n_interior + 1):
        for t in range(field.horizon + 1):
            z = field.values[n, t + 1]
            lines.append(
                f"{n},{t},{_format_float(float(np.real(z)))},{_format_float(float(np.imag(z)))}"
            )
    return "\n".join(lines) + "\n"


def read_control_samples(path: str) -> np.ndarray:
    """Raw JSON array of [re, im] pairs (controls are not documents)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read control file {path}: {exc}") from exc
    return parse_cseq(raw, "control")
