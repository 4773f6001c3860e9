"""Canonical report serialization.

Every CLI run produces an envelope ``{schemaVersion, payload, manifest}``.
Floats are written with 17 significant digits and keys are sorted, so a
report's bytes (and its SHA-256 digest) depend only on its content.  Run
manifests deliberately omit wall time, which would break byte identity.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import sys
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np

from . import __version__

SCHEMA_VERSION = "1.0"

__all__ = [
    "SCHEMA_VERSION",
    "canonical_json",
    "digest",
    "make_envelope",
    "load_schema",
    "validate",
    "write_text",
    "csv_text",
    "format_float",
]


def format_float(x: float) -> str:
    if not math.isfinite(x):
        # JSON has no infinities; a string keeps the value visible
        return json.dumps("inf" if x > 0 else "-inf" if x < 0 else "nan")
    text = format(x, ".17g")
    if "e" not in text and "." not in text and "n" not in text:
        text += ".0"
    return text


def _plain(obj):
    """Convert numpy scalars/arrays and tuples into JSON-native values."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def _encode(obj, out):
    if isinstance(obj, dict):
        out.append("{")
        for i, key in enumerate(sorted(obj)):
            if i:
                out.append(",")
            out.append(json.dumps(key))
            out.append(":")
            _encode(obj[key], out)
        out.append("}")
    elif isinstance(obj, list):
        out.append("[")
        for i, v in enumerate(obj):
            if i:
                out.append(",")
            _encode(v, out)
        out.append("]")
    elif isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        out.append(json.dumps(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def canonical_json(obj) -> str:
    """Sorted keys, no whitespace, floats to 17 significant digits."""
    out: list[str] = []
    _encode(_plain(obj), out)
    return "".join(out)


def digest(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()


def make_envelope(subcommand: str, payload, parameters: dict, argv: list, seeds=None) -> dict:
    payload = _plain(payload)
    manifest = {
        "toolVersion": __version__,
        "subcommand": subcommand,
        "parameters": _plain(parameters),
        "argv": list(argv),
        "seeds": _plain(seeds or []),
        "outputDigest": digest(payload),
    }
    return {"schemaVersion": SCHEMA_VERSION, "payload": payload, "manifest": manifest}


def load_schema(name: str) -> dict:
    text = resources.files("dirlab").joinpath("schemas", f"{name}.json").read_text()
    return json.loads(text)


def validate(envelope: dict, subcommand: str) -> None:
    """Raise jsonschema.ValidationError unless the envelope and payload conform."""
    # round trip through the canonical text so the schema sees what is written
    doc = json.loads(canonical_json(envelope))
    jsonschema.validate(doc, load_schema("envelope"))
    jsonschema.validate(doc["payload"], load_schema(subcommand))


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([format_float(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def write_text(text: str, path) -> None:
    """Write to ``path`` or stdout for None / '-'; I/O errors name the path."""
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    p = Path(path)
    try:
        p.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write report to {p}: {exc.strerror or exc}") from exc
