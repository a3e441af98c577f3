"""Run-spec parsing and result serialization.

JSON conventions: complex numbers are ``[re, im]`` pairs (a bare number is a
real entry), matrices are lists of rows, Pauli operators are strings such as
``"+XZZXI"`` with qubit 0 leftmost.  Output floats carry 12 significant
digits and dict fields keep their construction order, so equal results give
byte-identical files.
"""

from __future__ import annotations

import csv
import io as _io
import json
import math
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema
import numpy as np

from .channels import QuantumChannel, build_family
from .errors import ValidationError
from .stabilizer.codes import StabilizerCode, build_code, code_from_strings

SCHEMAS = ("capacity", "petz", "klcheck", "sadecode", "switch", "threshold", "sweep",
           "channel", "code", "switch_spec")


def load_schema(name: str) -> dict:
    if name not in SCHEMAS:
        raise ValidationError(f"no schema named {name!r}")
    text = resources.files("saqec.schemas").joinpath(f"{name}.schema.json").read_text()
    return json.loads(text)


def _field_path(err: jsonschema.ValidationError) -> str:
    return "/" + "/".join(str(p) for p in err.absolute_path)


def validate(obj: Any, schema_name: str, source: str = "spec") -> Any:
    schema = load_schema(schema_name)
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(obj), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        e = jsonschema.exceptions.best_match(errors)
        raise ValidationError(f"{source}: field {_field_path(e)}: {e.message}")
    return obj


def load_json(path) -> Any:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read {p}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{p}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


# ---------------------------------------------------------------------------
# domain objects


def _entry(v) -> complex:
    return complex(v[0], v[1]) if isinstance(v, (list, tuple)) else complex(v)


def complex_matrix(rows) -> np.ndarray:
    """List of rows whose entries are numbers or [re, im] pairs."""
    if len({len(r) for r in rows}) != 1:
        raise ValidationError("matrix rows have different lengths")
    return np.array([[_entry(e) for e in row] for row in rows], dtype=complex)


def complex_vector(entries) -> np.ndarray:
    return np.array([_entry(e) for e in entries], dtype=complex)


def channel_from_json(d: dict, source: str = "channel") -> QuantumChannel:
    validate(d, "channel", source)
    if "kind" in d:
        return build_family(d["kind"], d["param"])
    ops = []
    for i, k in enumerate(d["kraus"]):
        m = complex_matrix(k)
        if m.shape != (d["dout"], d["din"]):
            raise ValidationError(f"{source}: field /kraus/{i}: expected shape ({d['dout']}, {d['din']}), got {m.shape}")
        ops.append(m)
    try:
        return QuantumChannel(np.array(ops), name=d.get("name", "explicit"))
    except ValidationError as exc:
        raise ValidationError(f"{source}: field /kraus: {exc}") from exc


def code_from_json(d: dict, source: str = "code") -> StabilizerCode:
    validate(d, "code", source)
    if "stabilizers" in d:
        return code_from_strings(d["stabilizers"], d["logical_x"], d["logical_z"], d.get("name", "custom"))
    return build_code(d["name"])


def state_from_json(d, source: str = "state") -> np.ndarray:
    if isinstance(d, dict):
        v = complex_vector(d["ket"])
        nrm = np.linalg.norm(v)
        if nrm == 0:
            raise ValidationError(f"{source}: field /ket: zero vector")
        v = v / nrm
        return np.outer(v, v.conj())
    return complex_matrix(d)


def parse_spec(path, command: str) -> dict:
    """Load and schema-validate the run spec of ``command``; returns the raw dict."""
    obj = load_json(path)
    return validate(obj, command, str(path))


def parse_object(path):
    """Parse a standalone channel, code or switch-spec file into its domain object."""
    from .code_switch import SubsystemSwitchSpec

    obj = load_json(path)
    if isinstance(obj, dict) and ("kind" in obj or "kraus" in obj):
        return channel_from_json(obj, str(path))
    if isinstance(obj, dict) and "gauge_a" in obj:
        validate(obj, "switch_spec", str(path))
        return SubsystemSwitchSpec.from_dict(obj)
    if isinstance(obj, dict) and ("stabilizers" in obj or "name" in obj):
        return code_from_json(obj, str(path))
    raise ValidationError(f"{path}: not a channel, code or switch spec")


# ---------------------------------------------------------------------------
# output


def _round(x: float):
    if math.isnan(x) or math.isinf(x):
        return str(x)
    return float(f"{x:.12g}")


def to_jsonable(obj):
    """Numpy arrays to lists, complex to [re, im], floats to 12 significant digits."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _round(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return [_round(obj.real), _round(obj.imag)]
    if obj is None or isinstance(obj, str):
        return obj
    if hasattr(obj, "as_dict"):
        return to_jsonable(obj.as_dict())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_json(obj) -> str:
    return json.dumps(to_jsonable(obj), indent=2) + "\n"


def _csv_cell(v):
    if isinstance(v, (dict, list)):
        return json.dumps(v, separators=(",", ":"))
    if isinstance(v, bool):
        return "true" if v else "false"
    return "" if v is None else v


def dumps_csv(rows) -> str:
    """CSV with a mandatory header; a single dict becomes one row."""
    data = to_jsonable(rows)
    if isinstance(data, dict):
        data = [data]
    if not data:
        raise ValidationError("nothing to write")
    header = list(data[0])
    if any(list(r) != header for r in data):
        raise ValidationError("CSV rows must share the same columns")
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in data:
        w.writerow([_csv_cell(r[h]) for h in header])
    return buf.getvalue()


def write_results(obj, fmt: str = "json", path=None) -> str:
    """Serialize ``obj`` and write it to ``path`` (stdout-friendly text is returned either way)."""
    if fmt == "json":
        text = dumps_json(obj)
    elif fmt == "csv":
        text = dumps_csv(obj)
    else:
        raise ValidationError(f"format must be 'json' or 'csv', got {fmt!r}")
    if path is not None:
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise ValidationError(f"cannot write {path}: {exc.strerror}") from exc
    return text
