"""Serialization: curve and surface specs, sample dumps, reports.

Floats are written in their shortest exact round-trip form; keys are sorted, so equal inputs give equal bytes.
"""

import csv
import io
import json
import math

import numpy as np

from . import model_space as ms
from .curves import Kappa, integrate_curvature_curve
from .errors import InvalidInputError


def fmt_float(x):
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        return "null"
    # shortest string that round-trips exactly
    return repr(x)


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    return obj


def dumps(obj, indent=2):
    """JSON text with sorted keys and round-trip float formatting."""
    return _dump(_plain(obj), indent, 0) + "\n"


def _dump(o, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(o, dict):
        if not o:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_dump(o[k], indent, level + 1)}" for k in sorted(o)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(o, list):
        if not o:
            return "[]"
        if all(not isinstance(v, (dict, list)) for v in o):
            return "[" + ", ".join(_dump(v, indent, level + 1) for v in o) + "]"
        return "[\n" + ",\n".join(pad + _dump(v, indent, level + 1) for v in o) + "\n" + end + "]"
    if isinstance(o, bool) or o is None:
        return json.dumps(o)
    if isinstance(o, float):
        return fmt_float(o)
    return json.dumps(o)


def csv_text(rows, columns=None):
    """CSV with a header row and one row per record."""
    if columns is None:
        columns = sorted({k for r in rows for k in r})
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(r.get(c)) for c in columns])
    return buf.getvalue()


def _cell(v):
    v = _plain(v)
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        s = fmt_float(v)
        return "" if s == "null" else s
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return str(v)


# ---------------------------------------------------------------------------
# curves


def curve_from_spec(spec):
    """SmoothCurve from {k, length, kappa: {type, params | samples}, frame, step}."""
    try:
        k = ms.check_curvature(spec["k"])
        length = float(spec["length"])
        kappa = Kappa.from_dict(spec["kappa"])
    except KeyError as e:
        raise InvalidInputError(f"curve spec is missing {e}") from None
    frame = None
    fr = spec.get("frame")
    if fr:
        p = ms.SpacePoint(k, fr["point"])
        frame = (p, ms.TangentVec(p, fr["tangent"]))
        if "normal" in fr:
            frame = frame + (ms.TangentVec(p, fr["normal"]),)
    return integrate_curvature_curve(k, kappa, length, frame=frame, step=spec.get("step"))


def curve_spec(k, length, kappa, frame=None, step=None):
    d = {"k": float(k), "length": float(length), "kappa": kappa.to_dict()}
    if frame is not None:
        d["frame"] = {"point": list(frame[0]), "tangent": list(frame[1])}
        if len(frame) > 2:
            d["frame"]["normal"] = list(frame[2])
    if step is not None:
        d["step"] = float(step)
    return d


def sample_dump(curve):
    """CSV of t, point coordinates and unit tangent of a sampled curve."""
    d = curve.points.shape[1]
    cols = ["t"] + [f"x{i}" for i in range(d)] + [f"T{i}" for i in range(d)]
    rows = [dict(zip(cols, r)) for r in curve.sample_table()]
    return csv_text(rows, cols)


# ---------------------------------------------------------------------------
# surfaces


def integral_report_json(rep, spec=None):
    d = rep.to_dict()
    if spec is not None:
        d["surface"] = spec
    return dumps(d)


SWEEP_COLUMNS = ["eps", "area", "G", "Gtilde", "G_monotone", "area_monotone"]


def sweep_csv(table):
    rows = [{"eps": r["eps"], "area": r["area"], "G": r["G"], "Gtilde": r["G_tilde"],
             "G_monotone": table.G_monotone, "area_monotone": table.area_monotone} for r in table.rows]
    return csv_text(rows, SWEEP_COLUMNS)


def load_json(path):
    with open(path) as fh:
        return json.load(fh)
