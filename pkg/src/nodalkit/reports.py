"""Serialization helpers shared by the library and the CLI.

Conventions: exact rationals serialize as ``"p/q"`` strings accompanied by
floats where useful; artifacts are written atomically (temp file + rename in
the target directory); JSON is emitted with sorted keys and no timestamps so
reruns with the same seed are byte-identical.
"""

from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction


def frac_str(value) -> str:
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


def parse_frac(text) -> Fraction:
    return Fraction(str(text))


def point_str(point) -> str:
    # semicolon-joined so a point stays a single CSV cell
    return ";".join(frac_str(c) for c in point)


def jsonable(obj):
    """Recursively convert Fractions/tuples to JSON-friendly values."""
    if isinstance(obj, Fraction):
        return frac_str(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


def atomic_write_text(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-artifact-")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dump_json(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2) + "\n"


def write_json(path: str, obj):
    atomic_write_text(path, dump_json(obj))


def write_csv(path: str, header: list[str], rows: list[list]):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(str(v) for v in row))
    atomic_write_text(path, "\n".join(lines) + "\n")
