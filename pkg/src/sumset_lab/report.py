"""Machine-readable output: JSON reports, CSV tables, numeric cell rendering.

Every numeric cell is either an exact rational rendered as "num/den" or a
float tagged approx and rounded to 12 significant digits; reports are
deterministic byte-for-byte for a fixed config.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction

from .exactq import format_rational

FLOAT_DIGITS = 12


def render_float(x: float) -> str:
    return format(float(x), f".{FLOAT_DIGITS}g")


def cell(value):
    """JSON form of a numeric cell: exact string or tagged float."""
    if isinstance(value, bool):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        return {"approx": render_float(value)}
    if isinstance(value, complex):
        return {"approx_re": render_float(value.real), "approx_im": render_float(value.imag)}
    if isinstance(value, dict):
        return {k: cell(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [cell(v) for v in value]
    return value


def csv_cell(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return "approx:" + render_float(value)
    if isinstance(value, complex):
        return "approx:" + render_float(abs(value))
    return str(value)


def check(name: str, status: bool, lhs=None, rhs=None) -> dict:
    out = {"name": name, "status": "pass" if status else "fail"}
    if lhs is not None:
        out["lhs"] = cell(lhs)
    if rhs is not None:
        out["rhs"] = cell(rhs)
    return out


def report_json(config: dict, results, checks: list[dict]) -> str:
    doc = {"config": cell(config), "results": cell(results), "checks": cell(checks)}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def table_csv(columns: list[str], rows: list[list]) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(csv_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def write_text(text: str, out_path: str | None) -> None:
    if out_path is None or out_path == "-":
        sys.stdout.write(text)
    else:
        with open(out_path, "w") as fh:
            fh.write(text)
