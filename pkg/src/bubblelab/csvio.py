"""CSV emission for equilibrium paths and sweep tables.

Format contract: comma separators, LF line endings, a header row, floats at
12 significant digits, fields quoted RFC-4180 style when they need it.
Deterministic byte-for-byte given the same inputs.
"""

from __future__ import annotations

import math

import numpy as np

from .paths import EquilibriumPath
from .valuation import BubbleReport

PATH_COLUMNS = ("t", "P", "D", "R", "W", "K", "phi", "price_rent", "yield", "V", "bubble")


def format_float(x: float) -> str:
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(float(x), ".12g")


def quote_field(s: str) -> str:
    if any(c in s for c in ',"\n\r'):
        return '"' + s.replace('"', '""') + '"'
    return s


def render_csv(header: list[str], rows: list[list[str]]) -> str:
    lines = [",".join(quote_field(h) for h in header)]
    for row in rows:
        lines.append(",".join(quote_field(f) for f in row))
    return "\n".join(lines) + "\n"


def _column_values(
    path: EquilibriumPath, name: str, report: BubbleReport | None
) -> list[str]:
    n = len(path)
    if name == "t":
        return [str(t) for t in range(n)]
    simple = {
        "P": path.price,
        "D": path.dividend,
        "R": path.rate,
        "W": path.wealth,
        "K": path.capital,
        "phi": path.phi,
    }
    if name in simple:
        arr = simple[name]
        if arr is None:
            raise ValueError(f"column {name!r} is not defined for this path")
        return [format_float(v) for v in arr]
    if name == "price_rent":
        return [format_float(v) for v in path.price_rent()]
    if name == "yield":
        return [format_float(v) for v in path.dividend_yield()]
    if name in ("V", "bubble"):
        if report is None:
            raise ValueError(
                f"column {name!r} requires a valuation run on this scenario"
            )
        arr = report.fundamental if name == "V" else report.bubble_component
        # valuation is undefined within one truncation window of the end
        return [format_float(v) for v in arr] + [""] * (n - arr.size)
    raise ValueError(f"unknown column {name!r}; known: {', '.join(PATH_COLUMNS)}")


def emit_csv(
    path: EquilibriumPath,
    columns: tuple[str, ...],
    report: BubbleReport | None = None,
) -> str:
    """Serialize selected columns of a path."""
    if len(columns) == 0:
        raise ValueError("at least one column required")
    cols = [_column_values(path, name, report) for name in columns]
    rows = [list(r) for r in zip(*cols)]
    return render_csv(list(columns), rows)


def emit_table_csv(header: list[str], rows: list[list[object]]) -> str:
    """Serialize a generic table (sweeps, summaries): floats at 12
    significant digits, everything else via str."""
    out_rows = []
    for row in rows:
        out = []
        for v in row:
            if isinstance(v, bool):
                out.append("true" if v else "false")
            elif isinstance(v, (float, np.floating)):
                out.append(format_float(float(v)))
            else:
                out.append(str(v))
        out_rows.append(out)
    return render_csv(header, out_rows)
