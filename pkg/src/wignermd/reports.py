"""Report serialization, signal files and heatmap rendering."""
from __future__ import annotations

import csv
import io
import json
import platform

import jsonschema
import numpy as np

from .grid import Grid1D, Signal
from .wigner import Field2D

REPORT_SCHEMA = {
    "type": "object",
    "required": ["config", "suite", "cases", "versions", "seed"],
    "properties": {
        "config": {"type": "object"},
        "suite": {"type": "string"},
        "seed": {"type": "integer", "minimum": 0},
        "versions": {
            "type": "object",
            "required": ["wignermd", "numpy", "python"],
            "additionalProperties": {"type": "string"},
        },
        "cases": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "lhs", "rhs", "margin", "tolerance", "pass"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "lhs": {"type": "number"},
                    "rhs": {"type": "number"},
                    "margin": {"type": "number"},
                    "tolerance": {"type": "number", "minimum": 0},
                    "pass": {"type": "boolean"},
                },
            },
        },
        "passed": {"type": "boolean"},
        "diagnostics": {"type": "object"},
    },
}


def versions():
    from . import __version__

    return {
        "wignermd": __version__,
        "numpy": np.__version__,
        "python": platform.python_version(),
    }


def _plain(value):
    """Convert numpy scalars and arrays so ``json`` can encode them."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        v = float(value)
        return v if np.isfinite(v) else repr(v)
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value


def build_report(config, result) -> dict:
    """Schema-conforming report for one :class:`SuiteResult`."""
    report = {
        "config": _plain(config.to_dict()),
        "suite": result.suite,
        "cases": [_plain(c.to_dict()) for c in result.cases],
        "versions": versions(),
        "seed": int(config.seed),
        "passed": result.passed,
        "diagnostics": _plain(result.diagnostics),
    }
    validate_report(report)
    return report


def validate_report(report: dict):
    jsonschema.validate(report, REPORT_SCHEMA)


def dumps_report(report: dict) -> str:
    """Deterministic JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(report, sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_report(path, report: dict):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_report(report))


CSV_HEADER = ("k", "term", "partial_sum", "bound", "margin")


def rows_csv(rows) -> str:
    """``k, term, partial_sum, bound, margin`` rows as CSV text."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for k, term, s, b, m in rows:
        w.writerow([int(k), repr(float(term)), repr(float(s)), repr(float(b)), repr(float(m))])
    return buf.getvalue()


def cases_csv(cases) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("name", "lhs", "rhs", "margin", "tolerance", "pass"))
    for c in cases:
        d = c.to_dict() if hasattr(c, "to_dict") else c
        w.writerow([d["name"], repr(d["lhs"]), repr(d["rhs"]), repr(d["margin"]),
                    repr(d["tolerance"]), str(d["pass"]).lower()])
    return buf.getvalue()


# signal files

def signal_to_text(f: Signal) -> str:
    """Header ``# N=<size> L=<half width>`` then one ``re im`` pair per line.

    Floats are written with ``repr`` so reading the file back is bit-exact.
    """
    lines = [f"# N={f.grid.size} L={float(f.grid.half_width)!r}"]
    lines += [f"{float(z.real)!r} {float(z.imag)!r}" for z in f.samples]
    return "\n".join(lines) + "\n"


def signal_from_text(text: str) -> Signal:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("#"):
        raise ValueError("signal file needs a '# N=<size> L=<half width>' header")
    header = dict(item.split("=", 1) for item in lines[0].lstrip("#").split() if "=" in item)
    try:
        grid = Grid1D(float(header["L"]), int(header["N"]))
    except KeyError as exc:
        raise ValueError(f"signal header is missing {exc.args[0]}") from None
    values = []
    for ln in lines[1:]:
        if ln.startswith("#"):
            continue
        parts = ln.replace(",", " ").split()
        if len(parts) != 2:
            raise ValueError(f"expected two columns (re im), got {ln!r}")
        values.append(complex(float(parts[0]), float(parts[1])))
    if len(values) != grid.size:
        raise ValueError(f"header says N={grid.size} but the file has {len(values)} samples")
    return Signal(grid, np.array(values))


def write_signal(path, f: Signal):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(signal_to_text(f))


def read_signal(path) -> Signal:
    with open(path, encoding="utf-8") as fh:
        return signal_from_text(fh.read())


def field_to_text(F: Field2D) -> str:
    """``x xi re im`` per lattice point, row-major, with a grid header."""
    g = F.grid
    lines = [
        f"# N0={g.axis0.size} L0={g.axis0.half_width!r} N1={g.axis1.size} L1={g.axis1.half_width!r}"
    ]
    x, y = g.axis0.nodes.tolist(), g.axis1.nodes.tolist()
    values = F.samples.tolist()
    for i in range(g.shape[0]):
        for j in range(g.shape[1]):
            z = values[i][j]
            lines.append(f"{x[i]!r} {y[j]!r} {z.real!r} {z.imag!r}")
    return "\n".join(lines) + "\n"


# heatmaps

def _diverging(t: np.ndarray) -> np.ndarray:
    """Blue-white-red map for ``t`` in ``[-1, 1]``, as uint8 RGB."""
    t = np.clip(t, -1.0, 1.0)
    pos, neg = np.clip(t, 0, 1), np.clip(-t, 0, 1)
    r = 1.0 - neg
    g = 1.0 - np.maximum(pos, neg)
    b = 1.0 - pos
    return np.rint(255 * np.stack([r, g, b], axis=-1)).astype(np.uint8)


def _scaled(values: np.ndarray) -> np.ndarray:
    scale = float(np.max(np.abs(values)))
    return values / scale if scale > 0 else np.zeros_like(values)


def heatmap_ppm(F: Field2D, part: str = "real") -> bytes:
    """Binary PPM (P6) of a field with a signed-symmetric color scale.

    Rows run over the second axis, top row highest, columns over the first.
    """
    values = {"real": F.samples.real, "imag": F.samples.imag, "abs": np.abs(F.samples)}[part]
    img = _diverging(_scaled(values).T[::-1])
    h, w = img.shape[:2]
    return f"P6\n{w} {h}\n255\n".encode("ascii") + img.tobytes()


def write_heatmap(path, F: Field2D, part: str = "real"):
    with open(path, "wb") as fh:
        fh.write(heatmap_ppm(F, part))


def heatmap_svg(F: Field2D, part: str = "real", max_cells: int = 128) -> str:
    """SVG heatmap, downsampled to at most ``max_cells`` per side."""
    values = {"real": F.samples.real, "imag": F.samples.imag, "abs": np.abs(F.samples)}[part]
    s0 = max(1, values.shape[0] // max_cells)
    s1 = max(1, values.shape[1] // max_cells)
    img = _diverging(_scaled(values[::s0, ::s1]).T[::-1])
    h, w = img.shape[:2]
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{4 * w}" height="{4 * h}" '
           f'viewBox="0 0 {w} {h}" shape-rendering="crispEdges">']
    for i in range(h):
        for j in range(w):
            r, g, b = img[i, j]
            out.append(f'<rect x="{j}" y="{i}" width="1" height="1" fill="#{r:02x}{g:02x}{b:02x}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
