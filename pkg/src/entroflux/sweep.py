"""Scenario configuration, sweep execution, and delimited/vector output.

A Scenario is one model family (generic feedback pair or optomechanical
front-end), a base parameter set, one swept variable on a uniform grid and a
list of requested output columns.  run_sweep evaluates the grid (optionally
in threads; results are ordered and byte-identical either way), emit_csv
writes RFC-4180-style CSV with LF endings and 17-significant-digit floats,
and emit_svg draws a dependency-free line plot.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

from .errors import (ConfigError, InsufficientData, NoPhysicalRoot, Unstable,
                     UnstableBranch)
from .model import FeedbackParams, steady_state
from .optomech import (OptoParams, generic_from_detuning, map_to_generic,
                       mean_field_steady_state, select_branch)
from .oracle import verify_steady_state
from .thermo import steady_report

OUTPUT_FIELDS = ("pi_s", "mu_a", "mu_c", "mutual_info", "log_neg",
                 "nu_minus", "n_a_s", "n_c_s", "stable", "physical")

_SWEEPABLE = {
    "generic": ("omega_a", "n_a", "n_c", "tau", "theta", "g"),
    "optomech": ("delta_0", "n_a", "n_c", "tau", "theta", "g"),
}

GRID_EPS = 1e-9  # guards the point count against float division noise


@dataclass(frozen=True)
class SweepSpec:
    """Uniform grid variable: start, start + step, ..., up to stop."""

    variable: str
    start: float
    stop: float
    step: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.start, self.stop, self.step)):
            raise ConfigError("sweep bounds and step must be finite")
        if self.step <= 0.0:
            raise ConfigError(f"sweep step must be positive, got {self.step}")
        if self.stop < self.start:
            raise ConfigError("sweep stop must not precede start")

    def grid(self):
        count = int(math.floor((self.stop - self.start) / self.step + GRID_EPS)) + 1
        return [self.start + k * self.step for k in range(count)]


@dataclass(frozen=True)
class Scenario:
    """One sweep task: model kind, base parameters, grid and outputs.

    For optomech scenarios, g_direct prescribes the light-enhanced coupling
    and bypasses the classical cubic (the usual detuning-sweep setup); when
    it is unset the working point is solved per grid point and the lowest
    stable branch is linearised.
    """

    kind: str
    base: FeedbackParams | OptoParams
    sweep: SweepSpec
    outputs: tuple[str, ...] = OUTPUT_FIELDS
    g_direct: float | None = None
    name: str = "scenario"

    def __post_init__(self):
        if self.kind not in _SWEEPABLE:
            raise ConfigError(f"unknown kind {self.kind!r}; use generic or optomech")
        expected = FeedbackParams if self.kind == "generic" else OptoParams
        if not isinstance(self.base, expected):
            raise ConfigError(f"kind {self.kind!r} needs {expected.__name__} base parameters")
        object.__setattr__(self, "outputs", tuple(self.outputs))
        if not self.outputs:
            raise ConfigError("at least one output column is required")
        for name in self.outputs:
            if name not in OUTPUT_FIELDS:
                raise ConfigError(f"unknown output {name!r}; known: {', '.join(OUTPUT_FIELDS)}")
        if len(set(self.outputs)) != len(self.outputs):
            raise ConfigError("duplicate output columns")
        if self.sweep.variable not in _SWEEPABLE[self.kind]:
            raise ConfigError(
                f"cannot sweep {self.sweep.variable!r} on kind {self.kind!r}; "
                f"choose from {', '.join(_SWEEPABLE[self.kind])}")
        if self.g_direct is not None:
            if self.kind != "optomech":
                raise ConfigError("g_direct applies to optomech scenarios only")
            if not math.isfinite(self.g_direct):
                raise ConfigError("g_direct must be finite")
        if self.sweep.variable == "tau" and not (0.0 <= self.sweep.start
                                                 and self.sweep.stop < 1.0):
            raise ConfigError("tau sweep must stay inside [0, 1)")
        if self.sweep.variable in ("n_a", "n_c") and self.sweep.start < 0.0:
            raise ConfigError("occupation sweeps must start at 0 or above")


@dataclass(frozen=True)
class ResultRow:
    """One grid point: swept value, stability, and the requested outputs.

    data maps output name to float, bool, or None (None marks a quantity
    with no value at an unstable point; it becomes an empty CSV cell)."""

    variable: str
    value: float
    stable: bool
    data: dict = field(compare=False)


def _point_params(scenario, value):
    """Generic-model parameters for one grid point."""
    var = scenario.sweep.variable
    if scenario.kind == "generic":
        return replace(scenario.base, **{var: value})
    base = scenario.base
    g_direct = scenario.g_direct
    if var == "g":
        if g_direct is None:
            base = replace(base, g0=value)
        else:
            g_direct = value
    else:
        base = replace(base, **{var: value})
    if g_direct is not None:
        return generic_from_detuning(
            base.delta_0, g_direct, kappa_a=base.kappa_a, gamma_m=base.gamma_m,
            omega_m=base.omega_m, tau=base.tau, theta=base.theta,
            n_a=base.n_a, n_c=base.n_c)
    return map_to_generic(base, select_branch(mean_field_steady_state(base)))


def _gap_row(scenario, value):
    data = {}
    for name in scenario.outputs:
        data[name] = False if name == "stable" else None
    return ResultRow(scenario.sweep.variable, value, False, data)


def _evaluate(scenario, value, strict, oracle):
    try:
        params = _point_params(scenario, value)
    except (NoPhysicalRoot, UnstableBranch) as exc:
        if strict:
            raise Unstable(str(exc)) from exc
        return _gap_row(scenario, value)
    try:
        cov = steady_state(params)
    except Unstable:
        if strict:
            raise
        return _gap_row(scenario, value)
    if oracle:
        verify_steady_state(params, cov)
    rep = steady_report(params, cov)
    data = {}
    for name in scenario.outputs:
        if name == "stable":
            data[name] = True
        else:
            data[name] = getattr(rep, name)
    return ResultRow(scenario.sweep.variable, value, True, data)


def _env_threads():
    raw = os.environ.get("ENTROFLUX_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_sweep(scenario, strict=False, oracle=False, max_workers=None):
    """Evaluate every grid point, ascending.

    Unstable points become gap rows unless strict is set (then the first one
    raises Unstable).  oracle=True re-derives every stable point by time
    integration and raises OracleMismatch on disagreement.  max_workers
    defaults to the ENTROFLUX_THREADS environment variable (serial when
    unset); each point is independent, and Executor.map preserves order, so
    the result list does not depend on the worker count.
    """
    values = scenario.sweep.grid()
    workers = _env_threads() if max_workers is None else max(1, int(max_workers))
    if workers > 1 and len(values) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda v: _evaluate(scenario, v, strict, oracle), values))
    return [_evaluate(scenario, v, strict, oracle) for v in values]


def format_number(x):
    """17 significant digits: enough for exact float64 round-trips."""
    return format(float(x), ".17g")


def _csv_cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return format_number(value)


def _write_bytes(data, dest):
    if dest is None:
        return data
    if hasattr(dest, "write"):
        dest.write(data)
    else:
        with open(dest, "wb") as fh:
            fh.write(data)
    return data


def emit_csv(rows, dest=None, columns=None, variable=None):
    """Serialise rows as CSV: header, then one line per grid point.

    Cells carry 17-significant-digit floats, lowercase booleans, and empty
    strings for unavailable values; line endings are LF.  Output is a pure
    function of the rows, so reruns and thread counts cannot change a byte.
    dest may be a filesystem path, a binary file object, or None to just
    return the bytes.  Empty row lists need explicit variable and columns
    for the header.
    """
    if rows:
        variable = variable if variable is not None else rows[0].variable
        columns = list(columns) if columns is not None else list(rows[0].data.keys())
    elif variable is None or columns is None:
        raise ValueError("empty output needs explicit variable and columns")
    else:
        columns = list(columns)
    lines = [",".join([variable] + columns)]
    for row in rows:
        cells = [format_number(row.value)]
        cells += [_csv_cell(row.data.get(name)) for name in columns]
        lines.append(",".join(cells))
    return _write_bytes(("\n".join(lines) + "\n").encode("ascii"), dest)


# --- SVG output -------------------------------------------------------------

CANVAS_W, CANVAS_H = 800, 500
_MARGIN = {"left": 62.0, "right": 14.0, "top": 16.0, "bottom": 44.0}
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd",
           "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")


def _numeric(value):
    if value is None:
        return math.nan
    if isinstance(value, bool):
        return 1.0 if value else 0.0
    return float(value)


def _nice_ticks(lo, hi, target=6):
    """Ticks on a 1-2-5 ladder spanning [lo, hi]; deterministic."""
    span = hi - lo
    if span <= 0.0 or not math.isfinite(span):
        return [lo]
    raw = span / target
    mag = 10.0 ** math.floor(math.log10(raw))
    step = 10.0 * mag
    for mult in (1.0, 2.0, 5.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    first = math.ceil(lo / step - GRID_EPS) * step
    ticks = []
    t = first
    while t <= hi + step * GRID_EPS:
        ticks.append(0.0 if abs(t) < step * 1e-6 else t)
        t += step
    return ticks


def emit_svg(rows, dest=None, columns=None, title=None):
    """Standalone SVG 1.1 line chart, one polyline per column.

    Gaps (unstable points, non-finite values) split a column into separate
    polyline segments; isolated finite points become dot markers.  Booleans
    plot as 0/1.  Coordinates are fixed at two decimals so the bytes are
    reproducible.  Raises InsufficientData when any requested column has
    fewer than two finite points.
    """
    if not rows:
        raise InsufficientData("no rows to plot")
    columns = list(columns) if columns is not None else list(rows[0].data.keys())
    if not columns:
        raise InsufficientData("no columns to plot")

    xs = [row.value for row in rows]
    series = {}
    for name in columns:
        ys = [_numeric(row.data.get(name)) for row in rows]
        finite = [y for y in ys if math.isfinite(y)]
        if len(finite) < 2:
            raise InsufficientData(f"column {name!r} has fewer than 2 finite points")
        series[name] = ys

    x_lo, x_hi = min(xs), max(xs)
    if x_hi <= x_lo:
        raise InsufficientData("swept values span zero width")
    all_y = [y for ys in series.values() for y in ys if math.isfinite(y)]
    y_lo, y_hi = min(all_y), max(all_y)
    if y_hi <= y_lo:
        y_lo -= 0.5
        y_hi += 0.5
    pad = 0.04 * (y_hi - y_lo)
    y_lo -= pad
    y_hi += pad

    px_l = _MARGIN["left"]
    px_r = CANVAS_W - _MARGIN["right"]
    px_t = _MARGIN["top"]
    px_b = CANVAS_H - _MARGIN["bottom"]

    def to_x(v):
        return px_l + (v - x_lo) / (x_hi - x_lo) * (px_r - px_l)

    def to_y(v):
        return px_b - (v - y_lo) / (y_hi - y_lo) * (px_b - px_t)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{CANVAS_W}" height="{CANVAS_H}" '
        f'viewBox="0 0 {CANVAS_W} {CANVAS_H}">',
        f'<rect x="0" y="0" width="{CANVAS_W}" height="{CANVAS_H}" fill="#ffffff"/>',
    ]
    # grid and tick labels
    for t in _nice_ticks(x_lo, x_hi):
        x = to_x(t)
        out.append(f'<line x1="{x:.2f}" y1="{px_t:.2f}" x2="{x:.2f}" y2="{px_b:.2f}" '
                   f'stroke="#dddddd" stroke-width="1"/>')
        out.append(f'<text x="{x:.2f}" y="{px_b + 16:.2f}" font-family="sans-serif" '
                   f'font-size="11" text-anchor="middle" fill="#333333">{t:g}</text>')
    for t in _nice_ticks(y_lo, y_hi):
        y = to_y(t)
        out.append(f'<line x1="{px_l:.2f}" y1="{y:.2f}" x2="{px_r:.2f}" y2="{y:.2f}" '
                   f'stroke="#dddddd" stroke-width="1"/>')
        out.append(f'<text x="{px_l - 6:.2f}" y="{y + 4:.2f}" font-family="sans-serif" '
                   f'font-size="11" text-anchor="end" fill="#333333">{t:g}</text>')
    out.append(f'<rect x="{px_l:.2f}" y="{px_t:.2f}" width="{px_r - px_l:.2f}" '
               f'height="{px_b - px_t:.2f}" fill="none" stroke="#333333" stroke-width="1"/>')

    for idx, name in enumerate(columns):
        color = PALETTE[idx % len(PALETTE)]
        segment = []
        segments = []
        for x, y in zip(xs, series[name]):
            if math.isfinite(y):
                segment.append((to_x(x), to_y(y)))
            elif segment:
                segments.append(segment)
                segment = []
        if segment:
            segments.append(segment)
        for seg in segments:
            if len(seg) == 1:
                out.append(f'<circle cx="{seg[0][0]:.2f}" cy="{seg[0][1]:.2f}" r="2" '
                           f'fill="{color}"/>')
            else:
                pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in seg)
                out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                           f'stroke-width="1.5"/>')
        ly = px_t + 16 + 16 * idx
        out.append(f'<line x1="{px_r - 108:.2f}" y1="{ly - 4:.2f}" x2="{px_r - 88:.2f}" '
                   f'y2="{ly - 4:.2f}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{px_r - 84:.2f}" y="{ly:.2f}" font-family="sans-serif" '
                   f'font-size="12" fill="#333333">{name}</text>')

    out.append(f'<text x="{0.5 * (px_l + px_r):.2f}" y="{CANVAS_H - 10:.2f}" '
               f'font-family="sans-serif" font-size="12" text-anchor="middle" '
               f'fill="#333333">{rows[0].variable}</text>')
    if title:
        out.append(f'<text x="{px_l:.2f}" y="{px_t - 4:.2f}" font-family="sans-serif" '
                   f'font-size="13" fill="#333333">{title}</text>')
    out.append('</svg>')
    return _write_bytes(("\n".join(out) + "\n").encode("ascii"), dest)


# --- plain-text configs -----------------------------------------------------

_GENERIC_FIELDS = ("omega_a", "kappa_a", "kappa_c", "g", "omega_c",
                   "tau", "theta", "n_a", "n_c")
_OPTOMECH_FIELDS = ("kappa_a", "gamma_m", "delta_0", "g0", "e_amp", "power",
                    "laser_freq", "omega_m", "tau", "theta", "n_a", "n_c")


def parse_config(text):
    """Scenario from 'key = value' lines.

    '#' starts a comment; keys are case-insensitive and may appear once.
    Required: kind and sweep ('sweep = <variable> <start> <stop> <step>').
    Optional: name, outputs (space- or comma-separated subset of the known
    columns), g_direct (optomech), and the numeric model fields of the kind.
    Everything else raises ConfigError, as do out-of-range values.
    """
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().lower()
        value = value.strip()
        if not sep or not key or not value:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        if key in entries:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        entries[key] = (lineno, value)

    def take(key):
        return entries.pop(key, (None, None))[1]

    kind = take("kind")
    if kind is None:
        raise ConfigError("missing required key 'kind'")
    kind = kind.lower()
    if kind not in _SWEEPABLE:
        raise ConfigError(f"unknown kind {kind!r}; use generic or optomech")

    sweep_raw = take("sweep")
    if sweep_raw is None:
        raise ConfigError("missing required key 'sweep'")
    tokens = sweep_raw.split()
    if len(tokens) != 4:
        raise ConfigError(f"sweep needs '<variable> <start> <stop> <step>', got {sweep_raw!r}")
    sweep = SweepSpec(tokens[0].lower(), _to_float("sweep start", tokens[1]),
                      _to_float("sweep stop", tokens[2]),
                      _to_float("sweep step", tokens[3]))

    name = take("name") or "scenario"
    outputs_raw = take("outputs")
    outputs = (tuple(outputs_raw.replace(",", " ").lower().split())
               if outputs_raw is not None else OUTPUT_FIELDS)

    g_direct_raw = take("g_direct")
    g_direct = None if g_direct_raw is None else _to_float("g_direct", g_direct_raw)

    allowed = _GENERIC_FIELDS if kind == "generic" else _OPTOMECH_FIELDS
    numbers = {}
    for key, (lineno, value) in entries.items():
        if key not in allowed:
            raise ConfigError(f"line {lineno}: unknown key {key!r} for kind {kind!r}")
        numbers[key] = _to_float(key, value)

    try:
        if kind == "generic":
            base = FeedbackParams(**{"omega_a": 0.0, "g": 0.0, **numbers})
        else:
            base = OptoParams(**{"delta_0": 0.0, "g0": 0.0, **numbers})
    except TypeError as exc:
        raise ConfigError(f"missing required model field: {exc}") from exc
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    return Scenario(kind=kind, base=base, sweep=sweep, outputs=outputs,
                    g_direct=g_direct, name=name)


def _to_float(label, token):
    try:
        value = float(token)
    except ValueError as exc:
        raise ConfigError(f"{label}: not a number: {token!r}") from exc
    if not math.isfinite(value):
        raise ConfigError(f"{label}: must be finite, got {token!r}")
    return value
