"""Sampled field maps (radial, azimuthal, 2-D) and their CSV/JSON export."""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ConfigError, ExportError
from .field_model import (
    Sense,
    field_quasilinear,
    field_rotating,
    intensity_lp01,
    orbit_orientation,
    transverse_orientation,
)
from .mode_solver import (
    FiberSpec,
    Normalization,
    Polarization,
    mode_shape,
    solve_fundamental,
)

COLUMNS = ("E2", "Ex2", "Ey2", "Ez2", "Er2", "Ephi2", "theta", "epsilon", "E2_LP")
DIRECTIONS = {"x": 0.0, "y": math.pi / 2, "diagonal": math.pi / 4}
MAX_GRID_POINTS = 4096**2

DEFAULT_RADIAL = ("E2", "Ex2", "Ey2", "Ez2", "Er2", "Ephi2", "E2_LP")
DEFAULT_AZIMUTHAL = ("E2", "Ex2", "Ey2", "Ez2", "theta", "epsilon")
DEFAULT_GRID = ("E2", "Ex2", "Ey2", "Ez2")


@dataclass(frozen=True)
class ModeConfig:
    """Which fiber, which polarization class, and how the amplitude is fixed."""

    spec: FiberSpec
    polarization: Polarization = Polarization.QUASILINEAR
    phi0: float = 0.0
    sense: Sense = Sense.CLOCKWISE
    normalization: Normalization = Normalization.UNIT_AMPLITUDE

    def __post_init__(self):
        try:
            object.__setattr__(self, "polarization", Polarization(self.polarization))
            object.__setattr__(self, "sense", Sense(self.sense))
            object.__setattr__(self, "normalization", Normalization(self.normalization))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if not math.isfinite(self.phi0):
            raise ConfigError("phi0 must be finite")

    def as_dict(self) -> dict:
        d = {"polarization": self.polarization.value, "normalization": self.normalization.value}
        if self.polarization is Polarization.QUASILINEAR:
            d["phi0"] = float(self.phi0)
        else:
            d["sense"] = self.sense.value
        return d

    @classmethod
    def from_metadata(cls, meta: dict) -> "ModeConfig":
        f, m = meta["fiber"], meta["mode"]
        spec = FiberSpec(f["core_radius_um"], f["wavelength_um"], f["n1"], f["n2"])
        return cls(
            spec,
            m["polarization"],
            m.get("phi0", 0.0),
            m.get("sense", Sense.CLOCKWISE),
            m["normalization"],
        )


@dataclass
class FieldMap:
    """Sampled field data. ``axes`` hold one coordinate per sample (grids are flattened row-major)."""

    kind: str
    axes: dict = field(default_factory=dict)
    columns: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def __len__(self):
        return len(next(iter(self.axes.values())))


def _check_columns(columns, default):
    columns = tuple(default if columns is None else columns)
    if not columns:
        raise ConfigError("at least one column must be requested")
    unknown = [c for c in columns if c not in COLUMNS]
    if unknown:
        raise ConfigError(f"unknown column(s) {unknown}; choose from {list(COLUMNS)}")
    if len(set(columns)) != len(columns):
        raise ConfigError("duplicate column names")
    return columns


def _evaluate(mode: ModeConfig, r, phi, columns):
    r, phi = np.broadcast_arrays(np.asarray(r, dtype=float), np.asarray(phi, dtype=float))
    sol = solve_fundamental(mode.spec)
    shape = mode_shape(mode.spec, sol, mode.normalization, mode.polarization)
    if mode.polarization is Polarization.QUASILINEAR:
        fv = field_quasilinear(shape, sol, r, phi, mode.phi0)
    else:
        fv = field_rotating(shape, sol, r, phi, mode.sense)
    Ex, Ey, Ez = np.asarray(fv.Ex), np.asarray(fv.Ey), np.asarray(fv.Ez)
    Er, Ephi = np.asarray(fv.Er), np.asarray(fv.Ephi)
    sq = lambda z: z.real**2 + z.imag**2
    out = {}
    for name in columns:
        if name == "E2":
            out[name] = sq(Ex) + sq(Ey) + sq(Ez)
        elif name == "Ex2":
            out[name] = sq(Ex)
        elif name == "Ey2":
            out[name] = sq(Ey)
        elif name == "Ez2":
            out[name] = sq(Ez)
        elif name == "Er2":
            out[name] = sq(Er)
        elif name == "Ephi2":
            out[name] = sq(Ephi)
        elif name == "theta":
            if mode.polarization is Polarization.QUASILINEAR:
                out[name] = transverse_orientation(Ex, Ey)
            else:
                out[name] = orbit_orientation(Ex, Ey)
        elif name == "epsilon":
            if mode.polarization is Polarization.QUASILINEAR:
                out[name] = np.full(Ex.shape, np.nan)
            else:
                ar, ap = np.abs(Er), np.abs(Ephi)
                out[name] = np.abs(ar - ap) / (ar + ap)
        elif name == "E2_LP":
            out[name] = np.asarray(intensity_lp01(shape, sol, r, mode.polarization), dtype=float)
    meta = {
        "tool": "fibermode",
        "version": __version__,
        "fiber": mode.spec.as_dict(),
        "mode": mode.as_dict(),
        "amplitude_A": shape.amplitude_A,
        "solution": sol.scalars(),
    }
    return {k: np.ravel(v) for k, v in out.items()}, meta


def _direction_angle(direction) -> float:
    if isinstance(direction, str):
        if direction not in DIRECTIONS:
            try:
                return float(direction)
            except ValueError:
                raise ConfigError(
                    f"direction must be one of {list(DIRECTIONS)} or an angle in radians"
                ) from None
        return DIRECTIONS[direction]
    angle = float(direction)
    if not math.isfinite(angle):
        raise ConfigError("direction angle must be finite")
    return angle


def sample_radial(mode: ModeConfig, direction="x", r_max=3.0, count=301, columns=None) -> FieldMap:
    """Uniform samples of r/a on [0, r_max] along a fixed azimuth."""
    columns = _check_columns(columns, DEFAULT_RADIAL)
    if not (isinstance(count, int) and count >= 2):
        raise ConfigError("radial count must be an integer >= 2")
    if not (math.isfinite(r_max) and r_max > 0):
        raise ConfigError("r_max must be > 0")
    phi = _direction_angle(direction)
    a = mode.spec.core_radius_a
    r_over_a = np.linspace(0.0, r_max, count)
    cols, meta = _evaluate(mode, r_over_a * a, phi, columns)
    meta["sampling"] = {
        "kind": "radial",
        "direction": direction if isinstance(direction, str) else float(direction),
        "phi": phi,
        "r_max_over_a": float(r_max),
        "count": count,
        "columns": list(columns),
    }
    return FieldMap("radial", {"r_over_a": r_over_a}, cols, meta)


def sample_azimuthal(mode: ModeConfig, r=1.5, count=360, columns=None) -> FieldMap:
    """Uniform samples of phi on [0, 2 pi) at fixed r/a."""
    columns = _check_columns(columns, DEFAULT_AZIMUTHAL)
    if not (isinstance(count, int) and count >= 4):
        raise ConfigError("azimuthal count must be an integer >= 4")
    if not (math.isfinite(r) and r >= 0):
        raise ConfigError("r must be >= 0")
    phi_over_pi = 2.0 * np.arange(count) / count
    cols, meta = _evaluate(mode, r * mode.spec.core_radius_a, phi_over_pi * np.pi, columns)
    meta["sampling"] = {
        "kind": "azimuthal",
        "r_over_a": float(r),
        "count": count,
        "columns": list(columns),
    }
    return FieldMap("azimuthal", {"phi_over_pi": phi_over_pi}, cols, meta)


def sample_grid2d(mode: ModeConfig, extent=3.0, resolution=201, columns=None) -> FieldMap:
    """Cartesian grid over [-extent a, extent a]^2; rows run along x, y is the slow index."""
    columns = _check_columns(columns, DEFAULT_GRID)
    if not (isinstance(resolution, int) and resolution >= 16):
        raise ConfigError("grid resolution must be an integer >= 16")
    if resolution * resolution > MAX_GRID_POINTS:
        raise ConfigError(f"grid of {resolution}^2 points exceeds the 4096^2 limit")
    if not (math.isfinite(extent) and extent > 0):
        raise ConfigError("extent must be > 0")
    ticks = np.linspace(-extent, extent, resolution)
    Y, X = np.meshgrid(ticks, ticks, indexing="ij")
    a = mode.spec.core_radius_a
    r = np.hypot(X, Y) * a
    phi = np.arctan2(Y, X)
    cols, meta = _evaluate(mode, r, phi, columns)
    meta["sampling"] = {
        "kind": "grid2d",
        "extent_over_a": float(extent),
        "resolution": resolution,
        "shape": [resolution, resolution],
        "columns": list(columns),
    }
    return FieldMap("grid2d", {"x_over_a": X.ravel(), "y_over_a": Y.ravel()}, cols, meta)


def merge_maps(parts) -> FieldMap:
    """Join maps sampled on the same axes, suffixing column names.

    ``parts`` is a sequence of (suffix, FieldMap).
    """
    suffix0, first = parts[0]
    merged = FieldMap(first.kind, {k: v for k, v in first.axes.items()}, {}, {})
    for suffix, m in parts:
        if m.kind != first.kind or any(
            not np.array_equal(m.axes[k], v) for k, v in first.axes.items()
        ):
            raise ConfigError("merged maps must share kind and axes")
        for name, col in m.columns.items():
            merged.columns[name + suffix] = col
    meta = {k: v for k, v in first.metadata.items() if k not in ("mode", "sampling", "amplitude_A")}
    meta["parts"] = [
        {"suffix": s, "mode": m.metadata["mode"], "sampling": m.metadata["sampling"],
         "fiber": m.metadata["fiber"], "amplitude_A": m.metadata["amplitude_A"]}
        for s, m in parts
    ]
    merged.metadata = meta
    return merged


def regenerate(metadata: dict) -> FieldMap:
    """Rebuild a map from its exported metadata block."""
    if "parts" in metadata:
        return merge_maps([(p["suffix"], regenerate(p)) for p in metadata["parts"]])
    mode = ModeConfig.from_metadata(metadata)
    smp = metadata["sampling"]
    if smp["kind"] == "radial":
        return sample_radial(mode, smp["direction"], smp["r_max_over_a"], smp["count"], smp["columns"])
    if smp["kind"] == "azimuthal":
        return sample_azimuthal(mode, smp["r_over_a"], smp["count"], smp["columns"])
    if smp["kind"] == "grid2d":
        return sample_grid2d(mode, smp["extent_over_a"], smp["resolution"], smp["columns"])
    raise ConfigError(f"unknown map kind {smp['kind']!r}")


def _validate_for_export(fmap: FieldMap):
    if not fmap.columns:
        raise ConfigError("field map has no columns to export")
    if not fmap.axes:
        raise ConfigError("field map has no axes")
    n = len(fmap)
    for name, arr in list(fmap.axes.items()) + list(fmap.columns.items()):
        if len(arr) != n:
            raise ConfigError(f"series {name!r} has length {len(arr)}, expected {n}")


def _fmt(x: float) -> str:
    return "%.17g" % x


def format_csv(fmap: FieldMap) -> str:
    _validate_for_export(fmap)
    buf = io.StringIO()
    buf.write(f"# kind: {json.dumps(fmap.kind)}\n")
    for key in sorted(fmap.metadata):
        buf.write(f"# {key}: {json.dumps(fmap.metadata[key], sort_keys=True)}\n")
    names = list(fmap.axes) + list(fmap.columns)
    buf.write(",".join(names) + "\n")
    data = np.column_stack([np.asarray(fmap.axes[k], float) for k in fmap.axes]
                           + [np.asarray(fmap.columns[k], float) for k in fmap.columns])
    for row in data:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


def _nan_to_none(arr):
    return [None if math.isnan(v) else v for v in np.asarray(arr, float).tolist()]


def format_json(fmap: FieldMap) -> str:
    _validate_for_export(fmap)
    doc = {
        "metadata": {"kind": fmap.kind, **fmap.metadata},
        "axes": {k: _nan_to_none(v) for k, v in fmap.axes.items()},
        "columns": {k: _nan_to_none(v) for k, v in fmap.columns.items()},
    }
    return json.dumps(doc, sort_keys=False, allow_nan=False) + "\n"


def export(fmap: FieldMap, fmt: str, path) -> None:
    """Write ``fmap`` as ``csv`` or ``json``. Nothing is written if validation fails."""
    if fmt == "csv":
        text = format_csv(fmap)
    elif fmt == "json":
        text = format_json(fmap)
    else:
        raise ConfigError(f"unknown export format {fmt!r}; use 'csv' or 'json'")
    path = Path(path)
    try:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise ExportError(f"cannot write {path}: {exc.strerror or exc}") from exc


def read_csv(path) -> FieldMap:
    path = Path(path)
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise ExportError(f"cannot read {path}: {exc.strerror or exc}") from exc
    meta = {}
    i = 0
    while i < len(lines) and lines[i].startswith("#"):
        key, _, val = lines[i][1:].strip().partition(": ")
        meta[key] = json.loads(val)
        i += 1
    names = lines[i].split(",")
    rows = [[float(v) for v in ln.split(",")] for ln in lines[i + 1:] if ln]
    data = np.array(rows, dtype=float).reshape(len(rows), len(names))
    kind = meta.pop("kind")
    n_axes = 2 if kind == "grid2d" else 1
    axes = {n: data[:, j] for j, n in enumerate(names[:n_axes])}
    cols = {n: data[:, j] for j, n in enumerate(names[n_axes:], start=n_axes)}
    return FieldMap(kind, axes, cols, meta)


def read_json(path) -> FieldMap:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise ExportError(f"cannot read {path}: {exc.strerror or exc}") from exc
    conv = lambda v: np.array([np.nan if x is None else x for x in v], dtype=float)
    meta = dict(doc["metadata"])
    kind = meta.pop("kind")
    return FieldMap(
        kind,
        {k: conv(v) for k, v in doc["axes"].items()},
        {k: conv(v) for k, v in doc["columns"].items()},
        meta,
    )
