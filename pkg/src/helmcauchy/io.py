"""Grid CSV, binary PPM heatmaps and metrics JSON."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
from matplotlib import colormaps


def emit_grid_csv(grid_values, path) -> Path:
    """Write ``x,y,value`` rows in m-major order with 17 significant digits."""
    u = np.asarray(grid_values, dtype=float)
    M, N = u.shape[0] - 1, u.shape[1] - 1
    x = np.repeat(np.arange(M + 1) / M, N + 1)
    y = np.tile(np.arange(N + 1) / N, M + 1)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(path, np.column_stack([x, y, u.ravel()]), fmt="%.17g",
               delimiter=",", header="x,y,value", comments="")
    return path


def read_grid_csv(path) -> np.ndarray:
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    nx = np.unique(data[:, 0]).size
    ny = np.unique(data[:, 1]).size
    return data[:, 2].reshape(nx, ny)


def _rgb(u, cmap="viridis"):
    u = np.asarray(u, dtype=float)
    lo, hi = float(np.min(u)), float(np.max(u))
    if hi > lo:
        t = (u - lo) / (hi - lo)
    else:
        t = np.zeros_like(u)
    lut = (colormaps[cmap](np.linspace(0.0, 1.0, 256))[:, :3] * 255).round().astype(np.uint8)
    return lut[np.clip((t * 255).round().astype(int), 0, 255)]


def emit_heatmap(grid_values, path, cmap: str = "viridis") -> Path:
    """Binary PPM, one pixel per node, x to the right and y upward.

    Colors are a linear map of [min, max] of the grid; a constant grid comes
    out as a single color.
    """
    u = np.asarray(grid_values, dtype=float)
    img = _rgb(u.T[::-1], cmap)
    h, w = img.shape[:2]
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as fh:
        fh.write(f"P6\n{w} {h}\n255\n".encode("ascii"))
        fh.write(np.ascontiguousarray(img).tobytes())
    return path


def read_ppm(path) -> np.ndarray:
    """Read a binary PPM into an (height, width, 3) uint8 array."""
    raw = Path(path).read_bytes()
    fields, pos = [], 0
    while len(fields) < 4:
        while raw[pos:pos + 1].isspace():
            pos += 1
        if raw[pos:pos + 1] == b"#":
            pos = raw.index(b"\n", pos) + 1
            continue
        end = pos
        while not raw[end:end + 1].isspace():
            end += 1
        fields.append(raw[pos:end])
        pos = end
    if fields[0] != b"P6":
        raise ValueError(f"not a binary PPM: magic {fields[0]!r}")
    w, h, maxval = (int(f) for f in fields[1:])
    if maxval != 255:
        raise ValueError(f"unsupported maxval {maxval}")
    data = np.frombuffer(raw[pos + 1:pos + 1 + w * h * 3], dtype=np.uint8)
    return data.reshape(h, w, 3)


def emit_metrics_json(record, path, include_timing: bool = False) -> Path:
    """Serialize a RunRecord; timings are left out unless asked for so reruns are byte-identical."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(record.to_dict(include_timing=include_timing), indent=2)
    path.write_text(text + "\n")
    return path
