"""Experiment orchestration for the two benchmark problems and custom runs."""

from __future__ import annotations

import logging
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from . import io, plotting
from .forward import GridSpec, generate_neumann_data, solve_dirichlet, solve_U
from .marching import CauchySlice, StabilizationParams, compose_solution, solve_V
from .noise import NoiseModel, add_noise, check_grid_constraint, relative_error_E

log = logging.getLogger(__name__)


def example1_boundary(y):
    y = np.asarray(y, dtype=float)
    s = 0.5 ** 4 + (y - 0.5) ** 4
    return -np.exp(-2.0 * s) + s


def example2_boundary(y):
    y = np.asarray(y, dtype=float)
    return -np.sin(7.0 * np.sqrt(0.001 + (y - 0.5) ** 2)) / (7.0 * np.sqrt(1.0 + (y - 0.5) ** 2))


def _zero(y):
    return np.zeros_like(np.asarray(y, dtype=float))


EXAMPLES = {
    1: dict(k=5.0, u0=example1_boundary, g=example1_boundary, label="low frequency"),
    2: dict(k=50.0, u0=_zero, g=example2_boundary, label="high frequency"),
}


@dataclass
class ExperimentConfig:
    """Run settings. ``k``/``u0``/``g`` default to the chosen example's."""

    example: int | str = 1
    k: float | None = None
    eps: list = field(default_factory=lambda: [0.99, 0.1])
    eta: float | None = None
    M: int = 400
    N: int = 80
    q: int = 1
    seeds: list = field(default_factory=lambda: [0])
    output_dir: str | Path | None = None
    emit_heatmaps: bool = False
    beta: float = 0.99
    neumann_as_printed: bool = False
    u0: Callable | None = None
    g: Callable | None = None

    def __post_init__(self):
        if self.example in ("1", "2"):
            self.example = int(self.example)
        if self.example in EXAMPLES:
            preset = EXAMPLES[self.example]
            self.k = preset["k"] if self.k is None else float(self.k)
            self.u0 = self.u0 or preset["u0"]
            self.g = self.g or preset["g"]
        elif self.example == "custom":
            if self.k is None or self.u0 is None or self.g is None:
                raise ValueError("custom runs need k, u0 and g")
        else:
            raise ValueError(f"unknown example {self.example!r}")
        if self.eta is None:
            self.eta = self.k
        if 1.0 / self.M > 1.0 / self.N:
            raise ValueError(f"need dx <= dy, got M={self.M} < N={self.N}")
        self.eps = [float(e) for e in self.eps]
        self.seeds = [int(s) for s in self.seeds]

    @property
    def grid(self) -> GridSpec:
        return GridSpec(self.M, self.N)

    @property
    def params(self) -> StabilizationParams:
        return StabilizationParams(k=self.k, eta=self.eta, q=self.q, grid=self.grid)

    def snapshot(self) -> dict:
        d = {k: v for k, v in asdict(self).items() if k not in ("u0", "g")}
        d["output_dir"] = None if self.output_dir is None else str(self.output_dir)
        return d


@dataclass
class RunRecord:
    config: dict
    metrics: list = field(default_factory=list)
    truth_path: str | None = None
    heatmaps: list = field(default_factory=list)
    figures: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def summary(self) -> list:
        out = []
        for eps in dict.fromkeys(row["eps"] for row in self.metrics):
            vals = np.array([r["E_percent"] for r in self.metrics if r["eps"] == eps])
            out.append({"eps": eps, "n": int(vals.size), "mean": float(vals.mean()),
                        "std": float(vals.std(ddof=1)) if vals.size > 1 else 0.0})
        return out

    def mean_error(self, eps: float) -> float:
        for row in self.summary():
            if row["eps"] == eps:
                return row["mean"]
        raise KeyError(eps)

    def to_dict(self, include_timing: bool = False) -> dict:
        rows = []
        for r in self.metrics:
            r = dict(r)
            if not include_timing:
                r.pop("wall_time", None)
            rows.append(r)
        return {
            "config": self.config,
            "truth_path": self.truth_path,
            "metrics": rows,
            "summary": self.summary(),
            "heatmaps": self.heatmaps,
            "figures": self.figures,
            "warnings": self.warnings,
        }


@dataclass
class ExampleFields:
    """Intermediate grids of one pipeline run, shared across noise draws."""

    grid: GridSpec
    u0: np.ndarray
    g: np.ndarray
    truth: np.ndarray
    u1: np.ndarray
    U: np.ndarray


def prepare_fields(config: ExperimentConfig) -> ExampleFields:
    """Truth by the four-sided Dirichlet solve, Neumann trace, and the U-part."""
    grid = config.grid
    u0 = config.u0(grid.y)
    g = config.g(grid.y)
    truth = solve_dirichlet(u0, g, config.k, grid)
    u1 = generate_neumann_data(truth, u0, grid, as_printed=config.neumann_as_printed)
    U = solve_U(u1, config.k, grid)
    return ExampleFields(grid, u0, g, truth, u1, U)


def reconstruct(fields: ExampleFields, noise: NoiseModel, params: StabilizationParams) -> np.ndarray:
    """u^eps = U + V^{eps,q} for one noisy draw of the datum."""
    noisy = add_noise(fields.u0, noise)
    datum = noisy - fields.U[0]
    V = solve_V(CauchySlice.zero_slope(datum), params)
    return compose_solution(fields.U, V)


def _tag(eps: float) -> str:
    return f"{eps:g}".replace(".", "p").replace("-", "m")


def run_example(config: ExperimentConfig, fields: ExampleFields | None = None) -> RunRecord:
    """Full pipeline for every (eps, seed); writes grids when ``output_dir`` is set."""
    params = config.params
    fields = fields or prepare_fields(config)
    record = RunRecord(config=config.snapshot())
    out = Path(config.output_dir) if config.output_dir is not None else None

    if out is not None:
        io.emit_grid_csv(fields.truth, out / "truth.csv")
        record.truth_path = "truth.csv"
        if config.emit_heatmaps:
            io.emit_heatmap(fields.truth, out / "truth.ppm")
            record.heatmaps.append("truth.ppm")

    panels = {"true": fields.truth}
    for eps in config.eps:
        report = check_grid_constraint(config.N, eps, config.k, config.beta)
        if not report.passed:
            log.warning(report.message())
            record.warnings.append(report.message())
        for seed in config.seeds:
            t0 = time.perf_counter()
            approx = reconstruct(fields, NoiseModel(eps, seed, config.beta), params)
            E = relative_error_E(approx, fields.truth)
            row = {"eps": eps, "seed": seed, "E_percent": E,
                   "wall_time": time.perf_counter() - t0, "grid_path": None}
            if out is not None:
                name = f"recon_eps{_tag(eps)}_seed{seed}"
                io.emit_grid_csv(approx, out / f"{name}.csv")
                row["grid_path"] = f"{name}.csv"
                if config.emit_heatmaps:
                    io.emit_heatmap(approx, out / f"{name}.ppm")
                    record.heatmaps.append(f"{name}.ppm")
            if seed == config.seeds[0]:
                panels[f"computed (eps={eps:g})"] = approx
            record.metrics.append(row)
            log.info("eps=%g seed=%d E=%.4g%%", eps, seed, E)

    if out is not None:
        if config.emit_heatmaps:
            title = f"example {config.example}, k={config.k:g}"
            plotting.field_panels(panels, out / "fields.png", title=title)
            record.figures.append("fields.png")
        io.emit_metrics_json(record, out / "metrics.json")
    return record


def run_sweep(config: ExperimentConfig, eps_values) -> RunRecord:
    """Same pipeline over many noise levels, plus an E-versus-eps figure."""
    config.eps = [float(e) for e in eps_values]
    record = run_example(config)
    if config.output_dir is not None:
        rows = record.summary()
        out = Path(config.output_dir)
        plotting.error_curve([r["eps"] for r in rows], [r["mean"] for r in rows],
                             [r["std"] for r in rows], out / "error_vs_eps.png",
                             title=f"example {config.example}, k={config.k:g}")
        record.figures.append("error_vs_eps.png")
        io.emit_metrics_json(record, out / "metrics.json")
    return record
