"""Explicit x-marching for the stabilized (wave-type) Cauchy problem.

The marched equation is

    V_xx - V_yy + P1 S - k^2 V = 0,    V(0,·) = datum,  V_x(0,·) = 0,

with S the previous linearization iterate (``march_once``/``solve_V``) or V
itself (``solve_u_eps_direct``). x plays the role of time: a leapfrog update
in x with a second-order Taylor start-up row.

Every y-operator involved (the y-Laplacian, P1, the k^2 term) is diagonal in
the sine basis, so the update is carried out on the coefficient rows and
synthesized back onto the grid. For j_max = N-1 the Riemann-sum projection is
a bijection on interior values and this is the nodal scheme verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .forward import GridSpec
from .spectral import (FrequencyPartition, build_partition, central_eigenvalues,
                       dst_forward, dst_inverse)

ENDPOINT_TOL = 1e-10


class StepConstraintError(ValueError):
    """The x-step is too large for the truncation level or for explicit stability."""


@dataclass(frozen=True)
class StabilizationParams:
    """k, eta (log gamma = 2k - eta), sweep count q and the grid.

    ``y_laplacian`` selects how V_yy is discretized: ``"spectral"`` (exact on
    the retained modes) or ``"central"`` (three-point difference, which
    carries an O(dy^2) eigenvalue error into every mode).
    """

    k: float
    eta: float | None = None
    q: int = 1
    grid: GridSpec = field(default_factory=lambda: GridSpec(400, 80))
    j_max: int | None = None
    y_laplacian: str = "spectral"

    def __post_init__(self):
        if self.eta is None:
            object.__setattr__(self, "eta", float(self.k))
        if self.k <= 0:
            raise ValueError(f"wavenumber must be positive, got {self.k}")
        if not 0 < self.eta <= self.k:
            raise ValueError(f"eta must satisfy 0 < eta <= k, got eta={self.eta}, k={self.k}")
        if self.q < 1:
            raise ValueError(f"q must be >= 1, got {self.q}")
        if self.y_laplacian not in ("spectral", "central"):
            raise ValueError(f"unknown y_laplacian {self.y_laplacian!r}")
        lg_dx = self.log_gamma * self.grid.dx
        if not lg_dx * np.exp(lg_dx) < 1.0:
            raise StepConstraintError(
                f"log(gamma)*dx*gamma^dx = {lg_dx * np.exp(lg_dx):.3g} must be < 1; refine M")
        # leapfrog on c'' = -s c is stable for dx^2 s < 4
        s_max = float(np.max(-self._y_symbol() - self.k ** 2, initial=0.0))
        if self.grid.dx ** 2 * s_max >= 4.0:
            raise StepConstraintError(
                f"explicit marching unstable: dx^2 * max|lambda| = {self.grid.dx ** 2 * s_max:.3g} >= 4")

    @property
    def log_gamma(self) -> float:
        return 2.0 * self.k - self.eta

    @property
    def gamma(self) -> float:
        return float(np.exp(self.log_gamma))

    @property
    def partition(self) -> FrequencyPartition:
        return build_partition(self.k, self.eta, self.j_max, N=self.grid.N)

    def _y_symbol(self) -> np.ndarray:
        basis = self.partition.basis
        if self.y_laplacian == "central":
            return central_eigenvalues(basis)
        return -basis.mu


@dataclass(frozen=True)
class CauchySlice:
    """Cauchy data at x=0. The marcher only supports a zero slope."""

    value: np.ndarray
    slope: np.ndarray | None = None

    @classmethod
    def zero_slope(cls, value) -> "CauchySlice":
        value = np.asarray(value, dtype=float)
        return cls(value, np.zeros_like(value))


def _validated_datum(data: CauchySlice, params: StabilizationParams) -> np.ndarray:
    value = np.asarray(data.value, dtype=float)
    if value.shape != (params.grid.N + 1,):
        raise ValueError(f"datum must have {params.grid.N + 1} samples, got {value.shape}")
    if data.slope is not None and np.any(np.asarray(data.slope) != 0):
        raise ValueError("only zero Neumann data are supported; split off u1 with solve_U")
    if max(abs(value[0]), abs(value[-1])) > ENDPOINT_TOL:
        raise ValueError(
            f"datum must vanish at y=0,1 (got {value[0]:.3g}, {value[-1]:.3g}); clamp noisy data first")
    return value


def _march(c0, n_rows, zero_order, band_weight, dx, source_coeffs=None):
    """Leapfrog on coefficient rows.

    c'' = zero_order * c + band_weight * s, where s is row m of
    ``source_coeffs``, or c itself when no source is given.
    """
    if source_coeffs is None:
        zero_order = zero_order + band_weight

    def accel(m, c):
        if source_coeffs is None:
            return zero_order * c
        return zero_order * c + band_weight * source_coeffs[m]

    out = np.empty((n_rows, c0.size))
    out[0] = c0
    out[1] = c0 + 0.5 * dx * dx * accel(0, c0)
    for m in range(1, n_rows - 1):
        out[m + 1] = 2.0 * out[m] - out[m - 1] + dx * dx * accel(m, out[m])
    return out


def _synthesize(coeffs, datum, basis):
    V = dst_inverse(coeffs, basis)
    V[0] = datum
    V[:, 0] = 0.0
    V[:, -1] = 0.0
    return V


def march_once(source_prev, data: CauchySlice, params: StabilizationParams) -> np.ndarray:
    """One linearization sweep: returns V^{q+1} given V^q = ``source_prev``."""
    datum = _validated_datum(data, params)
    source_prev = np.asarray(source_prev, dtype=float)
    if source_prev.shape != params.grid.shape:
        raise ValueError(f"source shape {source_prev.shape} does not match {params.grid.shape}")
    part = params.partition
    basis = part.basis
    # -P1 S contributes +2 lambda_j c_j(S) on band modes
    band_weight = np.where(part.in_band, 2.0 * part.lam, 0.0)
    coeffs = _march(dst_forward(datum, basis), params.grid.M + 1,
                    params._y_symbol() + params.k ** 2, band_weight, params.grid.dx,
                    source_coeffs=dst_forward(source_prev, basis))
    return _synthesize(coeffs, datum, basis)


def initial_guess(data: CauchySlice, params: StabilizationParams) -> np.ndarray:
    """V^0: the datum extended constantly in x."""
    datum = _validated_datum(data, params)
    return np.tile(datum, (params.grid.M + 1, 1))


def solve_V(data: CauchySlice, params: StabilizationParams, return_iterates: bool = False):
    """Run ``params.q`` sweeps from the constant-in-x initial guess."""
    V = initial_guess(data, params)
    iterates = []
    for _ in range(params.q):
        V = march_once(V, data, params)
        iterates.append(V)
    return (V, iterates) if return_iterates else V


def solve_u_eps_direct(data: CauchySlice, params: StabilizationParams) -> np.ndarray:
    """March the stabilized system with P1 applied to the current row.

    This is the fixed point of the linearization sweeps, i.e. the solution of
    u_xx - u_yy + P u + k^2 u = 0 with zero Neumann data, mode by mode
    c'' = lambda c on the band and c'' = -lambda c on B and A3.
    """
    datum = _validated_datum(data, params)
    part = params.partition
    basis = part.basis
    band_weight = np.where(part.in_band, 2.0 * part.lam, 0.0)
    coeffs = _march(dst_forward(datum, basis), params.grid.M + 1,
                    params._y_symbol() + params.k ** 2, band_weight, params.grid.dx)
    return _synthesize(coeffs, datum, basis)


def compose_solution(U, V) -> np.ndarray:
    U = np.asarray(U, dtype=float)
    V = np.asarray(V, dtype=float)
    if U.shape != V.shape:
        raise ValueError(f"grid mismatch: {U.shape} vs {V.shape}")
    return U + V
