"""Dirichlet sine basis on the y-grid and the truncation operators built on it.

All slice-valued functions accept arrays whose last axis holds the N+1 nodal
values y_n = n/N, so a whole grid function (M+1, N+1) can be passed at once.
Projections use the interior Riemann sum, which for j_max = N-1 is an exact
discrete sine transform (DST-I up to scaling).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np


class ModeClass(str, Enum):
    A1 = "A1"  # lambda > 0, cosh growth
    A2 = "A2"  # lambda == 0
    A3 = "A3"  # lambda < 0, oscillatory


@dataclass(frozen=True)
class SineBasis:
    """phi_j(y_n) = sqrt(2) sin(j pi y_n) sampled on y_n = n/N, j = 1..j_max."""

    N: int
    j_max: int | None = None
    _table: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.N < 2:
            raise ValueError(f"N must be >= 2, got {self.N}")
        if self.j_max is None:
            object.__setattr__(self, "j_max", self.N - 1)
        if not 1 <= self.j_max <= self.N - 1:
            raise ValueError(f"j_max must lie in [1, {self.N - 1}], got {self.j_max}")
        y = np.arange(self.N + 1) / self.N
        table = np.sqrt(2.0) * np.sin(np.pi * np.outer(self.modes, y))
        table[:, 0] = 0.0
        table[:, -1] = 0.0
        table.setflags(write=False)
        object.__setattr__(self, "_table", table)

    @property
    def dy(self) -> float:
        return 1.0 / self.N

    @property
    def y(self) -> np.ndarray:
        return np.arange(self.N + 1) / self.N

    @property
    def modes(self) -> np.ndarray:
        return np.arange(1, self.j_max + 1)

    @property
    def mu(self) -> np.ndarray:
        """Continuum Dirichlet eigenvalues j^2 pi^2."""
        return (self.modes * np.pi) ** 2

    @property
    def table(self) -> np.ndarray:
        """(j_max, N+1) array of basis samples; endpoint columns are exactly 0."""
        return self._table

    def phi(self, j: int) -> np.ndarray:
        if not 1 <= j <= self.j_max:
            raise IndexError(f"mode {j} outside 1..{self.j_max}")
        return self._table[j - 1].copy()


@dataclass(frozen=True)
class FrequencyPartition:
    """Classification of the retained modes for wavenumber k and log(gamma).

    ``in_B`` marks the truncated high modes (lambda > log_gamma**2); the band
    is everything in neither B nor A3, i.e. 0 <= lambda <= log_gamma**2.
    """

    k: float
    log_gamma: float
    basis: SineBasis
    lam: np.ndarray
    classes: tuple[ModeClass, ...]
    in_B: np.ndarray

    @property
    def modes(self) -> np.ndarray:
        return self.basis.modes

    @property
    def mu(self) -> np.ndarray:
        return self.basis.mu

    @property
    def in_A3(self) -> np.ndarray:
        return self.lam < 0

    @property
    def in_band(self) -> np.ndarray:
        return ~(self.in_B | self.in_A3)

    def members(self, which: str) -> list[int]:
        """Mode indices in ``'A1'``, ``'A2'``, ``'A3'``, ``'B'`` or ``'band'``."""
        masks = {
            "A1": self.lam > 0,
            "A2": self.lam == 0,
            "A3": self.in_A3,
            "B": self.in_B,
            "band": self.in_band,
        }
        return [int(j) for j in self.modes[masks[which]]]


def classify_mode(j: int, k: float) -> tuple[float, float, ModeClass]:
    """Return ``(mu_j, lambda_jk, class)`` for mode ``j`` at wavenumber ``k``.

    A mode is A2 only when lambda is exactly zero in floating point, which
    happens when k is supplied as j*pi computed the same way.
    """
    if j < 1:
        raise ValueError(f"mode index must be >= 1, got {j}")
    if k <= 0:
        raise ValueError(f"wavenumber must be positive, got {k}")
    mu = (j * np.pi) ** 2
    lam = mu - k * k
    if lam > 0:
        cls = ModeClass.A1
    elif lam < 0:
        cls = ModeClass.A3
    else:
        cls = ModeClass.A2
    return float(mu), float(lam), cls


def build_partition(k: float, eta: float, j_max: int | None = None,
                    N: int | None = None) -> FrequencyPartition:
    """Partition modes 1..j_max for log(gamma) = 2k - eta.

    Either ``j_max`` or the grid size ``N`` must be given; ``N`` alone means
    j_max = N - 1. When only ``j_max`` is given the basis uses N = j_max + 1.
    """
    if k <= 0:
        raise ValueError(f"wavenumber must be positive, got {k}")
    if not 0 < eta <= k:
        raise ValueError(f"eta must satisfy 0 < eta <= k, got eta={eta}, k={k}")
    if N is None and j_max is None:
        raise ValueError("give j_max or N")
    if N is None:
        N = j_max + 1
    basis = SineBasis(N, j_max)
    log_gamma = 2.0 * k - eta
    classes = tuple(classify_mode(int(j), k)[2] for j in basis.modes)
    lam = basis.mu - k * k
    in_B = lam > log_gamma ** 2
    return FrequencyPartition(k=float(k), log_gamma=float(log_gamma), basis=basis,
                              lam=lam, classes=classes, in_B=in_B)


def dst_forward(values, basis: SineBasis) -> np.ndarray:
    """Riemann-sum coefficients c_j = dy * sum_{n=1}^{N-1} f(y_n) phi_j(y_n).

    Endpoint samples are ignored, so nonzero boundary values do not raise.
    """
    values = np.asarray(values, dtype=float)
    if values.shape[-1] != basis.N + 1:
        raise ValueError(f"expected {basis.N + 1} nodes on the last axis, got {values.shape[-1]}")
    return values[..., 1:-1] @ basis.table[:, 1:-1].T * basis.dy


def dst_inverse(coeffs, basis: SineBasis) -> np.ndarray:
    """Synthesize sum_j c_j phi_j on the grid; endpoints are exactly zero."""
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.shape[-1] != basis.j_max:
        raise ValueError(f"expected {basis.j_max} coefficients, got {coeffs.shape[-1]}")
    return coeffs @ basis.table


def _apply_diagonal(values, multipliers, basis):
    return dst_inverse(dst_forward(values, basis) * multipliers, basis)


def apply_Q(values, partition: FrequencyPartition) -> np.ndarray:
    """Truncation operator: 2 lambda_j on modes in B and A3, zero elsewhere."""
    mult = np.where(partition.in_B | partition.in_A3, 2.0 * partition.lam, 0.0)
    return _apply_diagonal(values, mult, partition.basis)


def apply_Q1(values, partition: FrequencyPartition) -> np.ndarray:
    mult = np.where(partition.in_B, 2.0 * partition.lam, 0.0)
    return _apply_diagonal(values, mult, partition.basis)


def apply_Q2(values, partition: FrequencyPartition) -> np.ndarray:
    mult = np.where(partition.in_A3, 2.0 * partition.lam, 0.0)
    return _apply_diagonal(values, mult, partition.basis)


def apply_P1(values, partition: FrequencyPartition) -> np.ndarray:
    """-2 lambda_j on band modes only."""
    mult = np.where(partition.in_band, -2.0 * partition.lam, 0.0)
    return _apply_diagonal(values, mult, partition.basis)


def apply_P(values, partition: FrequencyPartition) -> np.ndarray:
    """Stabilized operator -2k^2 f + P1 f.

    The -2k^2 f term is applied nodally, so it also acts on components
    beyond j_max; for j_max = N-1 there are none.
    """
    values = np.asarray(values, dtype=float)
    out = -2.0 * partition.k ** 2 * values + apply_P1(values, partition)
    out[..., 0] = 0.0
    out[..., -1] = 0.0
    return out


def second_derivative(values, basis: SineBasis) -> np.ndarray:
    """Spectral d^2/dy^2: multiplies each retained coefficient by -mu_j."""
    return _apply_diagonal(values, -basis.mu, basis)


def central_second_difference(values, N: int) -> np.ndarray:
    """Three-point (f_{n+1} - 2 f_n + f_{n-1}) / dy^2 at interior nodes; zero at the ends."""
    values = np.asarray(values, dtype=float)
    out = np.zeros_like(values)
    out[..., 1:-1] = (values[..., 2:] - 2.0 * values[..., 1:-1] + values[..., :-2]) * N * N
    return out


def central_eigenvalues(basis: SineBasis) -> np.ndarray:
    """Symbol of the three-point Laplacian on phi_j: -(4/dy^2) sin^2(j pi dy / 2)."""
    return -4.0 * basis.N ** 2 * np.sin(basis.modes * np.pi / (2 * basis.N)) ** 2


def l2_norm(values, dy: float | None = None) -> np.ndarray:
    """Interior Riemann-sum L2 norm along the last axis."""
    values = np.asarray(values, dtype=float)
    if dy is None:
        dy = 1.0 / (values.shape[-1] - 1)
    return np.sqrt(dy * np.sum(values[..., 1:-1] ** 2, axis=-1))
