"""Additive noise on the Dirichlet datum, mesh checks and the relative error E."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class NoiseModel:
    """u0 + eps * rand with rand i.i.d. uniform on [-1, 1].

    Draws come from numpy's PCG64 stream seeded with ``seed`` (one
    ``uniform(-1, 1, N+1)`` call per datum), so a seed reproduces the same
    vector on every platform.
    """

    eps: float
    seed: int = 0
    beta: float = 0.99

    def __post_init__(self):
        if self.eps < 0:
            raise ValueError(f"noise level must be non-negative, got {self.eps}")
        if not 0 < self.beta < 1:
            raise ValueError(f"beta must lie in (0, 1), got {self.beta}")

    def direction(self, n_nodes: int) -> np.ndarray:
        """The unscaled rand(y_n) vector."""
        return np.random.Generator(np.random.PCG64(self.seed)).uniform(-1.0, 1.0, n_nodes)


def add_noise(u0, model: NoiseModel) -> np.ndarray:
    """Noisy datum with its endpoints clamped to zero."""
    u0 = np.asarray(u0, dtype=float)
    noisy = u0 + model.eps * model.direction(u0.size)
    noisy[0] = noisy[-1] = 0.0
    return noisy


@dataclass(frozen=True)
class GridConstraintReport:
    N: int
    eps: float
    k: float
    beta: float
    eps_limit: float
    k_limit: float

    @property
    def by_noise(self) -> bool:
        return self.N <= self.eps_limit

    @property
    def by_wavenumber(self) -> bool:
        return self.N <= self.k_limit

    @property
    def passed(self) -> bool:
        return self.by_noise or self.by_wavenumber

    def message(self) -> str:
        verdict = "ok" if self.passed else "violated"
        return (f"coarse-mesh condition {verdict}: N={self.N}, eps^-beta={self.eps_limit:.4g}, "
                f"k^beta={self.k_limit:.4g} (beta={self.beta})")


def check_grid_constraint(N: int, eps: float, k: float, beta: float) -> GridConstraintReport:
    """Report whether N <= eps^-beta or N <= k^beta."""
    eps_limit = np.inf if eps == 0 else float(eps ** (-beta))
    return GridConstraintReport(N, eps, k, beta, eps_limit, float(k ** beta))


def relative_error_E(approx, truth) -> float:
    """100 * ||approx - truth|| / ||truth|| over every grid node."""
    approx = np.asarray(approx, dtype=float)
    truth = np.asarray(truth, dtype=float)
    if approx.shape != truth.shape:
        raise ValueError(f"grid mismatch: {approx.shape} vs {truth.shape}")
    scale = np.abs(truth).max(initial=0.0)
    if scale == 0:
        raise ZeroDivisionError("relative error undefined for an identically zero truth")
    # rescale first so squares of tiny values do not underflow
    return float(100.0 * np.linalg.norm((approx - truth) / scale) / np.linalg.norm(truth / scale))


def discrete_h1_norm(values) -> float:
    """sqrt(dy sum f^2 + dy sum (forward difference)^2) on a uniform [0, 1] grid."""
    values = np.asarray(values, dtype=float)
    n = values.size - 1
    dy = 1.0 / n
    grad = np.diff(values) / dy
    return float(np.sqrt(dy * np.sum(values ** 2) + dy * np.sum(grad ** 2)))
