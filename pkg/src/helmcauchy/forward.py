"""Central five-point Helmholtz solvers used to generate data and the U-part.

Grid functions are plain arrays of shape (M+1, N+1) indexed ``u[m, n]`` with
x_m = m/M and y_n = n/N. Linear systems are assembled with Kronecker products
in row-major (m-major) order and solved with a sparse LU factorization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.linalg import eigvalsh_tridiagonal
from scipy.sparse.linalg import splu

RESONANCE_COND = 1e12


class DiscreteResonanceError(RuntimeError):
    """k^2 sits (numerically) on an eigenvalue of the discrete Laplacian."""

    def __init__(self, k, nearest, cond):
        self.k = k
        self.nearest_eigenvalue = nearest
        self.condition = cond
        super().__init__(
            f"near-singular Helmholtz system: k^2={k * k:.6g} is within "
            f"{abs(nearest + k * k):.3g} of discrete Laplacian eigenvalue "
            f"{nearest:.6g} (condition ~ {cond:.3g})"
        )


@dataclass(frozen=True)
class GridSpec:
    M: int
    N: int

    def __post_init__(self):
        if self.M < 2 or self.N < 2:
            raise ValueError(f"need M, N >= 2, got M={self.M}, N={self.N}")

    @property
    def dx(self) -> float:
        return 1.0 / self.M

    @property
    def dy(self) -> float:
        return 1.0 / self.N

    @property
    def x(self) -> np.ndarray:
        return np.arange(self.M + 1) / self.M

    @property
    def y(self) -> np.ndarray:
        return np.arange(self.N + 1) / self.N

    @property
    def shape(self) -> tuple[int, int]:
        return (self.M + 1, self.N + 1)

    def zeros(self) -> np.ndarray:
        return np.zeros(self.shape)

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """Parse ``"400x80"``."""
        m, n = text.lower().split("x")
        return cls(int(m), int(n))


def _second_difference(n: int, h: float) -> sp.csr_matrix:
    off = np.ones(n - 1)
    return sp.diags([off, -2.0 * np.ones(n), off], [-1, 0, 1], format="csr") / h ** 2


def _dirichlet_symbol(n_intervals: int) -> np.ndarray:
    i = np.arange(1, n_intervals)
    return -4.0 * n_intervals ** 2 * np.sin(i * np.pi / (2 * n_intervals)) ** 2


def _neumann_dirichlet_symbol(M: int) -> np.ndarray:
    # the ghost-node row (-2, 2) is similar to a symmetric matrix with off-diagonal sqrt(2)
    diag = -2.0 * np.ones(M)
    off = np.ones(M - 1)
    off[0] = np.sqrt(2.0)
    return eigvalsh_tridiagonal(diag, off) * M * M


def _check_resonance(x_symbol, y_symbol, k):
    spectrum = x_symbol[:, None] + y_symbol[None, :] + k * k
    mags = np.abs(spectrum)
    i = np.unravel_index(np.argmin(mags), mags.shape)
    smallest = mags[i]
    cond = np.inf if smallest == 0 else mags.max() / smallest
    if cond > RESONANCE_COND:
        raise DiscreteResonanceError(k, spectrum[i] - k * k, cond)
    return cond


def _check_slice(values, grid, name):
    values = np.asarray(values, dtype=float)
    if values.shape != (grid.N + 1,):
        raise ValueError(f"{name} must have {grid.N + 1} samples, got shape {values.shape}")
    return values


def solve_dirichlet(u0, g, k: float, grid: GridSpec) -> np.ndarray:
    """Solve Δu + k²u = 0 with u = u0 at x=0, u = g at x=1 and u = 0 at y=0,1.

    Corner samples of ``u0`` and ``g`` are never read by the five-point
    stencil; the returned grid keeps the y-walls at zero, so corners are 0
    even when the data do not vanish there.

    Raises
    ------
    DiscreteResonanceError
        If the assembled operator's condition number exceeds 1e12.
    """
    if k <= 0:
        raise ValueError(f"wavenumber must be positive, got {k}")
    u0 = _check_slice(u0, grid, "u0")
    g = _check_slice(g, grid, "g")
    M, N = grid.M, grid.N
    _check_resonance(_dirichlet_symbol(M), _dirichlet_symbol(N), k)

    nx, ny = M - 1, N - 1
    A = (sp.kron(_second_difference(nx, grid.dx), sp.identity(ny))
         + sp.kron(sp.identity(nx), _second_difference(ny, grid.dy))
         + k * k * sp.identity(nx * ny))
    rhs = np.zeros((nx, ny))
    rhs[0] -= u0[1:-1] / grid.dx ** 2
    rhs[-1] -= g[1:-1] / grid.dx ** 2

    u = grid.zeros()
    u[0, 1:-1] = u0[1:-1]
    u[-1, 1:-1] = g[1:-1]
    u[1:-1, 1:-1] = splu(A.tocsc()).solve(rhs.ravel()).reshape(nx, ny)
    return u


def generate_neumann_data(u_true, u0, grid: GridSpec, as_printed: bool = False) -> np.ndarray:
    """First-order Neumann trace at x=0 from a computed field.

    Returns ``(u(x_1) - u0) / dx``, the forward difference for u_x(0, y).
    ``as_printed=True`` returns the opposite sign, ``(u0 - u(x_1)) / dx``,
    which is the rearrangement of u0 ≈ u1 dx + u(x_1). Endpoints are zero.
    """
    u_true = np.asarray(u_true, dtype=float)
    u0 = _check_slice(u0, grid, "u0")
    if u_true.shape != grid.shape:
        raise ValueError(f"grid function shape {u_true.shape} does not match {grid.shape}")
    u1 = (u_true[1] - u0) / grid.dx
    if as_printed:
        u1 = -u1
    u1[0] = u1[-1] = 0.0
    return u1


def solve_U(u1, k: float, grid: GridSpec) -> np.ndarray:
    """Solve Δu + k²u = 0 with u_x(0,·) = u1 and zero Dirichlet data elsewhere.

    The Neumann condition is imposed through a ghost node,
    U_{-1,n} = U_{1,n} - 2 dx u1(y_n), eliminated against the scheme at m=0.
    """
    if k <= 0:
        raise ValueError(f"wavenumber must be positive, got {k}")
    u1 = _check_slice(u1, grid, "u1")
    M, N = grid.M, grid.N
    _check_resonance(_neumann_dirichlet_symbol(M), _dirichlet_symbol(N), k)

    nx, ny = M, N - 1
    Lx = _second_difference(nx, grid.dx).tolil()
    Lx[0, 1] = 2.0 / grid.dx ** 2
    A = (sp.kron(Lx.tocsr(), sp.identity(ny))
         + sp.kron(sp.identity(nx), _second_difference(ny, grid.dy))
         + k * k * sp.identity(nx * ny))
    rhs = np.zeros((nx, ny))
    rhs[0] = 2.0 * u1[1:-1] / grid.dx

    U = grid.zeros()
    U[:-1, 1:-1] = splu(A.tocsc()).solve(rhs.ravel()).reshape(nx, ny)
    return U


def extract_trace(u, m: int) -> np.ndarray:
    """Copy of column x_m of a grid function."""
    u = np.asarray(u)
    if not 0 <= m < u.shape[0]:
        raise IndexError(f"column {m} outside 0..{u.shape[0] - 1}")
    return u[m].copy()


def helmholtz_residual(u, k: float, grid: GridSpec) -> np.ndarray:
    """Five-point residual of Δu + k²u at interior nodes, shape (M-1, N-1)."""
    u = np.asarray(u, dtype=float)
    uxx = (u[2:, 1:-1] - 2 * u[1:-1, 1:-1] + u[:-2, 1:-1]) / grid.dx ** 2
    uyy = (u[1:-1, 2:] - 2 * u[1:-1, 1:-1] + u[1:-1, :-2]) / grid.dy ** 2
    return uxx + uyy + k * k * u[1:-1, 1:-1]
