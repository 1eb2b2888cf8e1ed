"""Exact diagonalization in a truncated Fock basis.

Basis ordering: index = 4 n + s with photon number n ascending and qubit
state s in [uu, ud, du, dd] (u = sigma_z eigenvalue +1).  The Hamiltonian

    H = omega a^dag a + (Omega/2)(sigma_x^1 + sigma_x^2)
        + g (sigma_z^1 + sigma_z^2)(a^dag + a)

is dense real symmetric of dimension 4 (n_max + 1): omega n on the
diagonal, Omega/2 between qubit states differing in one spin at equal n,
and +/-2 g sqrt(n+1) on the n <-> n+1 ladder inside the uu / dd blocks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh

from .errors import ConvergenceError, ParameterError
from .gaussian import hermite_functions
from .model import ModelParams

# dense dimension guard: 4 (n_max + 1) above this is no longer desk-scale
MAX_DIMENSION = 32768

# single-qubit flips at equal photon number: sigma_x^1 on (uu,du), (ud,dd);
# sigma_x^2 on (uu,ud), (du,dd); stored as (s_low, s_high) index pairs
_FLIP_PAIRS = ((0, 2), (1, 3), (0, 1), (2, 3))

# sigma_z^1 + sigma_z^2 eigenvalues per qubit state
_SZ_SUM = (2.0, 0.0, 0.0, -2.0)

# parity partner of each qubit state under flipping both spins
_PARITY_SWAP = (3, 2, 1, 0)


@dataclass(frozen=True)
class FockHamiltonian:
    """Dense truncated Hamiltonian with its defining parameters."""

    params: ModelParams
    n_max: int
    matrix: np.ndarray


@dataclass(frozen=True)
class GroundState:
    """Lowest eigenpair of a truncated Hamiltonian."""

    params: ModelParams
    n_max: int
    energy: float
    amplitudes: np.ndarray


def build(params: ModelParams, n_max: int) -> FockHamiltonian:
    """Assemble the dense symmetric matrix; exact symmetry by construction."""
    if not isinstance(n_max, (int, np.integer)) or isinstance(n_max, bool):
        raise ParameterError(f"n_max must be an integer, got {n_max!r}")
    if n_max < 0:
        raise ParameterError(f"n_max must be nonnegative, got {n_max}")
    dim = 4 * (n_max + 1)
    if dim > MAX_DIMENSION:
        raise ParameterError(
            f"dimension {dim} exceeds the dense solver guard ({MAX_DIMENSION})"
        )
    omega, Omega, g = params.omega, params.Omega, params.g
    n_levels = n_max + 1

    upper = np.zeros((dim, dim))
    rows = 4 * np.arange(n_levels)
    for s_low, s_high in _FLIP_PAIRS:
        upper[rows + s_low, rows + s_high] = 0.5 * Omega
    ladder = np.sqrt(np.arange(1, n_levels))  # <n+1| a^dag |n>
    rows = 4 * np.arange(n_levels - 1)
    for s in (0, 3):
        upper[rows + s, rows + 4 + s] = _SZ_SUM[s] * g * ladder

    diag = omega * np.repeat(np.arange(n_levels, dtype=float), 4)
    matrix = upper + upper.T + np.diag(diag)
    return FockHamiltonian(params=params, n_max=int(n_max), matrix=matrix)


def parity_apply(amplitudes: np.ndarray) -> np.ndarray:
    """Apply the parity operator sigma_x^1 sigma_x^2 exp(i pi a^dag a)."""
    v = amplitudes.reshape(-1, 4)
    signs = np.where(np.arange(v.shape[0]) % 2 == 0, 1.0, -1.0)
    return (v[:, _PARITY_SWAP] * signs[:, None]).reshape(-1)


def ground_state(params: ModelParams, n_max: int) -> GroundState:
    """Lowest eigenpair of the truncated Hamiltonian.

    In a numerically degenerate ground space (Omega = 0, or deep-strong
    coupling where the parity doublet splitting underflows) the solver
    returns an arbitrary vector in the space; the result is projected onto
    the even-parity sector, which contains the ground state elsewhere in
    parameter space.  The sign is fixed by making the largest-magnitude
    amplitude positive.
    """
    ham = build(params, n_max)
    w, v = eigh(ham.matrix, subset_by_index=[0, 0])
    vec = v[:, 0]
    even = 0.5 * (vec + parity_apply(vec))
    weight = float(even @ even)
    if weight > 1e-12:
        vec = even / math.sqrt(weight)
    if vec[np.argmax(np.abs(vec))] < 0:
        vec = -vec
    return GroundState(
        params=params, n_max=int(n_max), energy=float(w[0]), amplitudes=vec
    )


def converged_ground(
    params: ModelParams,
    tol: float = 1e-10,
    n_start: int = 16,
    n_cap: int = 4096,
) -> GroundState:
    """Double n_max from n_start until the energy moves less than tol.

    Compares E(n) with E(2n) and returns the finer result.  Raises
    ConvergenceError (carrying the best result so far) if the cap is hit.
    """
    if not (tol > 0 and math.isfinite(tol)):
        raise ParameterError(f"tol must be positive and finite, got {tol}")
    coarse = ground_state(params, n_start)
    n = n_start
    while 2 * n <= n_cap:
        fine = ground_state(params, 2 * n)
        if abs(fine.energy - coarse.energy) < tol:
            return fine
        coarse = fine
        n *= 2
    raise ConvergenceError(
        f"ground energy not converged to {tol} within n_max = {n_cap}",
        result=coarse,
    )


def position_components(ground: GroundState, x) -> np.ndarray:
    """Rebuild (psi_1, psi_2, psi_3, psi_4) on a grid from Fock amplitudes.

    Components follow the trial-state convention |Psi> = (psi_1 |uu> +
    psi_2 |dd> - psi_3 |ud> - psi_4 |du>)/2, so psi_n = 2 (+f_uu, +f_dd,
    -f_ud, -f_du) in terms of the raw coefficient functions f_s.
    Shape (4, len(x)).
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    basis = hermite_functions(x, ground.n_max)
    amps = ground.amplitudes.reshape(-1, 4)
    f = amps.T @ basis  # rows: uu, ud, du, dd
    return np.vstack([2.0 * f[0], 2.0 * f[3], -2.0 * f[1], -2.0 * f[2]])


def as_document(ground: GroundState) -> dict:
    """JSON-ready dict of a ground-state result."""
    return {
        "model": {
            "omega": ground.params.omega,
            "Omega": ground.params.Omega,
            "g": ground.params.g,
        },
        "n_max": ground.n_max,
        "energy": ground.energy,
        "amplitudes": ground.amplitudes.tolist(),
    }
