"""Ground-state observables from either representation.

Both constructors fill the same flat record so variational and
exact-diagonalization results can be compared field by field:

    energy            <H>
    mean_photon       <a^dag a>
    tunneling_total   <sigma_x^1 + sigma_x^2>  (equals -2 at g = 0)
    zz_corr           <(sigma_z^1 + sigma_z^2)(a^dag + a)>
    probs             P_1..P_4, weights of the uu, dd, ud, du components
    sigma1_x, sigma2_x  per-channel tunneling overlaps <psi_i|psi_j>/4

The tunneling components follow the overlap convention of the trial state
(positive in the ground state); their total carries the physical sign, so
tunneling_total = -(sum of the eight components).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ansatz import PolaronAnsatz, _arrays, normalize
from .ed import _SZ_SUM, GroundState
from .errors import NumericError, ParameterError
from .gaussian import displaced_h_grid, moment_grids, overlap_grid
from .model import ModelParams, derive

PROB_TOL = 1e-10

FIELD_NAMES = (
    "energy",
    "mean_photon",
    "tunneling_total",
    "zz_corr",
    "P1",
    "P2",
    "P3",
    "P4",
    "sigma1_x1",
    "sigma1_x2",
    "sigma1_x3",
    "sigma1_x4",
    "sigma2_x1",
    "sigma2_x2",
    "sigma2_x3",
    "sigma2_x4",
)


@dataclass(frozen=True)
class ObservableSet:
    energy: float
    mean_photon: float
    tunneling_total: float
    zz_corr: float
    probs: tuple[float, float, float, float]
    sigma1_x: tuple[float, float, float, float]
    sigma2_x: tuple[float, float, float, float]

    def __post_init__(self):
        p1, p2, p3, p4 = self.probs
        if abs(p1 + p2 + p3 + p4 - 1.0) > PROB_TOL:
            raise NumericError(f"component probabilities sum to {p1 + p2 + p3 + p4}")
        if abs(p1 - p2) > PROB_TOL or abs(p3 - p4) > PROB_TOL:
            raise NumericError("parity symmetry violated: P1 != P2 or P3 != P4")
        if min(self.probs) < -PROB_TOL:
            raise NumericError(f"negative component probability: {min(self.probs)}")
        if self.mean_photon < -1e-12:
            raise NumericError(f"negative mean photon number: {self.mean_photon}")

    def to_dict(self) -> dict:
        """Flat mapping with the fixed FIELD_NAMES order."""
        values = (
            (self.energy, self.mean_photon, self.tunneling_total, self.zz_corr)
            + self.probs
            + self.sigma1_x
            + self.sigma2_x
        )
        return dict(zip(FIELD_NAMES, values))


def from_ansatz(ansatz: PolaronAnsatz, params: ModelParams) -> ObservableSet:
    """Observables of the trial state (normalized internally)."""
    from .ansatz import energy as ansatz_energy  # local to avoid cycle at import

    ansatz = normalize(ansatz)
    c1, e1, u1, c3, e3, u3 = _arrays(ansatz)
    en = ansatz_energy(ansatz, params)

    #  <(x^2 + p^2)/2> over the four components; x-even operators see
    #  psi_2, psi_4 with the same weight as psi_1, psi_3
    K1 = displaced_h_grid(e1[:, None], u1[:, None], e1[None, :], u1[None, :], 0.0, 1.0)
    q = 0.5 * (c1 @ K1 @ c1)
    n1 = c1 @ overlap_grid(e1[:, None], u1[:, None], e1[None, :], u1[None, :]) @ c1
    if len(c3):
        K3 = displaced_h_grid(e3[:, None], u3[:, None], e3[None, :], u3[None, :], 0.0, 1.0)
        q += 0.5 * (c3 @ K3 @ c3)
        n3 = c3 @ overlap_grid(e3[:, None], u3[:, None], e3[None, :], u3[None, :]) @ c3
        s13 = c1 @ overlap_grid(e1[:, None], u1[:, None], e3[None, :], u3[None, :]) @ c3
        s14 = c1 @ overlap_grid(e1[:, None], u1[:, None], e3[None, :], -u3[None, :]) @ c3
    else:
        n3, s13, s14 = 0.0, 0.0, 0.0
    mean_photon = q - 0.5

    x1 = c1 @ moment_grids(e1[:, None], u1[:, None], e1[None, :], u1[None, :])[1] @ c1
    zz = math.sqrt(2.0) * x1

    probs = (0.25 * n1, 0.25 * n1, 0.25 * n3, 0.25 * n3)
    # parity maps <psi_1|psi_4> = <psi_2|psi_3> and <psi_1|psi_3> = <psi_2|psi_4>,
    # so each channel's four overlaps coincide for the stored state
    s1 = (0.25 * s14,) * 4
    s2 = (0.25 * s13,) * 4
    return ObservableSet(
        energy=en,
        mean_photon=float(mean_photon),
        tunneling_total=float(-(s13 + s14)),
        zz_corr=float(zz),
        probs=tuple(float(p) for p in probs),
        sigma1_x=tuple(float(s) for s in s1),
        sigma2_x=tuple(float(s) for s in s2),
    )


def from_fock(ground: GroundState, params: ModelParams) -> ObservableSet:
    """Observables of an exact-diagonalization ground state."""
    amps = ground.amplitudes.reshape(-1, 4)
    n_arr = np.arange(amps.shape[0], dtype=float)
    ladder = np.sqrt(n_arr[1:])  # <n|a|n+1> = sqrt(n+1) at slot n

    per_state = amps**2
    mean_photon = float(np.sum(per_state.sum(axis=1) * n_arr))
    # probability order: uu, dd, ud, du
    p_s = per_state.sum(axis=0)
    probs = (float(p_s[0]), float(p_s[3]), float(p_s[1]), float(p_s[2]))

    # sigma_x^1 couples (uu,du) and (ud,dd); sigma_x^2 couples (uu,ud), (du,dd)
    s1a = float(np.sum(amps[:, 0] * amps[:, 2]))
    s1b = float(np.sum(amps[:, 1] * amps[:, 3]))
    s2a = float(np.sum(amps[:, 0] * amps[:, 1]))
    s2b = float(np.sum(amps[:, 2] * amps[:, 3]))
    tunneling_total = 2.0 * (s1a + s1b + s2a + s2b)
    # trial-state component convention: psi_1,2 = 2 f_{uu,dd}; psi_3,4 = -2 f_{ud,du}
    sigma1 = (-s1a, -s1b, -s1b, -s1a)
    sigma2 = (-s2a, -s2b, -s2b, -s2a)

    zz = 0.0
    for s, weight in enumerate(_SZ_SUM):
        if weight:
            zz += weight * 2.0 * float(np.sum(ladder * amps[:-1, s] * amps[1:, s]))

    return ObservableSet(
        energy=ground.energy,
        mean_photon=mean_photon,
        tunneling_total=float(tunneling_total),
        zz_corr=float(zz),
        probs=probs,
        sigma1_x=tuple(float(v) for v in sigma1),
        sigma2_x=tuple(float(v) for v in sigma2),
    )


def potential_curves(params: ModelParams, x) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Adiabatic oscillator potentials per qubit state, order (uu, ud, du, dd).

    V_uu/dd = (omega/2) x^2 +/- 2 omega g' x, wells at x = -/+ 2g' with
    depth -2 omega g'^2; the mixed branches stay at (omega/2) x^2.  The
    global -omega/2 zero-point constant is not included.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    omega = params.omega
    gp = derive(params).g_prime
    base = 0.5 * omega * x * x
    tilt = 2.0 * omega * gp * x
    return base + tilt, base.copy(), base.copy(), base - tilt


def crossover_point(g_values, p3_values, threshold: float = 0.1):
    """Smallest g where P_3(g) drops below threshold, linearly interpolated.

    Expects samples over an increasing g grid with P_3 nonincreasing.
    Returns g_values[0] if already below threshold there, or None when the
    curve never crosses within the sampled range.
    """
    if not (0.0 < threshold < 0.25):
        raise ParameterError(f"threshold must lie in (0, 1/4), got {threshold}")
    g_values = np.asarray(g_values, dtype=float)
    p3_values = np.asarray(p3_values, dtype=float)
    if g_values.shape != p3_values.shape or g_values.ndim != 1 or g_values.size == 0:
        raise ParameterError("g_values and p3_values must be matching 1-d arrays")
    below = np.nonzero(p3_values < threshold)[0]
    if below.size == 0:
        return None
    i = int(below[0])
    if i == 0:
        return float(g_values[0])
    g_lo, g_hi = g_values[i - 1], g_values[i]
    p_lo, p_hi = p3_values[i - 1], p3_values[i]
    return float(g_lo + (p_lo - threshold) * (g_hi - g_lo) / (p_lo - p_hi))
