"""Closed-form algebra of displaced, width-renormalized Gaussian packets.

A packet with width parameter eps > 0 and center c is the unit-norm
function

    phi(x) = eps^(1/4) pi^(-1/4) exp(-eps (x - c)^2 / 2),

the ground state of an oscillator of frequency eps centered at c.  All
matrix elements between two such packets have closed forms; this module
provides them together with the projection of a packet onto the Fock
basis of the eps = 1, c = 0 oscillator.

The packet ``coeff`` field is carried for use in superpositions; the
matrix elements here are between bare (unit-norm) packets and do not
include it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericError, ParameterError, TruncationError

# project_to_fock guard: beyond this the recursion has no validated use here
MAX_FOCK_LEVELS = 65536


@dataclass(frozen=True)
class GaussianPacket:
    """One displaced Gaussian packet: amplitude coeff, width eps, center."""

    coeff: float
    eps: float
    center: float

    def __post_init__(self):
        for name in ("coeff", "eps", "center"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ParameterError(f"{name} must be a real number, got {value!r}")
            if not math.isfinite(value):
                raise ParameterError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))
        if self.eps <= 0:
            raise ParameterError(f"eps must be positive, got {self.eps}")

    def __call__(self, x):
        """Evaluate coeff * phi(x) on a scalar or array argument."""
        x = np.asarray(x, dtype=float)
        return self.coeff * self.eps ** 0.25 * np.pi ** -0.25 * np.exp(
            -self.eps * (x - self.center) ** 2 / 2.0
        )


# ---------------------------------------------------------------------------
# vectorized kernels on raw (eps, center) arrays; broadcast over both slots
# ---------------------------------------------------------------------------

def overlap_grid(a, u, b, v):
    """<phi_a|phi_b> for width/center arrays, broadcasting."""
    # non-finite widths reach these kernels while the optimizer probes the
    # penalty region; callers check the outputs, so keep numpy quiet here
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        gam = a + b
        return (a * b) ** 0.25 * np.sqrt(2.0 / gam) * np.exp(
            -a * b * (u - v) ** 2 / (2.0 * gam)
        )


def moment_grids(a, u, b, v):
    """Return (S, X, X2, P2): overlap and matrix elements of x, x^2, p^2."""
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        gam = a + b
        delta = u - v
        S = (a * b) ** 0.25 * np.sqrt(2.0 / gam) * np.exp(-a * b * delta**2 / (2.0 * gam))
        mu = (a * u + b * v) / gam
        X = S * mu
        X2 = S * (mu * mu + 1.0 / gam)
        W = a * b / gam - (a * b) ** 2 * delta**2 / gam**2
        P2 = S * W
        return S, X, X2, P2


def displaced_h_grid(a, u, b, v, shift, omega):
    """<phi_a| (omega/2)(p^2 + (x + shift)^2) |phi_b> on arrays."""
    S, X, X2, P2 = moment_grids(a, u, b, v)
    return 0.5 * omega * (P2 + X2 + 2.0 * shift * X + shift * shift * S)


def overlap_grid_d1(a, u, b, v):
    """Overlap and its derivatives in the first-slot parameters.

    Returns (S, dS/da, dS/du); the second slot is recovered by symmetry,
    S(a,u;b,v) = S(b,v;a,u).
    """
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        gam = a + b
        delta = u - v
        S = (a * b) ** 0.25 * np.sqrt(2.0 / gam) * np.exp(-a * b * delta**2 / (2.0 * gam))
        dS_da = S * (1.0 / (4.0 * a) - 1.0 / (2.0 * gam) - b**2 * delta**2 / (2.0 * gam**2))
        dS_du = S * (-a * b * delta / gam)
        return S, dS_da, dS_du


def displaced_h_grid_d1(a, u, b, v, shift, omega):
    """displaced_h and its first-slot derivatives: (H, dH/da, dH/du)."""
    S, dS_da, dS_du = overlap_grid_d1(a, u, b, v)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        gam = a + b
        delta = u - v
        mu = (a * u + b * v) / gam
        dmu_da = b * delta / gam**2
        dmu_du = a / gam

        X = S * mu
        dX_da = dS_da * mu + S * dmu_da
        dX_du = dS_du * mu + S * dmu_du

        q = mu * mu + 1.0 / gam
        X2 = S * q
        dX2_da = dS_da * q + S * (2.0 * mu * dmu_da - 1.0 / gam**2)
        dX2_du = dS_du * q + S * 2.0 * mu * dmu_du

        W = a * b / gam - (a * b) ** 2 * delta**2 / gam**2
        dW_da = b**2 / gam**2 - 2.0 * a * b**3 * delta**2 / gam**3
        dW_du = -2.0 * (a * b) ** 2 * delta / gam**2
        P2 = S * W
        dP2_da = dS_da * W + S * dW_da
        dP2_du = dS_du * W + S * dW_du

        H = 0.5 * omega * (P2 + X2 + 2.0 * shift * X + shift * shift * S)
        dH_da = 0.5 * omega * (dP2_da + dX2_da + 2.0 * shift * dX_da + shift * shift * dS_da)
        dH_du = 0.5 * omega * (dP2_du + dX2_du + 2.0 * shift * dX_du + shift * shift * dS_du)
        return H, dH_da, dH_du


def _scalar(value, what):
    value = float(value)
    if not math.isfinite(value):
        raise NumericError(f"{what} evaluated to a non-finite value")
    return value


# ---------------------------------------------------------------------------
# public scalar API on packets
# ---------------------------------------------------------------------------

def overlap(a: GaussianPacket, b: GaussianPacket) -> float:
    """<phi_a|phi_b>, in (0, 1] (up to underflow for far-separated packets)."""
    return _scalar(overlap_grid(a.eps, a.center, b.eps, b.center), "overlap")


def mel_x(a: GaussianPacket, b: GaussianPacket) -> float:
    """<phi_a| x |phi_b>."""
    return _scalar(moment_grids(a.eps, a.center, b.eps, b.center)[1], "mel_x")


def mel_x2(a: GaussianPacket, b: GaussianPacket) -> float:
    """<phi_a| x^2 |phi_b>."""
    return _scalar(moment_grids(a.eps, a.center, b.eps, b.center)[2], "mel_x2")


def mel_p2(a: GaussianPacket, b: GaussianPacket) -> float:
    """<phi_a| p^2 |phi_b> with p = -i d/dx."""
    return _scalar(moment_grids(a.eps, a.center, b.eps, b.center)[3], "mel_p2")


def displaced_h(a: GaussianPacket, b: GaussianPacket, shift: float, omega: float) -> float:
    """<phi_a| (omega/2)(p^2 + (x + shift)^2) |phi_b>.

    This is the oscillator Hamiltonian of a well centered at x = -shift,
    without zero-point subtraction.
    """
    return _scalar(
        displaced_h_grid(a.eps, a.center, b.eps, b.center, shift, omega), "displaced_h"
    )


def project_to_fock(packet: GaussianPacket, n_max: int) -> np.ndarray:
    """Coefficients <n|phi> for n = 0..n_max in the eps=1 oscillator basis.

    Uses the three-term recursion (eps = e, center = c)

        J_0     = e^(1/4) sqrt(2/(1+e)) exp(-e c^2 / (2 (1+e)))
        J_{n+1} = [sqrt(n) (1-e) J_{n-1} + sqrt(2) e c J_n]
                  / [sqrt(n+1) (1+e)],

    obtained by integrating d/dx [psi_n phi] = 0 with the Hermite-function
    ladder identities.  Both solutions of the recursion decay at the same
    rate, so upward iteration is stable.  Includes the packet coeff.

    Returns an array of length n_max + 1.
    """
    if not isinstance(n_max, (int, np.integer)) or isinstance(n_max, bool):
        raise ParameterError(f"n_max must be an integer, got {n_max!r}")
    if n_max < 0:
        raise ParameterError(f"n_max must be nonnegative, got {n_max}")
    if n_max > MAX_FOCK_LEVELS:
        raise TruncationError(
            f"n_max = {n_max} exceeds the supported range ({MAX_FOCK_LEVELS})"
        )
    e, c = packet.eps, packet.center
    out = np.zeros(n_max + 1)
    arg = e * c * c / (2.0 * (1.0 + e))
    out[0] = e**0.25 * math.sqrt(2.0 / (1.0 + e)) * math.exp(-arg)
    if n_max >= 1:
        out[1] = math.sqrt(2.0) * e * c * out[0] / (1.0 + e)
    for n in range(1, n_max):
        out[n + 1] = (
            math.sqrt(n) * (1.0 - e) * out[n - 1] + math.sqrt(2.0) * e * c * out[n]
        ) / (math.sqrt(n + 1.0) * (1.0 + e))
    if not np.all(np.isfinite(out)):
        raise NumericError("project_to_fock produced non-finite coefficients")
    return packet.coeff * out


def hermite_functions(x, n_max: int) -> np.ndarray:
    """Oscillator eigenfunctions psi_n(x), n = 0..n_max, shape (n_max+1, len(x)).

    Stable upward recursion on the normalized functions:
    psi_{n+1} = sqrt(2/(n+1)) x psi_n - sqrt(n/(n+1)) psi_{n-1}.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.zeros((n_max + 1, x.size))
    out[0] = np.pi**-0.25 * np.exp(-x * x / 2.0)
    if n_max >= 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for n in range(1, n_max):
        out[n + 1] = math.sqrt(2.0 / (n + 1)) * x * out[n] - math.sqrt(
            n / (n + 1.0)
        ) * out[n - 1]
    return out
