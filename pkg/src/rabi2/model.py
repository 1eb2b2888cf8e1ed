"""Model definition for two identical qubits coupled to one bosonic mode.

The Hamiltonian (hbar = 1) is

    H = omega a^dag a + (Omega/2) (sigma_x^1 + sigma_x^2)
        + g (sigma_z^1 + sigma_z^2) (a^dag + a)

with mode frequency omega > 0, qubit splitting Omega >= 0 and coupling
g >= 0, both qubits sharing the same Omega and g.  In the dimensionless
position representation (x = (a + a^dag)/sqrt(2), unit oscillator length)
the coupling enters through the displacement scale

    g' = sqrt(2) g / omega,

so the sigma_z-polarized oscillator wells sit at x = -/+ 2 g' with depth
2 omega g'^2.  Energies are reported in the same units as the inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParameterError


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters (omega, Omega, g), validated on construction."""

    omega: float
    Omega: float
    g: float

    def __post_init__(self):
        for name in ("omega", "Omega", "g"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ParameterError(f"{name} must be a real number, got {value!r}")
            if not math.isfinite(value):
                raise ParameterError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))
        if self.omega <= 0:
            raise ParameterError(f"omega must be positive, got {self.omega}")
        if self.Omega < 0:
            raise ParameterError(f"Omega must be nonnegative, got {self.Omega}")
        if self.g < 0:
            raise ParameterError(f"g must be nonnegative, got {self.g}")


@dataclass(frozen=True)
class DerivedScales:
    """Scales derived from ModelParams.

    g_prime : dimensionless displacement scale sqrt(2) g / omega.
    g_c     : crossover coupling sqrt(omega Omega / 2) / 2, zero when Omega=0.
    """

    g_prime: float
    g_c: float


def derive(params: ModelParams) -> DerivedScales:
    """Compute the derived scales for a parameter set."""
    g_prime = math.sqrt(2.0) * params.g / params.omega
    g_c = math.sqrt(params.omega * params.Omega / 2.0) / 2.0
    return DerivedScales(g_prime=g_prime, g_c=g_c)
