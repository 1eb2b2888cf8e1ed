"""Parity-constrained polaron trial state built from Gaussian packets.

The trial ground state of the two-qubit model is

    |Psi> = 1/2 [ psi_1(x) |uu> + psi_2(x) |dd> - psi_3(x) |ud> - psi_4(x) |du> ]

with the parity constraint psi_2(x) = psi_1(-x), psi_4(x) = psi_3(-x), so
only psi_1 and psi_3 are stored.  Each stored component is a superposition
of displaced, width-renormalized Gaussian packets; the canonical ansatz
uses N pairs (2N packets) per component.  Normalization reads

    <Psi|Psi> = (<psi_1|psi_1> + <psi_3|psi_3>) / 2.

Contracting the Hamiltonian over the qubit basis and using the parity
constraint gives the energy functional evaluated here:

    E = [ <psi_1| h_disp |psi_1>/2 - omega g'^2 <psi_1|psi_1>
          + <psi_3| h_0 |psi_3>/2
          - (Omega/2) (<psi_1|psi_3> + <psi_1|psi_4>) ] / norm  - omega/2

with h_disp = (omega/2)(p^2 + (x + 2g')^2) the well of the |uu> branch and
h_0 = (omega/2)(p^2 + x^2) the undisplaced well of the mixed branches.
Both tunneling channels <psi_1|psi_3> and <psi_1|psi_4> contribute; they
coincide only when psi_3 is reflection-symmetric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateAnsatzError, NumericError, ParameterError
from .gaussian import (
    GaussianPacket,
    displaced_h_grid,
    displaced_h_grid_d1,
    overlap_grid,
    overlap_grid_d1,
)
from .model import ModelParams, derive

_NORM_FLOOR = 1e-14


@dataclass(frozen=True)
class PolaronAnsatz:
    """Trial state: packets of psi_1 and psi_3 plus the nominal pair count.

    The canonical optimizer ansatz carries 2*n_pairs packets per stored
    component, but any packet counts are legal (an empty psi_3 is the pure
    bipolaron ansatz; merged packets may leave fewer than 2N).
    """

    n_pairs: int
    packets_1: tuple[GaussianPacket, ...]
    packets_3: tuple[GaussianPacket, ...]

    def __post_init__(self):
        if not isinstance(self.n_pairs, (int, np.integer)) or isinstance(self.n_pairs, bool):
            raise ParameterError(f"n_pairs must be an integer, got {self.n_pairs!r}")
        if self.n_pairs < 1:
            raise ParameterError(f"n_pairs must be >= 1, got {self.n_pairs}")
        object.__setattr__(self, "n_pairs", int(self.n_pairs))
        object.__setattr__(self, "packets_1", tuple(self.packets_1))
        object.__setattr__(self, "packets_3", tuple(self.packets_3))
        for p in self.packets_1 + self.packets_3:
            if not isinstance(p, GaussianPacket):
                raise ParameterError(f"packets must be GaussianPacket, got {p!r}")
        if not self.packets_1:
            raise ParameterError("psi_1 must contain at least one packet")


def _packet_arrays(packets):
    c = np.array([p.coeff for p in packets], dtype=float)
    e = np.array([p.eps for p in packets], dtype=float)
    u = np.array([p.center for p in packets], dtype=float)
    return c, e, u


def _arrays(ansatz: PolaronAnsatz):
    """(c1, e1, u1, c3, e3, u3) as plain arrays."""
    return _packet_arrays(ansatz.packets_1) + _packet_arrays(ansatz.packets_3)


def _from_arrays(n_pairs, c1, e1, u1, c3, e3, u3) -> PolaronAnsatz:
    p1 = tuple(GaussianPacket(c, e, u) for c, e, u in zip(c1, e1, u1))
    p3 = tuple(GaussianPacket(c, e, u) for c, e, u in zip(c3, e3, u3))
    return PolaronAnsatz(n_pairs=n_pairs, packets_1=p1, packets_3=p3)


def component(ansatz: PolaronAnsatz, index: int, x):
    """Evaluate component psi_index on x; indices 2, 4 are the reflections."""
    if index not in (1, 2, 3, 4):
        raise ParameterError(f"component index must be 1..4, got {index}")
    x = np.asarray(x, dtype=float)
    packets = ansatz.packets_1 if index in (1, 2) else ansatz.packets_3
    arg = -x if index in (2, 4) else x
    out = np.zeros_like(arg, dtype=float)
    for p in packets:
        out += p(arg)
    return out


def _norms(c1, e1, u1, c3, e3, u3):
    A = overlap_grid(e1[:, None], u1[:, None], e1[None, :], u1[None, :])
    n1 = c1 @ A @ c1
    if len(c3):
        B = overlap_grid(e3[:, None], u3[:, None], e3[None, :], u3[None, :])
        n3 = c3 @ B @ c3
    else:
        n3 = 0.0
    return float(n1), float(n3)


def norm_sq(ansatz: PolaronAnsatz) -> float:
    """<Psi|Psi> = (<psi_1|psi_1> + <psi_3|psi_3>)/2."""
    n1, n3 = _norms(*_arrays(ansatz))
    total = 0.5 * (n1 + n3)
    if not math.isfinite(total):
        raise NumericError("norm_sq evaluated to a non-finite value")
    if total <= _NORM_FLOOR:
        raise DegenerateAnsatzError(f"ansatz norm_sq = {total} defines no state")
    return total


def normalize(ansatz: PolaronAnsatz) -> PolaronAnsatz:
    """Rescale all packet coefficients so that norm_sq == 1."""
    scale = 1.0 / math.sqrt(norm_sq(ansatz))
    p1 = tuple(GaussianPacket(p.coeff * scale, p.eps, p.center) for p in ansatz.packets_1)
    p3 = tuple(GaussianPacket(p.coeff * scale, p.eps, p.center) for p in ansatz.packets_3)
    return PolaronAnsatz(n_pairs=ansatz.n_pairs, packets_1=p1, packets_3=p3)


def _energy_arrays(c1, e1, u1, c3, e3, u3, params: ModelParams):
    """Rayleigh quotient of the contracted Hamiltonian; no norm assumptions."""
    omega, Omega = params.omega, params.Omega
    gp = derive(params).g_prime
    A = overlap_grid(e1[:, None], u1[:, None], e1[None, :], u1[None, :])
    Hd = displaced_h_grid(
        e1[:, None], u1[:, None], e1[None, :], u1[None, :], 2.0 * gp, omega
    )
    n1 = c1 @ A @ c1
    num = 0.5 * (c1 @ Hd @ c1) - omega * gp * gp * n1
    n3 = 0.0
    if len(c3):
        B = overlap_grid(e3[:, None], u3[:, None], e3[None, :], u3[None, :])
        H0 = displaced_h_grid(e3[:, None], u3[:, None], e3[None, :], u3[None, :], 0.0, omega)
        C = overlap_grid(e1[:, None], u1[:, None], e3[None, :], u3[None, :])
        Ct = overlap_grid(e1[:, None], u1[:, None], e3[None, :], -u3[None, :])
        n3 = c3 @ B @ c3
        num += 0.5 * (c3 @ H0 @ c3) - 0.5 * Omega * (c1 @ (C + Ct) @ c3)
    nrm = 0.5 * (n1 + n3)
    if not np.isfinite(nrm) or nrm <= _NORM_FLOOR:
        return None, nrm
    return float(num / nrm - 0.5 * omega), float(nrm)


def energy(ansatz: PolaronAnsatz, params: ModelParams) -> float:
    """Variational energy <Psi|H|Psi>/<Psi|Psi>; normalization is internal."""
    value, nrm = _energy_arrays(*_arrays(ansatz), params)
    if value is None:
        raise DegenerateAnsatzError(f"ansatz norm_sq = {nrm} defines no state")
    if not math.isfinite(value):
        raise NumericError("energy evaluated to a non-finite value")
    return value


def _gradient_arrays(c1, e1, u1, c3, e3, u3, params: ModelParams):
    """Gradient of the Rayleigh quotient in the flat parameter layout.

    Layout: [coeffs_1, log_eps_1, centers_1, coeffs_3, log_eps_3, centers_3].
    Log-eps derivatives carry the chain factor d eps/d log eps = eps.
    """
    omega, Omega = params.omega, params.Omega
    gp = derive(params).g_prime
    k1, k3 = len(c1), len(c3)

    a1r, u1r = e1[:, None], u1[:, None]
    A, dA_da, dA_du = overlap_grid_d1(a1r, u1r, e1[None, :], u1[None, :])
    Hd, dHd_da, dHd_du = displaced_h_grid_d1(
        a1r, u1r, e1[None, :], u1[None, :], 2.0 * gp, omega
    )
    n1 = c1 @ A @ c1
    num = 0.5 * (c1 @ Hd @ c1) - omega * gp * gp * n1

    if k3:
        B, dB_da, dB_du = overlap_grid_d1(e3[:, None], u3[:, None], e3[None, :], u3[None, :])
        H0, dH0_da, dH0_du = displaced_h_grid_d1(
            e3[:, None], u3[:, None], e3[None, :], u3[None, :], 0.0, omega
        )
        # cross overlaps in both orientations (first slot carries derivatives)
        C1, dC1_da, dC1_du = overlap_grid_d1(a1r, u1r, e3[None, :], u3[None, :])
        Ct1, dCt1_da, dCt1_du = overlap_grid_d1(a1r, u1r, e3[None, :], -u3[None, :])
        C3, dC3_da, dC3_du = overlap_grid_d1(e3[:, None], u3[:, None], e1[None, :], u1[None, :])
        Ct3, dCt3_da, dCt3_du = overlap_grid_d1(
            e3[:, None], -u3[:, None], e1[None, :], u1[None, :]
        )
        n3 = c3 @ B @ c3
        num += 0.5 * (c3 @ H0 @ c3) - 0.5 * Omega * (c1 @ (C1 + Ct1) @ c3)
    else:
        n3 = 0.0

    nrm = 0.5 * (n1 + n3)
    if not np.isfinite(nrm) or nrm <= _NORM_FLOOR:
        raise DegenerateAnsatzError(f"ansatz norm_sq = {nrm} defines no state")
    ratio = num / nrm

    grad = np.zeros(3 * (k1 + k3))

    # --- psi_1 blocks ---
    dnum_c1 = Hd @ c1 - 2.0 * omega * gp * gp * (A @ c1)
    if k3:
        dnum_c1 = dnum_c1 - 0.5 * Omega * ((C1 + Ct1) @ c3)
    dnrm_c1 = A @ c1
    grad[0:k1] = (dnum_c1 - ratio * dnrm_c1) / nrm

    dnum_e1 = c1 * ((dHd_da - 2.0 * omega * gp * gp * dA_da) @ c1)
    dnum_u1 = c1 * ((dHd_du - 2.0 * omega * gp * gp * dA_du) @ c1)
    if k3:
        dnum_e1 -= 0.5 * Omega * c1 * ((dC1_da + dCt1_da) @ c3)
        dnum_u1 -= 0.5 * Omega * c1 * ((dC1_du + dCt1_du) @ c3)
    dnrm_e1 = c1 * (dA_da @ c1)
    dnrm_u1 = c1 * (dA_du @ c1)
    grad[k1 : 2 * k1] = e1 * (dnum_e1 - ratio * dnrm_e1) / nrm
    grad[2 * k1 : 3 * k1] = (dnum_u1 - ratio * dnrm_u1) / nrm

    # --- psi_3 blocks ---
    if k3:
        base = 3 * k1
        dnum_c3 = H0 @ c3 - 0.5 * Omega * ((C1 + Ct1).T @ c1)
        dnrm_c3 = B @ c3
        grad[base : base + k3] = (dnum_c3 - ratio * dnrm_c3) / nrm

        dnum_e3 = c3 * (dH0_da @ c3) - 0.5 * Omega * c3 * ((dC3_da + dCt3_da) @ c1)
        # reflected packet center enters as -v, hence the sign on the Ct term
        dnum_u3 = c3 * (dH0_du @ c3) - 0.5 * Omega * c3 * ((dC3_du - dCt3_du) @ c1)
        dnrm_e3 = c3 * (dB_da @ c3)
        dnrm_u3 = c3 * (dB_du @ c3)
        grad[base + k3 : base + 2 * k3] = e3 * (dnum_e3 - ratio * dnrm_e3) / nrm
        grad[base + 2 * k3 : base + 3 * k3] = (dnum_u3 - ratio * dnrm_u3) / nrm

    if not np.all(np.isfinite(grad)):
        raise NumericError("energy_gradient produced non-finite entries")
    return grad


def energy_gradient(ansatz: PolaronAnsatz, params: ModelParams) -> np.ndarray:
    """Exact gradient of energy() in the flat parameter layout.

    Layout per stored component (psi_1 first, then psi_3): all packet
    coefficients, then all log-eps, then all centers.  The Rayleigh
    quotient makes the gradient orthogonal to pure coefficient rescaling.
    """
    return _gradient_arrays(*_arrays(ansatz), params)


def flatten_parameters(ansatz: PolaronAnsatz) -> np.ndarray:
    """Pack the ansatz into the flat layout used by energy_gradient."""
    c1, e1, u1, c3, e3, u3 = _arrays(ansatz)
    return np.concatenate([c1, np.log(e1), u1, c3, np.log(e3), u3])


def unflatten_parameters(theta, n_pairs, k1, k3) -> PolaronAnsatz:
    """Inverse of flatten_parameters for known packet counts."""
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (3 * (k1 + k3),):
        raise ParameterError(
            f"parameter vector has shape {theta.shape}, expected ({3 * (k1 + k3)},)"
        )
    c1 = theta[0:k1]
    e1 = np.exp(theta[k1 : 2 * k1])
    u1 = theta[2 * k1 : 3 * k1]
    b = 3 * k1
    c3 = theta[b : b + k3]
    e3 = np.exp(theta[b + k3 : b + 2 * k3])
    u3 = theta[b + 2 * k3 : b + 3 * k3]
    return _from_arrays(n_pairs, c1, e1, u1, c3, e3, u3)


def merge_duplicate_packets(ansatz: PolaronAnsatz, tol: float = 1e-9) -> PolaronAnsatz:
    """Sum coefficients of packets that coincide in (eps, center) within tol.

    Coincident packets make the component Gram matrix singular without
    changing the state; merging keeps it well-conditioned.
    """

    def merged(packets):
        kept: list[list[float]] = []
        for p in packets:
            for row in kept:
                if abs(row[1] - p.eps) < tol and abs(row[2] - p.center) < tol:
                    row[0] += p.coeff
                    break
            else:
                kept.append([p.coeff, p.eps, p.center])
        return tuple(GaussianPacket(*row) for row in kept)

    return PolaronAnsatz(
        n_pairs=ansatz.n_pairs,
        packets_1=merged(ansatz.packets_1),
        packets_3=merged(ansatz.packets_3),
    )


def as_document(ansatz: PolaronAnsatz, params: ModelParams) -> dict:
    """JSON-ready dict: packets per component plus N and model parameters."""
    return {
        "n_pairs": ansatz.n_pairs,
        "model": {"omega": params.omega, "Omega": params.Omega, "g": params.g},
        "psi1": [
            {"coeff": p.coeff, "eps": p.eps, "center": p.center} for p in ansatz.packets_1
        ],
        "psi3": [
            {"coeff": p.coeff, "eps": p.eps, "center": p.center} for p in ansatz.packets_3
        ],
    }


def from_document(doc: dict) -> tuple[PolaronAnsatz, ModelParams]:
    """Rebuild (ansatz, params) from as_document output; value-exact."""
    try:
        params = ModelParams(**doc["model"])
        p1 = tuple(GaussianPacket(**entry) for entry in doc["psi1"])
        p3 = tuple(GaussianPacket(**entry) for entry in doc["psi3"])
        ansatz = PolaronAnsatz(n_pairs=doc["n_pairs"], packets_1=p1, packets_3=p3)
    except (KeyError, TypeError) as exc:
        raise ParameterError(f"malformed ansatz document: {exc}") from exc
    return ansatz, params
