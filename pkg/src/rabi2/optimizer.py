"""Multi-start minimization of the variational energy.

Each start runs a derivative-free simplex descent followed by a
quasi-Newton polish that uses the analytic energy gradient.  Starts are
deterministic functions of (params, n_pairs, seed, start index), so the
winning energy and parameters are reproducible bit for bit, and the start
list for a larger n_starts extends the list for a smaller one (the
returned energy never increases with n_starts).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize as _scipy_minimize

from . import ansatz as _ansatz
from .ansatz import PolaronAnsatz, merge_duplicate_packets
from .errors import ConvergenceError, DegenerateAnsatzError, NumericError, ParameterError
from .gaussian import GaussianPacket
from .model import ModelParams, derive

_PENALTY = 1e8
_TIE = 1e-12
_GRAD_OK = 1e-5
_GTOL = 1e-6


@dataclass(frozen=True)
class OptimConfig:
    """Knobs for minimize(); defaults suit the N = 2 regime scans."""

    n_pairs: int = 2
    n_starts: int = 4
    seed: int = 0
    max_iters: int = 2000
    energy_tol: float = 1e-12

    def __post_init__(self):
        if not isinstance(self.n_pairs, (int, np.integer)) or self.n_pairs < 1:
            raise ParameterError(f"n_pairs must be a positive integer, got {self.n_pairs!r}")
        if not isinstance(self.n_starts, (int, np.integer)) or self.n_starts < 1:
            raise ParameterError(f"n_starts must be a positive integer, got {self.n_starts!r}")
        if not isinstance(self.max_iters, (int, np.integer)) or self.max_iters < 1:
            raise ParameterError(f"max_iters must be a positive integer, got {self.max_iters!r}")
        if not (isinstance(self.energy_tol, (int, float)) and 0 < self.energy_tol < 1):
            raise ParameterError(f"energy_tol must lie in (0, 1), got {self.energy_tol!r}")
        if not isinstance(self.seed, (int, np.integer)) or self.seed < 0:
            raise ParameterError(f"seed must be a nonnegative integer, got {self.seed!r}")


@dataclass(frozen=True)
class OptimResult:
    ansatz: PolaronAnsatz
    energy: float
    converged: bool
    iterations: int
    start_index: int


def _pairs(rows):
    """Packets from (coeff, eps, center) rows."""
    return tuple(GaussianPacket(c, e, u) for c, e, u in rows)


def _template_weak(g_prime, n_pairs):
    """Single active packet per component, dormant pairs spread toward the wells.

    At g = 0 this is exactly the decoupled ground state (vacuum packet in
    psi_1 and psi_3), a stationary point of the functional.
    """
    rows1, rows3 = [], []
    for j in range(n_pairs):
        c = 2.0 * g_prime * 0.45 * (j + 1) / n_pairs
        active = 1.0 if j == 0 else 0.0
        rows1.append((active, 1.0 + 0.10 * j, -c))
        rows1.append((0.0, 1.05 + 0.10 * j, +c))
        rows3.append((active, 1.0 + 0.07 * j, -0.5 * c))
        rows3.append((0.0, 1.03 + 0.07 * j, +0.5 * c))
    return rows1, rows3


def _template_bipolaron(g_prime, n_pairs):
    """One packet at the bottom of the displaced well, everything else dormant.

    With Omega = 0 this start is exactly optimal (displaced-oscillator
    ground state, energy -2 omega g'^2).
    """
    hw = max(g_prime, 0.3)
    rows1, rows3 = [], []
    for j in range(n_pairs):
        c = 2.0 * g_prime * (1.0 - 0.12 * j)
        active = 1.0 if j == 0 else 0.0
        rows1.append((active, 1.0 + 0.10 * j, -c))
        rows1.append((0.0, 1.05 + 0.10 * j, +c))
        rows3.append((0.0, 1.0 + 0.07 * j, -0.5 * hw * (j + 1) / n_pairs))
        rows3.append((0.0, 1.03 + 0.07 * j, +0.5 * hw * (j + 1) / n_pairs))
    return rows1, rows3


def default_starts(params: ModelParams, n_pairs: int, n_starts: int = 4, seed: int = 0):
    """Deterministic start list: weak-coupling, bipolaron, seeded mixtures.

    Start i >= 2 jitters one of the two templates with its own generator
    keyed by (seed, i), so lists for different n_starts share a prefix.
    """
    if n_pairs < 1:
        raise ParameterError(f"n_pairs must be >= 1, got {n_pairs}")
    if n_starts < 1:
        raise ParameterError(f"n_starts must be >= 1, got {n_starts}")
    gp = derive(params).g_prime
    scale = max(2.0 * gp, 1.0)
    starts = []
    for i in range(n_starts):
        if i == 0:
            rows1, rows3 = _template_weak(gp, n_pairs)
        elif i == 1:
            rows1, rows3 = _template_bipolaron(gp, n_pairs)
        else:
            rng = np.random.default_rng([seed, i])
            rows1, rows3 = (
                _template_weak(gp, n_pairs) if i % 2 == 0 else _template_bipolaron(gp, n_pairs)
            )
            rows1 = [
                (
                    c + rng.uniform(0.15, 0.6),
                    e * math.exp(rng.normal(0.0, 0.3)),
                    u + rng.normal(0.0, 0.25 * scale),
                )
                for c, e, u in rows1
            ]
            rows3 = [
                (
                    c + rng.uniform(0.1, 0.5),
                    e * math.exp(rng.normal(0.0, 0.3)),
                    u + rng.normal(0.0, 0.2 * scale),
                )
                for c, e, u in rows3
            ]
        starts.append(
            PolaronAnsatz(n_pairs=n_pairs, packets_1=_pairs(rows1), packets_3=_pairs(rows3))
        )
    return starts


def _split(theta, k1, k3):
    c1 = theta[0:k1]
    # wild log-width trial steps may overflow exp; the energy path maps the
    # resulting non-finite values onto the penalty plateau
    with np.errstate(over="ignore"):
        e1 = np.exp(theta[k1 : 2 * k1])
        e3 = np.exp(theta[3 * k1 + k3 : 3 * k1 + 2 * k3])
    u1 = theta[2 * k1 : 3 * k1]
    b = 3 * k1
    c3 = theta[b : b + k3]
    u3 = theta[b + 2 * k3 : b + 3 * k3]
    return c1, e1, u1, c3, e3, u3


def _make_objective(params, k1, k3):
    def objective(theta):
        value, _ = _ansatz._energy_arrays(*_split(theta, k1, k3), params)
        if value is None or not math.isfinite(value):
            return _PENALTY
        return value

    return objective


def _make_gradient(params, k1, k3):
    def gradient(theta):
        try:
            return _ansatz._gradient_arrays(*_split(theta, k1, k3), params)
        except (DegenerateAnsatzError, NumericError):
            # flat continuation on the penalty plateau
            return np.zeros_like(theta)

    return gradient


def _merge_theta(theta, k1, k3, tol=1e-9):
    """Apply the duplicate-packet guard on the flat vector; returns new (theta, k1, k3)."""
    c1, e1, u1, c3, e3, u3 = _split(theta, k1, k3)
    a = merge_duplicate_packets(
        _ansatz._from_arrays(1, c1, e1, u1, c3, e3, u3), tol=tol
    )
    c1, e1, u1, c3, e3, u3 = _ansatz._arrays(a)
    merged = np.concatenate([c1, np.log(e1), u1, c3, np.log(e3), u3])
    return merged, len(c1), len(c3)


def minimize(params: ModelParams, config: OptimConfig) -> OptimResult:
    """Optimize the trial state over all packet parameters.

    Runs config.n_starts independent starts (simplex descent, duplicate
    merge, quasi-Newton polish), returns the lowest final energy; ties
    within 1e-12 go to the lowest start index.  Raises ConvergenceError
    carrying the best-effort result when no start meets the convergence
    criteria.
    """
    starts = default_starts(params, config.n_pairs, config.n_starts, config.seed)
    best = None
    any_converged = False

    for index, start in enumerate(starts):
        k1, k3 = len(start.packets_1), len(start.packets_3)
        theta0 = _ansatz.flatten_parameters(start)
        objective = _make_objective(params, k1, k3)

        # simplex descent; sizeable initial steps keep dormant packets mobile
        steps = 0.05 * np.maximum(np.abs(theta0), 1.0)
        simplex = np.vstack([theta0, theta0 + np.diag(steps)])
        res_nm = _scipy_minimize(
            objective,
            theta0,
            method="Nelder-Mead",
            options=dict(
                maxiter=config.max_iters,
                maxfev=4 * config.max_iters,
                fatol=1e-10,
                xatol=1e-7,
                adaptive=True,
                initial_simplex=simplex,
            ),
        )
        theta, k1m, k3m = _merge_theta(res_nm.x, k1, k3)
        objective_m = _make_objective(params, k1m, k3m)
        gradient_m = _make_gradient(params, k1m, k3m)

        qn_iters = max(10, config.max_iters // 5)
        res_qn = _scipy_minimize(
            objective_m,
            theta,
            method="BFGS",
            jac=gradient_m,
            options=dict(gtol=_GTOL, maxiter=qn_iters),
        )
        polish_iters = int(res_qn.nit)
        if not res_qn.success:
            # restart with a fresh inverse-Hessian estimate
            res_qn = _scipy_minimize(
                objective_m,
                res_qn.x,
                method="BFGS",
                jac=gradient_m,
                options=dict(gtol=_GTOL, maxiter=qn_iters),
            )
            polish_iters += int(res_qn.nit)
        final_theta = res_qn.x if res_qn.fun <= objective_m(theta) else theta
        final_energy = objective_m(final_theta)
        grad_norm = float(np.max(np.abs(gradient_m(final_theta))))
        converged = bool(res_qn.success or grad_norm <= _GRAD_OK * max(1.0, abs(final_energy)))
        iterations = int(res_nm.nit) + polish_iters
        any_converged = any_converged or converged

        if best is None or final_energy < best["energy"] - _TIE:
            best = dict(
                energy=final_energy,
                theta=final_theta,
                k1=k1m,
                k3=k3m,
                converged=converged,
                iterations=iterations,
                index=index,
            )

    result_ansatz = _ansatz.unflatten_parameters(
        best["theta"], config.n_pairs, best["k1"], best["k3"]
    )
    result_ansatz = merge_duplicate_packets(result_ansatz)
    result_ansatz = _ansatz.normalize(result_ansatz)
    result = OptimResult(
        ansatz=result_ansatz,
        energy=float(_ansatz.energy(result_ansatz, params)),
        converged=best["converged"],
        iterations=best["iterations"],
        start_index=best["index"],
    )
    if not any_converged:
        raise ConvergenceError("no optimizer start converged", result=result)
    return result


def as_document(result: OptimResult, params: ModelParams) -> dict:
    """JSON-ready dict: winning ansatz plus optimization metadata."""
    doc = _ansatz.as_document(result.ansatz, params)
    return {
        "energy": result.energy,
        "converged": result.converged,
        "iterations": result.iterations,
        "start_index": result.start_index,
        "ansatz": doc,
    }
