"""End-to-end accuracy gates for the solver pair.

Every test here exercises the public surface (CLI sweep, minimize,
converged_ground) at fixed tolerances and prints one PASS line with the
measured headroom so regressions are easy to localize.
"""

import csv
import math
import time
from types import SimpleNamespace

import numpy as np
import pytest

import oracles
from rabi2.ansatz import energy
from rabi2.cli import main
from rabi2.ed import converged_ground, ground_state
from rabi2.gaussian import GaussianPacket, displaced_h, mel_p2, mel_x, mel_x2, overlap
from rabi2.model import ModelParams
from rabi2.observables import crossover_point, from_ansatz, from_fock
from rabi2.optimizer import OptimConfig, minimize

SWEEP_ARGS = [
    "sweep", "--omega", "1", "--Omega", "10",
    "--g-over-gc-range", "0", "2", "21",
    "--pairs", "2", "--seed", "0", "--engine", "both",
]


@pytest.fixture(scope="module")
def sweep(tmp_path_factory):
    base = tmp_path_factory.mktemp("acceptance")
    first = base / "first.csv"
    second = base / "second.csv"
    start = time.perf_counter()
    rc1 = main(SWEEP_ARGS + ["--out", str(first)])
    elapsed = time.perf_counter() - start
    rc2 = main(SWEEP_ARGS + ["--out", str(second)])
    with open(first) as handle:
        rows = list(csv.DictReader(handle))
    return SimpleNamespace(
        rc=(rc1, rc2),
        elapsed=elapsed,
        blobs=(first.read_bytes(), second.read_bytes()),
        rows=rows,
    )


def test_energy_accuracy_across_coupling_sweep(sweep):
    assert sweep.rc == (0, 0)
    assert len(sweep.rows) == 21
    assert all(row["status"] == "ok" for row in sweep.rows)
    rel = np.array(
        [
            abs(float(r["vm_energy"]) - float(r["ed_energy"]))
            / abs(float(r["ed_energy"]))
            for r in sweep.rows
        ]
    )
    assert rel.max() <= 1e-3
    assert float(np.median(rel)) <= 2e-4
    assert sweep.elapsed < 300.0
    print(
        f"PASS criterion 1: rel energy err max {rel.max():.2e}, "
        f"median {np.median(rel):.2e}, sweep {sweep.elapsed:.1f}s"
    )


def test_observable_accuracy_across_coupling_sweep(sweep):
    worst = {}
    for name in ("mean_photon", "tunneling_total", "zz_corr"):
        score = 0.0
        for row in sweep.rows:
            vm = float(row[f"vm_{name}"])
            ref = float(row[f"ed_{name}"])
            if abs(ref) < 0.1:
                assert abs(vm - ref) <= 1e-3
                score = max(score, abs(vm - ref))
            else:
                assert abs(vm - ref) / abs(ref) <= 1e-2
                score = max(score, abs(vm - ref) / abs(ref))
        worst[name] = score
    print(
        "PASS criterion 2: worst mismatch "
        + ", ".join(f"{k} {v:.2e}" for k, v in worst.items())
    )


def test_exact_limits():
    # zero coupling: both spins relax to their bare ground state
    for Omega in (1.0, 10.0):
        params = ModelParams(omega=1.0, Omega=Omega, g=0.0)
        res = minimize(params, OptimConfig(n_pairs=1, n_starts=2, seed=0, max_iters=800))
        assert abs(res.energy + Omega) <= 1e-8
        state = converged_ground(params, tol=1e-12)
        assert abs(state.energy + Omega) <= 1e-12
    # zero tunneling: displaced-well pair at -4 g^2 / omega with no mixed weight
    for g in (0.25, 0.5, 1.0):
        params = ModelParams(omega=1.0, Omega=0.0, g=g)
        exact = -4.0 * g * g
        res = minimize(params, OptimConfig(n_pairs=2, n_starts=4, seed=0, max_iters=2000))
        assert abs(res.energy - exact) <= 1e-8
        obs = from_ansatz(res.ansatz, params)
        assert obs.probs[2] <= 1e-10 and obs.probs[3] <= 1e-10
        state = converged_ground(params, tol=1e-10)
        assert abs(state.energy - exact) <= 1e-8
        eobs = from_fock(state, params)
        assert eobs.probs[2] <= 1e-10 and eobs.probs[3] <= 1e-10
    print("PASS criterion 3: decoupled and zero-tunneling limits reproduced")


def test_variational_energy_bounds_reference(sweep):
    slack = min(
        float(r["ed_energy"]) - float(r["vm_energy"]) for r in sweep.rows
    )
    for row in sweep.rows:
        assert float(row["vm_energy"]) >= float(row["ed_energy"]) - 1e-8
    print(f"PASS criterion 4: min (E_vm - E_ed) = {-slack:.2e}, never below -1e-8")


def test_variational_energy_matches_fock_contraction():
    rng = np.random.default_rng(2026)
    n_max = 320
    worst = 0.0
    for _ in range(100):
        params = ModelParams(
            omega=float(rng.uniform(0.5, 2.0)),
            Omega=float(rng.uniform(0.0, 3.0)),
            g=float(rng.uniform(0.0, 1.5)),
        )
        state = oracles.random_ansatz(rng)
        matrix = oracles.kron_hamiltonian(params, n_max)
        vector = oracles.fock_vector(state, n_max)
        diff = abs(energy(state, params) - oracles.rayleigh(matrix, vector))
        worst = max(worst, diff)
    assert worst <= 1e-8
    print(f"PASS criterion 5: 100 random states, worst contraction gap {worst:.2e}")


def test_closed_form_matrix_elements_match_quadrature():
    rng = np.random.default_rng(77)
    worst = 0.0
    for _ in range(1000):
        a, b = rng.uniform(0.3, 3.0, size=2)
        u, v = rng.uniform(-3.0, 3.0, size=2)
        shift = float(rng.uniform(-2.0, 2.0))
        omega = float(rng.uniform(0.5, 2.0))
        pa = GaussianPacket(1.0, float(a), float(u))
        pb = GaussianPacket(1.0, float(b), float(v))
        checks = (
            (overlap(pa, pb), oracles.quad_overlap(a, u, b, v)),
            (mel_x(pa, pb), oracles.quad_x(a, u, b, v)),
            (mel_x2(pa, pb), oracles.quad_x2(a, u, b, v)),
            (mel_p2(pa, pb), oracles.quad_p2(a, u, b, v)),
            (
                displaced_h(pa, pb, shift, omega),
                oracles.quad_displaced_h(a, u, b, v, shift, omega),
            ),
        )
        for got, ref in checks:
            worst = max(worst, abs(got - ref))
    assert worst <= 1e-10
    print(f"PASS criterion 6: 1000 packet pairs, worst quadrature gap {worst:.2e}")


def test_component_probability_crossover_phenomenology():
    g_grid = np.linspace(0.0, 3.0, 31)
    crossings = []
    for Omega in (0.1, 1.0, 2.0, 10.0):
        probs = np.empty((g_grid.size, 4))
        for i, g in enumerate(g_grid):
            params = ModelParams(omega=1.0, Omega=Omega, g=float(g))
            state = converged_ground(params, tol=1e-10)
            probs[i] = from_fock(state, params).probs
        assert np.all(np.diff(probs[:, 2]) <= 1e-9)
        np.testing.assert_allclose(probs[:, 0], probs[:, 1], rtol=0, atol=1e-10)
        np.testing.assert_allclose(probs[:, 2], probs[:, 3], rtol=0, atol=1e-10)
        np.testing.assert_allclose(probs[0], 0.25, rtol=0, atol=1e-10)
        crossings.append(crossover_point(g_grid, probs[:, 2], threshold=0.1))
    assert all(c is not None for c in crossings)
    assert all(x < y for x, y in zip(crossings, crossings[1:]))
    assert abs(crossings[1] - 0.535914752521226) < 1e-6
    print(
        "PASS criterion 7: mixed-component weight decays monotonically, "
        "crossings " + ", ".join(f"{c:.4f}" for c in crossings)
    )


def test_truncation_convergence_at_acceptance_points(sweep):
    worst_final = 0.0
    largest_n = 0
    for row in sweep.rows:
        params = ModelParams(omega=1.0, Omega=10.0, g=float(row["g"]))
        n = 16
        energies = [ground_state(params, n).energy]
        while True:
            n *= 2
            assert n <= 4096
            energies.append(ground_state(params, n).energy)
            if abs(energies[-1] - energies[-2]) < 1e-10:
                break
        diffs = np.diff(energies)
        assert np.all(diffs <= 1e-12)  # enlarging the space never raises the energy
        worst_final = max(worst_final, abs(diffs[-1]))
        largest_n = max(largest_n, n)
    assert worst_final < 1e-10
    print(
        f"PASS criterion 8: ladders settle by n_max {largest_n}, "
        f"final doubling moves energy {worst_final:.1e}"
    )


def test_sweep_is_byte_reproducible(sweep):
    assert sweep.blobs[0] == sweep.blobs[1]
    print(f"PASS criterion 9: identical CSV bytes ({len(sweep.blobs[0])} bytes)")
