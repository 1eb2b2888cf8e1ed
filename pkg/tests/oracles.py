"""Slow independent references used by the tests.

Everything here deliberately avoids the package's closed forms: matrix
elements come from adaptive quadrature, the Fock Hamiltonian is built from
Kronecker products of textbook operators, and observables are evaluated
directly from a Fock vector with those operator matrices.
"""

import numpy as np
from scipy.integrate import quad

from rabi2 import GaussianPacket, project_to_fock


def _bounds(a, u, b, v):
    # integrands decay like exp(-eps (x-c)^2 / 2); pad to e^-45 tails
    pad = np.sqrt(90.0 / min(a, b))
    return min(u, v) - pad, max(u, v) + pad


def _pair(a, u, b, v):
    return GaussianPacket(1.0, a, u), GaussianPacket(1.0, b, v)


def quad_overlap(a, u, b, v):
    pa, pb = _pair(a, u, b, v)
    lo, hi = _bounds(a, u, b, v)
    return quad(lambda x: pa(x) * pb(x), lo, hi, limit=200)[0]


def quad_x(a, u, b, v):
    pa, pb = _pair(a, u, b, v)
    lo, hi = _bounds(a, u, b, v)
    return quad(lambda x: x * pa(x) * pb(x), lo, hi, limit=200)[0]


def quad_x2(a, u, b, v):
    pa, pb = _pair(a, u, b, v)
    lo, hi = _bounds(a, u, b, v)
    return quad(lambda x: x * x * pa(x) * pb(x), lo, hi, limit=200)[0]


def quad_p2(a, u, b, v):
    # phi' = -eps (x - c) phi, and <p^2> = integral of phi_a' phi_b'
    pa, pb = _pair(a, u, b, v)
    lo, hi = _bounds(a, u, b, v)
    return quad(
        lambda x: a * (x - u) * b * (x - v) * pa(x) * pb(x), lo, hi, limit=200
    )[0]


def quad_displaced_h(a, u, b, v, shift, omega):
    x2 = quad_x2(a, u, b, v)
    x1 = quad_x(a, u, b, v)
    s = quad_overlap(a, u, b, v)
    return 0.5 * omega * (quad_p2(a, u, b, v) + x2 + 2.0 * shift * x1 + shift * shift * s)


def kron_hamiltonian(params, n_max):
    """Same model, different construction: omega n + (Omega/2)(sx1+sx2) + g(a+ad)(sz1+sz2)."""
    dim = n_max + 1
    ad = np.diag(np.sqrt(np.arange(1.0, dim)), -1)
    n_op = np.diag(np.arange(dim, dtype=float))
    sx = np.array([[0.0, 1.0], [1.0, 0.0]])
    sz = np.diag([1.0, -1.0])
    i2 = np.eye(2)
    sx_sum = np.kron(sx, i2) + np.kron(i2, sx)
    sz_sum = np.kron(sz, i2) + np.kron(i2, sz)
    return (
        params.omega * np.kron(n_op, np.eye(4))
        + 0.5 * params.Omega * np.kron(np.eye(dim), sx_sum)
        + params.g * np.kron(ad + ad.T, sz_sum)
    )


def fock_vector(ansatz, n_max):
    """Project the trial state onto the |n> x |spin> basis (index 4n + s).

    psi_2 and psi_4 are reflections of psi_1 and psi_3, and reflection in
    Fock space is the (-1)^n sign; the 1/2 and minus signs follow the
    trial-state definition.
    """
    f1 = np.zeros(n_max + 1)
    f3 = np.zeros(n_max + 1)
    for p in ansatz.packets_1:
        f1 += project_to_fock(p, n_max)
    for p in ansatz.packets_3:
        f3 += project_to_fock(p, n_max)
    signs = (-1.0) ** np.arange(n_max + 1)
    v = np.zeros(4 * (n_max + 1))
    v[0::4] = 0.5 * f1
    v[3::4] = 0.5 * signs * f1
    v[1::4] = -0.5 * f3
    v[2::4] = -0.5 * signs * f3
    return v


def rayleigh(matrix, v):
    return float(v @ matrix @ v) / float(v @ v)


def vector_observables(params, v):
    """mean photon, <sx1>, <sx2>, zz correlation evaluated with kron operators."""
    v = v / np.linalg.norm(v)
    n_max = len(v) // 4 - 1
    dim = n_max + 1
    ad = np.diag(np.sqrt(np.arange(1.0, dim)), -1)
    n_op = np.diag(np.arange(dim, dtype=float))
    sx = np.array([[0.0, 1.0], [1.0, 0.0]])
    sz = np.diag([1.0, -1.0])
    i2 = np.eye(2)
    sz_sum = np.kron(sz, i2) + np.kron(i2, sz)
    out = {
        "mean_photon": v @ np.kron(n_op, np.eye(4)) @ v,
        "sigma_x1": v @ np.kron(np.eye(dim), np.kron(sx, i2)) @ v,
        "sigma_x2": v @ np.kron(np.eye(dim), np.kron(i2, sx)) @ v,
        "zz_corr": v @ np.kron(ad + ad.T, sz_sum) @ v,
    }
    return {k: float(val) for k, val in out.items()}


def random_packets(rng, count):
    """Well-conditioned random packets for closed-form versus quadrature runs."""
    out = []
    for _ in range(count):
        eps = rng.uniform(0.3, 3.0)
        center = rng.uniform(-3.0, 3.0)
        out.append(GaussianPacket(1.0, eps, center))
    return out


def random_ansatz(rng, n_pairs_max=3):
    """Random normalized trial state; resamples away near-null coefficient sets."""
    from rabi2 import PolaronAnsatz, norm_sq, normalize

    n_pairs = int(rng.integers(1, n_pairs_max + 1))
    while True:
        def packs(count):
            return tuple(
                GaussianPacket(
                    rng.uniform(-1.0, 1.0),
                    rng.uniform(0.4, 2.5),
                    rng.uniform(-2.5, 2.5),
                )
                for _ in range(count)
            )

        ansatz = PolaronAnsatz(
            n_pairs=n_pairs, packets_1=packs(2 * n_pairs), packets_3=packs(2 * n_pairs)
        )
        try:
            if norm_sq(ansatz) > 1e-6:
                return normalize(ansatz)
        except Exception:
            pass
