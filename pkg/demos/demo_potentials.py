"""Show how coupling reshapes the adiabatic potentials and kills tunneling.

The four spin configurations see different effective potentials for the
field coordinate: the aligned pairs uu and dd sit in parabolas shifted to
-+ 2g' with depth -2 g'^2 (in units of omega), while the mixed pairs keep
the bare parabola. As the wells separate, the overlap between displaced
ground states shrinks and the tunneling observable collapses.
"""

import csv
import pathlib

import numpy as np

from rabi2.ed import converged_ground
from rabi2.model import ModelParams, derive
from rabi2.observables import from_fock, potential_curves

HERE = pathlib.Path(__file__).resolve().parent
OUT = HERE / "potentials.csv"

X = np.linspace(-8.0, 8.0, 321)


def run():
    rows = []
    print("omega=1: well positions and depths of the aligned-pair potential\n")
    print(f"{'g':>5} {'g_prime':>8} {'well at':>8} {'depth':>8}")
    for g in (0.0, 0.5, 1.0, 1.5, 2.0):
        params = ModelParams(omega=1.0, Omega=1.0, g=g)
        scales = derive(params)
        v_uu, v_ud, v_du, v_dd = potential_curves(params, X)
        for x, a, b, c, d in zip(X, v_uu, v_ud, v_du, v_dd):
            rows.append([g, float(x), float(a), float(b), float(c), float(d)])
        i_min = int(np.argmin(v_uu))
        print(
            f"{g:5.2f} {scales.g_prime:8.3f} {X[i_min]:8.2f} {v_uu[i_min]:8.3f}"
        )
    print("\nThe uu well tracks -2 g' and deepens like -2 g'^2; the dd curve")
    print("is its mirror image and the mixed curves stay centered at x=0.")

    with open(OUT, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["g", "x", "V_up_up", "V_up_down", "V_down_up", "V_down_down"])
        writer.writerows(rows)
    print(f"curves written to {OUT.name}\n")

    print("tunneling observable (ground state, Omega=1) vs coupling:")
    print(f"{'g':>5} {'tunneling':>11} {'P3':>9}")
    for g in (0.0, 0.5, 1.0, 1.5, 2.0):
        params = ModelParams(omega=1.0, Omega=1.0, g=g)
        obs = from_fock(converged_ground(params, tol=1e-10), params)
        print(f"{g:5.2f} {obs.tunneling_total:11.5f} {obs.probs[2]:9.5f}")
    print("\nOnce the wells separate by more than the packet width the overlap")
    print("factor e^(-2 g'^2) chokes off both numbers together.")


if __name__ == "__main__":
    run()
