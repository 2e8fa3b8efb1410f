"""Equilibrium tag over a (kappa, rho) grid for the weak-high and strong-high examples.

Prints a character map (R pooling at rents, S separation, P pooling at
provision, . no pure equilibrium) and checks each cell against the
brute-force incentive constraints.

    python3 scripts/signaling_regions.py
"""

import argparse

import numpy as np

from fiscap import TwoState, classify_equilibrium, make_model
from fiscap.oracle import brute_force_gains
from fiscap.signaling import tag_from_gains

GLYPH = {"pooling_rents": "R", "separation": "S", "pooling_provision": "P", "no_pure_equilibrium": "."}


def region_map(alpha_L, alpha_H, sigma, n_kappa, n_rho):
    kappas = np.linspace(0.0, 0.98 / alpha_H, n_kappa)
    rhos = np.linspace(0.0, 1.0, n_rho)
    disagreements = 0
    lines = []
    for rho in rhos[::-1]:
        row = []
        for kappa in kappas:
            m = make_model(1.0, 1.0, sigma, float(kappa), TwoState(alpha_L, alpha_H, float(rho)))
            eq = classify_equilibrium(m, alpha_L, alpha_H, float(rho))
            disagreements += tag_from_gains(brute_force_gains(m, alpha_L, alpha_H, float(rho))) is not eq.tag
            row.append(GLYPH[eq.tag.value])
        lines.append(f"rho={rho:4.2f} " + "".join(row))
    lines.append(f"kappa in [0, {kappas[-1]:.3f}] left to right")
    return lines, disagreements


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-kappa", type=int, default=60)
    ap.add_argument("--n-rho", type=int, default=11)
    args = ap.parse_args()

    for label, a_h in (("weak-high", 0.6), ("strong-high", 1.2)):
        lines, bad = region_map(0.2, a_h, 0.5, args.n_kappa, args.n_rho)
        print(f"{label}: alpha_L=0.2 alpha_H={a_h} sigma=0.5  (oracle disagreements: {bad})")
        print("\n".join(lines))
        print()


if __name__ == "__main__":
    main()
