"""Six moral Laffer curves (g in {0, 1}, kappa in {0, 0.1, 0.2}) at w = c = 1, sigma = 0.1, alpha = 1.5.

Writes one CSV with columns g,kappa,t,revenue,report and prints the peaks.

    python3 scripts/laffer_family.py --out laffer_curves.csv
"""

import argparse
import csv

from fiscap import Aligned, laffer_curve, laffer_peak_rate, laffer_peak_revenue, make_model
from fiscap.oracle import brute_force_peak


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="laffer_curves.csv")
    ap.add_argument("--t-max", type=float, default=1.0)
    ap.add_argument("--n", type=int, default=1001)
    args = ap.parse_args()

    alpha = 1.5
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["g", "kappa", "t", "revenue", "report"])
        for g in (0, 1):
            for kappa in (0.0, 0.1, 0.2):
                m = make_model(1.0, 1.0, 0.1, kappa, Aligned(alpha))
                for p in laffer_curve(m, g, alpha, 0.0, args.t_max, args.n):
                    writer.writerow([g, kappa, f"{p.t:.9g}", f"{p.revenue:.9g}", f"{p.report:.9g}"])
                t_hat, T_hat = laffer_peak_rate(m, g, alpha), laffer_peak_revenue(m, g, alpha)
                t_o, T_o = brute_force_peak(m, g, alpha)
                print(f"g={g} kappa={kappa:.1f}  t_hat={t_hat:.6f} T_hat={T_hat:.6f}  "
                      f"oracle=({t_o:.6f}, {T_o:.6f})")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
