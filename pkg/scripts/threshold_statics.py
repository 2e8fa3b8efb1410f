"""Aligned morality threshold kappa_bar over (alpha, sigma) and the sign of its sigma-derivative.

    python3 scripts/threshold_statics.py --sigma 0.3 0.5 0.7
"""

import argparse

import numpy as np

from fiscap import Aligned, make_model, morality_threshold_aligned, threshold_comparative_statics
from fiscap.core import theta
from fiscap.oracle import bisect_threshold


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sigma", type=float, nargs="+", default=[0.3, 0.5, 0.7])
    ap.add_argument("--n", type=int, default=9)
    args = ap.parse_args()

    print(f"{'sigma':>6} {'alpha':>8} {'kappa_bar':>10} {'bisection':>10} {'dk/dalpha':>10} {'dk/dsigma':>10}")
    for sigma in args.sigma:
        th = theta(sigma)
        s = sigma * th
        for alpha in np.linspace(s, th, args.n + 2)[1:-1]:
            k = morality_threshold_aligned(alpha, sigma)
            d_a, d_s = threshold_comparative_statics(alpha, sigma, h=min(1e-5, (th - alpha) / 2))
            if k < 0.99 * min(1.0, 1.0 / alpha):
                kb = f"{bisect_threshold(make_model(sigma=sigma, values=Aligned(alpha)), alpha):10.6f}"
            else:
                kb = f"{'n/a':>10}"
            print(f"{sigma:6.2f} {alpha:8.4f} {k:10.6f} {kb} {d_a:10.4f} {d_s:10.4f}")


if __name__ == "__main__":
    main()
