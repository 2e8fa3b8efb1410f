"""Tax-base path when the state switches from alpha_L to alpha_H, for several morality levels.

    python3 scripts/reform_jump.py --shock 3 --horizon 6
"""

import argparse

from fiscap import TwoState, jump_factor, make_model
from fiscap.sim import NoEquilibrium, Scenario, run_timeline, trajectory_jump


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alpha-l", type=float, default=0.2)
    ap.add_argument("--alpha-h", type=float, default=0.6)
    ap.add_argument("--sigma", type=float, default=0.5)
    ap.add_argument("--rho", type=float, default=0.5)
    ap.add_argument("--horizon", type=int, default=6)
    ap.add_argument("--shock", type=int, default=3)
    args = ap.parse_args()

    for kappa in (0.0, 0.2, 0.4, 0.5, 0.6, 0.8, 1.0, 1.2):
        if kappa * args.alpha_h >= 1:
            continue
        m = make_model(1.0, 1.0, args.sigma, kappa, TwoState(args.alpha_l, args.alpha_h, args.rho))
        try:
            traj = run_timeline(Scenario(m, args.alpha_l, args.alpha_h, args.rho, args.horizon, args.shock))
        except NoEquilibrium:
            print(f"kappa={kappa:.2f}  no pure equilibrium")
            continue
        path = " ".join(f"{x:.4f}" for x in traj.tax_bases)
        print(f"kappa={kappa:.2f}  {traj.metadata['tag']:<18} path {path}  "
              f"jump {trajectory_jump(traj, args.shock):.6f}  J {jump_factor(m, args.alpha_h):.6f}")


if __name__ == "__main__":
    main()
