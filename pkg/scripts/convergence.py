"""Distance to the boundary limit as a function of height, for both boundary components.

Corank 1: e1 of H_2(0, m, c, 0, e) with tau11 = ih approaches (0, -(c tau + e)/m, tau).
Corank 2: psi(T_{z, ih}) approaches (0, e(z), 0) at the rate exp(-2 pi h / (m - 1)).
"""
import argparse
import math

from humbert_degen.checks import psi_decay_ratio
from humbert_degen.corank1 import corank1_limit, track_limit_corank1
from humbert_degen.corank2 import psi_limit, psi_limit_family
from humbert_degen.siegel import DiscriminantVector


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=4)
    ap.add_argument("--c", type=int, default=1)
    ap.add_argument("--e", type=int, default=1)
    ap.add_argument("--tau", type=complex, default=0.2 + 1.1j)
    ap.add_argument("--z", type=complex, default=0.1 + 0.05j)
    args = ap.parse_args()

    heights = [5, 10, 15, 20, 30, 40, 50, 60]
    v = DiscriminantVector(0, args.m, args.c, 0, args.e, args.m)
    target = corank1_limit(v).point(args.tau)
    d1 = [p.distance(target) for p in track_limit_corank1(v, args.tau, heights)]
    target2 = psi_limit(args.z)
    d2 = [
        max(abs(x - y) for x, y in zip(p, target2))
        for p in psi_limit_family(args.m, args.z, heights)
    ]
    print(f"{'h':>4} {'corank-1 dist':>14} {'corank-2 dist':>14}")
    for h, a, b in zip(heights, d1, d2):
        print(f"{h:>4} {a:>14.3e} {b:>14.3e}")
    obs, pred = psi_decay_ratio(args.m, args.z, 30, 40)
    print(f"corank-2 ratio h=30 -> 40: observed {obs:.4e}, predicted {pred:.4e}, rel err {abs(obs / pred - 1):.2%}")
    print(f"corank-1 rate: e^(-2 pi) per unit height = {math.exp(-2 * math.pi):.4e}")


if __name__ == "__main__":
    main()
