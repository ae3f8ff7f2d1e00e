"""Table of the branches of C_m through the peripheral P^1: the phi(m)+1 limit points and
the vanishing orders of the branches that land at the origin."""
import argparse
from collections import Counter

from humbert_degen.checks import totient
from humbert_degen.corank2 import admissible_branches, boundary_intersection_points, branch_multiplicity


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m-max", type=int, default=16)
    args = ap.parse_args()

    print(f"{'m':>3} {'phi+1':>6} {'points':>6} {'origin':>7} {'smooth':>7} {'singular':>8} {'cancel':>6}  orders")
    for m in range(2, args.m_max + 1):
        pts = boundary_intersection_points(m)
        origin = next(p for p in pts if p.is_origin())
        kinds = Counter()
        orders = Counter()
        for a, b in admissible_branches(m):
            if b == 0:
                continue
            bo = branch_multiplicity(a, b, m)
            if bo.cancellation:
                kinds["cancel"] += 1
                continue
            kinds["smooth" if bo.smooth else "singular"] += 1
            orders[bo.orders[0]] += 1
        hist = " ".join(f"{k}:{v}" for k, v in sorted(orders.items()))
        print(
            f"{m:>3} {totient(m) + 1:>6} {len(pts):>6} {len(origin.branches):>7} "
            f"{kinds['smooth']:>7} {kinds['singular']:>8} {kinds['cancel']:>6}  {hist}"
        )


if __name__ == "__main__":
    main()
