"""Degenerate surface and curve over each boundary stratum, with the exponent check
of the embedded elliptic curve for the two family shapes."""
import argparse

import numpy as np

from humbert_degen.families import exponent_of_subtorus, family_period_matrix, family_vector, random_family_params
from humbert_degen.mumford import INFINITY, StratumId, classify_fiber


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m-max", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    print(f"{'m':>3} {'I':>16} {'II':>16} {'III':>16} {'exp (1,1)':>9} {'exp inf':>8}")
    for m in range(2, args.m_max + 1):
        curves = [classify_fiber(m, s)["curve"] for s in StratumId]
        exps = []
        for fam in ((1, 1), INFINITY):
            tau = family_period_matrix(fam, m, random_family_params(fam, m, rng))
            exps.append(exponent_of_subtorus(family_vector(m, fam), tau))
        print(f"{m:>3} {curves[0]:>16} {curves[1]:>16} {curves[2]:>16} {exps[0]:>9} {exps[1]:>8}")
    print()
    for s in StratumId:
        print(f"stratum {s.value}: {classify_fiber(2, s)['surface_type']}")


if __name__ == "__main__":
    main()
