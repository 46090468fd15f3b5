#!/usr/bin/env python3
"""Compare the Euler product with the weighted point-count formula for every
character of a given order on a modulus, printing one line per character.

    python3 scripts/check_lseries.py X+ --order 3 --N 8
"""

import argparse
import sys

from cftcurves.classgroup import ray_class_group
from cftcurves.config import load_curve
from cftcurves.experiment import modulus_family
from cftcurves.lseries import (
    characters,
    constant_twist_check,
    is_constant,
    l_polynomial,
    l_series_euler,
    l_series_weighted,
)


def run(curve_name: str, order: int, N: int, index: int) -> int:
    C = load_curve(curve_name)
    D, _ = modulus_family(C, [2, 1, 1], 2)[index]
    G = ray_class_group(C, D)
    print(f"{C.name}  D = {D.label()}  Cl_D = {G.invariants}")
    failures = 0
    for chi in characters(G, order, exact=True):
        same = l_series_euler(chi, N) == l_series_weighted(chi, N, brute_force_upto=N)
        twist = constant_twist_check(chi, N)
        L = l_polynomial(chi)
        kind = "constant" if is_constant(chi) else "geometric"
        print(f"  {chi.images}  {kind:9s}  f = {chi.conductor.label():28s} "
              f"deg L = {L.degree}  euler=weighted: {same}  twist: {twist}")
        failures += not (same and twist)
    return 1 if failures else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("curve", nargs="?", default="X+")
    ap.add_argument("--order", type=int, default=3)
    ap.add_argument("--N", type=int, default=8)
    ap.add_argument("--modulus-index", type=int, default=0, help="which 2P+Q+R (0..11)")
    a = ap.parse_args()
    sys.exit(run(a.curve, a.order, a.N, a.modulus_index))
