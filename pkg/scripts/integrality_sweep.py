"""Integrality constants over random matrices.

Checks that adj/ell * Lambda is diagonal with |d_i| = a_i and counts how often
the vertex integralizer a_p divides det.
"""

import argparse
import time
from collections import Counter

from torusorb.config import SweepConfig
from torusorb.orbifold import CharMatrix, integrality_constants


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=SweepConfig.count)
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    args = ap.parse_args()
    cfg = SweepConfig(seed=args.seed, count=args.count)

    t0 = time.perf_counter()
    divides = Counter()
    total = Counter()
    for A in cfg.matrices():
        c = integrality_constants(CharMatrix.from_rows(A))  # raises if the identity fails
        n = len(A)
        total[n] += 1
        divides[n] += c.a_p_divides_det
    dt = time.perf_counter() - t0

    print(f"{sum(total.values())} matrices, identity holds for all ({dt:.2f}s)")
    print(" n   a_p | det")
    for n in sorted(total):
        print(f"{n:2}   {divides[n]:4}/{total[n]}")


if __name__ == "__main__":
    main()
