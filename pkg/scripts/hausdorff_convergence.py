#!/usr/bin/env python3
"""Sampled d_H(J(q_c), J(q_1/4)) and its error budget as the sampling depth grows.

Near c = 1/4 the covering radius of the cauliflower sample shrinks slowly
(inverse iteration crawls into the parabolic cusp), which is why those
parameters come back INCONCLUSIVE at moderate depth.
"""

import argparse
import math
from dataclasses import dataclass, field

from holomotion.hausdorff import hausdorff_distance
from holomotion.julia import sample_inverse_iteration


@dataclass
class ConvergenceConfig:
    cs: list = field(default_factory=lambda: [0.0, 0.1, 0.1875, 0.24, 0.249])
    depths: list = field(default_factory=lambda: [8, 10, 12, 14, 16])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--c", type=float, nargs="+")
    ap.add_argument("--depth", type=int, nargs="+")
    args = ap.parse_args()
    cfg = ConvergenceConfig()
    cs = args.c or cfg.cs
    depths = args.depth or cfg.depths

    print(f"{'c':>7} {'depth':>5} {'d_H':>10} {'exact':>10} {'|err|':>9} {'sampling':>9}")
    for depth in depths:
        quarter = sample_inverse_iteration(0.25, depth)
        for c in cs:
            rep = hausdorff_distance(sample_inverse_iteration(c, depth), quarter)
            exact = math.sqrt(0.25 - c)
            print(f"{c:7.4f} {depth:5d} {rep.hausdorff:10.6f} {exact:10.6f} "
                  f"{abs(rep.hausdorff - exact):9.2e} {rep.sampling_error:9.2e}")


if __name__ == "__main__":
    main()
