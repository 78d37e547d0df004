#!/usr/bin/env python3
"""Scan sup |dz/dmu| sqrt(mu - 4) over Cantor clouds as mu decreases to 4.

Prints one row per mu; the scaled sup should settle near 1/8.
"""

import argparse
import json
from dataclasses import asdict, dataclass

from holomotion.julia import cantor_sample_real
from holomotion.motion import thm13_constant


@dataclass
class ScanConfig:
    depth: int = 14
    kmin: int = 1
    kmax: int = 7
    tol: float = 1e-12


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--depth", type=int, default=ScanConfig.depth)
    ap.add_argument("--kmin", type=int, default=ScanConfig.kmin)
    ap.add_argument("--kmax", type=int, default=ScanConfig.kmax)
    ap.add_argument("--json", action="store_true", help="emit JSON lines instead of a table")
    args = ap.parse_args()
    cfg = ScanConfig(depth=args.depth, kmin=args.kmin, kmax=args.kmax)
    as_json = args.json

    if not as_json:
        print(f"{'mu':>12} {'constant':>10} {'witness':>14} {'excluded':>8}")
    for k in range(cfg.kmin, cfg.kmax + 1):
        mu = 4 + 10.0**-k
        row = thm13_constant(mu, cantor_sample_real(mu, cfg.depth), cfg.tol)
        if as_json:
            print(json.dumps({"config": asdict(cfg), **row}, sort_keys=True))
        else:
            print(f"{mu:12.7f} {row['constant']:10.6f} {row['witness']:14.10f} "
                  f"{row['excluded_loose_tail']:8d}")


if __name__ == "__main__":
    main()
