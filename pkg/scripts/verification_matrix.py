#!/usr/bin/env python3
"""Run every CLI verification with default parameters and write the reports.

Writes one JSON file per claim into --out and prints a verdict table.
"""

import argparse
import subprocess
import sys
from pathlib import Path

CLAIMS = {
    "thm12": ["--c", "0.2"],
    "thm13": [],
    "corollary": ["--c", "0.1"],
    "holder14": [],
    "prop_delta": ["--mu", "4.5"],
    "remark22": ["--mu", "1.5"],
    "expansion": ["--mu", "4.5"],
    "koenigs": [],
    "kneading": [],
}
VERDICT = {0: "PASS", 2: "FAIL", 3: "INCONCLUSIVE", 64: "USAGE"}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="reports")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    worst = 0
    for claim, extra in CLAIMS.items():
        path = out / f"{claim}.json"
        code = subprocess.run([sys.executable, "-m", "holomotion", "verify", claim, *extra,
                               "--out", str(path)]).returncode
        worst = max(worst, code)
        print(f"{claim:12s} {VERDICT.get(code, code)}")
    sys.exit(0 if worst == 0 else 1)


if __name__ == "__main__":
    main()
