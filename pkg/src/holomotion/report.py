"""Verification reports and their JSON form."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

SCHEMA = "holomotion/1"

PASS = "PASS"
FAIL = "FAIL"
INCONCLUSIVE = "INCONCLUSIVE"


def jsonable(x):
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return [jsonable(v) for v in x.tolist()]
    if isinstance(x, (complex, np.complexfloating)):
        return [jsonable(float(x.real)), jsonable(float(x.imag))]
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return x


@dataclass
class Report:
    claim: str
    parameters: dict
    max_ratio: float | None
    witness_point: complex | None
    verdict: str
    tolerances: dict
    details: dict = field(default_factory=dict)
    violation: str | None = None

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_dict(self) -> dict:
        d = {
            "schema": SCHEMA,
            "claim": self.claim,
            "parameters": self.parameters,
            "max_ratio": self.max_ratio,
            "witness_point": self.witness_point,
            "pass": self.passed,
            "verdict": self.verdict,
            "tolerances": self.tolerances,
            "details": self.details,
        }
        if self.violation is not None:
            d["violation"] = self.violation
        return jsonable(d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def combine(claim: str, reports: list[Report], parameters: dict, tolerances: dict) -> Report:
    """Fold several sub-reports into one: FAIL beats INCONCLUSIVE beats PASS."""
    verdicts = [r.verdict for r in reports]
    verdict = FAIL if FAIL in verdicts else INCONCLUSIVE if INCONCLUSIVE in verdicts else PASS
    ratios = [r.max_ratio for r in reports if r.max_ratio is not None]
    worst = max(range(len(reports)), key=lambda i: -math.inf if reports[i].max_ratio is None
                else reports[i].max_ratio) if reports else None
    failing = [r for r in reports if r.verdict == FAIL]
    return Report(
        claim=claim,
        parameters=parameters,
        max_ratio=max(ratios) if ratios else None,
        witness_point=(failing[0] if failing else reports[worst]).witness_point if reports else None,
        verdict=verdict,
        tolerances=tolerances,
        details={"cases": [r.to_dict() for r in reports]},
        violation=failing[0].violation if failing else None,
    )
