"""Check and report containers with text and JSON rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass


@dataclass
class Check:
    name: str
    passed: bool
    witness: str | None = None

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"


@dataclass
class Report:
    suite: str
    params: dict
    cleaving_convention: dict
    checks: list[Check]
    duration_ms: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def sorted_checks(self) -> list[Check]:
        return sorted(self.checks, key=lambda c: c.name)

    def to_json_dict(self) -> dict:
        out = {
            "suite": self.suite,
            "params": self.params,
            "cleaving_convention": self.cleaving_convention,
            "checks": [
                {"name": c.name, "status": c.status}
                | ({"witness": c.witness} if c.witness is not None else {})
                for c in self.sorted_checks()
            ],
            "duration_ms": self.duration_ms,
        }
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, default=str)

    def to_text(self) -> str:
        lines = [f"suite: {self.suite}"]
        for key, value in sorted(self.params.items()):
            lines.append(f"  param {key} = {value}")
        conv = self.cleaving_convention
        lines.append(
            "  cleaving_convention: active={active} sigma={sigma_table_matches_convolution}"
            " ell={cocleaving_table_matches_derived} colinear={right_colinearity}".format(**conv)
        )
        for c in self.sorted_checks():
            lines.append(f"  [{c.status.upper():4}] {c.name}")
            if c.witness:
                lines.append(f"         witness: {c.witness}")
        status = "PASS" if self.ok else "FAIL"
        lines.append(f"result: {status} ({len(self.checks)} checks, {self.duration_ms:.0f} ms)")
        return "\n".join(lines)
