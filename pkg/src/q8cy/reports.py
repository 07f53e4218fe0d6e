"""Structured check outcomes and their canonical JSON serialization."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field as dc_field

CERTIFIED = "certified"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"


def canonical_json_bytes(obj) -> bytes:
    """Stable byte encoding: sorted keys, no whitespace, trailing newline."""
    return (json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n").encode()


def digest_of(obj) -> str:
    return hashlib.sha256(canonical_json_bytes(obj)).hexdigest()


@dataclass
class CheckRecord:
    name: str
    method: str
    verdict: str
    witnesses: object = None
    detail: str = ""
    seconds: float = 0.0

    def to_json(self):
        return {
            "name": self.name,
            "method": self.method,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "detail": self.detail,
            "seconds": round(self.seconds, 3),
        }


@dataclass
class VerificationReport:
    instance_digest: str
    tool_version: str
    records: list = dc_field(default_factory=list)
    invariants: dict = dc_field(default_factory=dict)

    def add(self, record: CheckRecord):
        self.records.append(record)

    def verdict_by_name(self):
        """Aggregate verdict per check name across methods.

        A name is refuted if any record refutes it, certified if some record
        certifies and none refutes, and inconclusive otherwise.
        """
        out = {}
        for rec in self.records:
            cur = out.get(rec.name)
            if rec.verdict == REFUTED or cur == REFUTED:
                out[rec.name] = REFUTED
            elif rec.verdict == CERTIFIED or cur == CERTIFIED:
                out[rec.name] = CERTIFIED
            else:
                out[rec.name] = INCONCLUSIVE
        return out

    def to_json(self):
        return {
            "version": 1,
            "tool_version": self.tool_version,
            "instance_digest": self.instance_digest,
            "checks": [r.to_json() for r in self.records],
            "invariants": self.invariants,
            "timings": {f"{r.name}[{r.method}]": round(r.seconds, 3)
                        for r in self.records},
        }

    def canonical_bytes(self):
        return canonical_json_bytes(self.to_json())
