"""Verification outcome records streamed by the CLI as JSON lines."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass

STATUSES = ("pass", "fail", "skipped")


@dataclass
class Report:
    check: str
    instance: str
    status: str
    witness: str | None = None
    elapsed_ms: float = 0.0
    engine_suspect: bool = False

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        if self.status in ("fail", "skipped") and not self.witness:
            raise ValueError(f"a {self.status} report needs a witness/reason")

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "check": self.check,
            "instance": self.instance,
            "status": self.status,
            "witness": self.witness,
            "elapsed_ms": round(self.elapsed_ms, 3) if timing else 0,
            "engine_suspect": self.engine_suspect,
        }

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> Report:
        return cls(**json.loads(line))


def passed(check, instance, witness=None, **kw) -> Report:
    return Report(check, instance, "pass", witness, **kw)


def failed(check, instance, witness, engine_suspect=False, **kw) -> Report:
    return Report(check, instance, "fail", witness, engine_suspect=engine_suspect, **kw)


def skipped(check, instance, reason, **kw) -> Report:
    return Report(check, instance, "skipped", reason, **kw)


@contextmanager
def stopwatch():
    """Yields a one-item list that receives the elapsed milliseconds."""
    box = [0.0]
    t0 = time.perf_counter()
    try:
        yield box
    finally:
        box[0] = (time.perf_counter() - t0) * 1000.0


def any_failed(reports) -> bool:
    return any(r.status == "fail" for r in reports)
