"""Verification reports shared by the verifiers and the command line."""
from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field

PASS, FAIL, BUDGET = "pass", "fail", "budget"


@dataclass
class Report:
    check: str
    instance: dict
    verdict: str = PASS
    timings: dict = field(default_factory=dict)
    counterexample: object = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def fail(self, counterexample) -> "Report":
        # keep the first counterexample only
        if self.verdict == PASS:
            self.verdict = FAIL
            self.counterexample = counterexample
        return self

    def expect(self, cond: bool, counterexample) -> bool:
        if not cond:
            self.fail(counterexample)
        return cond

    @contextmanager
    def timed(self, label: str):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.timings[label] = round(time.perf_counter() - t0, 6)

    def as_dict(self) -> dict:
        out = {
            "check": self.check,
            "instance": self.instance,
            "verdict": self.verdict,
            "timings": self.timings,
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.details:
            out["details"] = self.details
        return out

    def to_json(self, **kw) -> str:
        return json.dumps(self.as_dict(), default=str, **kw)

    def summary(self) -> str:
        inst = " ".join(f"{k}={v}" for k, v in self.instance.items())
        total = sum(self.timings.values())
        line = f"{self.check} [{inst}] {self.verdict.upper()} ({total:.2f}s)"
        if self.counterexample is not None:
            line += f" counterexample: {self.counterexample}"
        return line
