"""Structured check reports with a stable JSON schema.

Every check carries the computed value, the expected value and a provenance
tag (PAPER, TRIVIAL or DERIVED) naming where the expectation comes from.
The pass flag is computed from the two values, never supplied by the caller.
"""

from __future__ import annotations

import json
import platform
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

SCHEMA_VERSION = 1
TAGS = ("PAPER", "TRIVIAL", "DERIVED")


def plain(x: Any) -> Any:
    """JSON-friendly copy: tuples become lists, exact numbers become int or str."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return x
    if isinstance(x, dict):
        return {str(k): plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(plain(v) for v in x)
    try:
        if int(x) == x:
            return int(x)
    except (TypeError, ValueError):
        pass
    return str(x)


@dataclass
class Check:
    name: str
    computed: Any
    expected: Any
    tag: str
    source: str
    inputs: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown provenance tag {self.tag!r}")
        self.computed = plain(self.computed)
        self.expected = plain(self.expected)
        self.inputs = plain(self.inputs)

    @property
    def passed(self) -> bool:
        return self.computed == self.expected

    def as_dict(self) -> dict:
        return {"name": self.name, "inputs": self.inputs, "computed": self.computed,
                "expected": {"value": self.expected, "tag": self.tag, "source": self.source},
                "passed": self.passed}


def versions() -> Dict[str, str]:
    import gmpy2
    from . import __version__
    return {"tiltlab": __version__, "python": platform.python_version(), "gmpy2": gmpy2.version()}


@dataclass
class Report:
    command: List[str]
    environment: Dict[str, Any] = field(default_factory=dict)
    checks: List[Check] = field(default_factory=list)
    results: Dict[str, Any] = field(default_factory=dict)

    def add(self, name, computed, expected, tag, source, **inputs) -> Check:
        c = Check(name, computed, expected, tag, source, inputs)
        self.checks.append(c)
        return c

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {"schema": SCHEMA_VERSION, "command": list(self.command),
                "environment": plain(self.environment),
                "results": plain(self.results),
                "checks": [c.as_dict() for c in sorted(self.checks, key=lambda c: c.name)],
                "passed": self.passed}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2) + "\n"

    def human(self) -> str:
        lines = ["$ tiltlab " + " ".join(self.command)]
        for k in sorted(self.results):
            lines.append(f"  {k}: {plain(self.results[k])}")
        for c in sorted(self.checks, key=lambda c: c.name):
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"[{mark}] {c.name}: computed {c.computed}, expected {c.expected} ({c.tag}: {c.source})")
        lines.append(f"{sum(c.passed for c in self.checks)}/{len(self.checks)} checks passed")
        return "\n".join(lines)


def parse_report(text: str) -> dict:
    """Parse and validate a machine report."""
    d = json.loads(text)
    for key in ("schema", "command", "environment", "results", "checks", "passed"):
        if key not in d:
            raise ValueError(f"report lacks {key!r}")
    if d["schema"] != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema {d['schema']}")
    for c in d["checks"]:
        if c["expected"]["tag"] not in TAGS:
            raise ValueError(f"bad tag in {c['name']}")
        if c["passed"] != (c["computed"] == c["expected"]["value"]):
            raise ValueError(f"inconsistent pass flag in {c['name']}")
    return d


def default_environment(field_name: str, cutoff: int, max_path_len: int, extra: Optional[dict] = None) -> dict:
    env = {"field": field_name, "cutoff": cutoff, "max_path_len": max_path_len, "versions": versions()}
    env.update(extra or {})
    return env
