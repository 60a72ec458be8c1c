"""Structured verification reports and their JSON / CSV projections."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any

from .groups import PointSet

__all__ = ["VerificationReport"]


@dataclass
class VerificationReport:
    """Outcome of one check, enumeration or sweep.

    ``verdict`` drives the CLI exit code.  ``items`` carries per-case rows for
    sweeps; it is empty otherwise.
    """

    command: str
    inputs: dict[str, Any]
    verdict: bool
    verdicts: dict[str, Any] = field(default_factory=dict)
    witnesses: list[PointSet] = field(default_factory=list)
    erratum_flags: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    items: list[dict[str, Any]] = field(default_factory=list)
    timing_ms: float = 0.0

    def __post_init__(self) -> None:
        self.verdicts = {"verdict": bool(self.verdict), **self.verdicts}

    @property
    def witness_count(self) -> int:
        return len(self.witnesses)

    def to_dict(self, timing: bool = False) -> dict[str, Any]:
        out: dict[str, Any] = {
            "command": self.command,
            "inputs": self.inputs,
            "verdict": bool(self.verdict),
            "verdicts": self.verdicts,
            "witness_count": self.witness_count,
            "witnesses": [w.to_text() for w in self.witnesses],
            "erratum_flags": list(self.erratum_flags),
        }
        if self.notes:
            out["notes"] = list(self.notes)
        if self.items:
            out["items"] = self.items
        if timing:
            out["timing_ms"] = round(self.timing_ms, 3)
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=False) + "\n"

    def to_csv(self, timing: bool = False) -> str:
        """One row per sweep item, or a single summary row."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if self.items:
            keys: list[str] = []
            for item in self.items:
                for k in item:
                    if k not in keys:
                        keys.append(k)
            writer.writerow(["command", *keys])
            for item in self.items:
                writer.writerow([self.command, *(_cell(item.get(k)) for k in keys)])
            return buf.getvalue()
        keys = list(self.verdicts)
        header = ["command", *keys, "witness_count", "witnesses", "erratum_flags"]
        row = [
            self.command,
            *(_cell(self.verdicts[k]) for k in keys),
            self.witness_count,
            "|".join(w.to_text() for w in self.witnesses),
            "|".join(self.erratum_flags),
        ]
        if timing:
            header.append("timing_ms")
            row.append(round(self.timing_ms, 3))
        writer.writerow(header)
        writer.writerow(row)
        return buf.getvalue()


def _cell(value: Any) -> Any:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, (list, tuple)):
        return "x".join(map(str, value))
    return value
