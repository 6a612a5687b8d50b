"""Verdict records and their JSON-lines / CSV serialisation."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator

__all__ = ["FIELDS", "ReportEntry", "Report"]

FIELDS = ("identity", "params", "prime", "weight", "lhs", "rhs", "pass", "guaranteed")


@dataclass(frozen=True)
class ReportEntry:
    identity: str
    params: str
    prime: int | str  # an int, "exact" or "real"
    weight: int | None
    lhs: str
    rhs: str
    passed: bool
    guaranteed: bool = True  # False for primes below the floor

    @property
    def failed(self) -> bool:
        """A failure that counts: verified false inside the guaranteed range."""
        return self.guaranteed and not self.passed

    def sort_key(self) -> tuple:
        prime = (0, self.prime, "") if isinstance(self.prime, int) else (1, 0, self.prime)
        return (self.identity, self.params, prime, -1 if self.weight is None else self.weight)

    def as_dict(self) -> dict:
        return {
            "identity": self.identity,
            "params": self.params,
            "prime": self.prime,
            "weight": self.weight if self.weight is not None else "n/a",
            "lhs": self.lhs,
            "rhs": self.rhs,
            "pass": self.passed,
            "guaranteed": self.guaranteed,
        }


@dataclass
class Report:
    entries: list[ReportEntry] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.entries = sorted(self.entries, key=ReportEntry.sort_key)

    def __iter__(self) -> Iterator[ReportEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def extend(self, more: Iterable[ReportEntry]) -> None:
        self.entries = sorted([*self.entries, *more], key=ReportEntry.sort_key)

    def merged(self, other: Report) -> Report:
        return Report([*self.entries, *other.entries])

    @property
    def all_passed(self) -> bool:
        return not any(e.failed for e in self.entries)

    def counts(self) -> tuple[int, int]:
        """``(passed, total)`` over cells inside the guaranteed range."""
        inside = [e for e in self.entries if e.guaranteed]
        return sum(e.passed for e in inside), len(inside)

    def failures(self) -> list[ReportEntry]:
        return [e for e in self.entries if e.failed]

    def by_identity(self, identity: str) -> list[ReportEntry]:
        return [e for e in self.entries if e.identity == identity]

    def summary(self) -> str:
        ok, total = self.counts()
        outside = len(self.entries) - total
        tag = "PASS" if self.all_passed else "FAIL"
        line = f"{tag} {ok}/{total}"
        if outside:
            line += f" ({outside} cells outside guarantee)"
        return line

    def to_jsonl(self) -> str:
        return "".join(json.dumps(e.as_dict()) + "\n" for e in self.entries)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=FIELDS, lineterminator="\n")
        writer.writeheader()
        for e in self.entries:
            writer.writerow(e.as_dict())
        return buf.getvalue()

    def to_pretty(self) -> str:
        lines = []
        for e in self.entries:
            mark = "ok " if e.passed else ("FAIL" if e.guaranteed else "n/g")
            w = "-" if e.weight is None else e.weight
            lines.append(f"{mark:4} {e.identity:18} {e.params:32} p={e.prime!s:6} w={w!s:3} {e.lhs} | {e.rhs}")
        lines.append(self.summary())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_jsonl(cls, text: str) -> Report:
        entries = []
        for line in text.splitlines():
            if not line.strip():
                continue
            d = json.loads(line)
            entries.append(
                ReportEntry(
                    identity=d["identity"],
                    params=d["params"],
                    prime=d["prime"],
                    weight=None if d["weight"] == "n/a" else d["weight"],
                    lhs=d["lhs"],
                    rhs=d["rhs"],
                    passed=d["pass"],
                    guaranteed=d.get("guaranteed", True),
                )
            )
        return cls(entries)
