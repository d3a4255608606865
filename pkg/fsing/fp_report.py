import csv
import io
import json
from dataclasses import dataclass, field


FORMATS = ("text", "json", "csv")


@dataclass
class VerificationReport:
    """Outcome of a verification sweep: pass flag, number of checks, sample witnesses."""

    name: str
    passed: bool = True
    checked: int = 0
    witnesses: list = field(default_factory=list)

    max_witnesses = 20

    def record(self, ok, witness=None):
        self.checked += 1
        if not ok:
            self.passed = False
            if witness is not None:
                self.note(witness)
        return ok

    def note(self, witness):
        if len(self.witnesses) < self.max_witnesses:
            self.witnesses.append(witness)

    def merge(self, other):
        self.passed = self.passed and other.passed
        self.checked += other.checked
        for witness in other.witnesses:
            self.note({"check": other.name, "detail": witness})
        return self

    def to_json(self):
        return {"name": self.name, "pass": self.passed, "checked": self.checked,
                "witnesses": list(self.witnesses)}

    def summary(self):
        status = "passed" if self.passed else "FAILED"
        return f"{self.name}: {status} ({self.checked} checks)"


def render_json(payload):
    return json.dumps(payload, sort_keys=True, indent=2)


def render_csv(header, rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue().rstrip("\n")


@dataclass
class Output:
    """One command result, renderable as text, JSON or CSV."""

    payload: dict
    header: list
    rows: list
    lines: list

    def render(self, fmt="text"):
        if fmt == "json":
            return render_json(self.payload)
        if fmt == "csv":
            return render_csv(self.header, self.rows)
        if fmt == "text":
            return "\n".join(self.lines)
        raise ValueError(f"Unknown output format '{fmt}'.")
