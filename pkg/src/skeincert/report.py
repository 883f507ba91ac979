"""Plain-text structured reports (key-value sections and aligned tables)."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

CONVENTIONS: Tuple[Tuple[str, str], ...] = (
    ("coefficients", "exact rationals; Q(q) elements as numer/denom of {exp:coeff} Laurent maps"),
    ("H2 variables", "order (x, z, y); x = tr(a), z = tr(b), y = tr(ab); (x,z;y)-weight (1,1,2)"),
    ("S4 variables", "order (s1, s2, s3, s12, s13, s23, s123)"),
    ("S4 oracle", "s_w = -tr(A_w) with A_12 = A1 A2, A_123 = A1 A2 A3 at q = 1"),
    ("weights", "s = (3,3,3,4,4,4,3); s' = (2,2,1,2,3,3,3)"),
    ("genus-2 pants", "{C1,C1,C3} {C2,C2,C3}"),
    ("genus-3 pants", "{C1,C2,C5} {C1,C4,C6} {C2,C3,C6} {C3,C4,C5}"),
    ("DT conventions", "pants sums even; n_i = 0 implies t_i >= 0; twist signs documentary only"),
)

EXIT_CODES = {"pass": 0, "fail": 1, "inconclusive": 2, "error": 3}


def digest(payload: Dict[str, Any]) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str)
    return "sha256:" + hashlib.sha256(blob.encode()).hexdigest()


@dataclass
class Section:
    title: str
    pairs: List[Tuple[str, str]] = field(default_factory=list)
    header: Optional[Sequence[str]] = None
    rows: List[Sequence[Any]] = field(default_factory=list)
    lines: List[str] = field(default_factory=list)

    def add(self, key: str, value: Any) -> "Section":
        self.pairs.append((key, str(value)))
        return self


@dataclass
class Report:
    command: str
    parameters: Dict[str, Any]
    input_digest: str
    verdict: str = "pass"
    sections: List[Section] = field(default_factory=list)
    timing: Optional[float] = None

    def section(self, title: str) -> Section:
        s = Section(title)
        self.sections.append(s)
        return s

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def render(self) -> str:
        out = ["# skeincert report", f"command: {self.command}",
               f"input-digest: {self.input_digest}", f"verdict: {self.verdict}"]
        if self.timing is not None:
            out.append(f"elapsed-seconds: {self.timing:.3f}")
        out.append("")
        out.append("[parameters]")
        for k in sorted(self.parameters):
            out.append(f"{k}: {self.parameters[k]}")
        out.append("")
        out.append("[conventions]")
        out += [f"{k}: {v}" for k, v in CONVENTIONS]
        for s in self.sections:
            out.append("")
            out.append(f"[{s.title}]")
            out += [f"{k}: {v}" for k, v in s.pairs]
            if s.header:
                out += _table(s.header, s.rows)
            out += s.lines
        return "\n".join(out) + "\n"


def _table(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> List[str]:
    cells = [[str(h) for h in header]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["| " + " | ".join(c.ljust(w) for c, w in zip(r, widths)) + " |" for r in cells]
    lines.insert(1, "|" + "|".join("-" * (w + 2) for w in widths) + "|")
    return lines
