from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckLine:
    ok: bool
    label: str          # "axiom" or "check"
    ident: str
    witness: tuple[str, ...] = ()
    note: str = ""

    def text(self) -> str:
        s = f"{'PASS' if self.ok else 'FAIL'} {self.label}={self.ident} witness={','.join(self.witness) or '-'}"
        return f"{s} {self.note}" if self.note else s


@dataclass
class CheckReport:
    lines: list[CheckLine] = field(default_factory=list)

    def add(self, ok: bool, label: str, ident: str, witness=(), note: str = "") -> bool:
        self.lines.append(CheckLine(bool(ok), label, ident, tuple(witness), note))
        return bool(ok)

    def extend(self, other: "CheckReport") -> None:
        self.lines.extend(other.lines)

    @property
    def ok(self) -> bool:
        return all(line.ok for line in self.lines)

    def failures(self) -> list[CheckLine]:
        return [line for line in self.lines if not line.ok]

    def text(self) -> str:
        return "\n".join(line.text() for line in self.lines)
