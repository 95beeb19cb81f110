"""Pass/fail reports with witnesses, shared by every checker."""
from __future__ import annotations

from dataclasses import dataclass, field

EXHAUSTIVE = "exhaustive"
SAMPLED = "sampled"
STRUCTURAL = "proved-structurally"


@dataclass
class Check:
    name: str
    holds: bool
    witness: tuple | None = None
    method: str = EXHAUSTIVE
    note: str = ""

    def to_dict(self, encode=None) -> dict:
        d = {"name": self.name, "holds": self.holds, "method": self.method}
        if self.witness is not None:
            d["witness"] = [_encode(w, encode) for w in self.witness]
        if self.note:
            d["note"] = self.note
        return d


def _encode(w, encode):
    if encode is not None:
        try:
            return encode(w)
        except Exception:
            pass
    if isinstance(w, (frozenset, set)):
        try:
            return sorted(w)
        except TypeError:
            return sorted(map(repr, w))
    if isinstance(w, (str, int, float, bool)) or w is None:
        return w
    return repr(w)


@dataclass
class ConditionReport:
    """Ordered collection of named checks.  A failed check always has a witness."""

    title: str
    checks: dict = field(default_factory=dict)

    def add(self, name, holds, witness=None, method=EXHAUSTIVE, note="") -> Check:
        if not holds and witness is None:
            raise ValueError(f"failed check {name!r} needs a witness")
        c = Check(name, bool(holds), witness, method, note)
        self.checks[name] = c
        return c

    def extend(self, other: "ConditionReport", prefix: str = "") -> "ConditionReport":
        for name, c in other.checks.items():
            self.checks[prefix + name] = c
        return self

    def __getitem__(self, name) -> Check:
        return self.checks[name]

    def __contains__(self, name) -> bool:
        return name in self.checks

    def holds(self, *names) -> bool:
        names = names or tuple(self.checks)
        return all(self.checks[n].holds for n in names)

    @property
    def ok(self) -> bool:
        return self.holds()

    def failed(self) -> list[Check]:
        return [c for c in self.checks.values() if not c.holds]

    def to_dict(self, encode=None) -> dict:
        return {"title": self.title, "ok": self.ok,
                "checks": [c.to_dict(encode) for c in self.checks.values()]}

    def __str__(self):
        lines = [f"{self.title}: {'holds' if self.ok else 'FAILS'}"]
        for c in self.checks.values():
            mark = "ok " if c.holds else "BAD"
            extra = f"  witness={c.witness!r}" if c.witness is not None else ""
            lines.append(f"  [{mark}] {c.name} ({c.method}){extra}")
        return "\n".join(lines)


class ConstructionError(RuntimeError):
    """A construction the theory guarantees failed its own verification."""


class PreconditionError(ValueError):
    """An operation was called outside its documented domain."""
