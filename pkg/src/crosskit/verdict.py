from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decision procedure. ``witness`` is a refuting word when one exists."""

    holds: bool
    witness: str | None = None
    detail: Any = None

    def __bool__(self):
        return self.holds

    def as_dict(self) -> dict:
        out = {"holds": self.holds}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail is not None:
            out["detail"] = self.detail
        return out
