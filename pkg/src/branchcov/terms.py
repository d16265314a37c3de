"""Term records shared by the theorem evaluators and the report writer."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

EXACT = "exact"
NUMERIC = "numeric"
PENDING = "pending"

STATUSES = (EXACT, NUMERIC, PENDING)


@dataclass(frozen=True)
class Term:
    """One term of a formula.

    ``value`` is a Fraction or Cyclotomic for exact terms, an mpf/mpc for
    numeric ones, and None for pending ones (a pending term never carries a
    value that could be mistaken for zero).
    """

    name: str
    status: str
    value: Any = None
    bound: Any = None
    note: str = ""
    details: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown term status {self.status!r}")
        if self.status == PENDING and self.value is not None:
            raise ValueError("pending terms carry no value")
        if self.status != PENDING and self.value is None:
            raise ValueError(f"term {self.name} has status {self.status} but no value")


def exact(name: str, value, note: str = "", **details) -> Term:
    return Term(name, EXACT, value, None, note, details)


def numeric(name: str, value, bound, note: str = "", **details) -> Term:
    return Term(name, NUMERIC, value, bound, note, details)


def pending(name: str, note: str, **details) -> Term:
    return Term(name, PENDING, None, None, note, details)


def find(terms, name: str) -> Optional[Term]:
    return next((t for t in terms if t.name == name), None)
