"""Shared exception types and the Verdict record returned by every verifier."""
from __future__ import annotations

from dataclasses import dataclass


class FinequipError(Exception):
    """Base class for every error this package raises on bad input."""


class SourceMismatch(FinequipError):
    """A parallel pair of maps disagrees on source or target."""


class TargetMismatch(FinequipError):
    """Two maps expected to share a target do not."""


class BoundaryMismatch(FinequipError):
    """Horizontal or vertical boundaries do not line up for composition."""


class CyclicGraph(FinequipError):
    """The edge relation of a would-be free category has a cycle."""


class IndexMismatch(FinequipError):
    """Matrix index sets do not line up for multiplication."""


class SizeGuardExceeded(FinequipError):
    """An enumeration grew past the configured size guard."""


class SearchBudgetExceeded(FinequipError):
    """A candidate search has more entries than its configured budget."""


class SupMissing(FinequipError):
    """A weighted supremum does not exist (no unique minimal upper bound)."""


class AxiomFailure(FinequipError):
    """Structural axioms of a monoid, module, or algebra fail on the data."""


class NaturalityFailure(FinequipError):
    """A component family fails its naturality or compatibility squares."""


class MissingTColimit(FinequipError):
    """A colimit needed for the lifted structure map could not be verified."""


class FactorizationFailure(FinequipError):
    """No (or no unique) factorization through a universal cell exists."""


class OverflowBound(FinequipError):
    """Exact integer matrix arithmetic exceeded the configured entry bound."""


class ArityBudgetExceeded(FinequipError):
    """A sequence query asked for more tensor slots than the arity budget."""


class PartitionMismatch(FinequipError):
    """A codomain partition does not sum to the matrix's row count."""


def _token(text: str) -> str:
    # machine report lines are space-separated; keep each field one token
    return "".join("_" if ch.isspace() else ch for ch in text) or "-"


@dataclass(frozen=True)
class Verdict:
    """Outcome of one check: pass, or fail with a concrete witness."""

    check: str
    subject: str
    ok: bool
    witness: str = ""
    notes: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok

    def machine(self) -> str:
        """Render as one stable line: PASS|FAIL <check> <subject> [witness=...]."""
        line = f"{'PASS' if self.ok else 'FAIL'} {_token(self.check)} {_token(self.subject)}"
        if self.witness:
            line += f" witness={_token(self.witness)}"
        return line

    def text(self) -> str:
        head = "ok" if self.ok else "FAIL"
        body = f"[{head}] {self.check}: {self.subject}"
        if self.witness:
            body += f"\n  witness: {self.witness}"
        for note in self.notes:
            body += f"\n  note: {note}"
        return body


def passed(check: str, subject: str, *notes: str) -> Verdict:
    return Verdict(check, subject, True, "", tuple(notes))


def failed(check: str, subject: str, witness: str, *notes: str) -> Verdict:
    return Verdict(check, subject, False, witness, tuple(notes))


def merge_verdicts(check: str, subject: str, parts: list[Verdict]) -> Verdict:
    """Combine sub-verdicts: pass iff all pass, first failure's witness kept."""
    for part in parts:
        if not part.ok:
            notes = (f"failed_sub={part.check}",) + part.notes
            return Verdict(check, subject, False, part.witness, notes)
    notes = tuple(note for part in parts for note in part.notes)
    return Verdict(check, subject, True, "", notes)
