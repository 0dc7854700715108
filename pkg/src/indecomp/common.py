"""Shared exceptions, verdict container, and default resource caps."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

#: Largest graph the independent-set enumerator accepts by default.
DEFAULT_VERTEX_CAP = 40

#: Largest facet count the shellability search accepts by default.
DEFAULT_FACET_CAP = 12

#: Largest number of faces homology-based checks will enumerate by default.
DEFAULT_FACE_CAP = 20000


class SizeCapError(Exception):
    """An instance exceeded a configured resource cap.

    This signals an intractable input, not an invalid one: callers must treat
    the queried property as undecided, never as false.
    """


class FormatError(ValueError):
    """Malformed text input (edge lists, attachment specs, facet lists)."""


@dataclass
class Verdict:
    """Boolean outcome of a property check plus supporting evidence.

    ``certificate`` carries positive evidence (a shelling order, a recursion
    tree, an elimination ordering); ``witness`` carries refuting evidence
    (a nonvanishing homology face, mismatched independent sets, a chordless
    cycle).  ``field`` records the coefficient field for homological checks.
    """

    holds: bool
    certificate: Any = None
    witness: Any = None
    detail: str = ""
    field: str | None = None

    def __bool__(self) -> bool:
        return self.holds
