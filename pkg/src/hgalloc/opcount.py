"""Operation counters for machine-independent complexity checks.

Counts logical comparisons/edge operations per pipeline phase, not wall time.
Builders and coloring routines accept an optional counter and add closed-form
counts for the work their loops represent.
"""

from dataclasses import dataclass

PHASES = ("construction", "ordering", "coloring")


@dataclass
class OpCounter:
    construction: int = 0
    ordering: int = 0
    coloring: int = 0

    def total(self):
        return self.construction + self.ordering + self.coloring

    def as_dict(self):
        return {p: getattr(self, p) for p in PHASES}
