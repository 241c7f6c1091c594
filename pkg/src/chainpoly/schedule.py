"""Project scheduling on a poset of activities.

Each element is an activity with a rational duration; a maximal chain is a
path of dependent activities.  The earliest finishing time is the heaviest
chain, and a set of chains can be made simultaneously critical exactly when
it spans a face of the maximal chain polytope.
"""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction

from .errors import MissingWeightError
from .geometry import chain_value, face_oracle
from .poset import Chain, ChainFamily, Poset, format_chain
from .textio import fraction_str

Weights = Mapping[int, Fraction]


def _checked(P: Poset, f: Weights) -> dict[int, Fraction]:
    missing = [x for x in P.elements if x not in f]
    if missing:
        raise MissingWeightError(f"no weight for elements {missing}")
    return {x: Fraction(f[x]) for x in P.elements}


def eft(P: Poset, f: Weights) -> Fraction:
    """Earliest finishing time by longest-path DP over the cover graph."""
    w = _checked(P, f)
    best: dict[int, Fraction] = {}
    for x in P.topological_order:
        below = [best[y] for y in P.lower_covers(x)]
        best[x] = w[x] + (max(below) if below else 0)
    return max(best[x] for x in P.maximal_elements)


@dataclass(frozen=True)
class ScheduleReport:
    eft: Fraction
    critical: ChainFamily
    totals: tuple[tuple[Chain, Fraction], ...]

    def to_json(self) -> dict:
        return {
            "eft": fraction_str(self.eft),
            "critical": [format_chain(c) for c in self.critical],
            "totals": {format_chain(c): fraction_str(v) for c, v in self.totals},
        }


def critical_chains(P: Poset, f: Weights) -> ScheduleReport:
    w = _checked(P, f)
    totals = tuple((c, chain_value(w, c)) for c in P.maximal_chains())
    top = eft(P, w)
    critical = ChainFamily(tuple(c for c, v in totals if v == top))
    return ScheduleReport(top, critical, totals)


def multicritical(P: Poset, F: ChainFamily) -> dict[int, Fraction] | None:
    """Durations making exactly the chains of ``F`` critical, if any exist."""
    return face_oracle(P, F)
