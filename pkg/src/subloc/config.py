"""Size budgets for the exhaustive enumerations and searches.

Every potentially exponential routine takes a :class:`Limits` and raises
:class:`subloc.errors.SizeLimit` instead of silently grinding, so callers
always know when a result is incomplete.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Limits:
    # Largest frame whose sublocales are found by scanning all 2^n subsets;
    # above this the generated-closure construction is used instead.
    scan_frame_elements: int = 12
    # Cap on the number of sublocales a coframe construction may produce.
    max_sublocales: int = 4096
    # Largest host (coframe of sublocales) whose subcolocales are enumerated
    # by brute force over all 2^|host| bit-sets.
    max_subcolocale_host: int = 16
    # Node budget and witness cap for the lifting searches.
    lift_node_budget: int = 1_000_000
    lift_max_witnesses: int = 64
    # Bounds for down-set lattice constructions.
    max_downset_ground: int = 16
    max_downsets: int = 4096
    # Families are quantified exhaustively (all 2^n subsets) up to this many
    # elements; beyond it the binary fold, equivalent by induction, is used.
    exhaustive_family_elements: int = 12

    def with_(self, **kw) -> "Limits":
        return replace(self, **kw)


DEFAULT_LIMITS = Limits()
