"""Twist regions: crossings joined by a curve that meets the diagram only there."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .diagram import CORNERS, STAR, LinkDiagram, TangleDiagram


@dataclass(frozen=True)
class TwistPartition:
    """Crossing indices grouped into twist regions.

    ``witnesses`` maps each directly related pair of crossings to the two
    faces the certifying curve runs through. ``closure_used`` is true when
    some class was only connected through transitivity.
    """

    classes: tuple[tuple[int, ...], ...]
    witnesses: dict
    closure_used: bool

    @property
    def twist_number(self) -> int:
        return len(self.classes)

    def class_of(self) -> dict[int, int]:
        return {c: k for k, cls in enumerate(self.classes) for c in cls}


def _opposite_face_pairs(d, i: int):
    cf = d.corner_faces()
    out = []
    for k in range(2):
        f1, f2 = cf[(i, k)], cf[(i, k + 2)]
        if f1 != f2:
            out.append(frozenset((f1, f2)))
    return out


def twist_partition(d: LinkDiagram | TangleDiagram) -> TwistPartition:
    """Group crossings c1 ~ c2 when two distinct faces lie at opposite corners of both.

    Works for tangles too: faces touching the boundary of the square are
    traced as regions inside it, so certifying curves stay in the square.
    """
    n = d.n_crossings
    by_pair: dict[frozenset, list[int]] = {}
    for i in range(n):
        for pair in _opposite_face_pairs(d, i):
            by_pair.setdefault(pair, []).append(i)

    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    witnesses = {}
    for pair, members in by_pair.items():
        for a, b in combinations(sorted(set(members)), 2):
            witnesses.setdefault((a, b), tuple(sorted(pair)))
            parent[find(b)] = find(a)

    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    classes = tuple(sorted(tuple(g) for g in groups.values()))
    closure_used = any(
        (a, b) not in witnesses for cls in classes for a, b in combinations(cls, 2)
    )
    return TwistPartition(classes, witnesses, closure_used)


def twist_number(d: LinkDiagram) -> int:
    return twist_partition(d).twist_number


def twist_number_tangle(t: TangleDiagram) -> int:
    return twist_partition(t).twist_number


def is_east_west_twist(t: TangleDiagram) -> bool:
    """One twist region whose ends take in the west pair and the east pair of corners.

    The west corners must feed adjacent slots of one crossing, and likewise
    the east corners, so the row of crossings runs from west to east.
    """
    if t.free_loops or t.n_crossings == 0 or twist_number_tangle(t) != 1:
        return False
    m = t._map
    if any(closed for _, closed in t.paths):
        return False

    def ends(a: str, b: str):
        (v, s), (w, u) = m.partner(STAR, CORNERS.index(a)), m.partner(STAR, CORNERS.index(b))
        return v == w and v != STAR and (s - u) % 4 in (1, 3)

    return ends("NW", "SW") and ends("NE", "SE")
