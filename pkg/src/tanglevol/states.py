"""All-A / all-B states, their state graphs, adequacy and edge-loss bookkeeping.

Smoothing convention: at a crossing ``(a, b, c, d)`` (counterclockwise from
the incoming under-strand) the A-smoothing joins slots 0-1 and 2-3, the
B-smoothing joins 0-3 and 1-2. Both pairings are unchanged when a crossing
is listed from its other under-slot, so strand orientation never matters.
At a positive crossing the A-smoothing is the oriented one, so the all-A
state of a positive diagram is its Seifert state.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Sequence

from .diagram import (
    CORNERS,
    DiagramError,
    LinkDiagram,
    TangleDiagram,
    is_alternating,
)
from .twist import twist_partition


class Choice(str, Enum):
    A = "A"
    B = "B"


SMOOTHING_PAIRS = {
    Choice.A: ((0, 1), (2, 3)),
    Choice.B: ((0, 3), (1, 2)),
}


def _choice(choice) -> Choice:
    try:
        return Choice(choice.value if isinstance(choice, Choice) else str(choice).upper())
    except ValueError:
        raise DiagramError(f"state choice must be A or B, not {choice!r}") from None


@dataclass(frozen=True)
class StateResolution:
    """Circles of a resolved diagram.

    ``circle_of`` maps every edge label to its circle; crossingless free
    loops are extra circles numbered after the traced ones. For tangles the
    two circles containing corner labels are arcs, listed in ``exterior``.
    """

    n_circles: int
    circle_of: dict[int, int]
    exterior: tuple[int, ...] = ()


def resolve_state(d: LinkDiagram | TangleDiagram, choice="A") -> StateResolution:
    pairs = SMOOTHING_PAIRS[_choice(choice)]
    parent = {label: label for label in d.edges()}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in d.crossings:
        for i, j in pairs:
            ri, rj = find(c[i]), find(c[j])
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    roots: dict[int, int] = {}
    circle_of = {}
    for label in sorted(parent):
        circle_of[label] = roots.setdefault(find(label), len(roots))
    exterior: tuple[int, ...] = ()
    if isinstance(d, TangleDiagram):
        exterior = tuple(sorted({circle_of[label] for label in d.corners}))
    return StateResolution(len(roots) + d.free_loops, circle_of, exterior)


@dataclass(frozen=True)
class StateGraph:
    """Vertices are state circles, one edge per crossing (``edges[i]`` for crossing i)."""

    choice: Choice
    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    exterior: tuple[int, ...] = ()

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def has_loop(self) -> bool:
        return any(u == v for u, v in self.edges)

    def parallel_classes(self) -> dict[tuple[int, int], list[int]]:
        """Crossing indices grouped by the unordered vertex pair they join."""
        out: dict[tuple[int, int], list[int]] = {}
        for i, (u, v) in enumerate(self.edges):
            out.setdefault((min(u, v), max(u, v)), []).append(i)
        return out

    def neighbours(self, v: int) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for i, (a, b) in enumerate(self.edges):
            if a == v and b != v:
                out.setdefault(b, []).append(i)
            elif b == v and a != v:
                out.setdefault(a, []).append(i)
        return out


def state_graph(d: LinkDiagram | TangleDiagram, choice="A") -> StateGraph:
    ch = _choice(choice)
    res = resolve_state(d, ch)
    # one arc holds slot 0, the other holds the first slot of the other pair
    other = SMOOTHING_PAIRS[ch][1][0]
    edges = tuple((res.circle_of[c[0]], res.circle_of[c[other]]) for c in d.crossings)
    return StateGraph(ch, res.n_circles, edges, res.exterior)


def reduced_edge_count(g: StateGraph) -> int:
    """Edges left after collapsing every family of parallel edges to one."""
    return len(g.parallel_classes())


@dataclass(frozen=True)
class StateSummary:
    c: int
    v_A: int
    e_A: int
    e_prime_A: int
    v_B: int
    e_B: int
    e_prime_B: int
    adequate_A: bool
    adequate_B: bool

    @property
    def adequate(self) -> bool:
        return self.adequate_A and self.adequate_B

    @property
    def reduction_loss(self) -> int:
        return self.e_A + self.e_B - self.e_prime_A - self.e_prime_B

    def as_dict(self) -> dict:
        return {
            "c": self.c,
            "v_A": self.v_A,
            "e_A": self.e_A,
            "e_prime_A": self.e_prime_A,
            "v_B": self.v_B,
            "e_B": self.e_B,
            "e_prime_B": self.e_prime_B,
            "adequate_A": self.adequate_A,
            "adequate_B": self.adequate_B,
        }


def state_summary(d: LinkDiagram) -> StateSummary:
    ga, gb = state_graph(d, Choice.A), state_graph(d, Choice.B)
    return StateSummary(
        c=d.n_crossings,
        v_A=ga.n_vertices,
        e_A=ga.n_edges,
        e_prime_A=reduced_edge_count(ga),
        v_B=gb.n_vertices,
        e_B=gb.n_edges,
        e_prime_B=reduced_edge_count(gb),
        adequate_A=not ga.has_loop(),
        adequate_B=not gb.has_loop(),
    )


def is_adequate(d: LinkDiagram) -> bool:
    """Neither state graph has an edge from a circle to itself."""
    return state_summary(d).adequate


class StoimenowValue(NamedTuple):
    value: int
    adequate: bool


class InadequateDiagramWarning(UserWarning):
    pass


def stoimenow_quantity(d: LinkDiagram) -> StoimenowValue:
    """``e'_A + e'_B - v_A - v_B + 2``; meaningful for adequate diagrams.

    An inadequate diagram still gets a value, with ``adequate=False`` and
    a warning, because the identity with the Jones coefficients fails there.
    """
    if d.n_crossings == 0:
        raise DiagramError("the Stoimenow quantity needs at least one crossing")
    s = state_summary(d)
    if not s.adequate:
        warnings.warn("diagram is not adequate", InadequateDiagramWarning, stacklevel=2)
    value = s.e_prime_A + s.e_prime_B - s.v_A - s.v_B + 2
    return StoimenowValue(value, s.adequate)


# ---------------------------------------------------------------------------
# tangles: bridges and losses


@dataclass(frozen=True)
class Bridge:
    """Interior circle ``vertex`` joined to both exterior circles.

    ``edges_first``/``edges_second`` list the crossings joining it to
    ``exterior[0]`` and ``exterior[1]``; ``kind`` is ``"I"`` or ``"II"``.
    """

    choice: Choice
    vertex: int
    edges_first: tuple[int, ...]
    edges_second: tuple[int, ...]
    kind: str


def bridges(t: TangleDiagram, choice="A") -> list[Bridge]:
    """Bridges of the tangle's state graph, tagged by twist-region type.

    Type II means some pair of bridge edges comes from one twist region.
    The tangle must be alternating; strong alternation is the setting where
    the counts bound the external loss, but it is not required here.
    """
    if not is_alternating(t):
        raise DiagramError("bridges are defined for alternating tangles")
    g = state_graph(t, choice)
    if len(g.exterior) != 2:
        return []
    x1, x2 = g.exterior
    region = twist_partition(t).class_of()
    out = []
    for v in range(g.n_vertices):
        if v in g.exterior:
            continue
        nb = g.neighbours(v)
        if x1 in nb and x2 in nb:
            e1, e2 = tuple(nb[x1]), tuple(nb[x2])
            same = any(region[a] == region[b] for a in e1 for b in e2)
            out.append(Bridge(g.choice, v, e1, e2, "II" if same else "I"))
    return out


def _corner_pairing(t: TangleDiagram, choice) -> dict[int, int]:
    """Which corner each corner is joined to by the exterior arcs of a state."""
    res = resolve_state(t, choice)
    by_circle: dict[int, list[int]] = {}
    for k, label in enumerate(t.corners):
        by_circle.setdefault(res.circle_of[label], []).append(k)
    pairing = {}
    for ks in by_circle.values():
        if len(ks) != 2:
            raise DiagramError("state arcs must join the corners in pairs")
        a, b = ks
        pairing[a], pairing[b] = b, a
    return pairing


def _exterior_merge(tangles: Sequence[TangleDiagram], choice) -> list[bool]:
    """For each summand, whether its two exterior arcs lie on one circle of the sum."""
    n = len(tangles)
    parent = {(i, k): (i, k) for i in range(n) for k in range(4)}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    ne, nw, se, sw = (CORNERS.index(x) for x in ("NE", "NW", "SE", "SW"))
    for i, t in enumerate(tangles):
        for a, b in _corner_pairing(t, choice).items():
            union((i, a), (i, b))
        j = (i + 1) % n
        union((i, ne), (j, nw))
        union((i, se), (j, sw))
    out = []
    for i, t in enumerate(tangles):
        pairing = _corner_pairing(t, choice)
        first = 0
        second = next(k for k in range(4) if k not in (first, pairing[first]))
        out.append(find((i, first)) == find((i, second)))
    return out


@dataclass(frozen=True)
class LossReport:
    """Edge losses of a Conway sum split by origin.

    ``ell_in`` counts parallel edges whose crossings share a summand and a
    twist region; ``ell_ext`` counts the rest (losses created by gluing).
    """

    ell_in: int
    ell_ext: int
    total_loss: int
    c: int
    tw: int
    bridges: tuple[tuple[Bridge, ...], ...] = field(default=())
    inadmissible: tuple[tuple[bool, bool], ...] = field(default=())

    def as_dict(self) -> dict:
        return {
            "ell_in": self.ell_in,
            "ell_ext": self.ell_ext,
            "total_loss": self.total_loss,
            "c": self.c,
            "tw": self.tw,
            "bridges": [
                {
                    "A": [b.kind for b in br if b.choice is Choice.A],
                    "B": [b.kind for b in br if b.choice is Choice.B],
                }
                for br in self.bridges
            ],
            "inadmissible": [list(x) for x in self.inadmissible],
        }


def losses(d: LinkDiagram, tangles: Sequence[TangleDiagram] | None = None) -> LossReport:
    """Split ``e_A + e_B - e'_A - e'_B`` of a Conway sum into ``ell_in`` and ``ell_ext``.

    ``d`` must carry the per-crossing summand record set by ``conway_sum``.
    Passing the summands adds their bridges and, per summand and state,
    whether the exterior vertices merge in the sum (inadmissible bridges).
    """
    if d.tangle_of is None:
        raise DiagramError("diagram has no tangle decomposition; build it with conway_sum")
    region = twist_partition(d).class_of()
    ell_in = ell_ext = 0
    for choice in Choice:
        g = state_graph(d, choice)
        for members in g.parallel_classes().values():
            keys = {(d.tangle_of[i], region[i]) for i in members}
            ell_in += len(members) - len(keys)
            ell_ext += len(keys) - 1
    tw = len(set(region.values()))
    total = ell_in + ell_ext
    br: tuple = ()
    inadm: tuple = ()
    if tangles is not None:
        if sum(t.n_crossings for t in tangles) != d.n_crossings:
            raise DiagramError("summands do not match the diagram")
        br = tuple(tuple(bridges(t, Choice.A) + bridges(t, Choice.B)) for t in tangles)
        merged = {ch: _exterior_merge(tangles, ch) for ch in Choice}
        inadm = tuple((merged[Choice.A][i], merged[Choice.B][i]) for i in range(len(tangles)))
    return LossReport(ell_in, ell_ext, total, d.n_crossings, tw, br, inadm)
