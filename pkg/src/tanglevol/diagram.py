"""Link and tangle diagrams as combinatorial maps.

A crossing is a 4-tuple of edge labels listed counterclockwise, starting
from the incoming under-strand (standard PD convention): the under-strand
runs slot 0 -> slot 2, the over-strand joins slots 1 and 3.

Tangles carry four corner labels NW, NE, SE, SW. Internally the square's
boundary is modelled as one extra 4-valent "star" vertex whose
counterclockwise rotation is NW, NE, SE, SW (the point at infinity sees the
square's clockwise order as counterclockwise). With the star in place every
edge label occurs exactly twice and faces are traced uniformly.

Every constructor returns a normalized diagram: components are oriented
(slot 0 is the incoming under-strand) and edges are relabelled 1..E
consecutively along each component, tangle arcs first in corner order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping, Sequence

CORNERS = ("NW", "NE", "SE", "SW")
STAR = -1

Crossing = tuple[int, int, int, int]


class DiagramError(ValueError):
    """Invalid diagram data or an operation outside its domain."""


class PDParseError(DiagramError):
    pass


class TangleSign(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NON_ALTERNATING = "non-alternating"


# ---------------------------------------------------------------------------
# combinatorial map machinery


class _Map:
    """Rotation system over crossings (and optionally the tangle star)."""

    def __init__(self, crossings: Sequence[Crossing], corners: Sequence[int] | None = None):
        self.crossings = crossings
        self.corners = corners
        self.ends: dict[int, list[tuple[int, int]]] = {}
        for i, c in enumerate(crossings):
            for s, label in enumerate(c):
                self.ends.setdefault(label, []).append((i, s))
        if corners is not None:
            for k, label in enumerate(corners):
                self.ends.setdefault(label, []).append((STAR, k))
        for label, e in self.ends.items():
            if len(e) != 2:
                raise DiagramError(f"edge label {label} occurs {len(e)} times (expected 2)")

    def partner(self, v: int, s: int) -> tuple[int, int]:
        label = self.label_at(v, s)
        a, b = self.ends[label]
        return b if a == (v, s) else a

    def label_at(self, v: int, s: int) -> int:
        return self.corners[s] if v == STAR else self.crossings[v][s]

    def vertices(self) -> list[int]:
        vs = list(range(len(self.crossings)))
        if self.corners is not None:
            vs.append(STAR)
        return vs

    @cached_property
    def faces(self) -> list[list[tuple[int, int]]]:
        # corner (v, k) is the sector between slot k and slot k+1 (ccw);
        # the face continues at the far end of the edge in slot k+1.
        seen: set[tuple[int, int]] = set()
        faces = []
        for v in self.vertices():
            for k in range(4):
                if (v, k) in seen:
                    continue
                face = []
                cur = (v, k)
                while cur not in seen:
                    seen.add(cur)
                    face.append(cur)
                    cur = self.partner(cur[0], (cur[1] + 1) % 4)
                faces.append(face)
        return faces

    @cached_property
    def corner_face(self) -> dict[tuple[int, int], int]:
        return {corner: f for f, face in enumerate(self.faces) for corner in face}

    def edge_faces(self, label: int) -> tuple[int, int]:
        v, s = self.ends[label][0]
        return self.corner_face[(v, s)], self.corner_face[(v, (s - 1) % 4)]

    def components(self, skip: Iterable[int] = ()) -> list[set[int]]:
        """Connected components of the vertex graph, ignoring edges in ``skip``."""
        skip = set(skip)
        adj: dict[int, set[int]] = {v: set() for v in self.vertices()}
        for label, ((v, _), (w, _)) in self.ends.items():
            if label in skip:
                continue
            adj[v].add(w)
            adj[w].add(v)
        comps, seen = [], set()
        for v in adj:
            if v in seen:
                continue
            stack, comp = [v], set()
            while stack:
                x = stack.pop()
                if x in comp:
                    continue
                comp.add(x)
                stack.extend(adj[x] - comp)
            seen |= comp
            comps.append(comp)
        return comps

    def check_spherical(self) -> None:
        face_vertex = [self.faces[f][0][0] for f in range(len(self.faces))]
        for comp in self.components():
            v = len(comp)
            e = sum(1 for (a, _), _ in self.ends.values() if a in comp)
            f = sum(1 for x in face_vertex if x in comp)
            if v - e + f != 2:
                labels = sorted(l for l, ((a, _), _) in self.ends.items() if a in comp)
                raise DiagramError(
                    f"rotation system is not spherical (V-E+F={v - e + f}) on edges {labels[:8]}"
                )


def _traverse(crossings: Sequence[Crossing], corners: Sequence[int] | None = None):
    """Orient every strand.

    Returns ``(paths, under_in, over_in)`` where each path is a list of old
    edge labels in travel order plus a flag telling whether it is closed,
    and ``under_in[i]``/``over_in[i]`` are the slots where the two strands
    enter crossing ``i``. Tangle arcs start at the corners in NW, NE, SE, SW
    order; closed components keep the stored under-strand direction of their
    first crossing, and components that only pass over use the label
    successor rule of PD codes.
    """
    m = _Map(crossings, corners)
    n = len(crossings)
    under_in: list[int | None] = [None] * n
    over_in: list[int | None] = [None] * n
    paths: list[tuple[list[int], bool]] = []

    def mark(i: int, s: int) -> bool:
        slot_list = under_in if s % 2 == 0 else over_in
        if slot_list[i] is not None:
            return False
        slot_list[i] = s
        return True

    def walk_from(v: int, s: int):
        # enter vertex v at slot s; returns (labels, closed, end_corner)
        labels = [m.label_at(v, s)]
        start = (v, s)
        while True:
            if v == STAR:
                return labels, False, s
            mark(v, s)
            out = (s + 2) % 4
            labels.append(crossings[v][out])
            v, s = m.partner(v, out)
            if (v, s) == start:
                labels.pop()
                return labels, True, None

    if corners is not None:
        done: set[int] = set()
        for k in range(4):
            if k in done:
                continue
            v, s = m.partner(STAR, k)
            labels, _, end = walk_from(v, s)
            done.update((k, end))
            paths.append((labels, False))
    for i in range(n):
        if under_in[i] is None:
            paths.append(walk_from(i, 0)[:2])
    for i in range(n):
        if over_in[i] is None:
            b, d = crossings[i][1], crossings[i][3]
            s = 3 if (b - d == 1 or d - b > 1) else 1
            paths.append(walk_from(i, s)[:2])
    return paths, under_in, over_in


def _dedupe(labels: list[int]) -> list[int]:
    out, seen = [], set()
    for label in labels:
        if label not in seen:
            seen.add(label)
            out.append(label)
    return out


def _normalize(crossings: Sequence[Crossing], corners: Sequence[int] | None = None):
    """Orient and relabel; returns (crossings, corners, path label lists)."""
    crossings = [tuple(c) for c in crossings]
    paths, under_in, _ = _traverse(crossings, corners)
    relabel: dict[int, int] = {}
    new_paths = []
    for labels, closed in paths:
        new = []
        for label in _dedupe(labels):
            relabel[label] = len(relabel) + 1
            new.append(relabel[label])
        new_paths.append((tuple(new), closed))
    new_crossings = tuple(
        tuple(relabel[c[(under_in[i] + k) % 4]] for k in range(4)) for i, c in enumerate(crossings)
    )
    new_corners = None if corners is None else tuple(relabel[l] for l in corners)
    return new_crossings, new_corners, tuple(new_paths)


# ---------------------------------------------------------------------------
# diagram types


@dataclass(frozen=True, eq=False)
class _Base:
    crossings: tuple[Crossing, ...] = ()
    free_loops: int = 0

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def _corners(self) -> tuple[int, ...] | None:
        return None

    @cached_property
    def _map(self) -> _Map:
        return _Map(self.crossings, self._corners())

    @cached_property
    def _orientation(self):
        return _traverse(self.crossings, self._corners())

    @cached_property
    def paths(self) -> tuple[tuple[tuple[int, ...], bool], ...]:
        out = []
        for labels, closed in self._orientation[0]:
            out.append((tuple(_dedupe(labels)), closed))
        return tuple(out)

    def crossing_signs(self) -> tuple[int, ...]:
        """+1 where the over-strand runs slot 3 -> slot 1, else -1."""
        over_in = self._orientation[2]
        return tuple(1 if s == 3 else -1 for s in over_in)

    def writhe(self) -> int:
        return sum(self.crossing_signs())

    def component_of_edge(self) -> dict[int, int]:
        return {label: k for k, (labels, _) in enumerate(self.paths) for label in labels}

    def faces(self) -> list[list[tuple[int, int]]]:
        return self._map.faces

    def corner_faces(self) -> dict[tuple[int, int], int]:
        return self._map.corner_face

    def edges(self) -> list[int]:
        return sorted(self._map.ends)

    def edge_ends(self, label: int) -> list[tuple[int, int]]:
        return list(self._map.ends[label])


@dataclass(frozen=True, eq=False)
class LinkDiagram(_Base):
    """Closed link diagram. ``free_loops`` counts crossingless circles.

    ``belt`` holds the crossing indices (top-west, bottom-west, bottom-east,
    top-east) of a belt component added by :func:`add_belt`; ``tangle_of``
    maps each crossing to the summand it came from in a Conway sum.
    """

    belt: tuple[int, int, int, int] | None = field(default=None)
    tangle_of: tuple[int, ...] | None = field(default=None)

    def __eq__(self, other):
        if not isinstance(other, LinkDiagram):
            return NotImplemented
        return self.crossings == other.crossings and self.free_loops == other.free_loops

    def __hash__(self):
        return hash((self.crossings, self.free_loops))

    def __str__(self):
        return emit_pd(self)


@dataclass(frozen=True, eq=False)
class TangleDiagram(_Base):
    """Tangle diagram; ``corners`` are the NW, NE, SE, SW edge labels."""

    corners: tuple[int, int, int, int] = (1, 1, 2, 2)

    def _corners(self):
        return self.corners

    def corner(self, name: str) -> int:
        return self.corners[CORNERS.index(name)]

    def __eq__(self, other):
        if not isinstance(other, TangleDiagram):
            return NotImplemented
        return (self.crossings, self.corners, self.free_loops) == (
            other.crossings,
            other.corners,
            other.free_loops,
        )

    def __hash__(self):
        return hash((self.crossings, self.corners, self.free_loops))

    def __str__(self):
        return emit_pd(self)


def make_link(
    crossings: Iterable[Sequence[int]],
    free_loops: int = 0,
    *,
    belt=None,
    tangle_of=None,
) -> LinkDiagram:
    """Validate, orient and relabel raw PD tuples into a :class:`LinkDiagram`."""
    crossings = [_check_tuple(c) for c in crossings]
    if free_loops < 0:
        raise DiagramError("free_loops must be nonnegative")
    new, _, _ = _normalize(crossings)
    _Map(new).check_spherical()
    return LinkDiagram(new, free_loops, belt=belt, tangle_of=tangle_of)


def make_tangle(
    crossings: Iterable[Sequence[int]],
    corners: Sequence[int] | Mapping[str, int],
    free_loops: int = 0,
) -> TangleDiagram:
    crossings = [_check_tuple(c) for c in crossings]
    if isinstance(corners, Mapping):
        missing = [k for k in CORNERS if k not in corners]
        if missing:
            raise DiagramError(f"missing corner declarations: {', '.join(missing)}")
        corners = [corners[k] for k in CORNERS]
    if len(corners) != 4:
        raise DiagramError("a tangle needs exactly four corners")
    new, new_corners, _ = _normalize(crossings, list(corners))
    _Map(new, new_corners).check_spherical()
    return TangleDiagram(new, free_loops, corners=new_corners)


def _check_tuple(c: Sequence[int]) -> Crossing:
    if len(c) != 4:
        raise DiagramError(f"crossing {tuple(c)} must have 4 entries")
    for x in c:
        if not isinstance(x, int) or x <= 0:
            raise DiagramError(f"edge label {x!r} in crossing {tuple(c)} is not a positive integer")
    return tuple(c)


# ---------------------------------------------------------------------------
# PD text


_TOKEN = re.compile(r"X\s*[\(\[]([^\)\]]*)[\)\]]|(NW|NE|SE|SW)\s*=\s*(-?\w+)|O\b|(\S+)")


def _parse_tokens(text: str):
    crossings, corners, loops = [], {}, 0
    text = text.strip()
    if text.startswith("PD[") and text.endswith("]"):
        text = text[3:-1]
    for m in _TOKEN.finditer(text.replace(",", " , ")):
        body, cname, cval, junk = m.group(1), m.group(2), m.group(3), m.group(4)
        if body is not None:
            parts = [p.strip() for p in body.split(",")]
            if len(parts) != 4 or not all(p.isdigit() and int(p) > 0 for p in parts):
                raise PDParseError(f"malformed crossing tuple X({body.strip()})")
            crossings.append(tuple(int(p) for p in parts))
        elif cname is not None:
            if cname in corners:
                raise PDParseError(f"corner {cname} declared twice")
            if not cval.isdigit() or int(cval) <= 0:
                raise PDParseError(f"corner {cname} has invalid label {cval!r}")
            corners[cname] = int(cval)
        elif m.group(0) == "O":
            loops += 1
        elif junk not in (",",):
            raise PDParseError(f"unexpected token {junk!r}")
    return crossings, corners, loops


def _check_labels(crossings, corner_labels=()):
    counts: dict[int, int] = {}
    for c in crossings:
        for label in c:
            counts[label] = counts.get(label, 0) + 1
    for label in corner_labels:
        counts[label] = counts.get(label, 0) + 1
    for label, k in sorted(counts.items()):
        if k == 1:
            raise PDParseError(f"dangling edge label {label}")
        if k > 2:
            raise PDParseError(f"edge label {label} used {k} times")


def parse_pd(text: str) -> LinkDiagram:
    """Parse ``X(a,b,c,d)`` tokens (``O`` adds a crossingless circle)."""
    crossings, corners, loops = _parse_tokens(text)
    if corners:
        raise PDParseError("corner declarations found; use parse_tangle")
    _check_labels(crossings)
    try:
        return make_link(crossings, loops)
    except PDParseError:
        raise
    except DiagramError as exc:
        raise PDParseError(str(exc)) from exc


def parse_tangle(text: str) -> TangleDiagram:
    """Parse PD tokens plus the ``NW=a NE=b SE=c SW=d`` trailer."""
    crossings, corners, loops = _parse_tokens(text)
    missing = [k for k in CORNERS if k not in corners]
    if missing:
        raise PDParseError(f"missing corner declarations: {', '.join(missing)}")
    _check_labels(crossings, [corners[k] for k in CORNERS])
    try:
        return make_tangle(crossings, corners, loops)
    except PDParseError:
        raise
    except DiagramError as exc:
        raise PDParseError(str(exc)) from exc


def emit_pd(d: LinkDiagram | TangleDiagram) -> str:
    tokens = ["X({},{},{},{})".format(*c) for c in d.crossings]
    tokens += ["O"] * d.free_loops
    if isinstance(d, TangleDiagram):
        tokens += [f"{k}={v}" for k, v in zip(CORNERS, d.corners)]
    return " ".join(tokens)


# ---------------------------------------------------------------------------
# basic queries


def component_count(d: LinkDiagram | TangleDiagram) -> int:
    return len(d.paths) + d.free_loops


def is_connected(d: LinkDiagram) -> bool:
    if d.free_loops:
        return d.n_crossings == 0 and d.free_loops == 1
    return len(d._map.components()) <= 1


def is_alternating(d: LinkDiagram | TangleDiagram) -> bool:
    """Every edge between two crossings runs from an over-slot to an under-slot."""
    for (v, s), (w, t) in d._map.ends.values():
        if v == STAR or w == STAR:
            continue
        if s % 2 == t % 2:
            return False
    return True


def tangle_sign(t: TangleDiagram) -> TangleSign:
    if not is_alternating(t):
        return TangleSign.NON_ALTERNATING
    v, s = t._map.partner(STAR, CORNERS.index("NE"))
    if v == STAR:
        raise DiagramError("the NE strand meets no crossing; the tangle has no sign")
    return TangleSign.POSITIVE if s % 2 == 1 else TangleSign.NEGATIVE


def mirror(d):
    """Swap over and under at every crossing, keeping strand orientations."""
    over_in = d._orientation[2]
    new = []
    for c, s in zip(d.crossings, over_in):
        new.append(tuple(c[(s + k) % 4] for k in range(4)))
    if isinstance(d, TangleDiagram):
        return make_tangle(new, d.corners, d.free_loops)
    # the belt markers rely on the fixed over/under pattern, so they are dropped
    return make_link(new, d.free_loops, tangle_of=d.tangle_of)


def _has_nugatory(m: _Map, n: int) -> bool:
    cf = m.corner_face
    return any(cf[(i, k)] == cf[(i, k + 2)] for i in range(n) for k in range(2))


def _two_edge_cuts(m: _Map):
    """Pairs of distinct edges cobounding two distinct faces whose removal disconnects."""
    by_faces: dict[frozenset, list[int]] = {}
    for label in m.ends:
        f1, f2 = m.edge_faces(label)
        if f1 != f2:
            by_faces.setdefault(frozenset((f1, f2)), []).append(label)
    for labels in by_faces.values():
        for a in range(len(labels)):
            for b in range(a + 1, len(labels)):
                pair = (labels[a], labels[b])
                comps = m.components(skip=pair)
                if len(comps) > 1:
                    yield pair, comps


def is_prime(d: LinkDiagram) -> bool:
    """No nugatory crossing and no essential two-edge cut."""
    if d.n_crossings == 0:
        raise DiagramError("primality is undefined for crossingless diagrams")
    if not is_connected(d):
        raise DiagramError("primality is undefined for disconnected diagrams")
    m = d._map
    if _has_nugatory(m, d.n_crossings):
        return False
    for _ in _two_edge_cuts(m):
        return False
    return True


def is_prime_tangle(t: TangleDiagram) -> bool:
    """No curve inside the square meets the tangle in two edges around a crossing."""
    if t.free_loops:
        return False
    for _, comps in _two_edge_cuts(t._map):
        if any(STAR not in comp for comp in comps):
            return False
    return True


def canonical_code(d: LinkDiagram, reflections: bool = True) -> tuple:
    """Relabelling-invariant code: equal codes <=> isomorphic labelled maps."""
    m = d._map
    n = d.n_crossings
    comps = m.components() if n else []
    codes = []
    for comp in comps:
        best = None
        for start in sorted(comp):
            for s0 in range(4):
                for direction in ((1, -1) if reflections else (1,)):
                    code = _bfs_code(m, start, s0, direction)
                    if best is None or code < best:
                        best = code
        codes.append(best)
    return (tuple(sorted(codes)), d.free_loops)


def _bfs_code(m: _Map, start: int, s0: int, direction: int) -> tuple:
    rot = {start: s0}
    order = [start]
    code = []
    for v in order:
        r = rot[v]
        row = [r % 2]
        for k in range(4):
            slot = (r + k * direction) % 4
            w, t = m.partner(v, slot)
            if w not in rot:
                rot[w] = t
                order.append(w)
            row.append((order.index(w), ((t - rot[w]) * direction) % 4))
        code.append(tuple(row))
    return tuple(code)


def isomorphic(d1: LinkDiagram, d2: LinkDiagram, reflections: bool = True) -> bool:
    return canonical_code(d1, reflections) == canonical_code(d2, reflections)


# ---------------------------------------------------------------------------
# gluing: closures, sums, surgery


def _assemble(
    crossings: Sequence[Crossing],
    unions: Iterable[tuple[int, int]],
    kept: Sequence[int] | None = None,
    free_loops: int = 0,
    **link_meta,
):
    """Identify edge labels and rebuild a diagram.

    ``crossings`` may contain labels that occur only once (dangling ends);
    ``unions`` splices such ends together and ``kept`` lists the labels that
    become the four corners of a tangle. A merged label that ends up with no
    crossing occurrence and no corner is a closed crossingless circle.
    """
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in unions:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    count: dict[int, int] = {}
    for c in crossings:
        for label in c:
            r = find(label)
            count[r] = count.get(r, 0) + 1
    for label in kept or ():
        r = find(label)
        count[r] = count.get(r, 0) + 1
    for label in list(parent):
        r = find(label)
        if count.setdefault(r, 0) == 0:
            count[r] = -1  # marks a circle; counted once below
    loops = sum(1 for v in count.values() if v == -1)
    bad = [r for r, v in count.items() if v not in (2, -1)]
    if bad:
        raise DiagramError(f"gluing left edge {bad[0]} with {count[bad[0]]} ends")
    new = [tuple(find(x) for x in c) for c in crossings]
    if kept is None:
        return make_link(new, free_loops + loops, **link_meta)
    return make_tangle(new, [find(x) for x in kept], free_loops + loops)


def _offset_pieces(pieces: Sequence[TangleDiagram]):
    crossings, corners, offset = [], [], 0
    for t in pieces:
        crossings += [tuple(x + offset for x in c) for c in t.crossings]
        corners.append({k: t.corners[j] + offset for j, k in enumerate(CORNERS)})
        offset += max([*t.corners, *(x for c in t.crossings for x in c)])
    return crossings, corners


def glue(
    pieces: Sequence[TangleDiagram],
    joins: Iterable[tuple[tuple[int, str], tuple[int, str]]],
    keep: Sequence[tuple[int, str]] | None = None,
    **link_meta,
):
    """Join corners of several tangles; ``keep`` names the new NW, NE, SE, SW corners.

    Without ``keep`` every corner must be joined and a link diagram results.
    """
    crossings, corners = _offset_pieces(pieces)
    unions = [(corners[i][a], corners[j][b]) for (i, a), (j, b) in joins]
    kept = None if keep is None else [corners[i][a] for i, a in keep]
    loops = sum(t.free_loops for t in pieces)
    return _assemble(crossings, unions, kept, loops, **link_meta)


def numerator_closure(t: TangleDiagram) -> LinkDiagram:
    """Join NW to NE and SW to SE outside the square."""
    return glue([t], [((0, "NW"), (0, "NE")), ((0, "SW"), (0, "SE"))])


def denominator_closure(t: TangleDiagram) -> LinkDiagram:
    """Join NW to SW and NE to SE outside the square."""
    return glue([t], [((0, "NW"), (0, "SW")), ((0, "NE"), (0, "SE"))])


def _row_joins(n: int):
    for i in range(n - 1):
        yield (i, "NE"), (i + 1, "NW")
        yield (i, "SE"), (i + 1, "SW")


def tangle_sum(tangles: Sequence[TangleDiagram]) -> TangleDiagram:
    """Place tangles west to east, joining each NE/SE to the next NW/SW."""
    if not tangles:
        raise DiagramError("tangle_sum needs at least one tangle")
    n = len(tangles)
    keep = [(0, "NW"), (n - 1, "NE"), (n - 1, "SE"), (0, "SW")]
    return glue(tangles, _row_joins(n), keep)


def vertical_sum(top: TangleDiagram, bottom: TangleDiagram) -> TangleDiagram:
    """Stack ``top`` above ``bottom``."""
    joins = [((0, "SW"), (1, "NW")), ((0, "SE"), (1, "NE"))]
    keep = [(0, "NW"), (0, "NE"), (1, "SE"), (1, "SW")]
    return glue([top, bottom], joins, keep)


def conway_sum(tangles: Sequence[TangleDiagram]) -> LinkDiagram:
    """Numerator closure of the west-to-east sum; records each crossing's summand."""
    if not tangles:
        raise DiagramError("conway_sum needs at least one tangle")
    n = len(tangles)
    joins = [*_row_joins(n), ((n - 1, "NE"), (0, "NW")), ((n - 1, "SE"), (0, "SW"))]
    owner = tuple(i for i, t in enumerate(tangles) for _ in t.crossings)
    return glue(tangles, joins, tangle_of=owner)


def _crossing(rays: Mapping[str, int], sign: int) -> Crossing:
    # "positive" means the strand through SW and NE passes over
    if sign > 0:
        return (rays["NW"], rays["SW"], rays["SE"], rays["NE"])
    return (rays["SW"], rays["SE"], rays["NE"], rays["NW"])


def horizontal_twist(k: int) -> TangleDiagram:
    """A row of ``|k|`` crossings twisting the top and bottom strands (east–west twist).

    The sign of ``k`` picks the crossing type; ``k = 0`` is the horizontal
    trivial tangle with arcs NW–NE and SW–SE.
    """
    n, sign = abs(k), (1 if k >= 0 else -1)
    top = [j + 1 for j in range(n + 1)]
    bot = [n + 2 + j for j in range(n + 1)]
    crossings = [
        _crossing({"NW": top[i - 1], "SW": bot[i - 1], "NE": top[i], "SE": bot[i]}, sign)
        for i in range(1, n + 1)
    ]
    return make_tangle(crossings, [top[0], top[n], bot[n], bot[0]])


def vertical_twist(k: int) -> TangleDiagram:
    """A column of ``|k|`` crossings twisting the west and east strands.

    ``k = 0`` is the vertical trivial tangle with arcs NW–SW and NE–SE.
    """
    n, sign = abs(k), (1 if k >= 0 else -1)
    left = [j + 1 for j in range(n + 1)]
    right = [n + 2 + j for j in range(n + 1)]
    crossings = [
        _crossing({"NW": left[i - 1], "NE": right[i - 1], "SW": left[i], "SE": right[i]}, sign)
        for i in range(1, n + 1)
    ]
    return make_tangle(crossings, [left[0], right[0], right[n], left[n]])


def rational_tangle(coefficients: Sequence[int]) -> TangleDiagram:
    """Continued-fraction tangle: a row of ``a1`` crossings, then alternately
    a column of ``a2`` below it, a row of ``a3`` to the east, and so on.

    Coefficients of one sign give an alternating tangle of that sign.
    """
    if not coefficients:
        raise DiagramError("rational_tangle needs at least one coefficient")
    t = horizontal_twist(coefficients[0])
    for j, a in enumerate(coefficients[1:], start=1):
        if j % 2:
            t = vertical_sum(t, vertical_twist(a))
        else:
            t = tangle_sum([t, horizontal_twist(a)])
    return t


def is_strongly_alternating(t: TangleDiagram) -> bool:
    """Alternating, with prime numerator and denominator closures."""
    if not is_alternating(t) or t.free_loops or t.n_crossings == 0:
        return False
    for closure in (numerator_closure(t), denominator_closure(t)):
        if closure.free_loops or not is_connected(closure) or not is_prime(closure):
            return False
    return True


# The belt piece: two horizontal strands (top 1-2-3, bottom 4-5-6) and a
# circle 7-8-9-10 passing over them on the west and under them on the east.
_BELT_CROSSINGS = ((1, 7, 2, 10), (4, 8, 5, 7), (8, 6, 9, 5), (9, 3, 10, 2))
_BELT = TangleDiagram(_BELT_CROSSINGS, 0, corners=(1, 3, 6, 4))


def add_belt(t: TangleDiagram) -> LinkDiagram:
    """Numerator closure of ``t`` with an unknotted circle around both closing arcs.

    The four belt crossings come last, ordered top-west, bottom-west,
    bottom-east, top-east; their indices are stored in ``belt``.
    """
    joins = [
        ((0, "NE"), (1, "NW")),
        ((0, "SE"), (1, "SW")),
        ((1, "NE"), (0, "NW")),
        ((1, "SE"), (0, "SW")),
    ]
    c = t.n_crossings
    owner = tuple([0] * c + [1] * 4)
    return glue([t, _BELT], joins, belt=(c, c + 1, c + 2, c + 3), tangle_of=owner)


def twist_fill(d: LinkDiagram, n: int) -> LinkDiagram:
    """Replace the belt by ``2|n|`` crossings twisting the two strands it encircled.

    ``n = 0`` removes the belt, giving back the plain closure. Positive ``n``
    inserts positive crossings in the sense of :func:`horizontal_twist`.
    """
    if d.belt is None:
        raise DiagramError("diagram carries no belt marking; build it with add_belt")
    tw, bw, be, te = (d.crossings[i] for i in d.belt)
    try:
        (c1,) = {tw[1], tw[3]} & {bw[1], bw[3]}
        (c3,) = {te[0], te[2]} & {be[0], be[2]}
    except ValueError:
        raise DiagramError("belt crossings do not have the expected pattern") from None
    t1 = tw[(tw.index(c1) - 1) % 4]
    b1 = bw[(bw.index(c1) + 1) % 4]
    t3 = te[(te.index(c3) + 1) % 4]
    b3 = be[(be.index(c3) - 1) % 4]
    rest = [c for i, c in enumerate(d.crossings) if i not in d.belt]
    owner = None
    if d.tangle_of is not None:
        owner = tuple(o for i, o in enumerate(d.tangle_of) if i not in d.belt)
    h = horizontal_twist(2 * n)
    shift = max([t1, t3, b1, b3, *(x for c in d.crossings for x in c)])
    h_cross = [tuple(x + shift for x in c) for c in h.crossings]
    hc = {k: h.corners[j] + shift for j, k in enumerate(CORNERS)}
    unions = [(hc["NW"], t1), (hc["NE"], t3), (hc["SW"], b1), (hc["SE"], b3)]
    if owner is not None:
        owner = owner + (1,) * len(h_cross)
    return _assemble(rest + h_cross, unions, None, d.free_loops, tangle_of=owner)


def add_kink(d: LinkDiagram, label: int, sign: int = 1) -> LinkDiagram:
    """Insert a one-crossing curl (Reidemeister I) into edge ``label``.

    ``sign`` is the oriented sign of the new crossing.
    """
    if label not in d._map.ends:
        raise DiagramError(f"no edge labelled {label}")
    v, s = d._map.ends[label][0]
    top = max(x for c in d.crossings for x in c)
    out, loop = top + 1, top + 2
    crossings = [list(c) for c in d.crossings]
    crossings[v][s] = out
    kink = (label, loop, loop, out) if sign < 0 else (label, out, loop, loop)
    return make_link([tuple(c) for c in crossings] + [kink], d.free_loops)


def smooth(d: LinkDiagram, index: int, pairs: tuple[tuple[int, int], tuple[int, int]]) -> LinkDiagram:
    """Remove crossing ``index``, joining its slots in the two given pairs."""
    c = d.crossings[index]
    rest = [x for i, x in enumerate(d.crossings) if i != index]
    top = max(x for y in d.crossings for x in y)
    # give each slot its own dangling end so that loops through one crossing survive
    ends = [top + 1 + k for k in range(4)]
    fixed = [list(x) for x in rest]
    unions = []
    seen_inner: set[int] = set()
    for k, label in enumerate(c):
        if label in seen_inner:
            continue
        if c.count(label) == 2:
            # edge from this crossing to itself
            seen_inner.add(label)
            k2 = c.index(label, k + 1)
            unions.append((ends[k], ends[k2]))
            continue
        for x in fixed:
            for j, y in enumerate(x):
                if y == label:
                    x[j] = ends[k]
    unions += [(ends[a], ends[b]) for a, b in pairs]
    return _assemble([tuple(x) for x in fixed], unions, None, d.free_loops)


def braid_closure(word: Sequence[int], strands: int) -> LinkDiagram:
    """Closure of a braid word; generator ``i`` crosses strands i and i+1 (1-based)."""
    if strands < 1:
        raise DiagramError("a braid needs at least one strand")
    cur = list(range(1, strands + 1))
    nxt = strands + 1
    crossings = []
    for g in word:
        i = abs(g) - 1
        if g == 0 or i + 1 >= strands:
            raise DiagramError(f"generator {g} out of range for {strands} strands")
        p, q = cur[i], cur[i + 1]
        # rays: p bottom-left, q bottom-right, q' top-right, p' top-left
        crossings.append((q, nxt + 1, nxt, p) if g > 0 else (p, q, nxt + 1, nxt))
        cur[i], cur[i + 1] = nxt, nxt + 1
        nxt += 2
    return _assemble(crossings, list(zip(cur, range(1, strands + 1))))


def excise_crossing(d: LinkDiagram, index: int, rotation: int = 0) -> TangleDiagram:
    """The tangle left after cutting a small disk around one crossing out of ``d``.

    The four severed edges become the corners, in the crossing's rotation
    order shifted by ``rotation``. Shifting by one swaps the two closures
    (which are the two smoothings of the removed crossing).
    """
    c = d.crossings[index]
    rest = [x for i, x in enumerate(d.crossings) if i != index]
    corners = [c[(k + rotation) % 4] for k in range(4)]
    return make_tangle(rest, corners, d.free_loops)
