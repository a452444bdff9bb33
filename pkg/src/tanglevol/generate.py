"""Seeded random instances: rational links, strongly alternating tangles, Conway sums.

Every generator takes a ``numpy.random.Generator``; :func:`make_rng` builds
one from an integer seed with PCG64, so results do not depend on the
platform or on global RNG state. Rejection loops run under an explicit
budget and raise :class:`RejectionBudgetExceeded` (carrying the acceptance
statistics) when it runs out.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .diagram import (
    DiagramError,
    LinkDiagram,
    TangleDiagram,
    TangleSign,
    braid_closure,
    component_count,
    conway_sum,
    denominator_closure,
    excise_crossing,
    is_alternating,
    is_connected,
    is_prime,
    is_strongly_alternating,
    numerator_closure,
    rational_tangle,
    tangle_sign,
    vertical_twist,
)

DEFAULT_BUDGET = 2000


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


@dataclass
class AcceptanceStats:
    attempts: int = 0
    accepted: int = 0
    rejected: dict = field(default_factory=dict)

    def reject(self, reason: str) -> None:
        self.rejected[reason] = self.rejected.get(reason, 0) + 1

    def as_dict(self) -> dict:
        return {
            "attempts": self.attempts,
            "accepted": self.accepted,
            "rejected": dict(sorted(self.rejected.items())),
        }


class RejectionBudgetExceeded(RuntimeError):
    def __init__(self, what: str, stats: AcceptanceStats):
        super().__init__(f"no {what} found within {stats.attempts} attempts: {stats.as_dict()}")
        self.stats = stats


def _sample(
    what: str,
    draw: Callable[[], object],
    budget: int,
    stats: AcceptanceStats | None,
):
    stats = stats if stats is not None else AcceptanceStats()
    for _ in range(budget):
        stats.attempts += 1
        try:
            out = draw()
        except DiagramError:
            stats.reject("invalid")
            continue
        if isinstance(out, str):
            stats.reject(out)
            continue
        stats.accepted += 1
        return out
    raise RejectionBudgetExceeded(what, stats)


def _composition(rng: np.random.Generator, total: int, max_parts: int) -> list[int]:
    parts = int(rng.integers(1, min(total, max_parts) + 1))
    if parts == 1:
        return [total]
    cuts = np.sort(rng.choice(np.arange(1, total), size=parts - 1, replace=False))
    edges = [0, *cuts.tolist(), total]
    return [b - a for a, b in zip(edges, edges[1:])]


def random_rational_tangle(
    rng: np.random.Generator, crossings: int, sign: int = 1, max_regions: int = 6
) -> TangleDiagram:
    """Alternating rational tangle from a random same-sign continued fraction."""
    if crossings < 1:
        raise ValueError("a rational tangle needs at least one crossing")
    coeffs = _composition(rng, crossings, max_regions)
    return rational_tangle([sign * a for a in coeffs])


def alternating_rational(
    rng: np.random.Generator,
    crossings: int,
    budget: int = DEFAULT_BUDGET,
    stats: AcceptanceStats | None = None,
) -> LinkDiagram:
    """Prime alternating closure of a random rational tangle with the given crossing count."""
    if crossings < 1:
        raise ValueError("crossing count must be positive")

    def draw():
        sign = 1 if rng.random() < 0.5 else -1
        t = random_rational_tangle(rng, crossings, sign)
        d = numerator_closure(t) if rng.random() < 0.5 else denominator_closure(t)
        if d.free_loops or not is_connected(d):
            return "split"
        if not is_prime(d):
            return "not prime"
        return d

    return _sample("prime alternating rational diagram", draw, budget, stats)


def _alternating_braid_word(rng: np.random.Generator, strands: int, length: int) -> list[int]:
    # odd generators positive, even ones negative: the closure alternates
    gens = rng.integers(1, strands, size=length)
    return [int(g) if g % 2 else -int(g) for g in gens]


def strongly_alternating_tangle(
    rng: np.random.Generator,
    sign: int = 1,
    max_crossings: int = 9,
    budget: int = DEFAULT_BUDGET,
    stats: AcceptanceStats | None = None,
    arcs_only: bool = False,
) -> TangleDiagram:
    """Strongly alternating tangle with at most ``max_crossings`` crossings.

    A crossing is cut out of the closure of a random alternating braid; the
    corner rotation is chosen so the tangle has the requested sign. Results
    are filtered through :func:`is_strongly_alternating`. With ``arcs_only``
    the tangle may not contain closed components.
    """
    if max_crossings < 4:
        raise ValueError("strongly alternating tangles need at least 4 crossings")
    want = TangleSign.POSITIVE if sign > 0 else TangleSign.NEGATIVE

    def draw():
        strands = int(rng.integers(3, 5))
        length = int(rng.integers(5, max_crossings + 2))
        d = braid_closure(_alternating_braid_word(rng, strands, length), strands)
        if d.free_loops or not is_connected(d):
            return "split"
        # cuts of a composite closure are never strongly alternating
        if not is_prime(d):
            return "composite closure"
        index = int(rng.integers(d.n_crossings))
        t = excise_crossing(d, index)
        if t.n_crossings > max_crossings:
            return "too large"
        if arcs_only and any(closed for _, closed in t.paths):
            return "closed component"
        if tangle_sign(t) is not want:
            t = excise_crossing(d, index, rotation=1)
        if not is_strongly_alternating(t):
            return "not strongly alternating"
        return t

    return _sample("strongly alternating tangle", draw, budget, stats)


@dataclass(frozen=True)
class ConwaySumInstance:
    tangles: tuple[TangleDiagram, ...]
    diagram: LinkDiagram
    kind: str

    @property
    def is_knot(self) -> bool:
        return component_count(self.diagram) == 1


def signed_pair_sum(
    rng: np.random.Generator,
    max_crossings: int = 9,
    knot: bool = True,
    budget: int = DEFAULT_BUDGET,
    stats: AcceptanceStats | None = None,
) -> ConwaySumInstance:
    """T+ + T- with one strongly alternating tangle of each sign, optionally a knot."""

    def draw():
        tp = strongly_alternating_tangle(rng, 1, max_crossings, budget, arcs_only=knot)
        tm = strongly_alternating_tangle(rng, -1, max_crossings, budget, arcs_only=knot)
        pieces = (tp, tm) if rng.random() < 0.5 else (tm, tp)
        d = conway_sum(pieces)
        if knot and component_count(d) != 1:
            return "not a knot"
        return ConwaySumInstance(pieces, d, "signed-pair")

    return _sample("two-tangle knot sum", draw, budget, stats)


def rational_conway_sum(
    rng: np.random.Generator,
    n: int,
    crossings_per_tangle: tuple[int, int] = (1, 3),
    signs: Sequence[int] | None = None,
) -> ConwaySumInstance:
    """Conway sum of ``n`` random alternating rational tangles.

    ``signs`` fixes each tangle's sign; by default all are positive, which
    makes the sum alternating.
    """
    if n < 1:
        raise ValueError("need at least one tangle")
    lo, hi = crossings_per_tangle
    signs = list(signs) if signs is not None else [1] * n
    if len(signs) != n:
        raise ValueError("one sign per tangle")
    tangles = tuple(
        random_rational_tangle(rng, int(rng.integers(lo, hi + 1)), s) for s in signs
    )
    return ConwaySumInstance(tangles, conway_sum(tangles), "rational")


def pretzel_tangles(columns: Sequence[int]) -> tuple[TangleDiagram, ...]:
    """Vertical twist columns; their Conway sum is the pretzel link P(columns)."""
    return tuple(vertical_twist(a) for a in columns)


def pretzel(columns: Sequence[int]) -> ConwaySumInstance:
    tangles = pretzel_tangles(columns)
    return ConwaySumInstance(tangles, conway_sum(tangles), "pretzel")


def is_alternating_sum(inst: ConwaySumInstance) -> bool:
    return is_alternating(inst.diagram)
