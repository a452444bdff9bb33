"""Kauffman bracket and Jones polynomial.

Three evaluators share the smoothing convention of :mod:`tanglevol.states`:

* :func:`bracket` sweeps the crossings once, keeping every partial state
  keyed by how the open strand ends are paired (fast, used by :func:`jones`);
* :func:`bracket_statesum` enumerates all ``2^c`` states explicitly and is
  the reference oracle;
* :func:`bracket_transfer` evaluates a Conway sum from one small pair of
  polynomials per summand.

Brackets are polynomials in ``A``; ``<unknot> = 1`` and each extra circle
contributes ``delta = -A^2 - A^-2``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .diagram import CORNERS, DiagramError, LinkDiagram, TangleDiagram, conway_sum
from .polynomial import LaurentPolynomial
from .states import SMOOTHING_PAIRS, Choice

DEFAULT_STATE_SUM_CAP = 24
CAP_ENV_VAR = "TANGLEVOL_STATE_SUM_CAP"

A_PAIRS = SMOOTHING_PAIRS[Choice.A]
B_PAIRS = SMOOTHING_PAIRS[Choice.B]


class StateSumCapError(DiagramError):
    """The explicit state sum was asked for more crossings than the cap allows."""


def state_sum_cap() -> int:
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is None:
        return DEFAULT_STATE_SUM_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise DiagramError(f"{CAP_ENV_VAR} must be an integer, got {raw!r}") from None
    if cap < 0:
        raise DiagramError(f"{CAP_ENV_VAR} must be nonnegative")
    return cap


def delta() -> LaurentPolynomial:
    return LaurentPolynomial.from_exponents({2: -1, -2: -1}, "A")


def _poly(terms: dict[int, int]) -> LaurentPolynomial:
    # raw dicts below hold plain A-exponents
    return LaurentPolynomial({2 * e: c for e, c in terms.items()}, "A")


def _mul_delta(terms: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for e, c in terms.items():
        out[e + 2] = out.get(e + 2, 0) - c
        out[e - 2] = out.get(e - 2, 0) - c
    return {e: c for e, c in out.items() if c}


def _add_into(target: dict[int, int], terms: dict[int, int], shift: int) -> None:
    for e, c in terms.items():
        k = e + shift
        v = target.get(k, 0) + c
        if v:
            target[k] = v
        else:
            target.pop(k, None)


# ---------------------------------------------------------------------------
# frontier sweep


def _join(match: dict[int, int], x: int, y: int) -> bool:
    """Join label ends x and y by a smoothing arc; True when a circle closes."""
    if x == y:
        return True
    if match.get(x) == y:
        del match[x], match[y]
        return True
    ex = match.pop(x, x)
    if ex != x:
        del match[ex]
    ey = match.pop(y, y)
    if ey != y:
        del match[ey]
    match[ex], match[ey] = ey, ex
    return False


def _sweep_order(crossings: Sequence[tuple[int, ...]], preopen: set[int]) -> list[int]:
    """Greedy crossing order keeping the set of open labels small."""
    n = len(crossings)
    remaining = set(range(n))
    open_count: dict[int, int] = {label: 1 for label in preopen}
    order = []
    while remaining:
        best = min(
            remaining,
            key=lambda i: (-sum(1 for x in crossings[i] if open_count.get(x, 0) == 1), i),
        )
        remaining.discard(best)
        order.append(best)
        for x in crossings[best]:
            open_count[x] = open_count.get(x, 0) + 1
    return order


def _sweep(crossings, preopen: Sequence[int] = ()):
    """Run the frontier sweep; returns ``{(matching, closed_any): terms}``.

    ``preopen`` lists labels whose far end is outside (tangle corners); they
    are never closed, so they stay in the final matching. The first closed
    circle of each state is not weighted, giving ``delta^(circles - 1)``.
    """
    states: dict[tuple, dict[int, int]] = {((), False): {0: 1}}
    for i in _sweep_order(crossings, set(preopen)):
        c = crossings[i]
        nxt: dict[tuple, dict[int, int]] = {}
        for (key, closed), terms in states.items():
            for pairs, shift in ((A_PAIRS, 1), (B_PAIRS, -1)):
                match = dict(key)
                loops = 0
                for a, b in pairs:
                    loops += _join(match, c[a], c[b])
                new_closed = closed or loops > 0
                weight = loops - (0 if closed else (1 if loops else 0))
                t = terms
                for _ in range(weight):
                    t = _mul_delta(t)
                k = (tuple(sorted(match.items())), new_closed)
                _add_into(nxt.setdefault(k, {}), t, shift)
        states = {k: v for k, v in nxt.items() if v}
    return states


def bracket(d: LinkDiagram) -> LaurentPolynomial:
    """Kauffman bracket by a single sweep over the crossings."""
    if d.n_crossings == 0:
        if d.free_loops == 0:
            raise DiagramError("the empty diagram has no bracket")
        return LaurentPolynomial.one("A") if d.free_loops == 1 else delta() ** (d.free_loops - 1)
    total: dict[int, int] = {}
    for (key, closed), terms in _sweep(d.crossings).items():
        if key or not closed:
            raise DiagramError("sweep ended with open strands")
        _add_into(total, terms, 0)
    out = _poly(total)
    if d.free_loops:
        out = out * delta() ** d.free_loops
    return out


# ---------------------------------------------------------------------------
# explicit state sum (oracle)


def _half_states(crossings, members: list[int], cut: set[int]):
    """Enumerate the states of one half; aggregate by boundary pairing.

    Returns ``{pairing: {(a - b, circles): count}}`` where ``pairing`` is a
    sorted tuple of cut-label pairs joined by a path inside the half.
    """
    out: dict[tuple, dict[tuple[int, int], int]] = {}
    labels = sorted({x for i in members for x in crossings[i]})
    for bits in product((0, 1), repeat=len(members)):
        parent = {x: x for x in labels}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, b in zip(members, bits):
            c = crossings[i]
            for p, q in (B_PAIRS if b else A_PAIRS):
                rp, rq = find(c[p]), find(c[q])
                if rp != rq:
                    parent[rp] = rq
        groups: dict[int, list[int]] = {}
        for x in labels:
            groups.setdefault(find(x), []).append(x)
        circles = 0
        pairing = []
        for g in groups.values():
            ends = [x for x in g if x in cut]
            if not ends:
                circles += 1
            else:
                pairing.append(tuple(ends))
        key = tuple(sorted(pairing))
        ab = len(members) - 2 * sum(bits)
        bucket = out.setdefault(key, {})
        bucket[(ab, circles)] = bucket.get((ab, circles), 0) + 1
    return out


def _count_cycles(p1: tuple, p2: tuple) -> int:
    parent: dict[int, int] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            x = parent[x]
        return x

    for a, b in (*p1, *p2):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return len({find(x) for x in parent})


def bracket_statesum(d: LinkDiagram, cap: int | None = None) -> LaurentPolynomial:
    """Sum of ``A^(a-b) delta^(|s|-1)`` over all ``2^c`` states.

    Every state is visited. To keep the work near ``2^(c/2)`` per step the
    crossings are split into two halves; each half's states are listed with
    their boundary pairing, and circles of a full state are the circles of
    the two halves plus the cycles formed by the two pairings.
    """
    cap = state_sum_cap() if cap is None else cap
    n = d.n_crossings
    if n > cap:
        raise StateSumCapError(f"{n} crossings exceed the state-sum cap of {cap}")
    if n == 0:
        return bracket(d)
    order = _sweep_order(d.crossings, set())
    left, right = sorted(order[: n // 2]), sorted(order[n // 2 :])
    lset = set(left)
    cut = set()
    for label, ends in d._map.ends.items():
        sides = {v in lset for v, _ in ends}
        if len(sides) == 2:
            cut.add(label)
    hl = _half_states(d.crossings, left, cut)
    hr = _half_states(d.crossings, right, cut)
    by_key: dict[tuple[int, int], int] = {}
    for pl, bl in hl.items():
        for pr, br in hr.items():
            joined = _count_cycles(pl, pr)
            for (abl, cl), nl in bl.items():
                for (abr, cr), nr in br.items():
                    k = (abl + abr, cl + cr + joined)
                    by_key[k] = by_key.get(k, 0) + nl * nr
    total = LaurentPolynomial({}, "A")
    dl = delta()
    powers: dict[int, LaurentPolynomial] = {}
    for (ab, circles), count in sorted(by_key.items()):
        k = circles - 1 + d.free_loops
        if k not in powers:
            powers[k] = dl**k
        total = total + powers[k].shift(ab) * count
    return total


# ---------------------------------------------------------------------------
# tangles and Conway sums


@dataclass(frozen=True)
class BracketPair:
    """Tangle bracket ``p*[0] + q*[inf]``.

    ``[0]`` is the crossingless tangle with arcs NW-NE and SW-SE, ``[inf]``
    the one with arcs NW-SW and NE-SE.
    """

    p: LaurentPolynomial
    q: LaurentPolynomial

    @classmethod
    def identity(cls) -> "BracketPair":
        return cls(LaurentPolynomial.one("A"), LaurentPolynomial({}, "A"))

    def __add__(self, other: "BracketPair") -> "BracketPair":
        # [0]+[0] = [0]; [0]+[inf] = [inf]+[0] = [inf]; [inf]+[inf] = delta*[inf]
        return BracketPair(
            self.p * other.p,
            self.p * other.q + self.q * other.p + delta() * self.q * other.q,
        )

    def numerator(self) -> LaurentPolynomial:
        """Bracket of the numerator closure: [0] closes to two circles, [inf] to one.

        ``p`` and ``q`` weight every inner circle by delta; the closure adds
        at least one circle, which is the one the bracket leaves unweighted.
        """
        return self.p * delta() + self.q

    def denominator(self) -> LaurentPolynomial:
        return self.p + self.q * delta()


def tangle_bracket(t: TangleDiagram) -> BracketPair:
    """Expand a tangle in the two crossingless tangles via the sweep."""
    nw, ne, se, sw = t.corners
    corner_of: dict[int, list[int]] = {}
    for k, label in enumerate(t.corners):
        corner_of.setdefault(label, []).append(k)
    p: dict[int, int] = {}
    q: dict[int, int] = {}
    for (key, closed), terms in _sweep(t.crossings, t.corners).items():
        # an unclosed-yet state means every circle so far was skipped: add one back
        if closed:
            terms = _mul_delta(terms)
        pairing: dict[int, int] = {}
        for label, ks in corner_of.items():
            if len(ks) == 2:
                pairing[ks[0]], pairing[ks[1]] = ks[1], ks[0]
        for a, b in key:
            if a < b:
                (ka,), (kb,) = corner_of[a], corner_of[b]
                pairing[ka], pairing[kb] = kb, ka
        target = {1: p, 3: q}.get(pairing.get(0))
        if target is None:
            raise DiagramError("tangle state joins NW to SE; the diagram is not planar")
        _add_into(target, terms, 0)
    pair = BracketPair(_poly(p), _poly(q))
    if t.free_loops:
        f = delta() ** t.free_loops
        pair = BracketPair(pair.p * f, pair.q * f)
    return pair


def bracket_transfer(tangles: Sequence[TangleDiagram], closure: str = "numerator") -> LaurentPolynomial:
    """Bracket of the Conway sum from left-to-right composition of tangle pairs."""
    if not tangles:
        raise DiagramError("need at least one tangle")
    total = BracketPair.identity()
    for t in tangles:
        total = total + tangle_bracket(t)
    if closure == "numerator":
        out = total.numerator()
    elif closure == "denominator":
        out = total.denominator()
    else:
        raise DiagramError(f"unknown closure {closure!r}")
    return out


# ---------------------------------------------------------------------------
# Jones polynomial


def jones_from_bracket(br: LaurentPolynomial, writhe: int) -> LaurentPolynomial:
    """``V = (-A^3)^(-w) <D>`` rewritten with ``t = A^-4``."""
    sign = -1 if writhe % 2 else 1
    normalized = br.shift(-3 * writhe) * sign
    return normalized.scale_exponents(Fraction(-1, 4), "t")


def jones(d: LinkDiagram) -> LaurentPolynomial:
    return jones_from_bracket(bracket(d), d.writhe())


def jones_transfer(tangles: Sequence[TangleDiagram]) -> LaurentPolynomial:
    """Jones polynomial of a Conway sum via the transfer path.

    The writhe depends on how strands run through all summands, so it is
    read off the assembled diagram; the bracket itself never is.
    """
    d = conway_sum(tangles)
    return jones_from_bracket(bracket_transfer(tangles), d.writhe())


@dataclass(frozen=True)
class BoundaryCoeffs:
    """Extreme coefficients of ``alpha t^k + beta t^(k-1) + ... + beta' t^(m+1) + alpha' t^m``."""

    alpha: int
    beta: int
    beta_prime: int
    alpha_prime: int
    k: object
    m: object

    @property
    def beta_sum(self) -> int:
        return abs(self.beta) + abs(self.beta_prime)

    def as_dict(self) -> dict:
        def exp(e):
            return f"{e.numerator}/{e.denominator}" if isinstance(e, Fraction) else e

        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "beta_prime": self.beta_prime,
            "alpha_prime": self.alpha_prime,
            "k": exp(self.k),
            "m": exp(self.m),
            "beta_sum": self.beta_sum,
        }


def boundary_coeffs(j: LaurentPolynomial) -> BoundaryCoeffs:
    if j.is_zero():
        raise ValueError("the zero polynomial has no boundary coefficients")
    k, m = j.max_exponent(), j.min_exponent()
    return BoundaryCoeffs(
        alpha=j.coefficient(k),
        beta=j.coefficient(k - 1),
        beta_prime=j.coefficient(m + 1),
        alpha_prime=j.coefficient(m),
        k=k,
        m=m,
    )
