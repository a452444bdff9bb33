"""Closed-form hyperbolic volume estimates, short slopes and the small-volume census.

All evaluations are plain binary64 arithmetic. Constants are kept at the
printed four-decimal precision on purpose: the bounds are stated with those
literals, so recomputing them to more digits would change the formulas.
Lower bounds that come out negative are clamped to zero and flagged as
vacuous, since a volume is never negative.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Iterable

V3 = 1.0149  # regular ideal tetrahedron
V8 = 3.6638  # regular ideal octahedron
PSI_CAP = 2.828
SMALL_VOLUME_CEILING = 2.848
PSI_COEFF = 3.647
CUSP_AREA = 3.78
MERIDIAN_OFFSET = 11.524
TOLERANCE = 1e-9

FOURTH_ROOT_2 = 2 ** 0.25
_PSI_K = 2 * math.sqrt(2) * math.pi**2


@dataclass(frozen=True)
class BoundReport:
    """Named values of one formula, with the inputs that produced them.

    ``formula`` is a stable identifier such as ``"conway-sum-volume"``;
    ``flags`` carries booleans like ``vacuous`` (lower bound clamped to 0).
    """

    formula: str
    values: dict
    inputs: dict
    flags: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "formula": self.formula,
            "inputs": dict(self.inputs),
            "values": dict(self.values),
            "flags": dict(self.flags),
        }


def _clamped(value: float) -> tuple[float, bool]:
    if value < 0:
        return 0.0, True
    return value, False


def _require_int(name: str, value, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise ValueError(f"{name} must be at least {minimum}, got {value}")
    return value


# ---------------------------------------------------------------------------
# filling factors


def psi(x: float) -> float:
    """min(2.828, 3.647 (1 - 2 sqrt(2) pi^2 / x^2)^(3/2)) for x >= 5.5."""
    if not x >= 5.5:
        raise ValueError(f"psi is defined for x >= 5.5, got {x}")
    return min(PSI_CAP, PSI_COEFF * (1 - _PSI_K / x**2) ** 1.5)


def psi_tail(x: float) -> float:
    """The second expression inside ``psi``, without the 2.828 cap."""
    return PSI_COEFF * (1 - _PSI_K / x**2) ** 1.5


def dehn_filling_factor(l_min: float) -> float:
    """(1 - (2 pi / l_min)^2)^(3/2): volume ratio guaranteed when all filling slopes exceed 2 pi."""
    if not l_min > 2 * math.pi:
        raise ValueError(f"slope length must exceed 2*pi, got {l_min}")
    return (1 - (2 * math.pi / l_min) ** 2) ** 1.5


def periodic_factor(p: int) -> float:
    """Filling factor for period ``p``: the meridian of the axis has length at least p * 2^(1/4)."""
    _require_int("p", p, 6)
    return (1 - _PSI_K / p**2) ** 1.5


def periodic_lower_bound(p: int, vol_quotient: float) -> float:
    """Volume of a knot of period p from the volume of its quotient link."""
    if vol_quotient < 0:
        raise ValueError("quotient volume must be nonnegative")
    return p * periodic_factor(p) * vol_quotient


def periodic_alternating_bound(p: int, tw_quotient: int) -> float:
    _require_int("tw_quotient", tw_quotient, 2)
    return periodic_factor(p) * p * V8 * (tw_quotient / 2 - 1)


# ---------------------------------------------------------------------------
# Conway sums


def meridian_estimate(n: int) -> float:
    """Lower bound (11.524 + n 2^(1/4)) / 4 on the belt meridian for n summands."""
    return (MERIDIAN_OFFSET + n * FOURTH_ROOT_2) / 4


def _conway_factor(n: int) -> float:
    return (1 - (8 * math.pi / (MERIDIAN_OFFSET + n * FOURTH_ROOT_2)) ** 2) ** 1.5


def conway_sum_bounds(n: int, tw: int) -> BoundReport:
    """Two-sided volume estimate for a Conway sum of n >= 12 tangles with no east-west twist."""
    _require_int("n", n, 12)
    _require_int("tw", tw, 3)
    lower, vacuous = _clamped(V8 / 2 * _conway_factor(n) * (tw - 3))
    upper = 10 * V3 * (tw - 1)
    l_min = meridian_estimate(n)
    return BoundReport(
        "conway-sum-volume",
        {"lower": lower, "upper": upper, "meridian_estimate": l_min},
        {"n": n, "tw": tw},
        {"vacuous": vacuous, "meridian_exceeds_2pi": l_min > 2 * math.pi},
    )


def jones_volume_bounds(n: int, beta_sum: int) -> BoundReport:
    """Volume estimate from |beta| + |beta'| for sums of strongly alternating tangles."""
    _require_int("n", n, 12)
    _require_int("beta_sum", beta_sum, 0)
    lower, vacuous = _clamped(V8 / 4 * _conway_factor(n) * (beta_sum - 6))
    upper = 20 * V3 * (beta_sum + 1.5)
    return BoundReport(
        "jones-volume",
        {"lower": lower, "upper": upper},
        {"n": n, "beta_sum": beta_sum},
        {"vacuous": vacuous},
    )


def alternating_volume_lower(tw: int) -> float:
    """(v8/2)(tw - 2) for hyperbolic alternating links."""
    _require_int("tw", tw, 2)
    return V8 / 2 * (tw - 2)


def belted_lower(tw: int, case: str) -> float:
    """Lower bound after belt filling: case A gives (v8/2)(tw - 1), case B (v8/2)(tw - 2)."""
    _require_int("tw", tw, 1)
    offsets = {"A": 1, "B": 2}
    if case not in offsets:
        raise ValueError(f"case must be 'A' or 'B', got {case!r}")
    return _clamped(V8 / 2 * (tw - offsets[case]))[0]


def belted_sum_lower(tw: int) -> float:
    _require_int("tw", tw, 0)
    return _clamped(V8 / 2 * (tw - 3))[0]


def width_lower_bound(n: int, l: float) -> float:
    """Cusp width bound 3.78/l + (n - 1) l / 4 for a longitude of length l in [2^(1/4), 4]."""
    _require_int("n", n, 2)
    if not FOURTH_ROOT_2 - TOLERANCE <= l <= 4 + TOLERANCE:
        raise ValueError(f"longitude length must lie in [2^(1/4), 4], got {l}")
    return CUSP_AREA / l + (n - 1) * l / 4


# ---------------------------------------------------------------------------
# slopes


@dataclass(frozen=True)
class CuspLattice:
    """Translations of a cusp torus; ``gram`` holds exact |mu|^2, <mu, lambda>, |lambda|^2.

    When ``gram`` is not given it is taken from the complex inputs, read as
    exact binary fractions, so comparisons against a cutoff never round.
    """

    meridian: complex
    longitude: complex
    gram: tuple[Fraction, Fraction, Fraction] | None = None

    def __post_init__(self):
        if self.gram is None:
            mu, lam = complex(self.meridian), complex(self.longitude)
            fr = Fraction
            g = (
                fr(mu.real) ** 2 + fr(mu.imag) ** 2,
                fr(mu.real) * fr(lam.real) + fr(mu.imag) * fr(lam.imag),
                fr(lam.real) ** 2 + fr(lam.imag) ** 2,
            )
            object.__setattr__(self, "gram", g)
        a, b, c = self.gram
        if a * c - b * b <= 0:
            raise ValueError("lattice translations are linearly dependent")

    def length_squared(self, p: int, q: int) -> Fraction:
        a, b, c = self.gram
        return a * p * p + 2 * b * p * q + c * q * q

    def length(self, p: int, q: int) -> float:
        return math.sqrt(self.length_squared(p, q))


def three_chain_lattice() -> CuspLattice:
    """Cusp of the 3-chain link complement: meridian 3/2 + (sqrt 7 / 2) i, longitude 4."""
    return CuspLattice(
        complex(1.5, math.sqrt(7) / 2),
        complex(4, 0),
        gram=(Fraction(4), Fraction(6), Fraction(16)),
    )


NON_HYPERBOLIC_SLOPES = frozenset({(1, 0), (-3, 1), (-2, 1), (-1, 1), (0, 1)})


def _normalize_slope(p: int, q: int) -> tuple[int, int]:
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return p, q


def slope_text(p: int, q: int) -> str:
    return f"{p}" if q == 1 else f"{p}/{q}"


def enumerate_short_slopes(lattice: CuspLattice, cutoff: float) -> list[tuple[int, int]]:
    """All primitive (p, q), up to sign, with |p mu + q lambda| <= cutoff.

    Slopes are normalized with q >= 0 and 1/0 for q = 0, sorted by (q, p).
    The search box comes from the smallest eigenvalue of the Gram form.
    """
    if not cutoff > 0:
        raise ValueError("cutoff must be positive")
    a, b, c = (float(x) for x in lattice.gram)
    lam_min = (a + c) / 2 - math.sqrt(((a - c) / 2) ** 2 + b * b)
    if lam_min <= 0:
        raise ValueError("degenerate lattice")
    box = int(cutoff / math.sqrt(lam_min)) + 1
    cut2 = Fraction(cutoff) ** 2
    found = set()
    for q in range(0, box + 1):
        for p in range(-box, box + 1):
            if (p, q) == (0, 0) or math.gcd(p, q) != 1:
                continue
            if lattice.length_squared(p, q) <= cut2:
                found.add(_normalize_slope(p, q))
    return sorted(found, key=lambda s: (s[1], s[0]))


def twice_punctured_disk_slope_bound(n: int) -> BoundReport:
    """Length cap 6(n+1)/n for a slope meeting an essential twice-punctured disk n times."""
    _require_int("n", n, 1)
    return BoundReport(
        "twice-punctured-disk-slope",
        {"cap": 6 * (n + 1) / n, "supremum": 12.0},
        {"n": n},
    )


# ---------------------------------------------------------------------------
# census and periodic classification


@dataclass(frozen=True)
class CensusEntry:
    name: str
    alt_name: str
    volume: float
    surgery: tuple[Fraction, Fraction]
    fillings: tuple[str, ...]

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "alt_name": self.alt_name,
            "volume": self.volume,
            "surgery": [str(x) for x in self.surgery],
            "fillings": list(self.fillings),
        }


@lru_cache(maxsize=1)
def _census_data() -> dict:
    text = resources.files("tanglevol").joinpath("data/census.json").read_text(encoding="utf-8")
    return json.loads(text)


def census() -> tuple[CensusEntry, ...]:
    rows = _census_data()["rows"]
    return tuple(
        CensusEntry(
            r["name"],
            r["alt_name"],
            float(r["volume"]),
            tuple(Fraction(x) for x in r["surgery"]),
            tuple(r["fillings"]),
        )
        for r in rows
    )


_LENS = re.compile(r"^\s*L\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*$")


def parse_lens(text: str) -> tuple[int, int]:
    m = _LENS.match(text)
    if not m:
        raise ValueError(f"not a lens space name: {text!r}")
    return int(m.group(1)), int(m.group(2))


def _lens_key(text: str) -> str:
    if text.strip().upper() in ("S3", "S^3"):
        return "S3"
    p, q = parse_lens(text)
    return f"L({p},{q})"


def census_lookup(key: str) -> list[CensusEntry]:
    """Rows matching a manifold name (``m016``) or a filling (``L(18,5)``, ``S3``)."""
    key = key.strip()
    by_name = [e for e in census() if e.name == key]
    if by_name:
        return by_name
    if re.fullmatch(r"m\d{3}", key):
        raise ValueError(f"unknown census manifold {key!r}")
    lens = _lens_key(key)
    return [e for e in census() if lens in e.fillings]


@dataclass(frozen=True)
class PeriodicClassification:
    """Outcome for a knot or link of period p with a given quotient.

    ``kind`` is ``"bound"`` (volume at least p * psi(p)) or ``"exception"``.
    """

    kind: str
    p: int
    bound: float
    description: str = ""
    sharp: bool = False
    quotient_volume: float | None = None
    manifold: str | None = None
    lens: str | None = None

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "p": self.p,
            "bound": self.bound,
            "description": self.description,
            "sharp": self.sharp,
            "quotient_volume": self.quotient_volume,
            "manifold": self.manifold,
            "lens": self.lens,
        }


def periodic_classify(
    p: int,
    lens: str | None = None,
    manifold: str | None = None,
    volume: float | None = None,
) -> PeriodicClassification:
    """Classify a period-p knot complement whose quotient is a census manifold or has known volume.

    Raises ValueError for p < 6, an unknown manifold, a lens space whose
    order differs from p, or a lens space that is not a filling of the
    named manifold.
    """
    _require_int("p", p, 6)
    value = p * psi(p)
    data = _census_data()
    if lens is not None:
        order, _ = parse_lens(lens)
        lens = _lens_key(lens)
        if order != p:
            raise ValueError(f"{lens} is the quotient of a free action of order {order}, not {p}")
    entry = None
    if manifold is not None:
        entry = census_lookup(manifold)[0]
        if lens is not None and lens not in entry.fillings:
            raise ValueError(f"{lens} is not a lens space filling of {manifold}")
    elif lens is not None:
        rows = census_lookup(lens)
        if len(rows) == 1:
            entry = rows[0]
    if entry is not None and lens is None:
        lenses = [f for f in entry.fillings if f != "S3" and parse_lens(f)[0] == p]
        if not lenses:
            raise ValueError(f"{entry.name} has no lens space filling of order {p}")
        lens = lenses[0]
    if entry is not None:
        for ex in data["exceptions"]:
            if ex["lens"] == lens and ex["manifold"] == entry.name:
                return PeriodicClassification(
                    "exception", p, value, ex["description"], False, entry.volume, entry.name, lens
                )
        sharp = any(s["p"] == p and s["manifold"] == entry.name for s in data["sharp"])
        return PeriodicClassification(
            "bound", p, value, "", sharp, entry.volume, entry.name, lens
        )
    if volume is None:
        return PeriodicClassification("bound", p, value, "quotient outside the small-volume census", lens=lens)
    if volume < 0:
        raise ValueError("quotient volume must be nonnegative")
    if volume >= psi(p) - TOLERANCE:
        return PeriodicClassification("bound", p, value, "", False, volume, None, lens)
    return PeriodicClassification(
        "exception",
        p,
        value,
        "quotient volume below psi(p); only the census exceptions are possible",
        False,
        volume,
        None,
        lens,
    )


def periodic_chain_values() -> dict[str, float]:
    """The numeric inequalities used to dismiss L(6,1), L(9,2) and L(13,4)."""
    return {
        "psi_tail_6": psi_tail(6),
        "psi_tail_9": psi_tail(9),
        "psi_tail_13": psi_tail(13),
    }


def lens_fillings(min_order: int = 6) -> Iterable[tuple[str, CensusEntry]]:
    """Every census lens space filling of order at least ``min_order``."""
    for e in census():
        for f in e.fillings:
            if f != "S3" and parse_lens(f)[0] >= min_order:
                yield f, e
