"""Exact sparse Laurent polynomials with half-integer exponents.

Exponents are stored doubled, so ``t^(1/2)`` is held under key ``1``.
Coefficients are Python ints (arbitrary precision).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Exponent = Union[int, Fraction]


class LaurentPolynomial:
    __slots__ = ("_terms", "var", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None, var: str = "t"):
        self._terms = {e: c for e, c in (terms or {}).items() if c}
        self.var = var
        self._hash = None

    @classmethod
    def monomial(cls, coeff: int, exponent: Exponent = 0, var: str = "t") -> "LaurentPolynomial":
        doubled = Fraction(exponent) * 2
        if doubled.denominator != 1:
            raise ValueError(f"exponent {exponent} is not a multiple of 1/2")
        return cls({int(doubled): coeff}, var)

    @classmethod
    def from_exponents(cls, terms: Mapping[Exponent, int], var: str = "t") -> "LaurentPolynomial":
        out: dict[int, int] = {}
        for e, c in terms.items():
            d = Fraction(e) * 2
            if d.denominator != 1:
                raise ValueError(f"exponent {e} is not a multiple of 1/2")
            out[int(d)] = out.get(int(d), 0) + c
        return cls(out, var)

    @classmethod
    def one(cls, var: str = "t") -> "LaurentPolynomial":
        return cls({0: 1}, var)

    # -- access ------------------------------------------------------------

    @property
    def doubled_terms(self) -> dict[int, int]:
        return dict(self._terms)

    def terms(self) -> list[tuple[Exponent, int]]:
        """(exponent, coefficient) pairs in increasing exponent order."""
        return [(_undouble(e), self._terms[e]) for e in sorted(self._terms)]

    def coefficient(self, exponent: Exponent) -> int:
        d = Fraction(exponent) * 2
        if d.denominator != 1:
            return 0
        return self._terms.get(int(d), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def min_exponent(self) -> Exponent:
        return _undouble(min(self._terms))

    def max_exponent(self) -> Exponent:
        return _undouble(max(self._terms))

    def has_integral_exponents(self) -> bool:
        return all(e % 2 == 0 for e in self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            if other.var != self.var and other._terms and self._terms:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        if isinstance(other, int):
            return LaurentPolynomial({0: other}, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self._terms.items()}, self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("monomial coefficient must be a unit")
            return LaurentPolynomial({e * n: c ** (-n)}, self.var)
        result = LaurentPolynomial.one(self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, exponent: Exponent) -> "LaurentPolynomial":
        """Multiply by ``var**exponent``."""
        d = Fraction(exponent) * 2
        if d.denominator != 1:
            raise ValueError(f"exponent {exponent} is not a multiple of 1/2")
        k = int(d)
        return LaurentPolynomial({e + k: c for e, c in self._terms.items()}, self.var)

    def scale_exponents(self, factor: Fraction, var: str | None = None) -> "LaurentPolynomial":
        """Substitute ``var -> newvar**factor``; every resulting exponent must stay a half-integer."""
        out = {}
        for e, c in self._terms.items():
            d = Fraction(e) * factor
            if d.denominator != 1:
                raise ValueError(f"substitution leaves exponent {d / 2}")
            out[int(d)] = c
        return LaurentPolynomial(out, var or self.var)

    # -- comparison / display ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial({0: other}, self.var)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        if not self._terms and not other._terms:
            return True
        return self.var == other.var and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.var, frozenset(self._terms.items())))
        return self._hash

    def to_pairs(self) -> list[list]:
        """JSON-friendly ``[[exponent, coefficient], ...]``; halves printed as ``"k/2"``."""
        return [[_exp_repr(e), c] for e, c in self.terms()]

    @classmethod
    def from_pairs(cls, pairs: Iterable, var: str = "t") -> "LaurentPolynomial":
        return cls.from_exponents({Fraction(str(e)): c for e, c in pairs}, var)

    def __repr__(self):
        return f"LaurentPolynomial({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.terms():
            if e == 0:
                mono = str(abs(c))
            else:
                power = "" if e == 1 else f"^{_exp_repr(e)}"
                mono = (f"{abs(c)}*" if abs(c) != 1 else "") + f"{self.var}{power}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, mono in parts[1:]:
            text += f" {sign} {mono}"
        return text


def _undouble(e: int) -> Exponent:
    return e // 2 if e % 2 == 0 else Fraction(e, 2)


def _exp_repr(e: Exponent):
    if isinstance(e, Fraction):
        return f"{e.numerator}/{e.denominator}"
    return e
