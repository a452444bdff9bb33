from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tanglevol.polynomial import LaurentPolynomial as LP

terms = st.dictionaries(st.integers(-12, 12), st.integers(-5, 5), max_size=6)


def poly(d):
    return LP(d, "t")


def test_zero_coefficients_are_dropped():
    p = LP({2: 3, 4: 0}, "t")
    assert p.doubled_terms == {2: 3}
    assert LP({0: 0}).is_zero()


def test_half_integer_exponents_print_as_halves():
    p = LP.from_exponents({Fraction(-7, 2): 1, 1: -2})
    assert str(p) == "t^-7/2 - 2*t"
    assert p.to_pairs() == [["-7/2", 1], [1, -2]]
    assert LP.from_pairs(p.to_pairs()) == p
    assert not p.has_integral_exponents()


def test_rejects_quarter_exponents():
    with pytest.raises(ValueError):
        LP.monomial(1, Fraction(1, 4))


def test_monomial_inverse():
    a = LP.monomial(-1, 3, "A")
    assert a * a ** -1 == LP.one("A")
    with pytest.raises(ValueError):
        (LP.one("A") + a) ** -1
    with pytest.raises(ValueError):
        LP.monomial(2, 1, "A") ** -1


def test_variable_mismatch():
    with pytest.raises(ValueError):
        LP.one("A") + LP.one("t")


def test_substitution_maps_a_to_t():
    # A^-4 -> t, so A^8 -> t^-2
    p = LP.from_exponents({8: 1, -4: 3}, "A")
    assert p.scale_exponents(Fraction(-1, 4), "t") == LP.from_exponents({-2: 1, 1: 3}, "t")
    with pytest.raises(ValueError):
        LP.monomial(1, 1, "A").scale_exponents(Fraction(-1, 4), "t")


def test_extremes_and_coefficients():
    p = LP.from_exponents({-2: 1, 0: -1, 3: 4})
    assert (p.min_exponent(), p.max_exponent()) == (-2, 3)
    assert p.coefficient(3) == 4 and p.coefficient(1) == 0


def test_big_integer_coefficients_stay_exact():
    p = LP.from_exponents({0: 1, 1: 1})
    q = p ** 80
    assert q.coefficient(40) == 107507208733336176461620


@given(terms, terms, terms)
def test_ring_axioms(a, b, c):
    x, y, z = poly(a), poly(b), poly(c)
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x - x == LP({}, "t")


@given(terms, st.integers(-6, 6))
def test_shift_is_multiplication_by_monomial(a, k):
    x = poly(a)
    assert x.shift(Fraction(k, 2)) == x * LP.monomial(1, Fraction(k, 2))


@given(terms)
def test_hash_consistent_with_equality(a):
    assert hash(poly(a)) == hash(poly(dict(a)))
