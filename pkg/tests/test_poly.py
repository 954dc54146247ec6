from fractions import Fraction as Q
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from torusorb.poly import (
    LinearForm,
    Polynomial,
    content_and_primitive,
    divides_linear,
    homogeneous_basis,
    is_integral,
    render,
)

x = Polynomial.var(2, 0)
y = Polynomial.var(2, 1)


def rational_polys(n_vars=2, max_deg=3, integral=False):
    coeff = st.integers(-12, 12) if integral else st.fractions(min_value=-5, max_value=5, max_denominator=9)

    @st.composite
    def build(draw):
        terms = {}
        for _ in range(draw(st.integers(0, 5))):
            e = tuple(draw(st.integers(0, max_deg)) for _ in range(n_vars))
            terms[e] = draw(coeff)
        return Polynomial(n_vars, terms)

    return build()


def test_content_golden_label():
    c, q = content_and_primitive(Q(5, 2) * x - Q(1, 2) * y)
    assert c == Q(1, 2)
    assert q == 5 * x - y


def test_content_monomial():
    c, q = content_and_primitive(3 * x)
    assert (c, q) == (3, x)


def test_content_product():
    p = (Q(5, 2) * x - Q(1, 2) * y) * (-Q(3, 2) * x + Q(1, 2) * y)
    c, q = content_and_primitive(p)
    assert c == Q(1, 4)
    assert q == (5 * x - y) * (-3 * x + y)


def test_content_of_zero_raises():
    with pytest.raises(ValueError):
        content_and_primitive(Polynomial.zero(2))


@given(rational_polys().filter(bool))
def test_content_roundtrip(p):
    c, q = content_and_primitive(p)
    assert c > 0
    assert c * q == p
    assert is_integral(q)
    assert content_and_primitive(q)[0] == 1


@given(rational_polys(integral=True).filter(bool), rational_polys(integral=True).filter(bool))
def test_gauss_lemma(p, q):
    _, p0 = content_and_primitive(p)
    _, q0 = content_and_primitive(q)
    assert content_and_primitive(p0 * q0)[0] == 1


def test_is_integral():
    assert is_integral(5 * x - y)
    assert not is_integral(Q(5, 2) * x - Q(1, 2) * y)
    assert is_integral(Polynomial.zero(2))


def test_homogeneous_basis():
    assert homogeneous_basis(2, 1) == [(1, 0), (0, 1)]
    assert homogeneous_basis(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert len(homogeneous_basis(3, 2)) == 6
    assert homogeneous_basis(3, 0) == [(0, 0, 0)]


@given(st.integers(1, 4), st.integers(0, 6))
def test_homogeneous_basis_count(n, d):
    basis = homogeneous_basis(n, d)
    assert len(basis) == comb(d + n - 1, n - 1) == len(set(basis))
    assert all(sum(e) == d for e in basis)


def test_divides_linear_examples():
    ok, q = divides_linear(LinearForm((5, -1)), (5 * x - y) * (-3 * x + y))
    assert ok and q == -3 * x + y
    assert divides_linear(LinearForm((1, 0)), y) == (False, None)
    ok, q = divides_linear(LinearForm((1, 0)), Polynomial.zero(2))
    assert ok and not q


def test_divides_zero_form_raises():
    with pytest.raises(ZeroDivisionError):
        divides_linear(LinearForm((0, 0)), x)


@given(st.lists(st.integers(-5, 5), min_size=2, max_size=2).filter(any),
       rational_polys(integral=True))
def test_divides_linear_product(coeffs, h):
    f = LinearForm(tuple(coeffs))
    p = f.to_poly() * h
    ok, q = divides_linear(f, p)
    assert ok and f.to_poly() * q == p


@given(st.lists(st.integers(-5, 5), min_size=2, max_size=2).filter(any),
       rational_polys(integral=True))
def test_divides_linear_sound(coeffs, p):
    f = LinearForm(tuple(coeffs))
    ok, q = divides_linear(f, p)
    if ok:
        assert f.to_poly() * q == p


def test_render():
    assert render(5 * x - y) == "5*x1 - x2"
    assert render(x**2 * y) == "x1^2*x2"
    assert render(Q(5, 2) * x - Q(1, 2) * y, aliases=True) == "5/2*x - 1/2*y"
    assert render(Polynomial.zero(3)) == "0"
    assert render(Polynomial.constant(2, -3)) == "-3"


def test_arithmetic_basics():
    assert (x + y) ** 2 == x * x + 2 * x * y + y * y
    assert (x - x) == 0
    assert (x + 1).degree == 1
    assert not (x + 1).is_homogeneous()
    assert ((x + y) * 3).substitute([y, x]) == 3 * (x + y)


def test_linear_form_pairing():
    a = LinearForm((Q(5, 2), Q(-1, 2)))
    assert a.pair((1, 3)) == 1
    assert a.pair((1, 5)) == 0
    assert a.denominator() == 2
