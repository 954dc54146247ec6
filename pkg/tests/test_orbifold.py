from fractions import Fraction as Q
from math import prod

import pytest
from hypothesis import given, settings

from conftest import GOLDEN, nonsingular
from oracles import brute_group, brute_h3, gauss_jordan_inverse
from torusorb import exact_linalg as la
from torusorb.faces import Edge, faces, facet, vertex, whole
from torusorb.orbifold import (
    CharMatrix,
    SingularCharacteristic,
    Unsupported,
    classify,
    group_G,
    h3,
    h3_data,
    integrality_constants,
    orbifold_graph,
    thom_class,
    validate,
)
from torusorb.poly import Polynomial, is_integral

x = Polynomial.var(2, 0)
y = Polynomial.var(2, 1)
golden = CharMatrix.from_rows(GOLDEN)

small_det = nonsingular(2, 3, -4, 4).filter(lambda A: abs(la.determinant(A)) <= 12)


def test_columns_are_facet_vectors():
    assert golden.columns == [(1, 3), (1, 5)]
    assert CharMatrix.from_columns([(1, 3), (1, 5)]) == golden
    assert golden.det == 2


def test_validate_rejects_singular():
    with pytest.raises(SingularCharacteristic) as err:
        validate(CharMatrix.from_rows([[1, 2], [2, 4]]))
    assert "det = 0" in str(err.value)
    with pytest.raises(SingularCharacteristic):
        validate(CharMatrix.spindle(0, 3))


def test_from_rows_shape_errors():
    with pytest.raises(ValueError):
        CharMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    with pytest.raises(ValueError):
        CharMatrix.from_rows([[3]])


# --- axial function and Thom classes ---

def test_golden_axial_function():
    og = orbifold_graph(golden)
    assert og.axial[Edge(1)].coeffs == (Q(5, 2), Q(-1, 2))
    assert og.axial[Edge(2)].coeffs == (Q(-3, 2), Q(1, 2))
    assert og.axial[Edge(1, True)] == og.axial[Edge(1)]
    assert set(og.multiplier.values()) == {2}
    assert og.integral_form(Edge(1)).coeffs == (5, -1)


def test_spindle_axial_function():
    og = orbifold_graph(CharMatrix.spindle(2, 3))
    assert og.axial[Edge(1)].coeffs == (Q(1, 2),)
    assert og.axial[Edge(1, True)].coeffs == (Q(1, 3),)
    assert og.multiplier == {Edge(1): 2, Edge(1, True): 3}


@given(nonsingular(2, 4))
def test_axial_dual_to_facet_vectors(A):
    char = CharMatrix.from_rows(A)
    og = orbifold_graph(char)
    cols = char.columns
    for j in range(char.n):
        for i in range(char.n):
            assert og.axial[Edge(j + 1)].pair(cols[i]) == int(i == j)


@given(nonsingular(2, 4))
def test_axial_matches_inverse(A):
    # rows of inv(A) are the axial forms
    inv = gauss_jordan_inverse(A)
    og = orbifold_graph(CharMatrix.from_rows(A))
    for i, row in enumerate(inv):
        assert list(og.axial[Edge(i + 1)].coeffs) == row


def test_golden_thom_classes():
    a1 = Q(5, 2) * x - Q(1, 2) * y
    a2 = -Q(3, 2) * x + Q(1, 2) * y
    t2 = thom_class(golden, facet(2, 2))
    assert t2.values == {"p": a2, "q": a2}
    assert t2.integralizer == 2
    tp = thom_class(golden, vertex(2, "p"))
    assert tp.values["p"] == a1 * a2
    assert tp.values["q"] == 0
    assert tp.integralizer == 4
    tw = thom_class(golden, whole(2))
    assert tw.values == {"p": 1, "q": 1} and tw.integralizer == 1


@settings(max_examples=50)
@given(nonsingular(2, 3, -5, 5))
def test_thom_class_properties(A):
    char = CharMatrix.from_rows(A)
    og = orbifold_graph(char)
    for F in faces(char.n):
        t = thom_class(char, F, og)
        scaled = t.scaled()
        assert all(is_integral(p) for p in scaled.values())
        for v, p in t.values.items():
            if v in F.vertices:
                assert p.is_homogeneous() and p.degree == F.codim
            else:
                assert p == 0
        # minimality: no proper divisor of a_F integralizes
        for d in range(1, t.integralizer):
            if t.integralizer % d == 0:
                assert not all(is_integral(p * d) for p in t.values.values())


# --- integrality constants ---

def test_golden_integrality_constants():
    c = integrality_constants(golden)
    assert c.ell == (1, 1)
    assert c.a == (2, 2)
    assert (c.a_p, c.a_q) == (4, 4)
    assert c.signed_diagonal == (2, 2)
    assert not c.a_p_divides_det
    assert "do not divide det = 2" in c.discrepancy_note()


def test_identity_constants_have_no_note():
    c = integrality_constants(CharMatrix.from_rows(la.identity(3)))
    assert c.a == (1, 1, 1) and c.a_p == 1
    assert c.discrepancy_note() is None


@settings(max_examples=100)
@given(nonsingular(2, 4))
def test_integrality_identity(A):
    char = CharMatrix.from_rows(A)
    c = integrality_constants(char)
    D = char.det
    assert tuple(abs(D) // l for l in c.ell) == c.a
    assert c.a_p == c.a_q == prod(c.a)
    assert all(d == D // l for d, l in zip(c.signed_diagonal, c.ell))


# --- G, N and H^3 ---

@pytest.mark.parametrize("A, factors", [
    (GOLDEN, (2,)),
    ([[2, 0], [0, 3]], (6,)),
    ([[2, 1], [0, 2]], (4,)),
    ([[2, 0], [0, 2]], (2, 2)),
    (la.identity(3), ()),
])
def test_group_G_examples(A, factors):
    G = group_G(CharMatrix.from_rows(A))
    assert G.invariant_factors == factors
    assert G.order == abs(la.determinant(A))


@settings(max_examples=60)
@given(small_det)
def test_group_G_matches_enumeration(A):
    G = group_G(CharMatrix.from_rows(A))
    assert {g.coords for g in G.elements} == brute_group(A)


def test_group_G_cap():
    G = group_G(CharMatrix.from_rows([[50, 0], [0, 50]]), cap=100)
    assert G.elements is None and G.order == 2500
    with pytest.raises(Unsupported):
        h3(CharMatrix.from_rows([[50, 0], [0, 50]]), cap=100)


@pytest.mark.parametrize("A, G_ord, N_ord, quotient", [
    ([[2, 1], [0, 2]], 4, 2, (2,)),
    (GOLDEN, 2, 1, (2,)),
    ([[2, 0], [0, 3]], 6, 6, ()),
    ([[1, 0], [0, 1]], 1, 1, ()),
])
def test_h3_examples(A, G_ord, N_ord, quotient):
    data = h3_data(CharMatrix.from_rows(A))
    assert (data.G.order, data.N.order, data.quotient.invariant_factors) == (G_ord, N_ord, quotient)


@settings(max_examples=60)
@given(small_det)
def test_h3_matches_enumeration(A):
    data = h3_data(CharMatrix.from_rows(A))
    g, n, q, e = brute_h3(A)
    assert (data.G.order, data.N.order, data.quotient.order) == (g, n, q)
    exponent = data.quotient.invariant_factors[-1] if data.quotient.invariant_factors else 1
    assert exponent == e
    assert {t.coords for t in data.N.elements} <= {t.coords for t in data.G.elements}


@given(nonsingular(2, 3, 1, 6).map(lambda A: [[A[i][i] if i == j else 0 for j in range(len(A))]
                                               for i in range(len(A))]))
def test_diagonal_has_trivial_h3(A):
    assert h3(CharMatrix.from_rows(A)).is_trivial


# --- classification ---

def test_classify_examples():
    r = classify(CharMatrix.from_rows([[2, 0], [0, 3]]))
    assert r.is_sphere and r.G.invariant_factors == (6,) and r.H3.is_trivial
    r = classify(CharMatrix.from_rows([[2, 1], [0, 2]]))
    assert not r.is_sphere and r.H3.invariant_factors == (2,) and r.h_odd == "known-nonzero"
    r = classify(CharMatrix.from_rows(la.identity(3)))
    assert r.G.is_trivial and r.det_is_unit and r.h_odd == "certified-zero"
    r = classify(golden)
    assert r.notes and r.h_odd == "known-nonzero"


def test_classify_spindle():
    r = classify(CharMatrix.spindle(2, 3))
    assert r.n == 1 and r.is_sphere and "S^2" in r.homeomorphism_type


@settings(max_examples=60)
@given(small_det)
def test_classification_invariants(A):
    r = classify(CharMatrix.from_rows(A))
    if r.is_diagonal:
        assert r.is_sphere
    if r.det_is_unit:
        assert r.h_odd == "certified-zero"
    assert r.H3.order * r.N.order == r.G.order
    assert r.determinant_divisors[-1] == abs(r.det)
    assert prod(r.invariant_factors) == abs(r.det)
