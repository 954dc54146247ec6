"""Classification data of a torus orbifold over the suspended simplex.

Everything is driven by the characteristic matrix: an n x n integer matrix
whose j-th column is the vector attached to facet F_j. For n = 1 the input is
instead a spindle pair (m, n) labelling the two endpoints of an interval.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import lcm, prod
from typing import Literal, Optional, Sequence

from . import exact_linalg as la
from .faces import VERTICES, Edge, Face, Graph, Vertex, face_subgraph, one_skeleton
from .poly import LinearForm, Polynomial, joint_content

DEFAULT_CAP = 10**6

HOddStatus = Literal["certified-zero", "known-nonzero", "unknown"]


class SingularCharacteristic(ValueError):
    """The facet vectors fail to be linearly independent."""

    def __init__(self, det: int, message: str | None = None):
        self.det = det
        super().__init__(message or f"condition (∗) fails: det = {det}")


class Unsupported(RuntimeError):
    """A requested computation exceeds the enumeration cap."""


@dataclass(frozen=True)
class CharMatrix:
    """Characteristic data. ``rows`` holds the matrix row by row, so column j
    of the matrix is the facet vector of F_j. Spindles keep ``rows`` empty."""

    n: int
    rows: tuple[tuple[int, ...], ...] = ()
    spindle_labels: Optional[tuple[int, int]] = None

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> CharMatrix:
        rows = tuple(tuple(int(a) for a in r) for r in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError(f"characteristic matrix must be square, got {[len(r) for r in rows]}")
        if n == 1:
            raise ValueError("a 1x1 matrix is not enough data; use CharMatrix.spindle(m, n)")
        return cls(n, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> CharMatrix:
        return cls.from_rows(list(zip(*columns)))

    @classmethod
    def spindle(cls, m: int, n_val: int) -> CharMatrix:
        return cls(1, (), (int(m), int(n_val)))

    @property
    def is_spindle(self) -> bool:
        return self.spindle_labels is not None

    @property
    def matrix(self) -> list[list[int]]:
        if self.is_spindle:
            raise ValueError("spindle data has no characteristic matrix")
        return [list(r) for r in self.rows]

    @property
    def columns(self) -> list[tuple[int, ...]]:
        return list(zip(*self.rows))

    @property
    def det(self) -> int:
        return la.determinant(self.matrix)

    def describe(self) -> str:
        if self.is_spindle:
            m, k = self.spindle_labels
            return f"spindle S^2({m},{k})"
        return " / ".join(" ".join(str(a) for a in r) for r in self.rows)


def validate(char: CharMatrix) -> None:
    """Raise :class:`SingularCharacteristic` unless condition (*) holds.

    On the suspended simplex every set of facets with nonempty intersection is
    a subset of all n facets, so independence of all columns is enough.
    """
    if char.is_spindle:
        m, k = char.spindle_labels
        if m == 0 or k == 0:
            raise SingularCharacteristic(0, f"spindle labels must be nonzero, got ({m}, {k})")
        return
    d = char.det
    if d == 0:
        raise SingularCharacteristic(d)


# --- the finite group G(Λ) ------------------------------------------------

@dataclass(frozen=True, order=True)
class TorusElement:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) % 1 for c in self.coords))

    def __add__(self, other: TorusElement) -> TorusElement:
        return TorusElement(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> TorusElement:
        return TorusElement(tuple(-a for a in self.coords))

    def is_identity(self) -> bool:
        return not any(self.coords)

    def order(self) -> int:
        return lcm(*(c.denominator for c in self.coords)) if self.coords else 1

    def has_zero_coordinate(self) -> bool:
        """True iff the element fixes a point of the unit sphere S^{2n-1}.

        The element rotates coordinate z_j by exp(2*pi*i*t_j); a point supported
        on the coordinates with t_j = 0 is fixed.
        """
        return any(c == 0 for c in self.coords)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class FiniteAbelianGroup:
    invariant_factors: tuple[int, ...]  # nontrivial only, r_1 | r_2 | ...
    generators: tuple[TorusElement, ...] = ()
    elements: Optional[tuple[TorusElement, ...]] = None

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def __str__(self):
        if self.is_trivial:
            return "trivial"
        return " x ".join(f"C{r}" for r in self.invariant_factors)


def _nontrivial(diag: Sequence[int]) -> tuple[int, ...]:
    return tuple(d for d in diag if d != 1)


@dataclass(frozen=True)
class _GroupCoordinates:
    # G ≅ ⊕ Z/d_i via w -> V (w / d) mod 1
    d: tuple[int, ...]
    V: la.IntMatrix

    def point(self, w: Sequence[int]) -> TorusElement:
        n = len(self.d)
        return TorusElement(tuple(
            sum(Fraction(self.V[i][j] * w[j], self.d[j]) for j in range(n)) for i in range(n)
        ))


def _coordinates(char: CharMatrix) -> _GroupCoordinates:
    snf = la.smith_normal_form(char.matrix)
    return _GroupCoordinates(tuple(snf.diagonal), snf.V)


def _enumerate(coords: _GroupCoordinates) -> list[tuple[tuple[int, ...], TorusElement]]:
    return [(w, coords.point(w)) for w in product(*(range(d) for d in coords.d))]


def group_G(char: CharMatrix, cap: int = DEFAULT_CAP) -> FiniteAbelianGroup:
    """The kernel of T^n -> T^n induced by the matrix, i.e. Z^n / Λ Z^n.

    Elements are listed as torus points Λ^{-1} v mod 1 when the order is at
    most ``cap``; otherwise only the invariant factors and generators are kept.
    """
    if char.is_spindle:
        raise ValueError("G(Λ) is defined for n >= 2")
    validate(char)
    coords = _coordinates(char)
    gens = []
    for j, d in enumerate(coords.d):
        if d > 1:
            w = [0] * len(coords.d)
            w[j] = 1
            gens.append(coords.point(w))
    order = prod(coords.d)
    elements = None
    if order <= cap:
        elements = tuple(sorted(p for _, p in _enumerate(coords)))
    return FiniteAbelianGroup(_nontrivial(coords.d), tuple(gens), elements)


@dataclass(frozen=True)
class H3Result:
    G: FiniteAbelianGroup
    N: FiniteAbelianGroup
    quotient: FiniteAbelianGroup


def h3_data(char: CharMatrix, cap: int = DEFAULT_CAP) -> H3Result:
    """G, the subgroup N generated by elements with fixed points on S^{2n-1},
    and the quotient G/N, which is the third cohomology group."""
    if char.is_spindle:
        raise ValueError("H^3 via G/N is defined for n >= 2")
    validate(char)
    coords = _coordinates(char)
    order = prod(coords.d)
    if order > cap:
        raise Unsupported(f"|G| = {order} exceeds the enumeration cap {cap}")
    n = len(coords.d)
    listing = _enumerate(coords)
    fixing = [w for w, g in listing if g.has_zero_coordinate() and not g.is_identity()]
    relations = [[coords.d[i] * int(i == j) for j in range(n)] for i in range(n)]
    q_diag = la.smith_diagonal(relations + [list(w) for w in fixing])
    quotient = _nontrivial(q_diag[:n])
    G = FiniteAbelianGroup(
        _nontrivial(coords.d),
        tuple(coords.point([int(i == j) for i in range(n)]) for j in range(n) if coords.d[j] > 1),
        tuple(sorted(g for _, g in listing)),
    )
    fixing_set = set(fixing)
    n_elements = _subgroup_closure([g for w, g in listing if w in fixing_set], n)
    N = FiniteAbelianGroup(
        _sublattice_quotient([list(w) for w in fixing] + relations, relations, n),
        (),
        tuple(sorted(n_elements)),
    )
    if N.order * FiniteAbelianGroup(quotient).order != order or len(n_elements) != N.order:
        raise AssertionError("inconsistent subgroup orders for N and G/N")
    return H3Result(G, N, FiniteAbelianGroup(quotient))


def _subgroup_closure(gens: Sequence[TorusElement], n: int) -> set[TorusElement]:
    zero = TorusElement((0,) * n)
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = a + g
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def _sublattice_quotient(big: list[list[int]], small: list[list[int]], n: int) -> tuple[int, ...]:
    """Invariant factors of span(big) / span(small), both of full rank n."""
    B = la.hermite_rows(big, n)
    # express each generator of the small lattice in the basis B
    Binv = la.inverse_rational(B)
    X = []
    for row in la.hermite_rows(small, n):
        coeffs = [sum(Fraction(row[k]) * Binv[k][j] for k in range(n)) for j in range(n)]
        if any(c.denominator != 1 for c in coeffs):
            raise AssertionError("small lattice is not contained in the big one")
        X.append([int(c) for c in coeffs])
    return _nontrivial(la.smith_diagonal(X))


def h3(char: CharMatrix, cap: int = DEFAULT_CAP) -> FiniteAbelianGroup:
    return h3_data(char, cap).quotient


# --- orbifold torus graph ------------------------------------------------------

@dataclass(frozen=True)
class OrbifoldTorusGraph:
    char: CharMatrix
    graph: Graph
    axial: dict[Edge, LinearForm]
    multiplier: dict[Edge, int]  # r_e

    def integral_form(self, e: Edge) -> LinearForm:
        """r_e * alpha(e), a primitive integral form."""
        return self.axial[e].scaled(self.multiplier[e])

    @property
    def n_vars(self) -> int:
        return 1 if self.char.is_spindle else self.char.n


def orbifold_graph(char: CharMatrix) -> OrbifoldTorusGraph:
    """Axial function dual to the facet vectors: <alpha(e_j), lambda(F_i)> = delta_ij.

    For n >= 2 this is alpha(e_i) = alpha(ebar_i) = mu_i / det, mu_i the i-th
    row of the adjugate. For a spindle (m, n) the two orientations carry x/m
    and x/n.
    """
    validate(char)
    if char.is_spindle:
        m, k = char.spindle_labels
        e, eb = Edge(1), Edge(1, True)
        axial = {e: LinearForm((Fraction(1, m),)), eb: LinearForm((Fraction(1, k),))}
        graph = one_skeleton(1)
    else:
        D = char.det
        adj = la.adjugate(char.matrix)
        axial = {}
        for i in range(char.n):
            form = LinearForm(tuple(Fraction(a, D) for a in adj[i]))
            axial[Edge(i + 1)] = form
            axial[Edge(i + 1, True)] = form
        graph = one_skeleton(char.n)
    multiplier = {e: a.denominator() for e, a in axial.items()}
    return OrbifoldTorusGraph(char, graph, axial, multiplier)


# --- Thom classes --------------------------------------------------------------

@dataclass(frozen=True)
class ThomClass:
    face: Face
    values: dict[Vertex, Polynomial]
    integralizer: int  # least a_F > 0 with a_F * values integral

    def scaled(self) -> dict[Vertex, Polynomial]:
        return {v: p * self.integralizer for v, p in self.values.items()}

    @property
    def cohomological_degree(self) -> int:
        return 2 * self.face.codim


def thom_class(char: CharMatrix, F: Face, graph: OrbifoldTorusGraph | None = None) -> ThomClass:
    """tau_F(v) = product of alpha(e) over edges e leaving v outside the face,
    and 0 at vertices not in F."""
    og = graph or orbifold_graph(char)
    nv = og.n_vars
    sub = face_subgraph(F)
    inside = set(sub.edges)
    values = {}
    for v in VERTICES:
        if v not in sub.vertices:
            values[v] = Polynomial.zero(nv)
            continue
        val = Polynomial.constant(nv, 1)
        for e in og.graph.edges_from(v):
            if e not in inside:
                val = val * og.axial[e].to_poly()
        values[v] = val
    c = joint_content(values.values())
    return ThomClass(F, values, c.denominator)


# --- integrality constants -------------------------------------------------------

@dataclass(frozen=True)
class IntegralityConstants:
    det: int
    ell: tuple[int, ...]  # content of each adjugate row
    a: tuple[int, ...]  # minimal integralizers of the facet Thom classes
    a_p: int
    a_q: int
    adj_over_ell: tuple[tuple[int, ...], ...]
    signed_diagonal: tuple[int, ...]  # diagonal of adj_over_ell @ Λ

    @property
    def a_p_divides_det(self) -> bool:
        return self.det % self.a_p == 0 and self.det % self.a_q == 0

    def discrepancy_note(self) -> Optional[str]:
        if self.a_p_divides_det:
            return None
        return (f"a_p = {self.a_p}, a_q = {self.a_q} do not divide det = {self.det}, "
                "so the expected divisibility a_p | D, a_q | D fails for this matrix "
                "(values here are computed from polynomial content)")


def integrality_constants(char: CharMatrix) -> IntegralityConstants:
    from .faces import facet, vertex

    if char.is_spindle:
        raise ValueError("integrality constants are defined for n >= 2")
    validate(char)
    og = orbifold_graph(char)
    D = char.det
    adj = la.adjugate(char.matrix)
    ell = tuple(abs(_gcd_all(row)) for row in adj)
    a = tuple(thom_class(char, facet(char.n, i + 1), og).integralizer for i in range(char.n))
    a_p = thom_class(char, vertex(char.n, "p"), og).integralizer
    a_q = thom_class(char, vertex(char.n, "q"), og).integralizer
    adj_l = tuple(tuple(x // l for x in row) for row, l in zip(adj, ell))
    prod_m = la.matmul(adj_l, char.matrix)
    n = char.n
    if any(prod_m[i][j] for i in range(n) for j in range(n) if i != j):
        raise AssertionError(f"adj/ell times matrix is not diagonal: {prod_m}")
    diag = tuple(prod_m[i][i] for i in range(n))
    if tuple(abs(d) for d in diag) != a:
        raise AssertionError(f"|diag| {diag} differs from integralizers {a}")
    return IntegralityConstants(D, ell, a, a_p, a_q, adj_l, diag)


def _gcd_all(xs: Sequence[int]) -> int:
    from math import gcd

    g = 0
    for x in xs:
        g = gcd(g, x)
    return g


# --- classification report ------------------------------------------------------

@dataclass
class ClassificationReport:
    n: int
    description: str
    det: Optional[int]
    determinant_divisors: Optional[tuple[int, ...]]
    invariant_factors: Optional[tuple[int, ...]]
    G: Optional[FiniteAbelianGroup]
    N: Optional[FiniteAbelianGroup]
    H3: Optional[FiniteAbelianGroup]
    is_diagonal: bool
    is_sphere: bool
    det_is_unit: bool
    h_odd: HOddStatus
    homeomorphism_type: str
    notes: list[str] = field(default_factory=list)


def classify(char: CharMatrix, cap: int = DEFAULT_CAP) -> ClassificationReport:
    validate(char)
    if char.is_spindle:
        m, k = char.spindle_labels
        return ClassificationReport(
            n=1, description=char.describe(), det=None, determinant_divisors=None,
            invariant_factors=None, G=None, N=None, H3=None,
            is_diagonal=False, is_sphere=True, det_is_unit=False, h_odd="certified-zero",
            homeomorphism_type="equivariantly homeomorphic to (S^2, T^1)",
            notes=[f"spindle with cone orders |{m}|, |{k}| at the poles; underlying space is S^2"],
        )
    A = char.matrix
    n = char.n
    D = char.det
    divisors = la.determinant_divisors(A).values
    factors = tuple(la.invariant_factors(A))
    data = h3_data(char, cap)
    is_diag = all(A[i][j] == 0 for i in range(n) for j in range(n) if i != j)
    unit = abs(D) == 1
    if unit:
        h_odd: HOddStatus = "certified-zero"
    elif not data.quotient.is_trivial:
        h_odd = "known-nonzero"
    else:
        h_odd = "unknown"
    is_sphere = is_diag or unit
    if is_sphere:
        homeo = f"equivariantly homeomorphic to the standard sphere S^{2 * n} with T^{n}-action"
    else:
        homeo = (f"equivariantly homeomorphic to S^{2 * n}/G with G = {data.G}, "
                 f"i.e. the suspension of the orbifold lens space S^{2 * n - 1}/G")
    notes = []
    consts = integrality_constants(char)
    note = consts.discrepancy_note()
    if note:
        notes.append(note)
    return ClassificationReport(
        n=n, description=char.describe(), det=D, determinant_divisors=divisors,
        invariant_factors=factors, G=data.G, N=data.N, H3=data.quotient,
        is_diagonal=is_diag, is_sphere=is_sphere, det_is_unit=unit, h_odd=h_odd,
        homeomorphism_type=homeo, notes=notes,
    )
