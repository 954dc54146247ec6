"""Integral graph equivariant cohomology of the two-vertex orbifold torus graph.

Two independent routes are computed and compared degree by degree:

* the brute-force module: all pairs (f_p, f_q) of integral polynomials whose
  difference is divisible by r_e * alpha(e) for every oriented edge, found by
  integer lattice kernels (each edge imposed separately);
* a ring presentation (generators, relations, evaluation map) whose quotient
  ranks are computed by exact linear algebra on monomial multiples of the
  relations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, prod
from typing import Optional, Sequence

from . import exact_linalg as la
from .faces import Edge, Face, faces, join_and_meet
from .orbifold import (
    CharMatrix,
    OrbifoldTorusGraph,
    ThomClass,
    integrality_constants,
    orbifold_graph,
    thom_class,
    validate,
)
from .poly import Exponent, Polynomial, divides_linear, homogeneous_basis, is_integral, render


@dataclass(frozen=True)
class PiecewisePolynomial:
    f_p: Polynomial
    f_q: Polynomial

    @classmethod
    def constant(cls, p: Polynomial) -> PiecewisePolynomial:
        return cls(p, p)

    @classmethod
    def from_values(cls, values: dict) -> PiecewisePolynomial:
        return cls(values["p"], values["q"])

    def __add__(self, other):
        return PiecewisePolynomial(self.f_p + other.f_p, self.f_q + other.f_q)

    def __sub__(self, other):
        return PiecewisePolynomial(self.f_p - other.f_p, self.f_q - other.f_q)

    def __neg__(self):
        return PiecewisePolynomial(-self.f_p, -self.f_q)

    def __mul__(self, other):
        if isinstance(other, PiecewisePolynomial):
            return PiecewisePolynomial(self.f_p * other.f_p, self.f_q * other.f_q)
        return PiecewisePolynomial(self.f_p * other, self.f_q * other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return PiecewisePolynomial(self.f_p**k, self.f_q**k)

    def is_zero(self) -> bool:
        return not self.f_p and not self.f_q

    def is_integral(self) -> bool:
        return is_integral(self.f_p) and is_integral(self.f_q)

    def at(self, v: str) -> Polynomial:
        return self.f_p if v == "p" else self.f_q

    def vector(self, basis: Sequence[Exponent]) -> list[int]:
        coeffs = self.f_p.coefficients(basis) + self.f_q.coefficients(basis)
        if any(c.denominator != 1 for c in coeffs):
            raise ValueError("piecewise polynomial is not integral")
        return [int(c) for c in coeffs]

    @classmethod
    def from_vector(cls, n_vars: int, basis: Sequence[Exponent], vec: Sequence[int]):
        M = len(basis)
        return cls(Polynomial.from_coefficients(n_vars, basis, vec[:M]),
                   Polynomial.from_coefficients(n_vars, basis, vec[M:]))

    def satisfies(self, og: OrbifoldTorusGraph) -> bool:
        """The edge congruences f(i(e)) = f(t(e)) mod r_e alpha(e)."""
        if not self.is_integral():
            return False
        for e in og.graph.edges:
            diff = self.at(e.initial) - self.at(e.terminal)
            if not divides_linear(og.integral_form(e), diff)[0]:
                return False
        return True

    def __str__(self):
        return f"({render(self.f_p)}, {render(self.f_q)})"


@dataclass(frozen=True)
class HilbertFunction:
    ranks: dict[int, int]  # cohomological degree -> free rank
    torsion: dict[int, tuple[int, ...]] = field(default_factory=dict)

    def as_list(self) -> list[int]:
        return [self.ranks[k] for k in sorted(self.ranks)]


def expected_rank(n: int, d: int) -> int:
    """Global polynomials of degree d plus (degree d - n) multiples of the vertex class."""
    first = comb(d + n - 1, n - 1)
    second = comb(d - 1, n - 1) if d >= n else 0
    return first + second


def default_max_degree(n: int) -> int:
    return 2 * n + 6 if 4 * n <= 2 * n + 6 else 4 * n + 2


# --- brute-force oracle --------------------------------------------------------------

@dataclass(frozen=True)
class BruteForceModule:
    char: CharMatrix
    n_vars: int
    bases: dict[int, list[PiecewisePolynomial]]  # cohomological degree -> Z-basis
    hilbert: HilbertFunction


def _multiplication_matrix(form: Polynomial, src: list[Exponent], dst: list[Exponent]) -> list[list[int]]:
    # column l = coefficients of form * (monomial l) in the dst basis
    index = {e: k for k, e in enumerate(dst)}
    cols = []
    for e in src:
        col = [0] * len(dst)
        for fe, c in form.terms.items():
            col[index[tuple(a + b for a, b in zip(e, fe))]] += int(c)
        cols.append(col)
    return la.transpose(cols) if cols else [[] for _ in dst]


def _divisible_differences(forms: list[Polynomial], n_vars: int, d: int) -> list[list[int]]:
    """Z-basis of degree-d integral g with form | g for every form.

    Solves g = form_i * h_i over the integers for all i simultaneously: the
    kernel of [I | -A_1 | 0 ...; I | 0 | -A_2 ...] projected onto g.
    """
    basis = homogeneous_basis(n_vars, d)
    lower = homogeneous_basis(n_vars, d - 1)
    M, Mp, k = len(basis), len(lower), len(forms)
    if Mp == 0:
        return []
    ncols = M + k * Mp
    rows = []
    for i, f in enumerate(forms):
        A = _multiplication_matrix(f, lower, basis)
        for r in range(M):
            row = [0] * ncols
            row[r] = 1
            for l in range(Mp):
                row[M + i * Mp + l] = -A[r][l]
            rows.append(row)
    kernel = la.integer_kernel(rows, ncols)
    return [vec[:M] for vec in kernel]


def _edge_forms(og: OrbifoldTorusGraph) -> list[Polynomial]:
    # one condition per oriented edge; identical ideals (same form up to sign)
    # impose the same condition, so keep one representative of each
    seen: list[Polynomial] = []
    for e in og.graph.edges:
        f = og.integral_form(e).to_poly()
        if f not in seen and -f not in seen:
            seen.append(f)
    return seen


def brute_force_basis(char: CharMatrix, max_cohom_degree: int) -> BruteForceModule:
    validate(char)
    og = orbifold_graph(char)
    nv = og.n_vars
    forms = _edge_forms(og)
    bases: dict[int, list[PiecewisePolynomial]] = {}
    ranks: dict[int, int] = {}
    for d in range(max_cohom_degree // 2 + 1):
        basis = homogeneous_basis(nv, d)
        elems = [PiecewisePolynomial.constant(Polynomial.monomial(e)) for e in basis]
        for g in _divisible_differences(forms, nv, d):
            gp = Polynomial.from_coefficients(nv, basis, g)
            elems.append(PiecewisePolynomial(gp, Polynomial.zero(nv)))
        bases[2 * d] = elems
        ranks[2 * d] = len(elems)
    return BruteForceModule(char, nv, bases, HilbertFunction(ranks))


# --- weighted face ring relations -------------------------------------------------------

@dataclass(frozen=True)
class FaceRelation:
    E: Face
    F: Face
    join: Optional[Face]
    components: tuple[Face, ...]
    value: PiecewisePolynomial  # tau_E tau_F - tau_{E v F} * sum tau_G, evaluated

    @property
    def vanishes(self) -> bool:
        return self.value.is_zero()

    def text(self) -> str:
        tail = " + ".join(f"tau_{G}" for G in self.components)
        if not self.components:
            return f"tau_{self.E} tau_{self.F}"
        return f"tau_{self.E} tau_{self.F} - tau_{self.join}({tail})"


def face_ring_relations(char: CharMatrix) -> list[FaceRelation]:
    validate(char)
    og = orbifold_graph(char)
    all_faces = faces(char.n)
    thom = {F: thom_class(char, F, og) for F in all_faces}

    def tau(F: Face) -> PiecewisePolynomial:
        return PiecewisePolynomial.from_values(thom[F].values)

    out = []
    for i, E in enumerate(all_faces):
        for F in all_faces[i:]:
            join, comps = join_and_meet(E, F)
            value = tau(E) * tau(F)
            if comps:
                total = tau(comps[0])
                for G in comps[1:]:
                    total = total + tau(G)
                value = value - tau(join) * total
            out.append(FaceRelation(E, F, join, tuple(comps), value))
    return out


# --- presentations -----------------------------------------------------------------

@dataclass(frozen=True)
class RingPresentation:
    label: str
    names: tuple[str, ...]
    degrees: tuple[int, ...]  # cohomological
    relations: tuple[Polynomial, ...]  # in len(names) variables, integer coefficients
    evaluation: Optional[tuple[PiecewisePolynomial, ...]] = None
    caveat: Optional[str] = None

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(d // 2 for d in self.degrees)

    def weighted_degree(self, p: Polynomial) -> int:
        degs = {sum(w * a for w, a in zip(self.weights, e)) for e in p.terms}
        if len(degs) != 1:
            raise ValueError(f"relation {self.render(p)} is not homogeneous")
        return degs.pop()

    def evaluate(self, p: Polynomial) -> PiecewisePolynomial:
        if self.evaluation is None:
            raise ValueError(f"presentation '{self.label}' has no evaluation map")
        return PiecewisePolynomial(
            p.substitute([g.f_p for g in self.evaluation]),
            p.substitute([g.f_q for g in self.evaluation]),
        )

    def render(self, p: Polynomial) -> str:
        return render(p, self.names)

    def rendered_relations(self) -> list[str]:
        return [self.render(r) for r in self.relations]

    def with_relations(self, relations: Sequence[Polynomial], label: str | None = None) -> RingPresentation:
        return RingPresentation(label or self.label, self.names, self.degrees, tuple(relations),
                                self.evaluation, self.caveat)


def _unit_sign(D: int, n: int) -> int:
    return 1 if D > 0 or n % 2 == 0 else -1


def presentation(char: CharMatrix) -> RingPresentation:
    """Generators x_1..x_n (degree 2), weighted vertex classes (degree 2n) and
    the two relations prod mu_i(x) - (tp + tq), tp * tq.

    mu_i(x) uses the rows of the adjugate divided by their content. The vertex
    generators evaluate to s * a_p * tau_p and s * a_q * tau_q with the unit
    s = sign(det)^n, so that prod mu_i(x) equals them at p and q respectively.
    """
    if char.is_spindle:
        return spindle_presentation(char)
    validate(char)
    n = char.n
    og = orbifold_graph(char)
    consts = integrality_constants(char)
    nv = n + 2
    xs = [Polynomial.var(nv, i) for i in range(n)]
    tp, tq = Polynomial.var(nv, n), Polynomial.var(nv, n + 1)
    mus = [sum((c * x for c, x in zip(row, xs)), Polynomial.zero(nv)) for row in consts.adj_over_ell]
    r1 = prod(mus, start=Polynomial.constant(nv, 1)) - (tp + tq)
    r2 = tp * tq

    # x_i = sum_j lambda_ij tau_j, with tau_j = alpha(e_j) a global linear form
    A = char.matrix
    evals = []
    for i in range(n):
        xi = Polynomial.zero(n)
        for j in range(n):
            xi = xi + og.axial[Edge(j + 1)].to_poly() * A[i][j]
        evals.append(PiecewisePolynomial.constant(xi))
    s = _unit_sign(consts.det, n)
    tau_p = thom_class(char, _vertex(n, "p"), og)
    tau_q = thom_class(char, _vertex(n, "q"), og)
    evals.append(PiecewisePolynomial.from_values(tau_p.values) * (s * consts.a_p))
    evals.append(PiecewisePolynomial.from_values(tau_q.values) * (s * consts.a_q))
    names = tuple(f"x{i + 1}" for i in range(n)) + ("tp", "tq")
    degrees = (2,) * n + (2 * n, 2 * n)
    return RingPresentation("weighted face ring presentation", names, degrees, (r1, r2), tuple(evals))


def spindle_presentation(char: CharMatrix) -> RingPresentation:
    """Z[m tau_p, n tau_q] / <mn tau_p tau_q> with both generators in degree 2."""
    validate(char)
    m, k = char.spindle_labels
    og = orbifold_graph(char)
    tp = thom_class(char, _vertex(1, "p"), og)
    tq = thom_class(char, _vertex(1, "q"), og)
    A = PiecewisePolynomial.from_values(tp.values) * m
    B = PiecewisePolynomial.from_values(tq.values) * k
    a, b = Polynomial.var(2, 0), Polynomial.var(2, 1)
    label = f"Z[{m} tau_p, {k} tau_q]/<{m * k} tau_p tau_q>"
    return RingPresentation(label, (f"({m})tau_p", f"({k})tau_q"), (2, 2), (a * b,), (A, B))


def corollary_presentation(char: CharMatrix) -> RingPresentation:
    """The abstract form Z[tau_1..tau_n, tau_p, tau_q]/<tau_1...tau_n - (tau_p + tau_q), tau_p tau_q>.

    It carries an evaluation map only when every Thom class is already
    integral (|det| = 1); otherwise it is a formal statement flagged with a
    caveat, since the change of generators from the weighted form is not
    determined.
    """
    if char.is_spindle:
        return spindle_presentation(char)
    validate(char)
    n = char.n
    nv = n + 2
    ts = [Polynomial.var(nv, i) for i in range(n)]
    tp, tq = Polynomial.var(nv, n), Polynomial.var(nv, n + 1)
    r1 = prod(ts, start=Polynomial.constant(nv, 1)) - (tp + tq)
    r2 = tp * tq
    names = tuple(f"tau{i + 1}" for i in range(n)) + ("tau_p", "tau_q")
    degrees = (2,) * n + (2 * n, 2 * n)
    og = orbifold_graph(char)
    classes = [thom_class(char, _facet(n, i + 1), og) for i in range(n)]
    classes += [thom_class(char, _vertex(n, "p"), og), thom_class(char, _vertex(n, "q"), og)]
    if all(c.integralizer == 1 for c in classes):
        evals = tuple(PiecewisePolynomial.from_values(c.values) for c in classes)
        return RingPresentation("corollary form", names, degrees, (r1, r2), evals)
    return RingPresentation(
        "corollary form", names, degrees, (r1, r2), None,
        caveat="formal statement only: generators differ from the weighted presentation "
               "when |det| > 1 and no explicit change of variables is available",
    )


def _vertex(n: int, v: str) -> Face:
    return Face(n, vertex=v)


def _facet(n: int, i: int) -> Face:
    return Face(n, frozenset({i}))


# --- Hilbert functions of presentations ------------------------------------------------

def weighted_monomials(weights: Sequence[int], d: int) -> list[Exponent]:
    """Exponent vectors e with sum w_i e_i = d, in a fixed deterministic order."""
    out: list[Exponent] = []

    def rec(i: int, rest: int, acc: list[int]):
        if i == len(weights) - 1:
            w = weights[i]
            if rest % w == 0:
                out.append(tuple(acc + [rest // w]))
            return
        for a in range(rest // weights[i], -1, -1):
            rec(i + 1, rest - a * weights[i], acc + [a])

    if d >= 0:
        rec(0, d, [])
    return out


def _relation_matrix(P: RingPresentation, d: int, mons: list[Exponent]) -> list[list[int]]:
    index = {e: k for k, e in enumerate(mons)}
    rows = []
    for rel in P.relations:
        w = P.weighted_degree(rel)
        for m in weighted_monomials(P.weights, d - w):
            prod_ = rel * Polynomial.monomial(m)
            row = [0] * len(mons)
            for e, c in prod_.terms.items():
                if c.denominator != 1:
                    raise ValueError("relations must have integer coefficients")
                row[index[e]] = int(c)
            rows.append(row)
    return rows


def hilbert_of_presentation(P: RingPresentation, max_cohom_degree: int) -> HilbertFunction:
    ranks, torsion = {}, {}
    for d in range(max_cohom_degree // 2 + 1):
        mons = weighted_monomials(P.weights, d)
        rows = _relation_matrix(P, d, mons)
        diag = [x for x in la.smith_diagonal(rows) if x] if rows and mons else []
        ranks[2 * d] = len(mons) - len(diag)
        tors = tuple(x for x in diag if x > 1)
        if tors:
            torsion[2 * d] = tors
    return HilbertFunction(ranks, torsion)


# --- verification ---------------------------------------------------------------

@dataclass(frozen=True)
class DegreeCheck:
    degree: int
    brute_rank: int
    presentation_rank: int
    expected_rank: Optional[int]
    relations_ok: bool
    generated: bool  # every brute-force class lies in the generated subring
    contained: bool  # every generated class satisfies the congruences
    torsion: tuple[int, ...] = ()

    @property
    def passed(self) -> bool:
        return (self.brute_rank == self.presentation_rank and self.relations_ok
                and self.generated and self.contained and not self.torsion)


@dataclass(frozen=True)
class VerifyReport:
    char: CharMatrix
    presentation: RingPresentation
    max_degree: int
    degrees: tuple[DegreeCheck, ...]
    failing_relations: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.degrees) and not self.failing_relations

    @property
    def first_failure(self) -> Optional[int]:
        for c in self.degrees:
            if not c.passed:
                return c.degree
        return None if self.passed else self.max_degree

    @property
    def rank_formula_holds(self) -> Optional[bool]:
        if self.char.n < 2:
            return None
        return all(c.brute_rank == c.expected_rank for c in self.degrees)


def verify(char: CharMatrix, max_cohom_degree: int | None = None,
           P: RingPresentation | None = None) -> VerifyReport:
    validate(char)
    n = char.n
    bound = max_cohom_degree if max_cohom_degree is not None else default_max_degree(n)
    if P is None:
        P = spindle_presentation(char) if char.is_spindle else presentation(char)
    og = orbifold_graph(char)
    nv = og.n_vars
    brute = brute_force_basis(char, bound)
    hilb = hilbert_of_presentation(P, bound)

    bad_degrees: set[int] = set()
    failing = []
    for rel in P.relations:
        if not P.evaluate(rel).is_zero():
            failing.append(P.render(rel))
            bad_degrees.add(2 * P.weighted_degree(rel))
    gen_ok = [g.satisfies(og) for g in P.evaluation]

    checks = []
    for d in range(bound // 2 + 1):
        deg = 2 * d
        basis = homogeneous_basis(nv, d)
        brute_vecs = [b.vector(basis) for b in brute.bases[deg]]
        brute_H = la.hermite_rows(brute_vecs, 2 * len(basis))
        gen_vecs = []
        integral = True
        for m in weighted_monomials(P.weights, d):
            val = _evaluate_monomial(P, m, nv)
            if not val.is_integral():
                integral = False
                continue
            gen_vecs.append(val.vector(basis))
        gen_H = la.hermite_rows(gen_vecs, 2 * len(basis))
        generated = all(la.in_lattice(v, gen_H) for v in brute_vecs)
        contained = integral and all(la.in_lattice(v, brute_H) for v in gen_vecs)
        contained = contained and all(
            gen_ok[i] for i, a in enumerate(_used_generators(P, d)) if a
        )
        checks.append(DegreeCheck(
            degree=deg,
            brute_rank=brute.hilbert.ranks[deg],
            presentation_rank=hilb.ranks[deg],
            expected_rank=expected_rank(n, d) if n >= 2 else None,
            relations_ok=deg not in bad_degrees,
            generated=generated,
            contained=contained,
            torsion=hilb.torsion.get(deg, ()),
        ))
    return VerifyReport(char, P, bound, tuple(checks), tuple(failing))


def _used_generators(P: RingPresentation, d: int) -> list[bool]:
    return [w <= d for w in P.weights]


def _evaluate_monomial(P: RingPresentation, e: Exponent, nv: int) -> PiecewisePolynomial:
    out = PiecewisePolynomial.constant(Polynomial.constant(nv, 1))
    for g, a in zip(P.evaluation, e):
        if a:
            out = out * g**a
    return out


def thom_classes(char: CharMatrix) -> list[ThomClass]:
    og = orbifold_graph(char)
    return [thom_class(char, F, og) for F in faces(char.n)]
