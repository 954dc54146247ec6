"""Multivariate polynomials with exact rational coefficients.

A polynomial is a frozen map from exponent tuples to nonzero ``Fraction``
coefficients. Polynomial degree d here is cohomological degree 2d; the
doubling only happens where results are reported.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import comb, gcd, lcm
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence

Exponent = tuple[int, ...]


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"coefficient must be rational, got {type(c).__name__}")


def grlex_key(e: Exponent) -> tuple:
    # descending graded lex: higher total degree first, then x1 > x2 > ...
    return (-sum(e), tuple(-a for a in e))


@dataclass(frozen=True)
class Polynomial:
    n_vars: int
    terms: Mapping[Exponent, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for e, c in self.terms.items():
            e = tuple(int(a) for a in e)
            if len(e) != self.n_vars or any(a < 0 for a in e):
                raise ValueError(f"bad exponent {e} for {self.n_vars} variables")
            c = _frac(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
        clean = {e: c for e, c in clean.items() if c}
        object.__setattr__(self, "terms", dict(sorted(clean.items(), key=lambda t: grlex_key(t[0]))))

    # constructors
    @classmethod
    def zero(cls, n_vars: int) -> Polynomial:
        return cls(n_vars, {})

    @classmethod
    def constant(cls, n_vars: int, c) -> Polynomial:
        return cls(n_vars, {(0,) * n_vars: c})

    @classmethod
    def var(cls, n_vars: int, i: int) -> Polynomial:
        e = [0] * n_vars
        e[i] = 1
        return cls(n_vars, {tuple(e): 1})

    @classmethod
    def linear(cls, coeffs: Sequence) -> Polynomial:
        n = len(coeffs)
        return cls(n, {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)})

    @classmethod
    def monomial(cls, exponent: Exponent, c=1) -> Polynomial:
        return cls(len(exponent), {tuple(exponent): c})

    # basic protocol
    def __hash__(self):
        return hash((self.n_vars, tuple(self.terms.items())))

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.n_vars == other.n_vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.n_vars, other)
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self) -> Iterator[tuple[Exponent, Fraction]]:
        return iter(self.terms.items())

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.n_vars != self.n_vars:
                raise ValueError("variable count mismatch")
            return other
        return Polynomial.constant(self.n_vars, other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return Polynomial(self.n_vars, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.n_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = _frac(other)
            return Polynomial(self.n_vars, {e: c * v for e, v in self.terms.items()})
        other = self._coerce(other)
        t: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Polynomial(self.n_vars, t)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = _frac(c)
        return Polynomial(self.n_vars, {e: v / c for e, v in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(self.n_vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # inspection
    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        return len(degs) == 1 and (degree is None or degs == {degree})

    def coefficient(self, e: Exponent) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    def coefficients(self, basis: Sequence[Exponent]) -> list[Fraction]:
        missing = set(self.terms) - set(basis)
        if missing:
            raise ValueError(f"terms {sorted(missing)} are outside the given basis")
        return [self.coefficient(e) for e in basis]

    @classmethod
    def from_coefficients(cls, n_vars: int, basis: Sequence[Exponent], coeffs: Iterable) -> Polynomial:
        return cls(n_vars, dict(zip(basis, coeffs)))

    def substitute(self, values: Sequence[Polynomial]) -> Polynomial:
        """Evaluate with variable i replaced by ``values[i]``."""
        if len(values) != self.n_vars:
            raise ValueError("need one value per variable")
        target = values[0].n_vars if values else 0
        out = Polynomial.zero(target)
        for e, c in self.terms.items():
            term = Polynomial.constant(target, c)
            for v, a in zip(values, e):
                if a:
                    term = term * v**a
            out = out + term
        return out

    def __repr__(self):
        return f"Polynomial({render(self)!r})"

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class LinearForm:
    """An element of the rational dual lattice, i.e. a degree-1 form."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(_frac(c) for c in self.coeffs))

    @property
    def n_vars(self) -> int:
        return len(self.coeffs)

    def pair(self, v: Sequence[int]) -> Fraction:
        return sum((c * x for c, x in zip(self.coeffs, v)), Fraction(0))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def denominator(self) -> int:
        """Least positive integer r with r * self integral."""
        return reduce(lcm, (c.denominator for c in self.coeffs), 1)

    def scaled(self, c) -> LinearForm:
        c = _frac(c)
        return LinearForm(tuple(c * a for a in self.coeffs))

    def to_poly(self) -> Polynomial:
        return Polynomial.linear(self.coeffs)

    def __str__(self):
        return render(self.to_poly())


# --- content, integrality, division -------------------------------------

def content_and_primitive(p: Polynomial) -> tuple[Fraction, Polynomial]:
    """Split ``p = c * q`` with c > 0 rational and q integral of content 1."""
    if not p:
        raise ValueError("the zero polynomial has no content")
    coeffs = list(p.terms.values())
    num = reduce(gcd, (c.numerator for c in coeffs))
    den = reduce(lcm, (c.denominator for c in coeffs))
    c = Fraction(abs(num), den)
    return c, p / c


def joint_content(polys: Iterable[Polynomial]) -> Fraction:
    """Content of a tuple of polynomials taken together (zeros skipped)."""
    coeffs = [c for p in polys for c in p.terms.values()]
    if not coeffs:
        raise ValueError("all polynomials are zero")
    return Fraction(abs(reduce(gcd, (c.numerator for c in coeffs))),
                    reduce(lcm, (c.denominator for c in coeffs)))


def is_integral(p: Polynomial) -> bool:
    return all(c.denominator == 1 for c in p.terms.values())


def homogeneous_basis(n_vars: int, degree: int) -> list[Exponent]:
    """All exponent vectors of total degree ``degree``, in graded-lex order."""
    if degree < 0:
        return []

    def rec(k: int, d: int) -> Iterator[tuple[int, ...]]:
        if k == 1:
            yield (d,)
            return
        for a in range(d, -1, -1):
            for rest in rec(k - 1, d - a):
                yield (a,) + rest

    out = list(rec(n_vars, degree))
    assert len(out) == comb(degree + n_vars - 1, n_vars - 1)
    return out


def divides_linear(f: LinearForm | Polynomial, p: Polynomial) -> tuple[bool, Polynomial | None]:
    """Exact test whether the linear form ``f`` divides ``p``.

    Returns ``(True, quotient)`` or ``(False, None)``.
    """
    fp = f.to_poly() if isinstance(f, LinearForm) else f
    if not fp:
        raise ZeroDivisionError("division by the zero form")
    if fp.degree != 1 or not fp.is_homogeneous(1):
        raise ValueError("divisor must be a homogeneous linear form")
    n = p.n_vars
    k = next(i for i in range(n) if fp.coefficient(tuple(int(i == j) for j in range(n))))
    lead = fp.coefficient(tuple(int(k == j) for j in range(n)))
    rem = p
    quot = Polynomial.zero(n)
    while rem:
        # eliminate the term with the highest power of x_k
        e, c = max(rem.terms.items(), key=lambda t: (t[0][k], t[0]))
        if e[k] == 0:
            return False, None
        qe = tuple(a - int(j == k) for j, a in enumerate(e))
        t = Polynomial.monomial(qe, c / lead)
        quot = quot + t
        rem = rem - t * fp
    return True, quot


# --- rendering -------------------------------------------------------------

_ALIASES = ("x", "y", "z")


def var_names(n_vars: int, aliases: bool = False) -> list[str]:
    if aliases and n_vars <= 3:
        return list(_ALIASES[:n_vars])
    return [f"x{i + 1}" for i in range(n_vars)]


def render(p: Polynomial, names: Sequence[str] | None = None, aliases: bool = False) -> str:
    """Canonical text, e.g. ``5*x1 - x2`` or ``5/2*x1^2*x2``."""
    names = list(names) if names is not None else var_names(p.n_vars, aliases)
    if not p:
        return "0"
    parts = []
    for i, (e, c) in enumerate(p.terms.items()):
        mono = "*".join(
            name if a == 1 else f"{name}^{a}" for name, a in zip(names, e) if a
        )
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if i == 0:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(parts)
