"""Sparse multivariate polynomials with rational coefficients and the
Jacobian bracket."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .errors import ArityMismatch, DegreeOverflow, DimensionMismatch
from .linalg import ZERO
from .product import permutation_parity

Exponent = tuple  # tuple[int, ...]


@dataclass(frozen=True)
class Polynomial:
    num_vars: int
    coeffs: Mapping[Exponent, Fraction] = field(default_factory=dict, hash=False)

    def __post_init__(self):
        clean = {}
        for e, c in self.coeffs.items():
            e = tuple(int(x) for x in e)
            if len(e) != self.num_vars or any(x < 0 for x in e):
                raise DimensionMismatch(f"bad exponent {e} for {self.num_vars} variables")
            c = linalg.as_rational(c)
            if c:
                clean[e] = clean.get(e, ZERO) + c
        object.__setattr__(self, "coeffs", {e: c for e, c in sorted(clean.items()) if c})

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff=1) -> "Polynomial":
        return cls(len(exponent), {tuple(exponent): coeff})

    @classmethod
    def variable(cls, num_vars: int, i: int) -> "Polynomial":
        """The coordinate x_i (1-based)."""
        e = [0] * num_vars
        e[i - 1] = 1
        return cls.monomial(e)

    @classmethod
    def constant(cls, num_vars: int, c) -> "Polynomial":
        return cls(num_vars, {(0,) * num_vars: c})

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.coeffs), default=-1)

    def min_degree(self) -> int:
        return min((sum(e) for e in self.coeffs), default=-1)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        acc = dict(self.coeffs)
        for e, c in other.coeffs.items():
            acc[e] = acc.get(e, ZERO) + c
        return Polynomial(self.num_vars, acc)

    def __neg__(self) -> "Polynomial":
        return self.scaled(-1)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scaled(self, c) -> "Polynomial":
        c = linalg.as_rational(c)
        return Polynomial(self.num_vars, {e: c * a for e, a in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scaled(other)
        acc: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, ZERO) + c1 * c2
        return Polynomial(self.num_vars, acc)

    def derivative(self, i: int) -> "Polynomial":
        """Partial derivative with respect to x_i (1-based)."""
        acc = {}
        for e, c in self.coeffs.items():
            k = e[i - 1]
            if k:
                e2 = list(e)
                e2[i - 1] -= 1
                acc[tuple(e2)] = c * k
        return Polynomial(self.num_vars, acc)

    def truncated(self, max_degree: int) -> "Polynomial":
        """Drop every term of total degree above ``max_degree``."""
        return Polynomial(self.num_vars, {e: c for e, c in self.coeffs.items() if sum(e) <= max_degree})

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        names = [f"x{i}" for i in range(1, self.num_vars + 1)]
        parts = []
        for e, c in self.coeffs.items():
            mono = "*".join(f"{n}^{k}" if k > 1 else n for n, k in zip(names, e) if k)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


def determinant(rows: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Leibniz expansion; fine for the small sizes used here."""
    n = len(rows)
    num_vars = rows[0][0].num_vars
    total = Polynomial(num_vars)
    for perm in itertools.permutations(range(n)):
        term = Polynomial.constant(num_vars, permutation_parity(perm))
        for i, j in enumerate(perm):
            term = term * rows[i][j]
            if term.is_zero():
                break
        total = total + term
    return total


def jacobian(polys: Sequence[Polynomial]) -> Polynomial:
    """det(d P_i / d x_j) for n polynomials in n variables."""
    n = len(polys)
    if any(p.num_vars != n for p in polys):
        raise ArityMismatch(f"the Jacobian bracket needs {n} polynomials in {n} variables")
    return determinant([[p.derivative(j) for j in range(1, n + 1)] for p in polys])


def polynomial_jacobian_bracket(polys: Sequence[Polynomial], degree_cap: int) -> Polynomial:
    """Exact Jacobian of ``polys``; inputs and result must have degree at most ``degree_cap``."""
    for p in polys:
        if p.degree() > degree_cap:
            raise DegreeOverflow(f"input of degree {p.degree()} exceeds cap {degree_cap}")
    result = jacobian(polys)
    if result.degree() > degree_cap:
        raise DegreeOverflow(f"Jacobian of degree {result.degree()} exceeds cap {degree_cap}")
    return result


@dataclass(frozen=True)
class TruncatedPolynomial:
    """Element of I_3 / I_r: only terms of total degree 3..r-1 are kept."""

    num_vars: int
    r: int
    poly: Polynomial

    def __post_init__(self):
        if self.poly.min_degree() != -1 and self.poly.min_degree() < 3:
            raise DegreeOverflow("terms of degree below 3 do not belong to I_3")
        object.__setattr__(self, "poly", self.poly.truncated(self.r - 1))

    @property
    def max_deg(self) -> int:
        return self.r - 1

    @property
    def coeffs(self):
        return self.poly.coeffs

    def __add__(self, other: "TruncatedPolynomial") -> "TruncatedPolynomial":
        return TruncatedPolynomial(self.num_vars, self.r, self.poly + other.poly)

    def scaled(self, c) -> "TruncatedPolynomial":
        return TruncatedPolynomial(self.num_vars, self.r, self.poly.scaled(c))


def truncated_jacobian(polys: Sequence[TruncatedPolynomial]) -> TruncatedPolynomial:
    r = polys[0].r
    jac = jacobian([p.poly for p in polys])
    if jac.min_degree() != -1 and jac.min_degree() < 3:
        raise DegreeOverflow("Jacobian produced a term of degree below 3")
    return TruncatedPolynomial(polys[0].num_vars, r, jac)


def monomial_basis(num_vars: int, low: int, high: int) -> list[Exponent]:
    """Exponents of total degree low..high, by degree, then higher powers of
    earlier variables first (x^3, x^2 y, x y^2, y^3, ...)."""
    out = []
    for d in range(low, high + 1):
        exps = [e for e in itertools.product(range(d + 1), repeat=num_vars) if sum(e) == d]
        exps.sort(reverse=True)
        out.extend(exps)
    return out
