"""Exterior forms on the dual space and the operator d built from structure constants.

For a skew n-ary product with constants C, ``d omega_l`` is the n-form with
coefficient ``C^l_I`` on each increasing n-tuple ``I``.  ``d`` is extended to
n-forms factor by factor; ``d(d omega_l) = 0`` for all ``l`` encodes the
shuffle-summed Jacobi identity.

Two sign rules for the extension are available:

``graded``   d(w_1 ^ .. ^ w_n) = sum_k (-1)^((n-1)(k-1)) w_1 ^ .. ^ dw_k ^ .. ^ w_n
``all_plus`` the same sum with every sign +1.

They coincide for odd n.  With the graded rule the coefficient of an
increasing (2n-1)-tuple J in ``d(d omega_l)`` equals the l-component of the
sh-Jacobi sum at J exactly (scalar 1) for every arity; the all-plus rule
loses that agreement for even n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import linalg
from .errors import DimensionMismatch, IndexOutOfRange, NotSkew
from .identities import PASS, VACUOUS
from .linalg import ZERO
from .product import NAryProduct, Symmetry

SIGN_RULES = ("graded", "all_plus")


def _sort_with_sign(key) -> tuple[tuple[int, ...] | None, int]:
    if len(set(key)) != len(key):
        return None, 0
    sign = 1
    k = list(key)
    for i in range(len(k)):
        for j in range(len(k) - 1 - i):
            if k[j] > k[j + 1]:
                k[j], k[j + 1] = k[j + 1], k[j]
                sign = -sign
    return tuple(k), sign


@dataclass(frozen=True)
class ExteriorForm:
    ambient_dim: int
    degree: int
    terms: Mapping[tuple[int, ...], Fraction] = field(default_factory=dict, hash=False)

    def __post_init__(self):
        acc: dict[tuple[int, ...], Fraction] = {}
        for key, c in self.terms.items():
            key = tuple(int(i) for i in key)
            if len(key) != self.degree:
                raise DimensionMismatch(f"key {key} in a form of degree {self.degree}")
            if any(i < 1 or i > self.ambient_dim for i in key):
                raise IndexOutOfRange(f"key {key} outside 1..{self.ambient_dim}")
            canon, sign = _sort_with_sign(key)
            c = linalg.as_rational(c)
            if canon is None or not c:
                continue
            acc[canon] = acc.get(canon, ZERO) + sign * c
        object.__setattr__(self, "terms", {k: c for k, c in sorted(acc.items()) if c})

    @classmethod
    def zero(cls, p: int, degree: int) -> "ExteriorForm":
        return cls(p, degree, {})

    @classmethod
    def basis(cls, p: int, *indices: int, coeff=1) -> "ExteriorForm":
        """omega_{i1} ^ .. ^ omega_{ik} (indices in any order)."""
        return cls(p, len(indices), {tuple(indices): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, key) -> Fraction:
        canon, sign = _sort_with_sign(tuple(key))
        if canon is None:
            return ZERO
        return sign * self.terms.get(canon, ZERO)

    def _check(self, other: "ExteriorForm") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(f"forms on K^{self.ambient_dim} and K^{other.ambient_dim}")

    def __add__(self, other: "ExteriorForm") -> "ExteriorForm":
        self._check(other)
        if self.degree != other.degree:
            raise DimensionMismatch(f"degrees {self.degree} and {other.degree} differ")
        acc = dict(self.terms)
        for k, c in other.terms.items():
            acc[k] = acc.get(k, ZERO) + c
        return ExteriorForm(self.ambient_dim, self.degree, acc)

    def scaled(self, c) -> "ExteriorForm":
        c = linalg.as_rational(c)
        return ExteriorForm(self.ambient_dim, self.degree, {k: c * a for k, a in self.terms.items()})

    def __neg__(self) -> "ExteriorForm":
        return self.scaled(-1)

    def __sub__(self, other: "ExteriorForm") -> "ExteriorForm":
        return self + (-other)

    def __xor__(self, other: "ExteriorForm") -> "ExteriorForm":
        return wedge(self, other)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*w{''.join(f'[{i}]' for i in k)}" for k, c in self.terms.items())


def wedge(a: ExteriorForm, b: ExteriorForm) -> ExteriorForm:
    a._check(b)
    acc: dict = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            canon, sign = _sort_with_sign(ka + kb)
            if canon is not None:
                acc[canon] = acc.get(canon, ZERO) + sign * ca * cb
    return ExteriorForm(a.ambient_dim, a.degree + b.degree, acc)


def _require_skew(prod: NAryProduct) -> None:
    if prod.symmetry is not Symmetry.SKEW:
        raise NotSkew("the Maurer-Cartan operator needs a skew product")


def d_one(prod: NAryProduct, l: int) -> ExteriorForm:
    """d omega_l: coefficient C^l_I on every increasing n-tuple I."""
    _require_skew(prod)
    if not 1 <= l <= prod.dim:
        raise IndexOutOfRange(f"index {l} outside 1..{prod.dim}")
    return ExteriorForm(
        prod.dim, prod.arity, {key: vec[l - 1] for key, vec in prod.constants.items() if vec[l - 1]}
    )


def _differentials(prod: NAryProduct) -> list[ExteriorForm]:
    return [d_one(prod, l) for l in range(1, prod.dim + 1)]


def d_extend(prod: NAryProduct, form: ExteriorForm, sign_rule: str = "graded", _ds=None) -> ExteriorForm:
    """Extend d to a form of degree n, replacing each factor by its differential in place."""
    _require_skew(prod)
    if sign_rule not in SIGN_RULES:
        raise ValueError(f"sign_rule must be one of {SIGN_RULES}")
    n, p = prod.arity, prod.dim
    if form.degree != n:
        raise DimensionMismatch(f"d_extend needs a form of degree {n}, got {form.degree}")
    if form.ambient_dim != p:
        raise DimensionMismatch(f"form on K^{form.ambient_dim}, algebra of dimension {p}")
    ds = _ds if _ds is not None else _differentials(prod)
    acc: dict = {}
    for key, c in form.terms.items():
        for k, idx in enumerate(key):
            dk = ds[idx - 1]
            if not dk.terms:
                continue
            sign = 1 if sign_rule == "all_plus" else (-1) ** ((n - 1) * k)
            left, right = key[:k], key[k + 1 :]
            for inner, a in dk.terms.items():
                canon, s = _sort_with_sign(left + inner + right)
                if canon is not None:
                    acc[canon] = acc.get(canon, ZERO) + sign * s * c * a
    return ExteriorForm(p, 2 * n - 1, acc)


def dd(prod: NAryProduct, l: int, sign_rule: str = "graded") -> ExteriorForm:
    """d(d omega_l)."""
    return d_extend(prod, d_one(prod, l), sign_rule)


@dataclass(frozen=True)
class MaurerCartanDefect:
    """Failure of d(d omega_l) = 0: the first offending l, its form, and the first tuple."""

    index: int
    defect: ExteriorForm
    basis_tuple: tuple[int, ...]
    ok: bool = False


def maurer_cartan_check(prod: NAryProduct, sign_rule: str = "graded"):
    """PASS when d(d omega_l) vanishes for every l.

    On failure, ``basis_tuple`` is the lexicographically least increasing
    (2n-1)-tuple carrying a nonzero coefficient in some d(d omega_l), and
    ``index`` is the least such l.
    """
    _require_skew(prod)
    n, p = prod.arity, prod.dim
    if p < 2 * n - 1:
        return VACUOUS
    ds = _differentials(prod)
    forms = [d_extend(prod, ds[l], sign_rule, _ds=ds) for l in range(p)]
    best = None
    for l, f in enumerate(forms, 1):
        if f.terms:
            first = next(iter(f.terms))
            if best is None or first < best[1]:
                best = (l, first)
    if best is None:
        return PASS
    return MaurerCartanDefect(best[0], forms[best[0] - 1], best[1])


def coefficient_table(prod: NAryProduct, sign_rule: str = "graded") -> dict[tuple[int, ...], list[Fraction]]:
    """Per increasing (2n-1)-tuple, the vector of its coefficients in d(d omega_1..p)."""
    ds = _differentials(prod)
    forms = [d_extend(prod, ds[l], sign_rule, _ds=ds) for l in range(prod.dim)]
    out = {}
    for key in itertools.combinations(range(1, prod.dim + 1), 2 * prod.arity - 1):
        out[key] = [f.terms.get(key, ZERO) for f in forms]
    return out
