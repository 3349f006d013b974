"""n-ary products given by structure constants.

A product on K^p of arity n is stored sparsely as a map from canonical
index tuples (1-based) to coefficient vectors.  The symmetry tag decides
which tuple is canonical and how a permuted tuple is evaluated:

* ``skew``: strictly increasing keys; a permutation multiplies by its sign
  and a repeated index gives zero.
* ``symmetric``: non-decreasing keys; evaluation ignores argument order.
* ``cyclic`` (arity 3): the lexicographically least rotation is stored.
* ``general``: every tuple is its own key.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg
from .errors import (
    ArityMismatch,
    DimensionMismatch,
    IndexOutOfRange,
    RepeatedIndexNonzero,
)
from .linalg import ZERO, Matrix, Subspace, Vector


class Symmetry(str, enum.Enum):
    GENERAL = "general"
    SKEW = "skew"
    SYMMETRIC = "symmetric"
    CYCLIC = "cyclic"

    def __str__(self) -> str:
        return self.value


def permutation_parity(seq: Sequence) -> int:
    """+1 or -1 according to the parity of the inversions of ``seq``."""
    sign = 1
    n = len(seq)
    for i in range(n):
        for j in range(i + 1, n):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def canonical_key(key: Sequence[int], symmetry: Symmetry) -> tuple[tuple[int, ...] | None, int]:
    """Map an index tuple to ``(stored key, sign)``.

    The stored key is ``None`` when the tuple evaluates to zero by symmetry
    (a repeated index of a skew product).
    """
    key = tuple(key)
    if symmetry is Symmetry.SKEW:
        if len(set(key)) < len(key):
            return None, 0
        return tuple(sorted(key)), permutation_parity(key)
    if symmetry is Symmetry.SYMMETRIC:
        return tuple(sorted(key)), 1
    if symmetry is Symmetry.CYCLIC:
        return min(key[i:] + key[:i] for i in range(len(key))), 1
    return key, 1


@dataclass(frozen=True, eq=True)
class NAryProduct:
    """Structure constants of an n-ary product on K^p.

    Construct through :func:`make_product` / :func:`make_skew_product`,
    which canonicalise keys; ``constants`` must never be mutated.
    """

    arity: int
    dim: int
    symmetry: Symmetry
    constants: Mapping[tuple[int, ...], Vector] = field(hash=False)

    def __hash__(self):
        return hash((self.arity, self.dim, self.symmetry, tuple(sorted(self.constants.items()))))

    @property
    def is_skew(self) -> bool:
        return self.symmetry is Symmetry.SKEW

    def is_abelian(self) -> bool:
        return not self.constants

    def basis_bracket(self, key: Sequence[int]) -> Vector | None:
        """mu(e_{i1}, ..., e_{in}) for a 1-based index tuple; ``None`` means zero."""
        stored, sign = canonical_key(key, self.symmetry)
        if stored is None:
            return None
        v = self.constants.get(stored)
        if v is None:
            return None
        return v if sign == 1 else tuple(-a for a in v)

    def zero(self) -> Vector:
        return linalg.zero_vector(self.dim)

    def e(self, i: int) -> Vector:
        return linalg.basis_vector(self.dim, i)

    def __call__(self, *args: Sequence) -> Vector:
        return bracket(self, args)

    def keys(self) -> list[tuple[int, ...]]:
        return sorted(self.constants)


def _check_key(key: Sequence[int], n: int, p: int) -> tuple[int, ...]:
    key = tuple(int(i) for i in key)
    if len(key) != n:
        raise ArityMismatch(f"tuple {key} has {len(key)} entries, arity is {n}")
    for i in key:
        if not 1 <= i <= p:
            raise IndexOutOfRange(f"index {i} in {key} outside 1..{p}")
    return key


def make_product(
    n: int,
    p: int,
    raw: Iterable[tuple[Sequence[int], Sequence]] | Mapping,
    symmetry: Symmetry | str = Symmetry.GENERAL,
) -> NAryProduct:
    """Build a product from ``(index tuple, coefficient vector)`` pairs.

    Tuples are mapped to their canonical representative (with the sign of
    the sorting permutation for skew products) and duplicates are summed.
    """
    symmetry = Symmetry(symmetry)
    if n < 2:
        raise ArityMismatch(f"arity must be at least 2, got {n}")
    if p < 1:
        raise DimensionMismatch(f"dimension must be at least 1, got {p}")
    if symmetry is Symmetry.CYCLIC and n != 3:
        raise ArityMismatch("cyclic symmetry is only defined for arity 3")
    items = raw.items() if isinstance(raw, Mapping) else raw
    acc: dict[tuple[int, ...], list[Fraction]] = {}
    for key, coeffs in items:
        key = _check_key(key, n, p)
        coeffs = linalg.vector(coeffs)
        if len(coeffs) != p:
            raise DimensionMismatch(f"coefficient vector for {key} has length {len(coeffs)}, expected {p}")
        stored, sign = canonical_key(key, symmetry)
        if stored is None:
            if not linalg.is_zero(coeffs):
                raise RepeatedIndexNonzero(key)
            continue
        slot = acc.setdefault(stored, [ZERO] * p)
        linalg.axpy(slot, sign, coeffs)
    constants = {k: tuple(v) for k, v in sorted(acc.items()) if any(v)}
    return NAryProduct(n, p, symmetry, constants)


def make_skew_product(n: int, p: int, raw) -> NAryProduct:
    return make_product(n, p, raw, Symmetry.SKEW)


def from_function(n: int, p: int, fn, symmetry: Symmetry | str = Symmetry.GENERAL) -> NAryProduct:
    """Tabulate ``fn(i1, ..., in) -> vector`` on the canonical basis tuples."""
    symmetry = Symmetry(symmetry)
    raw = [(key, fn(*key)) for key in canonical_tuples(n, p, symmetry)]
    return make_product(n, p, raw, symmetry)


def canonical_tuples(n: int, p: int, symmetry: Symmetry) -> Iterable[tuple[int, ...]]:
    """All stored-key candidates for a product of this shape, in lexicographic order."""
    idx = range(1, p + 1)
    if symmetry is Symmetry.SKEW:
        return itertools.combinations(idx, n)
    if symmetry is Symmetry.SYMMETRIC:
        return itertools.combinations_with_replacement(idx, n)
    if symmetry is Symmetry.CYCLIC:
        return (t for t in itertools.product(idx, repeat=n) if canonical_key(t, symmetry)[0] == t)
    return itertools.product(idx, repeat=n)


def bracket(prod: NAryProduct, args: Sequence[Sequence]) -> Vector:
    """Evaluate the product on ``n`` vectors by multilinear expansion."""
    if len(args) != prod.arity:
        raise ArityMismatch(f"{len(args)} arguments for a product of arity {prod.arity}")
    supports = []
    for a in args:
        if len(a) != prod.dim:
            raise DimensionMismatch(f"argument of length {len(a)} in K^{prod.dim}")
        s = linalg.support(a)
        if not s:
            return prod.zero()
        supports.append(s)
    acc = [ZERO] * prod.dim
    for combo in itertools.product(*supports):
        key = tuple(i for i, _ in combo)
        v = prod.basis_bracket(key)
        if v is None:
            continue
        c = Fraction(1)
        for _, a in combo:
            c *= a
        linalg.axpy(acc, c, v)
    return tuple(acc)


@dataclass(frozen=True)
class LinearMap:
    source_dim: int
    target_dim: int
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.shape != (self.target_dim, self.source_dim):
            raise DimensionMismatch(
                f"matrix shape {self.matrix.shape} does not match K^{self.source_dim} -> K^{self.target_dim}"
            )

    @classmethod
    def from_matrix(cls, m: Matrix) -> "LinearMap":
        return cls(m.cols, m.rows, m)

    @classmethod
    def from_images(cls, images: Sequence[Sequence], target_dim: int | None = None) -> "LinearMap":
        """Map sending e_i to ``images[i-1]``."""
        m = Matrix.from_columns(images, rows=target_dim)
        return cls(m.cols, m.rows, m)

    def __call__(self, v: Sequence) -> Vector:
        return self.matrix.apply(v)

    def kernel(self) -> Subspace:
        return linalg.nullspace(self.matrix)


def adjoint(prod: NAryProduct, args: Sequence[Sequence]) -> LinearMap:
    """The map v -> mu(args[0], ..., args[n-2], v)."""
    if len(args) != prod.arity - 1:
        raise ArityMismatch(f"adjoint needs {prod.arity - 1} vectors, got {len(args)}")
    p = prod.dim
    images = [bracket(prod, list(args) + [linalg.basis_vector(p, j)]) for j in range(1, p + 1)]
    return LinearMap.from_images(images, p)


def product_subspace(prod: NAryProduct, parts: Sequence[Subspace]) -> Subspace:
    """Span of mu(w_1, ..., w_n) over basis vectors w_i of ``parts[i]``."""
    if len(parts) != prod.arity:
        raise ArityMismatch(f"{len(parts)} subspaces for arity {prod.arity}")
    for w in parts:
        if w.ambient_dim != prod.dim:
            raise DimensionMismatch(f"subspace of K^{w.ambient_dim} for a product on K^{prod.dim}")
    if any(w.is_zero() for w in parts) or prod.is_abelian():
        return Subspace.zero(prod.dim)
    if all(w.is_full() for w in parts):
        return Subspace.span(prod.constants.values(), prod.dim)
    images = (bracket(prod, combo) for combo in itertools.product(*(w.basis for w in parts)))
    return Subspace.span(images, prod.dim)


def is_subalgebra(prod: NAryProduct, w: Subspace) -> bool:
    return product_subspace(prod, [w] * prod.arity) <= w


def is_ideal(prod: NAryProduct, ideal: Subspace) -> bool:
    """mu(V, ..., I, ..., V) lies in I for every slot holding I."""
    full = Subspace.full(prod.dim)
    for slot in range(prod.arity):
        parts = [full] * prod.arity
        parts[slot] = ideal
        if not product_subspace(prod, parts) <= ideal:
            return False
    return True


def is_morphism(src: NAryProduct, dst: NAryProduct, f: LinearMap) -> bool:
    """Check mu_dst(f x_1, ..., f x_n) == f(mu_src(x_1, ..., x_n)) on basis tuples."""
    if src.arity != dst.arity:
        raise ArityMismatch(f"arities {src.arity} and {dst.arity} differ")
    if f.source_dim != src.dim or f.target_dim != dst.dim:
        raise DimensionMismatch("linear map does not go from the source space to the target space")
    images = [f.matrix.column(j) for j in range(src.dim)]
    for key in itertools.product(range(1, src.dim + 1), repeat=src.arity):
        lhs = bracket(dst, [images[i - 1] for i in key])
        v = src.basis_bracket(key)
        rhs = f(v) if v is not None else dst.zero()
        if lhs != rhs:
            return False
    return True


def change_basis(prod: NAryProduct, new_basis: Sequence[Sequence]) -> NAryProduct:
    """Rewrite the product in the basis whose vectors (old coordinates) are ``new_basis``."""
    p = prod.dim
    if len(new_basis) != p:
        raise DimensionMismatch(f"{len(new_basis)} basis vectors for K^{p}")
    basis = [linalg.vector(b) for b in new_basis]
    change = Matrix.from_columns(basis, rows=p)
    if change.rank() != p:
        raise DimensionMismatch("new basis vectors are linearly dependent")
    inverse = _inverse(change)
    raw = []
    for key in canonical_tuples(prod.arity, p, prod.symmetry):
        v = bracket(prod, [basis[i - 1] for i in key])
        if any(v):
            raw.append((key, inverse.apply(v)))
    return make_product(prod.arity, p, raw, prod.symmetry)


def _inverse(m: Matrix) -> Matrix:
    p = m.rows
    augmented = Matrix.from_rows([m.row(i) + Matrix.identity(p).row(i) for i in range(p)])
    reduced, _ = linalg.rref(augmented)
    return Matrix.from_rows([r[p:] for r in reduced.entries])


def linear_combination(coeffs: Sequence, prods: Sequence[NAryProduct]) -> NAryProduct:
    """sum(c_i * mu_i) for products sharing arity, dimension and symmetry."""
    first = prods[0]
    for q in prods[1:]:
        if (q.arity, q.dim, q.symmetry) != (first.arity, first.dim, first.symmetry):
            raise DimensionMismatch("products must share arity, dimension and symmetry")
    raw = []
    for c, q in zip(coeffs, prods):
        c = linalg.as_rational(c)
        raw.extend((k, linalg.scale(c, v)) for k, v in q.constants.items())
    return make_product(first.arity, first.dim, raw, first.symmetry)
