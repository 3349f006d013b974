"""Exact linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`; vectors are plain tuples of
fractions.  Everything here is immutable and deterministic: the reduced
row-echelon form of a matrix is unique, so two :class:`Subspace` values
describe the same space exactly when their fields compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotNilpotent

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'a/b' string")
    return Fraction(x)


def vector(values: Iterable) -> Vector:
    return tuple(as_rational(v) for v in values)


def zero_vector(p: int) -> Vector:
    return (ZERO,) * p


def basis_vector(p: int, i: int) -> Vector:
    """The canonical basis vector e_i of K^p (``i`` is 1-based)."""
    if not 1 <= i <= p:
        raise IndexError(f"basis index {i} outside 1..{p}")
    return tuple(ONE if k == i - 1 else ZERO for k in range(p))


def is_zero(v: Sequence) -> bool:
    return not any(v)


def add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def axpy(acc: list, c, v: Sequence) -> None:
    """In-place ``acc += c * v`` on a mutable list."""
    if c:
        for k, a in enumerate(v):
            if a:
                acc[k] += c * a


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), ZERO)


def support(v: Sequence) -> list[tuple[int, Fraction]]:
    """Nonzero coordinates as ``(1-based index, value)`` pairs."""
    return [(k + 1, a) for k, a in enumerate(v) if a]


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch(f"entries do not form a {self.rows}x{self.cols} grid")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        data = tuple(vector(r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        cols = [vector(c) for c in columns]
        if rows is None:
            rows = len(cols[0]) if cols else 0
        return cls(rows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(rows)))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, tuple((ZERO,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, p: int) -> "Matrix":
        return cls(p, p, tuple(tuple(ONE if i == j else ZERO for j in range(p)) for i in range(p)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else ())

    def flatten(self) -> Vector:
        return tuple(a for r in self.entries for a in r)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(add(a, b) for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(sub(a, b) for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return self.scaled(-1)

    def scaled(self, c) -> "Matrix":
        c = as_rational(c)
        return Matrix(self.rows, self.cols, tuple(scale(c, r) for r in self.entries))

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for a matrix with {self.cols} columns")
        return tuple(dot(r, v) for r in self.entries)

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return self.apply(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for r in self.entries:
            acc = [ZERO] * other.cols
            for k, a in enumerate(r):
                if a:
                    axpy(acc, a, other.entries[k])
            out.append(tuple(acc))
        return Matrix(self.rows, other.cols, tuple(out))

    def __pow__(self, k: int) -> "Matrix":
        if self.rows != self.cols:
            raise DimensionMismatch("power of a non-square matrix")
        result = Matrix.identity(self.rows)
        for _ in range(k):
            result = result @ self
        return result

    def commutator(self, other: "Matrix") -> "Matrix":
        return self @ other - other @ self

    def rank(self) -> int:
        return rref(self)[1]

    def _same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise DimensionMismatch(f"shape {self.shape} vs {other.shape}")

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(a) for a in r) + "]" for r in self.entries)


def _reduced_rows(rows: Iterable[Sequence], ncols: int) -> dict[int, dict[int, Fraction]]:
    """Sparse Gauss-Jordan elimination.

    Returns ``{pivot column: row}`` with rows stored as ``{column: value}``
    dicts, each pivot normalised to 1 and cleared from every other row.
    Rows may be dense sequences or sparse dicts keyed by 0-based column.
    """
    pivots: dict[int, dict[int, Fraction]] = {}
    for raw in rows:
        if isinstance(raw, dict):
            row = {c: as_rational(a) for c, a in raw.items() if a}
        else:
            if len(raw) != ncols:
                raise DimensionMismatch(f"row of length {len(raw)} for {ncols} columns")
            row = {c: as_rational(a) for c, a in enumerate(raw) if a}
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                inv = 1 / row[c]
                pivots[c] = {k: a * inv for k, a in row.items()}
                break
            f = row[c]
            for k, a in piv.items():
                val = row.get(k, ZERO) - f * a
                if val:
                    row[k] = val
                else:
                    row.pop(k, None)
    # back substitution: clear every pivot column above its pivot
    for c in sorted(pivots, reverse=True):
        piv = pivots[c]
        for c2, other in pivots.items():
            if c2 < c and c in other:
                f = other[c]
                for k, a in piv.items():
                    val = other.get(k, ZERO) - f * a
                    if val:
                        other[k] = val
                    else:
                        other.pop(k, None)
    return pivots


def _dense(row: dict[int, Fraction], ncols: int) -> Vector:
    out = [ZERO] * ncols
    for k, a in row.items():
        out[k] = a
    return tuple(out)


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Reduced row-echelon form of ``m`` and its rank."""
    pivots = _reduced_rows(m.entries, m.cols)
    rows = [_dense(pivots[c], m.cols) for c in sorted(pivots)]
    rank = len(rows)
    rows.extend([(ZERO,) * m.cols] * (m.rows - rank))
    return Matrix(m.rows, m.cols, tuple(rows)), rank


def _kernel_from_pivots(pivots: dict[int, dict[int, Fraction]], ncols: int) -> list[Vector]:
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for c, row in pivots.items():
            a = row.get(f)
            if a:
                v[c] = -a
        out.append(tuple(v))
    return out


def nullspace_of_rows(rows: Iterable[Sequence], ncols: int) -> "Subspace":
    """Kernel of the linear system whose equations are ``rows``.

    Rows can be dense or sparse (dict keyed by 0-based column); large
    sparse systems such as the derivation equations go through here.
    """
    pivots = _reduced_rows(rows, ncols)
    return Subspace.span(_kernel_from_pivots(pivots, ncols), ncols)


def nullspace(m: Matrix) -> "Subspace":
    """ker(m) as a subspace of K^cols."""
    return nullspace_of_rows(m.entries, m.cols)


@dataclass(frozen=True)
class Subspace:
    """A subspace of K^p stored by its reduced row-echelon basis."""

    ambient_dim: int
    basis: tuple  # tuple of RREF row vectors

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        pivots = _reduced_rows(vectors, ambient_dim)
        return cls(ambient_dim, tuple(_dense(pivots[c], ambient_dim) for c in sorted(pivots)))

    @classmethod
    def zero(cls, p: int) -> "Subspace":
        return cls(p, ())

    @classmethod
    def full(cls, p: int) -> "Subspace":
        return cls(p, tuple(basis_vector(p, i) for i in range(1, p + 1)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def pivots(self) -> list[int]:
        return [next(k for k, a in enumerate(r) if a) for r in self.basis]

    def reduce(self, v: Sequence) -> Vector:
        """Remainder of ``v`` after elimination against the basis (a canonical
        representative of v modulo the subspace)."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in K^{self.ambient_dim}")
        out = list(vector(v))
        for piv, row in zip(self.pivots(), self.basis):
            axpy(out, -out[piv], row)
        return tuple(out)

    def contains(self, v: Sequence) -> bool:
        return is_zero(self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def __le__(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return all(other.contains(b) for b in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return subspace_intersection(self, other)

    def __str__(self) -> str:
        if not self.basis:
            return "0"
        return "span{" + ", ".join("(" + ", ".join(str(a) for a in b) + ")" for b in self.basis) + "}"


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim} differ")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    return Subspace.span(a.basis + b.basis, a.ambient_dim)


def subspace_contains(a: Subspace, v: Sequence) -> bool:
    return a.contains(v)


def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    if a.is_zero() or b.is_zero():
        return Subspace.zero(a.ambient_dim)
    # x = sum(s_i a_i) = sum(t_j b_j): solve for (s, t) in the kernel of [A^T | -B^T]
    p, k = a.ambient_dim, a.dim
    cols = list(a.basis) + [scale(-1, v) for v in b.basis]
    system = Matrix.from_columns(cols, rows=p)
    kernel = nullspace(system)
    vecs = []
    for sol in kernel.basis:
        acc = [ZERO] * p
        for s, v in zip(sol[:k], a.basis):
            axpy(acc, s, v)
        vecs.append(acc)
    return Subspace.span(vecs, p)


def is_nilpotent_matrix(m: Matrix) -> bool:
    """True iff some power of the square matrix ``m`` vanishes."""
    if m.rows != m.cols:
        raise DimensionMismatch("nilpotency of a non-square matrix")
    power = m
    for _ in range(m.rows):
        if power.is_zero():
            return True
        power = power @ m
    return power.is_zero()


def nilpotent_jordan_blocks(m: Matrix) -> tuple[int, ...]:
    """Jordan block sizes of a nilpotent matrix, largest first.

    With r_k = rank(m^k) and r_0 = p, the number of blocks of size at least k
    is r_{k-1} - r_k.
    """
    if m.rows != m.cols:
        raise DimensionMismatch("Jordan blocks of a non-square matrix")
    p = m.rows
    ranks = [p]
    power = Matrix.identity(p)
    while ranks[-1] > 0:
        if len(ranks) > p:
            raise NotNilpotent(f"m^{p} != 0")
        power = power @ m
        ranks.append(power.rank())
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    blocks: list[int] = []
    for k in range(len(at_least), 0, -1):
        exactly = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
        blocks.extend([k] * exactly)
    return tuple(blocks)
