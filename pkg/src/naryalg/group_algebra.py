"""Permutations and the group algebra K[S_m].

Permutations are image tuples on 1..m and compose right to left:
``(a * b)(x) == a(b(x))``.  The same convention is used when a
permutation acts on the arguments of a nested product (see
:func:`evaluate_nested`): slot ``k`` receives argument ``sigma(k)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg
from .errors import DimensionMismatch, GroupTooLarge, NotProportional, PermutationError
from .linalg import ZERO, Vector

MAX_FULL_DEGREE = 7


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise PermutationError(f"{images} is not a permutation of 1..{len(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(tuple(range(1, m + 1)))

    @classmethod
    def cycle(cls, m: int, *points: int) -> "Permutation":
        """The cycle (points[0] -> points[1] -> ... -> points[0]) in S_m."""
        images = list(range(1, m + 1))
        for a, b in zip(points, points[1:] + points[:1]):
            images[a - 1] = b
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise DimensionMismatch(f"degrees {self.degree} and {other.degree} differ")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        for _ in range(k):
            result = result * self
        return result

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images, 1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    @property
    def sign(self) -> int:
        sign = 1
        seen = [False] * self.degree
        for start in range(self.degree):
            if seen[start]:
                continue
            length = 0
            j = start
            while not seen[j]:
                seen[j] = True
                j = self.images[j] - 1
                length += 1
            if length % 2 == 0:
                sign = -sign
        return sign

    @property
    def parity(self) -> int:
        """epsilon(sigma): 0 for even, 1 for odd permutations."""
        return 0 if self.sign == 1 else 1

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.degree + 1))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.images)) + ")"


def all_permutations(m: int) -> list[Permutation]:
    return [Permutation(p) for p in itertools.permutations(range(1, m + 1))]


def shuffles(n: int, k: int) -> list[Permutation]:
    """(n, k)-shuffles of S_{n+k}, increasing on 1..n and on n+1..n+k.

    Returned in lexicographic order of their image tuples; there are
    C(n+k, n) of them.
    """
    if n < 1 or k < 1:
        raise ValueError("shuffle sizes must be positive")
    m = n + k
    out = []
    for head in itertools.combinations(range(1, m + 1), n):
        tail = tuple(i for i in range(1, m + 1) if i not in head)
        out.append(Permutation(head + tail))
    return out


class GroupAlgebraElement:
    """A finite rational combination of permutations of a fixed degree."""

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: Mapping[Permutation, object] | Iterable = ()):
        self.m = m
        acc: dict[Permutation, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for perm, c in items:
            if perm.degree != m:
                raise DimensionMismatch(f"permutation of degree {perm.degree} in K[S_{m}]")
            acc[perm] = acc.get(perm, ZERO) + linalg.as_rational(c)
        self.terms = {p: c for p, c in sorted(acc.items()) if c}

    @classmethod
    def delta(cls, perm: Permutation, coeff=1) -> "GroupAlgebraElement":
        return cls(perm.degree, {perm: coeff})

    @classmethod
    def identity(cls, m: int) -> "GroupAlgebraElement":
        return cls.delta(Permutation.identity(m))

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, perm: Permutation) -> Fraction:
        return self.terms.get(perm, ZERO)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupAlgebraElement) and self.m == other.m and self.terms == other.terms

    def __hash__(self):
        return hash((self.m, tuple(self.terms.items())))

    def _check(self, other: "GroupAlgebraElement") -> None:
        if self.m != other.m:
            raise DimensionMismatch(f"K[S_{self.m}] and K[S_{other.m}]")

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        self._check(other)
        return GroupAlgebraElement(self.m, list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> "GroupAlgebraElement":
        return self.scaled(-1)

    def __sub__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        return self + (-other)

    def scaled(self, c) -> "GroupAlgebraElement":
        c = linalg.as_rational(c)
        return GroupAlgebraElement(self.m, {p: c * a for p, a in self.terms.items()})

    def __rmul__(self, c) -> "GroupAlgebraElement":
        return self.scaled(c)

    def __mul__(self, other):
        if isinstance(other, GroupAlgebraElement):
            return compose(self, other)
        return self.scaled(other)

    def __repr__(self) -> str:
        if not self.terms:
            return f"GroupAlgebraElement({self.m}, 0)"
        body = " + ".join(f"{c}*{p}" for p, c in self.terms.items())
        return f"GroupAlgebraElement({self.m}, {body})"


def compose(a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    """Bilinear extension of permutation composition, ``a o b``."""
    a._check(b)
    acc: dict[Permutation, Fraction] = {}
    for pa, ca in a.terms.items():
        for pb, cb in b.terms.items():
            prod = pa * pb
            acc[prod] = acc.get(prod, ZERO) + ca * cb
    return GroupAlgebraElement(a.m, acc)


def filippov_vector(n: int) -> GroupAlgebraElement:
    """Element v of K[S_{2n-1}] with mu o (mu x I) o v equal to the Filippov identity.

    v = Id + sum_i (-1)^i pi_i where pi_i has images
    (i, n+1, ..., 2n-1, 1, ..., i-1, i+1, ..., n).
    """
    if n < 2:
        raise ValueError("arity must be at least 2")
    m = 2 * n - 1
    terms = [(Permutation.identity(m), 1)]
    for i in range(1, n + 1):
        images = (i,) + tuple(range(n + 1, m + 1)) + tuple(j for j in range(1, n + 1) if j != i)
        terms.append((Permutation(images), (-1) ** i))
    return GroupAlgebraElement(m, terms)


def total_antisym_vector(m: int) -> GroupAlgebraElement:
    """w = sum over S_m of sign(sigma) * sigma."""
    if m < 1:
        raise ValueError("degree must be positive")
    if m > MAX_FULL_DEGREE:
        raise GroupTooLarge(f"S_{m} has more than {MAX_FULL_DEGREE}! elements; refusing")
    return GroupAlgebraElement(m, [(p, p.sign) for p in all_permutations(m)])


def proportionality_to_antisym(x: GroupAlgebraElement) -> Fraction:
    """Return alpha with x == alpha * w, or raise NotProportional."""
    if not x.terms:
        return ZERO
    alpha = x.coefficient(Permutation.identity(x.m))
    if alpha == 0 or len(x.terms) != _factorial(x.m):
        raise NotProportional("element is not a multiple of the total antisymmetrizer")
    for p, c in x.terms.items():
        if c != alpha * p.sign:
            raise NotProportional(f"coefficient of {p} is {c}, expected {alpha * p.sign}")
    return alpha


def _factorial(m: int) -> int:
    out = 1
    for k in range(2, m + 1):
        out *= k
    return out


def verify_wv_identity(n: int) -> Fraction:
    """Compute w o v for the Filippov element v and return alpha(n) with w o v = alpha(n) w."""
    if n < 2:
        raise ValueError("arity must be at least 2")
    m = 2 * n - 1
    return proportionality_to_antisym(compose(total_antisym_vector(m), filippov_vector(n)))


def colored_reduction(alpha, beta, gamma) -> Fraction:
    """w o (alpha Id + beta c + gamma c^2) in K[S_3], returned as its multiple of w."""
    c = Permutation.cycle(3, 1, 2, 3)
    v = GroupAlgebraElement(3, [(Permutation.identity(3), alpha), (c, beta), (c * c, gamma)])
    return proportionality_to_antisym(compose(total_antisym_vector(3), v))


def evaluate_nested(prod, element: GroupAlgebraElement, args: Sequence[Sequence]) -> Vector:
    """Evaluate mu o (mu x I_{n-1}) o element on ``2n-1`` vectors.

    Each permutation sigma contributes
    ``c * mu(mu(x_s(1), ..., x_s(n)), x_s(n+1), ..., x_s(2n-1))``.
    """
    n = prod.arity
    if element.m != 2 * n - 1 or len(args) != element.m:
        raise DimensionMismatch(f"need an element of K[S_{2 * n - 1}] and {2 * n - 1} arguments")
    from .product import bracket

    acc = [ZERO] * prod.dim
    for perm, c in element.terms.items():
        xs = [args[perm(k) - 1] for k in range(1, element.m + 1)]
        inner = bracket(prod, xs[:n])
        if not any(inner):
            continue
        linalg.axpy(acc, c, bracket(prod, [inner] + xs[n:]))
    return tuple(acc)


def first_nonvanishing(prod, element: GroupAlgebraElement, blocks: Sequence[int] | None = None):
    """First basis tuple where the nested evaluation of ``element`` is nonzero.

    ``blocks`` lists consecutive argument groups in which the evaluation is
    alternating (for a skew product); each group runs over strictly
    increasing index tuples.  Use ``(n, n - 1)`` for the Filippov element
    and the default single block for the antisymmetrizer.  Returns ``None``
    when the evaluation vanishes on every such tuple.
    """
    blocks = tuple(blocks) if blocks is not None else (element.m,)
    if sum(blocks) != element.m:
        raise DimensionMismatch(f"blocks {blocks} do not cover {element.m} arguments")
    ranges = [itertools.combinations(range(1, prod.dim + 1), b) for b in blocks]
    for parts in itertools.product(*ranges):
        key = tuple(i for part in parts for i in part)
        args = [linalg.basis_vector(prod.dim, i) for i in key]
        if any(evaluate_nested(prod, element, args)):
            return key
    return None
