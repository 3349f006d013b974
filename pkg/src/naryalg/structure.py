"""Structural invariants: series, nilpotency, characteristic sequences,
derivations and diagonal weight systems."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .errors import DependentVectors, NotNilpotent, NotNilpotentOperator, NotSkew
from .linalg import ZERO, Matrix, Subspace, Vector
from .product import NAryProduct, adjoint, canonical_tuples, change_basis, product_subspace

DEFAULT_RANDOM_TUPLES = 8
RANDOM_COEFF_RANGE = 5


@dataclass(frozen=True)
class SeriesReport:
    kind: str  # "derived" or "lower_central"
    terms: tuple[Subspace, ...]
    stabilized: bool
    vanishing_index: int | None

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(t.dim for t in self.terms)


def _series(prod: NAryProduct, kind: str) -> SeriesReport:
    full = Subspace.full(prod.dim)
    terms = [full]
    while True:
        last = terms[-1]
        if last.is_zero():
            return SeriesReport(kind, tuple(terms), False, len(terms))
        if kind == "derived":
            parts = [last, last] + [full] * (prod.arity - 2)
        else:
            parts = [last] + [full] * (prod.arity - 1)
        nxt = product_subspace(prod, parts)
        if nxt in terms:
            # repeats an earlier term (normally the last one): the series is stationary
            return SeriesReport(kind, tuple(terms), True, None)
        terms.append(nxt)


def derived_series(prod: NAryProduct) -> SeriesReport:
    """V^(1) = V, V^(k) = mu(V^(k-1), V^(k-1), V, ..., V)."""
    return _series(prod, "derived")


def lower_central_series(prod: NAryProduct) -> SeriesReport:
    """V^1 = V, V^k = mu(V^(k-1), V, ..., V)."""
    return _series(prod, "lower_central")


def is_nilpotent(prod: NAryProduct) -> bool:
    return lower_central_series(prod).vanishing_index is not None


def is_solvable(prod: NAryProduct) -> bool:
    return derived_series(prod).vanishing_index is not None


def square(prod: NAryProduct) -> Subspace:
    """V^2 = mu(V, ..., V)."""
    return product_subspace(prod, [Subspace.full(prod.dim)] * prod.arity)


def _basis_adjoint(prod: NAryProduct, key: Sequence[int]) -> Matrix:
    p = prod.dim
    cols = []
    for j in range(1, p + 1):
        v = prod.basis_bracket(tuple(key) + (j,))
        cols.append(v if v is not None else prod.zero())
    return Matrix.from_columns(cols, rows=p)


def check_kasymov(prod: NAryProduct) -> bool:
    """True iff every adjoint of a strictly increasing basis (n-1)-tuple is nilpotent.

    Basis adjoints stand in for all adjoints; see the README for the caveat.
    """
    if not prod.is_skew:
        raise NotSkew("adjoint nilpotency test is defined for skew products")
    for key in itertools.combinations(range(1, prod.dim + 1), prod.arity - 1):
        m = _basis_adjoint(prod, key)
        if not m.is_zero() and not linalg.is_nilpotent_matrix(m):
            return False
    return True


def generators_quotient_dim(prod: NAryProduct) -> int:
    """dim V / V^2."""
    if not prod.is_skew:
        raise NotSkew("generator count is defined for skew products")
    return prod.dim - square(prod).dim


@dataclass(frozen=True, order=True)
class CharacteristicSequence:
    parts: tuple[int, ...]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def _independent_mod(vectors: Sequence[Vector], sub: Subspace) -> bool:
    reduced = [sub.reduce(v) for v in vectors]
    return Subspace.span(reduced, sub.ambient_dim).dim == len(vectors)


def characteristic_tuple(prod: NAryProduct, vectors: Sequence[Sequence]) -> CharacteristicSequence:
    """Jordan block sizes of ad(v_1, ..., v_{n-1}) for vectors independent modulo V^2."""
    vectors = [linalg.vector(v) for v in vectors]
    if len(vectors) != prod.arity - 1:
        raise DependentVectors(f"need {prod.arity - 1} vectors, got {len(vectors)}")
    if not _independent_mod(vectors, square(prod)):
        raise DependentVectors("vectors are not independent modulo V^2")
    ad = adjoint(prod, vectors).matrix
    try:
        blocks = linalg.nilpotent_jordan_blocks(ad)
    except NotNilpotent as exc:
        raise NotNilpotentOperator(str(exc)) from None
    return CharacteristicSequence(tuple(sorted(blocks, reverse=True)))


def filiform_cap(prod: NAryProduct) -> CharacteristicSequence:
    n, p = prod.arity, prod.dim
    return CharacteristicSequence((p - n + 1,) + (1,) * (n - 1))


def adapted_generators(prod: NAryProduct) -> list[int]:
    """Indices of canonical basis vectors spanning a complement of V^2, chosen greedily."""
    span = square(prod)
    chosen = []
    for i in range(1, prod.dim + 1):
        e = linalg.basis_vector(prod.dim, i)
        if not span.contains(e):
            chosen.append(i)
            span = span + Subspace.span([e], prod.dim)
    return chosen


def characteristic_sequence(
    prod: NAryProduct,
    extra_candidates: Iterable[Sequence[Sequence]] = (),
    random_tuples: int = DEFAULT_RANDOM_TUPLES,
    seed: int = 0,
) -> tuple[CharacteristicSequence, bool]:
    """Lexicographic maximum of characteristic tuples over a candidate set.

    Candidates: every increasing (n-1)-tuple of adapted generators, the
    caller's ``extra_candidates`` (skipped when dependent mod V^2), and
    ``random_tuples`` tuples of random integer combinations drawn from
    ``random.Random(seed)`` with coefficients in [-5, 5].  The flag is True
    when the maximum is provably the characteristic sequence: either it
    reaches the cap (p-n+1, 1, ..., 1) or the product is abelian.
    """
    n, p = prod.arity, prod.dim
    if prod.is_abelian():
        return CharacteristicSequence((1,) * p), True
    cap = filiform_cap(prod)
    candidates: list[list[Vector]] = []
    gens = adapted_generators(prod)
    for combo in itertools.combinations(gens, n - 1):
        candidates.append([linalg.basis_vector(p, i) for i in combo])
    candidates.extend([linalg.vector(v) for v in tup] for tup in extra_candidates)
    rng = random.Random(seed)
    for _ in range(random_tuples):
        candidates.append(
            [tuple(Fraction(rng.randint(-RANDOM_COEFF_RANGE, RANDOM_COEFF_RANGE)) for _ in range(p)) for _ in range(n - 1)]
        )
    best = None
    for tup in candidates:
        try:
            c = characteristic_tuple(prod, tup)
        except DependentVectors:
            continue
        if best is None or c > best:
            best = c
            if best == cap:
                break
    if best is None:
        raise DependentVectors("no candidate tuple is independent modulo V^2")
    return best, best == cap


def is_filiform(prod: NAryProduct, seed: int = 0) -> bool:
    """Nilpotent with characteristic sequence (p-n+1, 1, ..., 1); False for non-nilpotent input."""
    if not is_nilpotent(prod):
        return False
    if prod.dim - (prod.arity - 1) < 1 or generators_quotient_dim(prod) < prod.arity - 1:
        return False
    seq, _ = characteristic_sequence(prod, seed=seed)
    return seq == filiform_cap(prod)


def _basis_tuples(prod: NAryProduct):
    # both sides of the derivation rule share the product's symmetry, so
    # canonical tuples suffice
    return canonical_tuples(prod.arity, prod.dim, prod.symmetry)


def derivation_equations(prod: NAryProduct) -> list[dict[int, Fraction]]:
    """Sparse linear equations on the p*p entries of D (unknown (a, b) is D[a][b]).

    For every canonical basis tuple I and output coordinate l:
    sum_a D[l][a] C^a_I - sum_k sum_b D[b][i_k] C^l_{I with i_k -> b} = 0.
    """
    n, p = prod.arity, prod.dim

    def unknown(a: int, b: int) -> int:
        return (a - 1) * p + (b - 1)

    rows = []
    for key in _basis_tuples(prod):
        eq: list[dict[int, Fraction]] = [dict() for _ in range(p)]
        c_key = prod.basis_bracket(key)
        if c_key is not None:
            for a, ca in enumerate(c_key, 1):
                if ca:
                    for l in range(1, p + 1):
                        u = unknown(l, a)
                        eq[l - 1][u] = eq[l - 1].get(u, ZERO) + ca
        for k in range(n):
            args = list(key)
            for b in range(1, p + 1):
                args[k] = b
                v = prod.basis_bracket(args)
                if v is None:
                    continue
                u = unknown(b, key[k])
                for l, cl in enumerate(v, 1):
                    if cl:
                        eq[l - 1][u] = eq[l - 1].get(u, ZERO) - cl
        rows.extend(e for e in eq if any(e.values()))
    return rows


def derivation_algebra(prod: NAryProduct) -> list[Matrix]:
    """Basis of Der(V) as p x p matrices (column j is the image of e_j)."""
    p = prod.dim
    kernel = linalg.nullspace_of_rows(derivation_equations(prod), p * p)
    return [Matrix(p, p, tuple(tuple(v[r * p : (r + 1) * p]) for r in range(p))) for v in kernel.basis]


def derivation_dim(prod: NAryProduct) -> int:
    p = prod.dim
    return linalg.nullspace_of_rows(derivation_equations(prod), p * p).dim


def is_derivation(prod: NAryProduct, d: Matrix) -> bool:
    """Check D(mu(e_I)) == sum_k mu(.., D e_{i_k}, ..) on all basis tuples."""
    from .product import bracket

    p = prod.dim
    cols = d.columns()
    for key in itertools.product(range(1, p + 1), repeat=prod.arity):
        v = prod.basis_bracket(key)
        lhs = d.apply(v) if v is not None else prod.zero()
        rhs = [ZERO] * p
        for k in range(prod.arity):
            args = [linalg.basis_vector(p, i) for i in key]
            args[k] = cols[key[k] - 1]
            linalg.axpy(rhs, 1, bracket(prod, args))
        if lhs != tuple(rhs):
            return False
    return True


def derivations_closed_under_commutator(prod: NAryProduct) -> bool:
    basis = derivation_algebra(prod)
    span = Subspace.span([d.flatten() for d in basis], prod.dim**2)
    for a, b in itertools.combinations(basis, 2):
        if not span.contains(a.commutator(b).flatten()):
            return False
    return True


def _determinant(m: Matrix) -> Fraction:
    rows = [list(r) for r in m.entries]
    p = len(rows)
    det = Fraction(1)
    for c in range(p):
        piv = next((r for r in range(c, p) if rows[r][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det *= rows[c][c]
        inv = 1 / rows[c][c]
        for r in range(c + 1, p):
            f = rows[r][c] * inv
            if f:
                for k in range(c, p):
                    rows[r][k] -= f * rows[c][k]
    return det


NONSINGULAR_SAMPLES = 12
NONSINGULAR_RANGE = 10**6


def has_nonsingular_derivation(prod: NAryProduct, seed: int = 0) -> bool:
    """Whether Der(V) contains an invertible map.

    Tries the diagonal derivations first (an exact certificate when one is
    invertible), then the determinant of random combinations sum t_i D_i
    with t_i drawn from ``random.Random(seed)`` in [1, 10^6].  A True answer
    is always certified by an explicit invertible derivation; a False answer
    can only be wrong if det(sum t_i D_i) is a nonzero polynomial vanishing
    on every sample, probability at most (p / 10^6)^12.
    """
    p = prod.dim
    weights = diagonal_derivation_weights(prod)
    for sol in weights.solutions.basis:
        if all(sol):
            return True
    if weights.solutions.dim > 1:
        rng = random.Random(seed)
        for _ in range(NONSINGULAR_SAMPLES):
            combo = [ZERO] * p
            for sol in weights.solutions.basis:
                linalg.axpy(combo, rng.randint(1, NONSINGULAR_RANGE), sol)
            if all(combo):
                return True
    basis = derivation_algebra(prod)
    if not basis:
        return False
    rng = random.Random(seed)
    for _ in range(NONSINGULAR_SAMPLES):
        total = Matrix.zeros(p)
        for d in basis:
            total = total + d.scaled(rng.randint(1, NONSINGULAR_RANGE))
        if _determinant(total) != 0:
            return True
    return False


@dataclass(frozen=True)
class WeightSystem:
    """Diagonal derivations f(X_i) = lambda_i X_i relative to a declared basis."""

    basis_labels: tuple[str, ...]
    constraint_matrix: Matrix
    solution_dim: int
    solutions: Subspace

    def relations(self) -> Subspace:
        """Row space of the constraints (linear relations among the lambdas)."""
        return Subspace.span(self.constraint_matrix.entries, len(self.basis_labels))


def diagonal_derivation_weights(
    prod: NAryProduct,
    basis: Sequence[Sequence] | None = None,
    labels: Sequence[str] | None = None,
) -> WeightSystem:
    """Solve lambda_{i1} + ... + lambda_{in} = lambda_l for every nonzero constant C^l_I.

    ``basis`` (vectors in the product's coordinates) declares the basis the
    diagonal maps are taken in; default is the canonical basis.  The
    solution dimension is the rank relative to that basis.
    """
    if basis is not None:
        prod = change_basis(prod, basis)
    p = prod.dim
    labels = tuple(labels) if labels is not None else tuple(f"X{i}" for i in range(1, p + 1))
    rows = set()
    for key, v in prod.constants.items():
        for l, c in enumerate(v, 1):
            if not c:
                continue
            row = [ZERO] * p
            for i in key:
                row[i - 1] += 1
            row[l - 1] -= 1
            rows.add(tuple(row))
    ordered = sorted(rows)
    constraint = Matrix.from_rows(ordered, cols=p) if ordered else Matrix.zeros(0, p)
    solutions = linalg.nullspace_of_rows(ordered, p)
    return WeightSystem(labels, constraint, solutions.dim, solutions)
