"""Constructors for the concrete algebras and products studied in the package."""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import BadParams, DimensionMismatch, NotDefinedForBinary, UnknownCatalogEntry
from .linalg import ZERO
from .polynomials import Polynomial, TruncatedPolynomial, monomial_basis, truncated_jacobian
from .product import (
    LinearMap,
    NAryProduct,
    Symmetry,
    from_function,
    make_product,
    make_skew_product,
)


def _e(p: int, i: int, c=1):
    v = [ZERO] * p
    v[i - 1] = linalg.as_rational(c)
    return v


def abelian(n: int, p: int) -> NAryProduct:
    return make_skew_product(n, p, [])


def simple_algebra(n: int) -> NAryProduct:
    """A_{n+1}: [v_1, .., v_i omitted, .., v_{n+1}] = (-1)^(n+1+i) v_i."""
    if n < 2:
        raise BadParams("arity must be at least 2")
    p = n + 1
    raw = []
    for i in range(1, p + 1):
        key = tuple(j for j in range(1, p + 1) if j != i)
        raw.append((key, _e(p, i, (-1) ** (n + 1 + i))))
    return make_skew_product(n, p, raw)


def dim_n_algebra(n: int, kind: str = "e1") -> NAryProduct:
    """n-dimensional n-ary algebra: zero bracket, or [e_1, .., e_n] = e_1."""
    if n < 2:
        raise BadParams("arity must be at least 2")
    if kind == "abelian":
        return abelian(n, n)
    if kind != "e1":
        raise BadParams(f"kind must be 'abelian' or 'e1', got {kind!r}")
    return make_skew_product(n, n, [(tuple(range(1, n + 1)), _e(n, 1))])


def filiform_model(n: int, p: int) -> NAryProduct:
    """[X_1, .., X_{n-1}, X_i] = X_{i+1} for i = n, .., p-1."""
    if n < 2 or p < n + 1:
        raise BadParams(f"need n >= 2 and p >= n+1, got n={n}, p={p}")
    head = tuple(range(1, n))
    return make_skew_product(n, p, [(head + (i,), _e(p, i + 1)) for i in range(n, p)])


def filiform5(a, b) -> NAryProduct:
    a, b = linalg.as_rational(a), linalg.as_rational(b)
    return make_skew_product(
        3,
        5,
        [
            ((1, 2, 3), _e(5, 4)),
            ((1, 2, 4), _e(5, 5)),
            ((1, 3, 4), _e(5, 5, a)),
            ((2, 3, 4), _e(5, 5, b)),
        ],
    )


def filiform5_adapted_basis(a) -> list[list[Fraction]]:
    """{X1, X2, X3 - a X2, X4, X5} in the original coordinates."""
    a = linalg.as_rational(a)
    basis = [_e(5, i) for i in range(1, 6)]
    basis[2] = [ZERO, -a, Fraction(1), ZERO, ZERO]
    return basis


def counterexample_algebra(n: int) -> NAryProduct:
    """[X_1, .., X_n] = X_2: a non-nilpotent n-Lie algebra with an invertible derivation."""
    if n == 2:
        raise NotDefinedForBinary("the counterexample only exists for arity >= 3")
    if n < 2:
        raise BadParams("arity must be at least 3")
    return make_skew_product(n, n, [(tuple(range(1, n + 1)), _e(n, 2))])


def jr_basis(num_vars: int, r: int) -> list[tuple[int, ...]]:
    return monomial_basis(num_vars, 3, r - 1)


def truncated_jacobian_algebra(num_vars: int, r: int) -> NAryProduct:
    """J_r = I_3 / I_r with the Jacobian bracket, in the monomial basis of :func:`jr_basis`."""
    if r <= 3 or num_vars < 2:
        raise BadParams(f"need r > 3 and at least 2 variables, got r={r}, vars={num_vars}")
    basis = jr_basis(num_vars, r)
    index = {e: k for k, e in enumerate(basis)}
    p = len(basis)
    elems = [TruncatedPolynomial(num_vars, r, Polynomial.monomial(e)) for e in basis]
    degrees = [sum(e) for e in basis]
    raw = []
    for key in itertools.combinations(range(1, p + 1), num_vars):
        # the Jacobian of homogeneous inputs is homogeneous of degree sum(d_i) - num_vars
        if sum(degrees[i - 1] for i in key) - num_vars >= r:
            continue
        jac = truncated_jacobian([elems[i - 1] for i in key])
        if not jac.coeffs:
            continue
        vec = [ZERO] * p
        for e, c in jac.coeffs.items():
            vec[index[e]] = c
        raw.append((key, vec))
    return make_skew_product(num_vars, p, raw)


def ternary_matrix_product(rows: int, cols: int) -> NAryProduct:
    """mu(A, B, C) = A B^T C on rows x cols matrices (basis E_ab, row-major)."""
    if rows < 1 or cols < 1:
        raise BadParams("matrix sizes must be positive")
    p = rows * cols

    def idx(a, b):
        return (a - 1) * cols + b

    def unpack(k):
        return (k - 1) // cols + 1, (k - 1) % cols + 1

    def mu(i, j, k):
        (a, b), (c, d), (e, f) = unpack(i), unpack(j), unpack(k)
        # E_ab E_dc E_ef
        if b == d and c == e:
            return _e(p, idx(a, f))
        return [ZERO] * p

    return from_function(3, p, mu, Symmetry.GENERAL)


def matrix_to_vector(m: Sequence[Sequence]) -> tuple:
    return tuple(linalg.as_rational(x) for row in m for x in row)


def cyclic_orbit_representatives(d: int) -> list[tuple[int, int, int]]:
    reps = set()
    for t in itertools.product(range(1, d + 1), repeat=3):
        reps.add(min(t, t[1:] + t[:1], t[2:] + t[:2]))
    return sorted(reps)


def tensor_triple_product(d: int, t: dict, u: dict, v: dict) -> dict:
    """(T.U.V)_ijk = sum_l T_lij U_lki V_ljk on tensors stored as {(i,j,k): value}."""
    out = {}
    for i, j, k in itertools.product(range(1, d + 1), repeat=3):
        s = ZERO
        for l in range(1, d + 1):
            a = t.get((l, i, j))
            if not a:
                continue
            b = u.get((l, k, i))
            if not b:
                continue
            c = v.get((l, j, k))
            if c:
                s += a * b * c
        if s:
            out[(i, j, k)] = s
    return out


def cyclic_average(d: int, t: dict) -> dict:
    out = {}
    for (i, j, k), a in t.items():
        for key in ((i, j, k), (j, k, i), (k, i, j)):
            out[key] = out.get(key, ZERO) + a / 3
    return {k: a for k, a in out.items() if a}


def orbit_tensor(rep: tuple[int, int, int]) -> dict:
    i, j, k = rep
    return {key: Fraction(1) for key in {(i, j, k), (j, k, i), (k, i, j)}}


def cyclic_tensor_product(d: int) -> NAryProduct:
    """Ternary product on cyclically symmetric tensors T_ijk = T_jki = T_kij.

    Basis: orbit sums of e_ijk under cyclic shifts, ordered by their least
    index triple.  The raw triple product does not preserve cyclic symmetry,
    so its output is averaged over the three cyclic shifts; the averaged
    product is invariant under cyclic permutation of its arguments.
    """
    if d < 1:
        raise BadParams("d must be positive")
    reps = cyclic_orbit_representatives(d)
    tensors = [orbit_tensor(r) for r in reps]
    p = len(reps)

    def mu(i, j, k):
        out = cyclic_average(d, tensor_triple_product(d, tensors[i - 1], tensors[j - 1], tensors[k - 1]))
        return [out.get(r, ZERO) for r in reps]

    return from_function(3, p, mu, Symmetry.CYCLIC)


def diagonal_product(p: int = 2) -> NAryProduct:
    """K^p with componentwise multiplication: e_i e_i = e_i."""
    return make_product(2, p, [((i, i), _e(p, i)) for i in range(1, p + 1)])


def dual_numbers() -> NAryProduct:
    """K[eps]/(eps^2) in the basis {1, eps}."""
    return make_product(2, 2, [((1, 1), _e(2, 1)), ((1, 2), _e(2, 2)), ((2, 1), _e(2, 2))])


def _cochain_eval(f, args):
    if isinstance(f, LinearMap):
        return f(args[0])
    return f(*args)


def _cochain_arity(f) -> int:
    return 1 if isinstance(f, LinearMap) else f.arity


def _cochain_dim(f) -> int:
    return f.source_dim if isinstance(f, LinearMap) else f.dim


def gerstenhaber_bullet(base: NAryProduct | None, f, g):
    """Insertion product (f . g)(X_1..X_{k+m-1}) = sum_{i=1}^{k} (-1)^((i-1)(m-1)) f(.., g(X_i..X_{i+m-1}), ..).

    Cochains are :class:`NAryProduct` (arity >= 2) or :class:`LinearMap`
    (1-cochains); the result has arity k+m-1 and is returned in the same
    representation.  ``base`` only fixes the underlying space.
    """
    k, m = _cochain_arity(f), _cochain_arity(g)
    p = _cochain_dim(f)
    if _cochain_dim(g) != p or (base is not None and base.dim != p):
        raise DimensionMismatch("cochains live on different spaces")
    total = k + m - 1
    basis = [linalg.basis_vector(p, i) for i in range(1, p + 1)]

    def value(*key):
        xs = [basis[i - 1] for i in key]
        acc = [ZERO] * p
        for i in range(1, k + 1):
            inner = _cochain_eval(g, xs[i - 1 : i - 1 + m])
            args = xs[: i - 1] + [inner] + xs[i - 1 + m :]
            linalg.axpy(acc, (-1) ** ((i - 1) * (m - 1)), _cochain_eval(f, args))
        return acc

    if total == 1:
        return LinearMap.from_images([value(i) for i in range(1, p + 1)], p)
    return from_function(total, p, value, Symmetry.GENERAL)


def associator(prod: NAryProduct) -> NAryProduct:
    """(xy)z - x(yz) as a ternary cochain."""
    def value(a, b, c):
        e = lambda i: linalg.basis_vector(prod.dim, i)  # noqa: E731
        return linalg.sub(prod(prod(e(a), e(b)), e(c)), prod(e(a), prod(e(b), e(c))))

    return from_function(3, prod.dim, value, Symmetry.GENERAL)


# name -> (constructor, parameters); each parameter is (name, type, default)
CATALOG = {
    "abelian": (abelian, (("arity", int, 3), ("dim", int, 4))),
    "simple": (simple_algebra, (("arity", int, 3),)),
    "dim-n": (dim_n_algebra, (("arity", int, 3), ("kind", str, "e1"))),
    "filiform-model": (filiform_model, (("arity", int, 3), ("dim", int, 5))),
    "filiform5": (filiform5, (("a", Fraction, 0), ("b", Fraction, 0))),
    "counterexample": (counterexample_algebra, (("arity", int, 3),)),
    "jr": (truncated_jacobian_algebra, (("vars", int, 2), ("r", int, 5))),
    "matrix3": (ternary_matrix_product, (("rows", int, 2), ("cols", int, 2))),
    "cyclic-tensor": (cyclic_tensor_product, (("d", int, 2),)),
    "diagonal": (diagonal_product, (("dim", int, 2),)),
    "dual-numbers": (dual_numbers, ()),
}


def build(name: str, **params) -> NAryProduct:
    """Construct a catalog entry by name; missing parameters take their defaults."""
    if name not in CATALOG:
        raise UnknownCatalogEntry(f"unknown catalog entry {name!r}; known: {', '.join(sorted(CATALOG))}")
    ctor, signature = CATALOG[name]
    known = {p for p, _, _ in signature}
    unknown = set(k for k, v in params.items() if v is not None) - known
    if unknown:
        raise BadParams(f"{name} does not take {', '.join(sorted(unknown))}")
    args = []
    for pname, ptype, default in signature:
        value = params.get(pname)
        if value is None:
            value = default
        try:
            args.append(ptype(value))
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise BadParams(f"bad value {value!r} for {pname}: {exc}") from None
    try:
        return ctor(*args)
    except (BadParams, NotDefinedForBinary):
        raise
    except (ValueError, IndexError) as exc:
        raise BadParams(str(exc)) from None


def standard_entries() -> list[tuple[str, dict]]:
    """The catalog instances exercised by the test and acceptance suites."""
    return [
        ("abelian", {"arity": 3, "dim": 4}),
        ("simple", {"arity": 2}),
        ("simple", {"arity": 3}),
        ("simple", {"arity": 4}),
        ("simple", {"arity": 5}),
        ("dim-n", {"arity": 3, "kind": "e1"}),
        ("dim-n", {"arity": 4, "kind": "e1"}),
        ("filiform-model", {"arity": 3, "dim": 4}),
        ("filiform-model", {"arity": 3, "dim": 5}),
        ("filiform-model", {"arity": 3, "dim": 6}),
        ("filiform-model", {"arity": 3, "dim": 7}),
        ("filiform-model", {"arity": 4, "dim": 6}),
        ("filiform-model", {"arity": 4, "dim": 7}),
        ("filiform5", {"a": 0, "b": 0}),
        ("filiform5", {"a": 1, "b": 2}),
        ("filiform5", {"a": Fraction(-3, 2), "b": Fraction(5, 7)}),
        ("counterexample", {"arity": 3}),
        ("counterexample", {"arity": 4}),
        ("jr", {"vars": 2, "r": 5}),
        ("jr", {"vars": 2, "r": 6}),
        ("jr", {"vars": 3, "r": 5}),
        ("matrix3", {"rows": 2, "cols": 2}),
        ("matrix3", {"rows": 2, "cols": 3}),
        ("cyclic-tensor", {"d": 2}),
        ("diagonal", {"dim": 2}),
        ("dual-numbers", {}),
    ]
