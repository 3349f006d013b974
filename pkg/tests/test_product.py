import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from naryalg import catalog, linalg
from naryalg.errors import ArityMismatch, IndexOutOfRange, RepeatedIndexNonzero
from naryalg.linalg import Matrix, Subspace
from naryalg.product import (
    LinearMap,
    Symmetry,
    adjoint,
    bracket,
    change_basis,
    is_ideal,
    is_morphism,
    is_subalgebra,
    make_product,
    make_skew_product,
    product_subspace,
)

import oracles

F = Fraction


def e(p, i):
    return linalg.basis_vector(p, i)


def filiform4():
    return make_skew_product(3, 4, [((1, 2, 3), e(4, 4))])


def test_skew_normalization_sorted_key():
    assert filiform4().constants == {(1, 2, 3): e(4, 4)}


def test_skew_normalization_odd_transposition():
    prod = make_skew_product(3, 4, [((2, 1, 3), e(4, 4))])
    assert prod.constants == {(1, 2, 3): linalg.scale(-1, e(4, 4))}


def test_skew_repeated_index_rejected():
    with pytest.raises(RepeatedIndexNonzero):
        make_skew_product(3, 4, [((1, 1, 2), e(4, 4))])


def test_skew_repeated_index_with_zero_vector_is_fine():
    assert make_skew_product(3, 4, [((1, 1, 2), [0, 0, 0, 0])]).is_abelian()


def test_index_out_of_range():
    with pytest.raises(IndexOutOfRange):
        make_skew_product(3, 4, [((1, 2, 5), e(4, 4))])


def test_duplicates_summed():
    prod = make_skew_product(3, 4, [((1, 2, 3), e(4, 4)), ((3, 2, 1), e(4, 1))])
    assert prod.constants == {(1, 2, 3): (F(-1), F(0), F(0), F(1))}


def test_simple_algebra_bracket_follows_sign_formula():
    # (-1)^(n+1+i) with n = 3, i = 1 is -1
    a4 = catalog.simple_algebra(3)
    assert bracket(a4, [e(4, 2), e(4, 3), e(4, 4)]) == linalg.scale(-1, e(4, 1))


def test_repeated_argument_vanishes():
    a4 = catalog.simple_algebra(3)
    v = (F(1), F(2), F(-1), F(3))
    assert not any(bracket(a4, [v, v, e(4, 3)]))


def test_filiform_model_bracket():
    f = catalog.filiform_model(3, 5)
    assert bracket(f, [e(5, 1), e(5, 2), e(5, 4)]) == e(5, 5)


def test_bracket_arity_mismatch():
    with pytest.raises(ArityMismatch):
        bracket(filiform4(), [e(4, 1), e(4, 2)])


def test_adjoint_filiform4():
    ad = adjoint(filiform4(), [e(4, 1), e(4, 2)])
    assert ad(e(4, 3)) == e(4, 4)
    for j in (1, 2, 4):
        assert not any(ad(e(4, j)))


def test_adjoint_repeated_argument_is_zero():
    ad = adjoint(catalog.simple_algebra(3), [e(4, 2), e(4, 2)])
    assert ad.matrix.is_zero()


def test_adjoint_sign_from_reordering():
    # [X1, X3, X2] = -[X1, X2, X3] = -X2
    ad = adjoint(catalog.counterexample_algebra(3), [e(3, 1), e(3, 3)])
    assert ad(e(3, 2)) == linalg.scale(-1, e(3, 2))


def test_adjoint_arity_mismatch():
    with pytest.raises(ArityMismatch):
        adjoint(filiform4(), [e(4, 1)])


def test_product_subspace_examples():
    full4 = Subspace.full(4)
    assert product_subspace(catalog.abelian(3, 4), [full4] * 3).is_zero()
    assert product_subspace(catalog.simple_algebra(3), [full4] * 3) == full4
    assert product_subspace(filiform4(), [full4] * 3) == Subspace.span([e(4, 4)], 4)


def test_subalgebra_examples():
    a4 = catalog.simple_algebra(3)
    assert is_subalgebra(a4, Subspace.zero(4))
    assert is_subalgebra(a4, Subspace.full(4))
    assert not is_subalgebra(a4, Subspace.span([e(4, 1), e(4, 2), e(4, 3)], 4))
    # three arguments from a 2-dimensional subspace always repeat
    assert is_subalgebra(a4, Subspace.span([e(4, 1), e(4, 2)], 4))


def test_ideal_examples():
    assert is_ideal(filiform4(), Subspace.full(4))
    assert is_ideal(filiform4(), Subspace.span([e(4, 4)], 4))
    assert not is_ideal(filiform4(), Subspace.span([e(4, 3)], 4))


def test_simple_algebra_has_no_coordinate_ideal():
    a4 = catalog.simple_algebra(3)
    for r in range(1, 4):
        for combo in itertools.combinations(range(1, 5), r):
            assert not is_ideal(a4, Subspace.span([e(4, i) for i in combo], 4))


def test_simple_algebra_has_no_random_hyperplane_ideal():
    rng = random.Random(7)
    for n in (2, 3, 4):
        prod = catalog.simple_algebra(n)
        p = prod.dim
        for _ in range(10):
            functional = [[F(rng.randint(-3, 3)) for _ in range(p)]]
            if not any(functional[0]):
                continue
            hyper = linalg.nullspace(Matrix.from_rows(functional))
            assert not is_ideal(prod, hyper)
            line = Subspace.span(hyper.basis[:1], p)
            assert not is_ideal(prod, line)


def test_morphism_examples():
    a4 = catalog.simple_algebra(3)
    assert is_morphism(a4, a4, LinearMap.from_matrix(Matrix.identity(4)))
    assert is_morphism(a4, filiform4(), LinearMap.from_matrix(Matrix.zeros(4)))
    scale_e4 = LinearMap.from_images([e(4, 1), e(4, 2), e(4, 3), linalg.scale(2, e(4, 4))])
    assert not is_morphism(filiform4(), filiform4(), scale_e4)


def test_morphism_arity_mismatch():
    with pytest.raises(ArityMismatch):
        is_morphism(catalog.simple_algebra(2), filiform4(), LinearMap.from_matrix(Matrix.zeros(4, 3)))


def test_kernel_of_morphism_is_ideal():
    # X_i -> X_i for i <= 5 and X_6 -> 0
    src = catalog.filiform_model(3, 6)
    dst = catalog.filiform_model(3, 5)
    f = LinearMap.from_images([e(5, 1), e(5, 2), e(5, 3), e(5, 4), e(5, 5), [0] * 5], 5)
    assert is_morphism(src, dst, f)
    assert is_ideal(src, f.kernel())


def test_change_basis_round_trip():
    f5 = catalog.filiform5(1, 2)
    adapted = catalog.filiform5_adapted_basis(1)
    g = change_basis(f5, adapted)
    assert (1, 3, 4) not in g.constants
    back = change_basis(g, [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 1, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]])
    assert back == f5


small = st.integers(-3, 3)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.lists(small, min_size=16, max_size=16), small, small)
def test_bracket_multilinear_and_alternating(seed, coords, a, b):
    rng = random.Random(seed)
    raw = oracles.random_skew_raw(rng, 3, 4, 3)
    prod = make_skew_product(3, 4, raw)
    dense = oracles.skew_dense(3, 4, raw)
    u, v, w, x = [tuple(map(F, coords[4 * k : 4 * k + 4])) for k in range(4)]
    assert list(bracket(prod, [u, v, w])) == dense(u, v, w)
    assert bracket(prod, [u, v, w]) == linalg.scale(-1, bracket(prod, [v, u, w]))
    assert bracket(prod, [u, v, w]) == linalg.scale(-1, bracket(prod, [u, w, v]))
    combo = linalg.add(linalg.scale(a, u), linalg.scale(b, x))
    lhs = bracket(prod, [combo, v, w])
    rhs = linalg.add(linalg.scale(a, bracket(prod, [u, v, w])), linalg.scale(b, bracket(prod, [x, v, w])))
    assert lhs == rhs


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_product_subspace_monotone(seed):
    rng = random.Random(seed)
    prod = make_skew_product(3, 5, oracles.random_skew_raw(rng, 3, 5, 4))
    parts, bigger = [], []
    for _ in range(3):
        vs = [[F(rng.randint(-2, 2)) for _ in range(5)] for _ in range(rng.randint(0, 2))]
        extra = [[F(rng.randint(-2, 2)) for _ in range(5)]]
        parts.append(Subspace.span(vs, 5))
        bigger.append(Subspace.span(vs + extra, 5))
    assert product_subspace(prod, parts) <= product_subspace(prod, bigger)


def test_symmetric_and_cyclic_evaluation():
    sym = make_product(2, 2, [((2, 1), e(2, 1))], Symmetry.SYMMETRIC)
    assert bracket(sym, [e(2, 1), e(2, 2)]) == bracket(sym, [e(2, 2), e(2, 1)]) == e(2, 1)
    cyc = make_product(3, 3, [((2, 3, 1), e(3, 3))], Symmetry.CYCLIC)
    assert cyc.constants == {(1, 2, 3): e(3, 3)}
    assert bracket(cyc, [e(3, 3), e(3, 1), e(3, 2)]) == e(3, 3)
    assert not any(bracket(cyc, [e(3, 2), e(3, 1), e(3, 3)]))
