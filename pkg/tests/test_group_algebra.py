import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from naryalg import catalog, linalg
from naryalg import identities as I
from naryalg.errors import DimensionMismatch, GroupTooLarge, NotProportional, PermutationError
from naryalg.group_algebra import (
    GroupAlgebraElement as GA,
    Permutation,
    all_permutations,
    colored_reduction,
    compose,
    evaluate_nested,
    filippov_vector,
    first_nonvanishing,
    proportionality_to_antisym,
    shuffles,
    total_antisym_vector,
    verify_wv_identity,
)
from naryalg.product import make_skew_product

import oracles

perms5 = st.permutations(range(1, 6)).map(lambda p: Permutation(tuple(p)))


def test_permutation_validation():
    with pytest.raises(PermutationError):
        Permutation((1, 1, 2))


def test_composition_right_to_left():
    a = Permutation((2, 3, 1))
    b = Permutation((2, 1, 3))
    assert (a * b)(1) == a(b(1)) == 3


@settings(max_examples=50, deadline=None)
@given(perms5, perms5)
def test_sign_is_multiplicative(a, b):
    assert (a * b).sign == a.sign * b.sign
    assert a.sign == oracles.sign(a.images)
    assert (a * a.inverse()).is_identity()


def test_shuffle_counts():
    assert shuffles(1, 1) == [Permutation((1, 2)), Permutation((2, 1))]
    assert len(shuffles(3, 2)) == 10
    assert len(shuffles(2, 1)) == 3


@pytest.mark.parametrize("n,k", [(1, 1), (2, 1), (3, 2), (2, 3), (4, 3)])
def test_shuffles_are_exactly_the_block_increasing_permutations(n, k):
    m = n + k
    # increasing on 1..n and on n+1..n+k
    expected = [p for p in all_permutations(m) if all(p(i) < p(i + 1) for i in range(1, m) if i != n)]
    got = shuffles(n, k)
    assert sorted(got) == sorted(expected) == got
    assert len(got) == math.comb(m, n)


def test_compose_identity_and_inverse():
    x = GA(3, [(Permutation((2, 3, 1)), 2), (Permutation((1, 3, 2)), -1)])
    assert compose(GA.identity(3), x) == x == compose(x, GA.identity(3))
    s = Permutation((3, 1, 2))
    assert compose(GA.delta(s), GA.delta(s.inverse())) == GA.identity(3)


def test_compose_degree_mismatch():
    with pytest.raises(DimensionMismatch):
        compose(GA.identity(2), GA.identity(3))


def test_filippov_vector_sizes():
    assert len(filippov_vector(2)) == 3
    assert len(filippov_vector(3)) == 4


def test_antisym_vector_small_cases():
    assert total_antisym_vector(2) == GA(2, [(Permutation((1, 2)), 1), (Permutation((2, 1)), -1)])
    w3 = total_antisym_vector(3)
    c = Permutation.cycle(3, 1, 2, 3)
    t12, t13, t23 = Permutation.cycle(3, 1, 2), Permutation.cycle(3, 1, 3), Permutation.cycle(3, 2, 3)
    expected = GA(3, [(Permutation.identity(3), 1), (t12, -1), (t13, -1), (t23, -1), (c, 1), (c * c, 1)])
    assert w3 == expected
    w5 = total_antisym_vector(5)
    assert len(w5) == 120 and w5.coefficient(Permutation.identity(5)) == 1


def test_antisym_vector_refuses_large_degree():
    with pytest.raises(GroupTooLarge):
        total_antisym_vector(8)


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_antisym_is_sign_isotypic(m):
    w = total_antisym_vector(m)
    for s in all_permutations(m):
        assert compose(GA.delta(s), w) == w.scaled(s.sign) == compose(w, GA.delta(s))


@pytest.mark.parametrize("n,alpha", [(2, 3), (3, -2), (4, 5)])
def test_wv_scalar(n, alpha):
    assert verify_wv_identity(n) == alpha


def test_proportionality_rejects_non_multiple():
    with pytest.raises(NotProportional):
        proportionality_to_antisym(GA.identity(3))


@pytest.mark.parametrize("abc,expected", [((1, 1, 1), 3), ((1, -1, 0), 0), ((2, 3, 5), 10)])
def test_colored_reduction(abc, expected):
    assert colored_reduction(*abc) == expected


def test_binary_filippov_vector_is_jacobi():
    # for n = 2 the Filippov vector encodes the ordinary Jacobi identity
    prod = catalog.simple_algebra(2)
    rng = random.Random(0)
    xs = [tuple(Fraction(rng.randint(-3, 3)) for _ in range(3)) for _ in range(3)]
    assert not any(evaluate_nested(prod, filippov_vector(2), xs))
    broken = make_skew_product(2, 3, [((1, 2), [1, 0, 0]), ((1, 3), [0, 0, 1]), ((2, 3), [1, 0, 0])])
    dense = oracles.from_product(broken)
    a, b, c = (oracles.e(3, i) for i in (1, 2, 3))
    jac = oracles.vadd(oracles.vadd(dense(dense(a, b), c), dense(dense(b, c), a)), dense(dense(c, a), b))
    assert any(jac)
    assert first_nonvanishing(broken, filippov_vector(2), blocks=(2, 1)) is not None


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([(2, 3), (2, 4), (3, 4), (3, 5), (4, 5)]))
def test_filippov_vector_encodes_filippov_identity(seed, shape):
    n, p = shape
    rng = random.Random(seed)
    prod = make_skew_product(n, p, oracles.random_skew_raw(rng, n, p, rng.randint(1, 3), lo=-1, hi=1))
    via_v = first_nonvanishing(prod, filippov_vector(n), blocks=(n, n - 1)) is None
    assert via_v == I.check_filippov(prod).ok


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([(2, 3), (2, 4), (3, 5), (3, 6)]))
def test_antisymmetrizer_encodes_sh_jacobi(seed, shape):
    n, p = shape
    rng = random.Random(seed)
    prod = make_skew_product(n, p, oracles.random_skew_raw(rng, n, p, rng.randint(1, 4), lo=-1, hi=1))
    m = 2 * n - 1
    via_w = first_nonvanishing(prod, total_antisym_vector(m)) is None
    assert via_w == I.check_sh_jacobi(prod).ok
    # coefficientwise: the w-sum is n!(n-1)! times the shuffle sum
    for key in itertools.combinations(range(1, p + 1), m):
        xs = [linalg.basis_vector(p, i) for i in key]
        w_sum = evaluate_nested(prod, total_antisym_vector(m), xs)
        sh = I.sh_jacobi_defect(prod, xs)
        assert w_sum == linalg.scale(math.factorial(n) * math.factorial(n - 1), sh)


def test_evaluate_nested_checks_sizes():
    with pytest.raises(DimensionMismatch):
        evaluate_nested(catalog.simple_algebra(3), filippov_vector(2), [linalg.basis_vector(4, 1)] * 3)
