import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from naryalg import catalog
from naryalg import identities as I
from naryalg import maurer_cartan as M
from naryalg.errors import DimensionMismatch, IndexOutOfRange, NotSkew
from naryalg.maurer_cartan import ExteriorForm, wedge
from naryalg.product import make_skew_product

import oracles

F = Fraction
w = ExteriorForm.basis


def test_form_normalization():
    assert w(4, 2, 1) == w(4, 1, 2, coeff=-1)
    assert w(4, 1, 1).is_zero()
    assert (w(4, 1, 2) + w(4, 2, 1)).is_zero()
    assert w(4, 3, 1, 2).coefficient((2, 3, 1)) == 1


def test_wedge_examples():
    assert w(4, 1) ^ w(4, 2) == w(4, 1, 2)
    assert w(4, 2) ^ w(4, 1) == -w(4, 1, 2)
    assert (w(4, 1) ^ w(4, 1)).is_zero()
    assert wedge(w(4, 1, 3), w(4, 2)) == -w(4, 1, 2, 3)


def test_wedge_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        w(3, 1) ^ w(4, 2)


def random_form(rng, p, deg):
    f = ExteriorForm.zero(p, deg)
    for key in itertools.combinations(range(1, p + 1), deg):
        c = rng.randint(-2, 2)
        if c:
            f = f + w(p, *key, coeff=c)
    return f


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 3), st.integers(0, 3), st.integers(0, 2))
def test_wedge_laws(seed, da, db, dc):
    rng = random.Random(seed)
    p = 6
    a, b, c = random_form(rng, p, da), random_form(rng, p, db), random_form(rng, p, dc)
    assert (a ^ b) == (b ^ a).scaled((-1) ** (da * db))
    assert ((a ^ b) ^ c) == (a ^ (b ^ c))
    assert ((a + a) ^ b) == (a ^ b).scaled(2)


def test_d_one_simple_algebra():
    # [e2, e3, e4] = -e1
    assert M.d_one(catalog.simple_algebra(3), 1) == w(4, 2, 3, 4, coeff=-1)


def test_d_one_filiform_model():
    prod = catalog.filiform_model(3, 5)
    assert M.d_one(prod, 5) == w(5, 1, 2, 4)
    assert M.d_one(prod, 1).is_zero()


def test_d_one_errors():
    with pytest.raises(IndexOutOfRange):
        M.d_one(catalog.simple_algebra(3), 5)
    with pytest.raises(NotSkew):
        M.d_one(catalog.ternary_matrix_product(1, 2), 1)


def test_d_extend_requires_degree_n():
    with pytest.raises(DimensionMismatch):
        M.d_extend(catalog.simple_algebra(3), w(4, 1, 2))


def test_d_extend_is_linear():
    prod = catalog.filiform5(1, 2)
    a, b = w(5, 1, 2, 3), w(5, 2, 3, 4)
    lhs = M.d_extend(prod, a.scaled(3) + b)
    assert lhs == M.d_extend(prod, a).scaled(3) + M.d_extend(prod, b)


def oracle_table(prod):
    mu = oracles.from_product(prod)
    return {
        key: oracles.sh_jacobi(mu, [oracles.e(prod.dim, i) for i in key])
        for key in itertools.combinations(range(1, prod.dim + 1), 2 * prod.arity - 1)
    }


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([(2, 3), (2, 4), (3, 5), (3, 6), (4, 7)]))
def test_dd_coefficients_are_sh_jacobi_components(seed, shape):
    n, p = shape
    rng = random.Random(seed)
    prod = make_skew_product(n, p, oracles.random_skew_raw(rng, n, p, rng.randint(1, 4), lo=-1, hi=1))
    assert M.coefficient_table(prod) == oracle_table(prod)


def test_all_plus_rule_is_graded_rule_for_odd_arity():
    rng = random.Random(11)
    for _ in range(10):
        prod = make_skew_product(3, 5, oracles.random_skew_raw(rng, 3, 5, 3, lo=-1, hi=1))
        assert M.coefficient_table(prod, "all_plus") == M.coefficient_table(prod, "graded")


def test_all_plus_rule_misses_binary_jacobi_failure():
    raw = [((3, 4), [0, 1, 0, 1]), ((2, 4), [1, 0, -1, -1]), ((2, 3), [1, -1, -1, -1])]
    prod = make_skew_product(2, 4, raw)
    assert M.maurer_cartan_check(prod, "all_plus").ok
    graded = M.maurer_cartan_check(prod)
    witness = I.check_sh_jacobi(prod)
    assert not graded.ok and not witness.ok
    assert graded.basis_tuple == witness.basis_tuple == (2, 3, 4)


def test_unknown_sign_rule():
    with pytest.raises(ValueError):
        M.maurer_cartan_check(catalog.simple_algebra(2), "other")


SKEW_ENTRIES = [(n, kw) for n, kw in catalog.standard_entries() if catalog.build(n, **kw).is_skew]


@pytest.mark.parametrize("name,params", SKEW_ENTRIES)
def test_mc_agrees_with_sh_jacobi_on_catalog(name, params):
    prod = catalog.build(name, **params)
    mc, sh = M.maurer_cartan_check(prod), I.check_sh_jacobi(prod)
    assert mc.ok == sh.ok
    if not sh.ok:
        assert mc.basis_tuple == sh.basis_tuple


def test_mc_vacuous_below_threshold():
    res = M.maurer_cartan_check(catalog.simple_algebra(4))
    assert res.ok and res is I.VACUOUS


def test_mc_defect_reports_least_index():
    # [X1,X3,X5] = X1 breaks the shuffle identity on (1,2,3,4,5)
    base = catalog.filiform5(1, 2)
    raw = [(k, v) for k, v in base.constants.items()] + [((1, 3, 5), [1, 0, 0, 0, 0])]
    prod = make_skew_product(3, 5, raw)
    res = M.maurer_cartan_check(prod)
    assert not res.ok and res.basis_tuple == (1, 2, 3, 4, 5)
    table = oracle_table(prod)[(1, 2, 3, 4, 5)]
    assert res.index == next(l for l, c in enumerate(table, 1) if c)
    assert res.defect.coefficient((1, 2, 3, 4, 5)) == table[res.index - 1]
