from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from naryalg import catalog, linalg
from naryalg.errors import ParseError, RepeatedIndexNonzero
from naryalg.fileformat import format_coefficient, parse, serialize
from naryalg.product import Symmetry, make_product

import oracles

HEADER = "nary v1\narity 3\ndim 4\nsymmetry skew\n"


def test_parse_basic():
    prod = parse(HEADER + "[1 2 3] = 4\n[1 2 4] = -1/2*3 + 2*4  # trailing comment\n")
    assert prod.basis_bracket((1, 2, 3)) == linalg.basis_vector(4, 4)
    assert prod.basis_bracket((1, 2, 4)) == (0, 0, Fraction(-1, 2), 2)


def test_parse_reorders_skew_keys_with_sign():
    prod = parse(HEADER + "[2 1 3] = 4\n")
    assert prod.basis_bracket((1, 2, 3)) == (0, 0, 0, -1)


def test_parse_sums_repeated_keys():
    prod = parse(HEADER + "[1 2 3] = 4\n[3 2 1] = 1\n")
    assert prod.basis_bracket((1, 2, 3)) == (-1, 0, 0, 1)


def test_empty_relations_give_abelian():
    assert parse(HEADER).is_abelian()
    assert parse("# leading comment\n\n" + HEADER + "\n\n").is_abelian()


def test_repeated_index_with_zero_value_is_accepted():
    assert parse(HEADER + "[1 1 2] = 0*3\n").is_abelian()


def test_repeated_index_nonzero_rejected():
    with pytest.raises(RepeatedIndexNonzero) as info:
        parse(HEADER + "[1 1 2] = 3\n")
    assert "line 5" in str(info.value)


@pytest.mark.parametrize(
    "body,line,column",
    [
        ("nary v2\n", 1, 1),
        ("nary v1\narity x\n", 2, 7),
        ("nary v1\narity 3\ndim 4\nsymmetry weird\n", 4, 10),
        ("nary v1\nrank 3\n", 2, 1),
        ("nary v1\narity 3\n", 3, 1),
        (HEADER + "[1 2 3] 4\n", 5, 8),
        (HEADER + "1 2 3] = 4\n", 5, 1),
        (HEADER + "[1 2 3 = 4\n", 5, 11),
        (HEADER + "[1 2 9] = 4\n", 5, 6),
        (HEADER + "[1 2] = 4\n", 5, 1),
        (HEADER + "[1 2 3] = 5\n", 5, 11),
        (HEADER + "[1 2 3] = 4 4\n", 5, 13),
        (HEADER + "[1 2 3] = + 4\n", 5, 11),
        (HEADER + "[1 2 3] = 4 +\n", 5, 14),
        (HEADER + "[1 2 3] =\n", 5, 10),
        (HEADER + "[1 a 3] = 4\n", 5, 4),
    ],
)
def test_parse_errors_carry_position(body, line, column):
    with pytest.raises(ParseError) as info:
        parse(body)
    assert (info.value.line, info.value.column) == (line, column)
    assert str(info.value).startswith(f"line {line}, column {column}: ")


def test_cyclic_needs_arity_three():
    with pytest.raises(ParseError):
        parse("nary v1\narity 2\ndim 2\nsymmetry cyclic\n")


def test_format_coefficient():
    assert format_coefficient(Fraction(3)) == "3"
    assert format_coefficient(Fraction(-5, 7)) == "-5/7"


def test_serialize_layout():
    prod = catalog.filiform5(Fraction(-3, 2), 1)
    text = serialize(prod)
    assert text.splitlines()[:4] == ["nary v1", "arity 3", "dim 5", "symmetry skew"]
    assert "[1 3 4] = -3/2*5" in text
    assert text.endswith("\n")


@pytest.mark.parametrize("name,params", catalog.standard_entries())
def test_round_trip_catalog(name, params):
    prod = catalog.build(name, **params)
    text = serialize(prod)
    again = parse(text)
    assert again == prod
    assert serialize(again) == text


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(list(Symmetry)), st.integers(2, 4))
def test_round_trip_random(seed, sym, p):
    import random

    rng = random.Random(seed)
    n = 3 if sym is Symmetry.CYCLIC else rng.randint(2, 3)
    raw = [(k, [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(p)])
           for k, _ in oracles.random_general_raw(rng, n, p, rng.randint(0, 4))]
    if sym is Symmetry.SKEW:
        raw = [(k, v) for k, v in raw if len(set(k)) == n]
    prod = make_product(n, p, raw, sym)
    assert parse(serialize(prod)) == prod


def test_four_dim_filiform_file():
    text = "nary v1\narity 3\ndim 4\nsymmetry skew\n[1 2 3] = 4\n"
    assert parse(text) == catalog.filiform_model(3, 4)


def test_key_with_wrong_arity():
    with pytest.raises(ParseError):
        parse(HEADER + "[1 2 3 4] = 1\n")
