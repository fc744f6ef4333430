from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from amenalg.linalg import bareiss_rank, kernel_basis, kernel_vector, rank, span_rank
from amenalg.scalars import QQ, PrimeField, format_rational, parse_rational
from oracles import rank_fraction

small = st.integers(-4, 4)
matrices = st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=1, max_size=5)
)


@given(matrices)
def test_bareiss_matches_plain_elimination(m):
    assert bareiss_rank(m) == rank_fraction(m)


@given(matrices)
def test_rank_of_transpose(m):
    t = [list(col) for col in zip(*m)]
    assert rank(m) == rank(t)


@given(matrices)
def test_kernel_vectors_are_in_kernel(m):
    n = len(m[0])
    basis = kernel_basis(m, n)
    assert len(basis) == n - rank(m)
    for v in basis:
        assert all(sum(Fraction(a) * x for a, x in zip(row, v)) == 0 for row in m)


@given(matrices)
def test_kernel_vector_over_gf7(m):
    F = PrimeField(7)
    n = len(m[0])
    v = kernel_vector(m, n, F)
    if rank(m, F) == n:
        assert v is None
    else:
        assert any(v) and all(sum(a * x for a, x in zip(row, v)) % 7 == 0 for row in m)


def test_rank_depends_on_characteristic():
    m = [[1, 1], [1, 4]]
    assert rank(m) == 2
    assert rank(m, PrimeField(3)) == 1


def test_span_rank_sparse():
    assert span_rank([{"a": 1}, {"b": 2}, {"a": 2, "b": 4}]) == 2
    assert span_rank([]) == 0


def test_parse_rational_refuses_floats():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational(" -2 ") == -2
    for bad in ["0.5", "1e3", "1/0", "a/b", ""]:
        with pytest.raises(ValueError):
            parse_rational(bad)
    with pytest.raises(TypeError):
        parse_rational(0.5)
    assert format_rational(Fraction(4, 2)) == "2"


def test_prime_field_arithmetic():
    F = PrimeField(11)
    assert F.mul(F.inv(3), 3) == 1
    assert F.nonzero_count() == 10
    with pytest.raises(ValueError):
        PrimeField(12)
    assert QQ.to_str(Fraction(-3, 4)) == "-3/4"
