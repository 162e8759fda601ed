"""Gaussian-rational arithmetic, grammar, and exact linear algebra."""

import random
from fractions import Fraction

import pytest

from arrpi1.exactnum import (
    GQ,
    ONE,
    UNDERDETERMINED,
    ZERO,
    ExactMatrix,
    format_gq,
    gq_candidate,
    gq_candidates,
    invert,
    matrix_rank,
    nullspace,
    parse_gq,
    solve_linear_2,
)
from itertools import islice


def test_addition_cancels_imaginary_parts():
    assert GQ(1, 2) + GQ(3, -2) == GQ(4)


def test_i_squared_is_minus_one():
    assert GQ(0, 1) * GQ(0, 1) == GQ(-1)


def test_self_division_is_one():
    a = GQ(Fraction(1, 2), Fraction(1, 3))
    assert a / a == ONE


def test_division_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def _random_gq(rng):
    def frac():
        return Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))

    return GQ(frac(), frac())


def test_field_axioms_randomized():
    rng = random.Random(20240811)
    for _ in range(10_000):
        a, b, c = (_random_gq(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if a:
            assert a / a == ONE


def test_parse_examples():
    assert parse_gq("3") == GQ(3)
    assert parse_gq("-1/2") == GQ(Fraction(-1, 2))
    assert parse_gq("1+2i") == GQ(1, 2)
    assert parse_gq("1/2-1/3i") == GQ(Fraction(1, 2), Fraction(-1, 3))
    assert parse_gq("i") == GQ(0, 1)
    assert parse_gq("-i") == GQ(0, -1)
    assert parse_gq("2i") == GQ(0, 2)
    assert parse_gq("2-i") == GQ(2, -1)


@pytest.mark.parametrize("bad", ["", "x", "1+", "i2", "1//2", "1 + 2i", "--3", "1+-2i"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_gq(bad)


def test_format_parse_round_trip_randomized():
    rng = random.Random(7)
    for _ in range(2000):
        g = _random_gq(rng)
        assert parse_gq(format_gq(g)) == g


def test_format_canonical_spellings():
    assert format_gq(GQ(0)) == "0"
    assert format_gq(GQ(0, 1)) == "i"
    assert format_gq(GQ(0, -1)) == "-i"
    assert format_gq(GQ(1, 1)) == "1+i"
    assert format_gq(GQ(Fraction(1, 2), Fraction(-1, 3))) == "1/2-1/3i"


def test_candidate_sequence_prefix_and_injectivity():
    prefix = list(islice(gq_candidates(), 10))
    assert prefix == [
        GQ(0), GQ(1), GQ(-1), GQ(2), GQ(-2),
        GQ(1, 1), GQ(1, -1), GQ(3), GQ(-3), GQ(Fraction(1, 2)),
    ]
    first = list(islice(gq_candidates(), 500))
    assert len(set(first)) == 500
    assert gq_candidate(5) == GQ(1, 1)


def rows(*data):
    return ExactMatrix.from_rows([[GQ(*x) if isinstance(x, tuple) else GQ(x) for x in row] for row in data])


def test_rank_identity():
    assert matrix_rank(rows([1, 0], [0, 1])) == 2


def test_rank_proportional_rows():
    # second row is i times the first
    m = rows([1, (0, 1), 0], [(0, 1), -1, 0])
    assert matrix_rank(m) == 1


def test_rank_dependent_third_row():
    m = rows([1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0])
    assert matrix_rank(m) == 2


def test_rank_equals_transpose_rank_randomized():
    rng = random.Random(3)
    pool = [GQ(0), GQ(1), GQ(-1), GQ(0, 1), GQ(1, 1), GQ(Fraction(1, 2))]
    for _ in range(150):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        m = ExactMatrix.from_rows(
            [[rng.choice(pool) for _ in range(c)] for _ in range(r)]
        )
        assert matrix_rank(m) == matrix_rank(m.transpose())


def test_nullspace_vectors_annihilate():
    m = rows([1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0])
    basis = nullspace(m)
    assert len(basis) == 2
    for vec in basis:
        for i in range(m.rows):
            acc = ZERO
            for j in range(m.cols):
                acc = acc + m.at(i, j) * vec[j]
            assert not acc


def test_invert_round_trip():
    m = rows([1, (0, 1), 0], [0, 1, 2], [1, 0, 1])
    inv = invert(m)
    for i in range(3):
        for j in range(3):
            acc = ZERO
            for k in range(3):
                acc = acc + m.at(i, k) * inv.at(k, j)
            assert acc == (ONE if i == j else ZERO)
    with pytest.raises(ValueError):
        invert(rows([1, 1], [1, 1]))


def test_solve_common_point_through_origin():
    assert solve_linear_2(GQ(0), GQ(1), GQ(0), GQ(1), GQ(-1), GQ(0)) == (GQ(0), GQ(0))


def test_solve_parallel_lines():
    assert solve_linear_2(GQ(0), GQ(1), GQ(0), GQ(0), GQ(1), GQ(-1)) is None


def test_solve_complex_crossing():
    # z2 = i*z1 and z2 = -i*z1 + 2i meet at (1, i)
    got = solve_linear_2(GQ(0, 1), GQ(-1), GQ(0), GQ(0, -1), GQ(-1), GQ(0, 2))
    assert got == (GQ(1), GQ(0, 1))


def test_solve_proportional_equations():
    assert (
        solve_linear_2(GQ(1), GQ(2), GQ(3), GQ(0, 2), GQ(0, 4), GQ(0, 6))
        is UNDERDETERMINED
    )


def test_solve_rejects_zero_pairs():
    with pytest.raises(ValueError):
        solve_linear_2(GQ(0), GQ(0), GQ(1), GQ(1), GQ(0), GQ(0))


def test_solution_satisfies_both_equations_randomized():
    rng = random.Random(11)
    pool = [GQ(0), GQ(1), GQ(-1), GQ(0, 1), GQ(2, -1), GQ(Fraction(1, 3))]
    for _ in range(500):
        coeffs = [rng.choice(pool) for _ in range(6)]
        if (not coeffs[0] and not coeffs[1]) or (not coeffs[3] and not coeffs[4]):
            continue
        got = solve_linear_2(*coeffs)
        if isinstance(got, tuple):
            z1, z2 = got
            assert not (coeffs[0] * z1 + coeffs[1] * z2 + coeffs[2])
            assert not (coeffs[3] * z1 + coeffs[4] * z2 + coeffs[5])
