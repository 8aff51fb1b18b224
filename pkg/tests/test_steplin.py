import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from prefcone import generators
from prefcone.errors import DimensionMismatch, InvalidCortege, ParseError
from prefcone.exactnum import add, dot, scale, span
from prefcone.steplin import (
    StepLinearFn, check_represents, evaluate, is_lex_positive, lex_cone, load_cortege, validate_cortege,
)

points = st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=4), min_size=3, max_size=3)


def lexicographic(cortege, y):
    # independent restatement: first nonzero coordinate of the coordinate vector
    for f in cortege.functionals:
        v = sum(a * b for a, b in zip(f, y))
        if v:
            return v
    return 0


@pytest.mark.parametrize("rows, index", [
    ([[0, 0]], 1),
    ([[1, 0], [2, 0]], 2),
    ([[1, 0], [0, 1], [1, 1]], 3),
])
def test_invalid_cortege_reports_index(rows, index):
    with pytest.raises(InvalidCortege) as info:
        validate_cortege(rows)
    assert info.value.index == index


def test_empty_and_ragged_cortege():
    with pytest.raises(InvalidCortege):
        validate_cortege([])
    with pytest.raises(DimensionMismatch):
        validate_cortege([[1, 0], [0, 1, 0]])


def test_load_cortege_forms():
    a = load_cortege('[["1","0"],["0","1"]]')
    b = load_cortege({"cortege": [[1, 0], [0, 1]]})
    assert a == b == load_cortege(a.to_json())
    with pytest.raises(ParseError):
        load_cortege('{"x": []}')
    with pytest.raises(ParseError):
        load_cortege("[1, 2")


def test_evaluate_lex23():
    u = validate_cortege([[1, 0, 0], [0, 1, 0]])
    assert evaluate(u, (Fraction(-1, 2), 5, 0)) == Fraction(-1, 2)
    assert evaluate(u, (0, 3, 9)) == 3
    assert evaluate(u, (0, 0, 9)) == 0
    assert StepLinearFn(u).leading_index((0, 3, 9)) == 1
    with pytest.raises(DimensionMismatch):
        evaluate(u, (1, 2))


@given(st.integers(0, 10_000), points, st.fractions(min_value=Fraction(1, 9), max_value=9))
def test_evaluate_homogeneous_and_kernel_invariant(seed, y, alpha):
    u = generators.random_cortege(random.Random(seed), 3)
    assert evaluate(u, scale(alpha, y)) == alpha * evaluate(u, y)
    assert evaluate(u, y) == lexicographic(u, y)
    for h in u.common_kernel.basis:
        assert evaluate(u, add(y, h)) == evaluate(u, y)


@given(st.integers(0, 10_000), points)
def test_lex_cone_is_positive_set(seed, y):
    u = generators.random_cortege(random.Random(seed), 3)
    c = lex_cone(u)
    assert c.contains(y) == (evaluate(u, y) > 0)


def test_is_lex_positive():
    assert is_lex_positive("00+-") and not is_lex_positive("0-+") and not is_lex_positive("000")


def test_check_represents_lex23(lex23):
    L = span([(0, 0, 1)], 3)
    assert check_represents(validate_cortege([[1, 0, 0], [0, 1, 0]]), lex23, L)
    # positive rescaling and adding earlier functionals to later ones keep the order
    assert check_represents(validate_cortege([[2, 0, 0], [5, 3, 0]]), lex23, L)


def test_check_represents_rejects_wrong_cortege(lex23):
    L = span([(0, 0, 1)], 3)
    swapped = check_represents(validate_cortege([[0, 1, 0], [1, 0, 0]]), lex23, L)
    assert not swapped and not swapped.branches_inside and swapped.failures
    short = check_represents(validate_cortege([[1, 0, 0]]), lex23, L)
    assert not short.kernel_matches
    with pytest.raises(DimensionMismatch):
        check_represents(validate_cortege([[1, 0]]), lex23, L)


@given(st.integers(0, 10_000))
def test_cortege_represents_its_lex_cone(seed):
    u = generators.random_cortege(random.Random(seed), 3)
    assert check_represents(u, lex_cone(u), u.common_kernel)


def test_branch_partition_is_exhaustive():
    u = validate_cortege([[1, 1, 0], [0, 1, -1]])
    for y in [(1, -1, 0), (1, -1, 5), (0, 0, 0), (2, -2, 0)]:
        lead = StepLinearFn(u).leading_index(y)
        if lead is None:
            assert all(dot(f, y) == 0 for f in u.functionals)
        else:
            assert all(dot(f, y) == 0 for f in u.functionals[:lead])


@given(st.integers(0, 10_000), points, points)
def test_positive_values_add(seed, y, z):
    u = generators.random_cortege(random.Random(seed), 3)
    if evaluate(u, y) > 0 and evaluate(u, z) > 0:
        assert evaluate(u, add(y, z)) > 0


def test_branch_representatives_add():
    from prefcone.lpcore import strictly_feasible
    from prefcone.steplin import branch_system

    for seed in range(20):
        u = generators.random_cortege(random.Random(seed), 3)
        reps = [strictly_feasible(branch_system(u, i)) for i in range(len(u))]
        for y in reps:
            for z in reps:
                assert evaluate(u, add(y, z)) > 0


@given(st.integers(0, 10_000))
def test_lex_cone_is_weak_partial_preference(seed):
    from prefcone import structure
    from prefcone.conemodel import validate_partial_preference
    from prefcone.weakpref import analyze_weak

    c = lex_cone(generators.random_cortege(random.Random(seed), 3))
    assert validate_partial_preference(c).passed
    assert analyze_weak(c, structure.components(c)).is_weak
