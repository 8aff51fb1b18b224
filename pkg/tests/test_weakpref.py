import pytest

from pool import weak_pool
from prefcone import generators, structure
from prefcone.errors import PreconditionError
from prefcone.exactnum import dot, span
from prefcone.steplin import check_represents, linear_representability
from prefcone.weakpref import (
    analyze_weak, component_functional, complement_span, extract_cortege, verify_structure_equalities,
)


def analysed(c):
    lat = structure.components(c)
    return lat, analyze_weak(c, lat)


def test_lex23_is_weak(lex23):
    lat, w = analysed(lex23)
    assert w.is_weak and len(w.chain) == 2
    assert w.rest_space == span([(0, 0, 1)], 3)
    assert extract_cortege(w).functionals == ((1, 0, 0), (0, 1, 0))
    assert verify_structure_equalities(w, lex23, lat).passed


def test_quad2_is_not_weak(quad2):
    lat, w = analysed(quad2)
    assert not w.is_weak and w.blocking_cell == "++"
    # the blocking point lies in the span of the cells outside P and -P
    assert complement_span(quad2).contains(w.blocking_point)
    with pytest.raises(PreconditionError):
        extract_cortege(w)
    with pytest.raises(PreconditionError):
        verify_structure_equalities(w, quad2, lat)


def test_halfplane_functional():
    c = generators.halfplane()
    lat, w = analysed(c)
    assert extract_cortege(w).functionals == ((1, 1),)
    v = linear_representability(c, lat, w)
    assert v.reason == "ok" and v.functional == (1, 1)


def test_linear_representability_negative_cases(lex23, quad2):
    lat, w = analysed(lex23)
    assert linear_representability(lex23, lat, w).reason == "several-components"
    lat, w = analysed(quad2)
    assert linear_representability(quad2, lat, w).reason == "not-weak"


def test_component_functional_is_positive_on_component(lex23):
    lat = structure.components(lex23)
    for E in lat.components:
        phi = component_functional(lex23, E)
        assert dot(phi, E.representative) == 1
        assert all(dot(phi, lex23.representative(s)) > 0 for s in E.cells)


def test_weak_pool_round_trip():
    for a, original in weak_pool():
        assert a.weak.is_weak
        assert verify_structure_equalities(a.weak, a.cone, a.lattice).passed
        u = extract_cortege(a.weak)
        assert len(u) == len(original)
        assert check_represents(u, a.cone, a.lineality)
        assert check_represents(original, a.cone, a.lineality)


def test_duplicated_rows_do_not_change_the_answer():
    c = generators.duplicated_halfplane()
    lat, w = analysed(c)
    assert w.is_weak and extract_cortege(w).functionals == ((1, 0),)


def test_strict_majorization_implies_preference():
    from prefcone import oracle, structure as st_

    for a, _ in weak_pool():
        c = a.cone
        pos = oracle.sample(c, 10, seed=2).positive(c)
        for y in pos:
            for z in pos:
                if st_.majorizes(c, y, z) and not st_.majorizes(c, z, y):
                    assert c.contains(tuple(q - p for p, q in zip(y, z)))


def test_lineality_nesting_over_pool():
    from pool import random_pool

    for a in list(random_pool()) + [a for a, _ in weak_pool()]:
        for E in a.lattice.components:
            assert a.lineality <= E.lineality <= E.lin_hull


def test_leading_functional_matches_component():
    from prefcone import oracle
    from prefcone.steplin import StepLinearFn

    for a, _ in weak_pool():
        u = StepLinearFn(extract_cortege(a.weak))
        k = len(a.weak.chain)
        # cortege index i belongs to chain position k - 1 - i
        position = {E.index: k - 1 - pos for pos, E in enumerate(a.weak.chain)}
        for E in a.weak.chain:
            assert u.leading_index(E.representative) == position[E.index]
        for y in oracle.sample(a.cone, 10, seed=5).positive(a.cone):
            assert u.leading_index(y) == position[a.lattice.component_of(y)]
