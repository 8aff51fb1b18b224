import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pool import openness_step, random_pool
from prefcone import conemodel, generators, oracle, structure
from prefcone.conemodel import build
from prefcone.errors import PreconditionError
from prefcone.exactnum import add, scale, span, sub, zero_space


def by_cells(lat, *cells):
    return next(E.index for E in lat.components if set(E.cells) == set(cells))


def test_quad2_lattice(quad2):
    lat = structure.components(quad2)
    top, e1, e2 = by_cells(lat, "++"), by_cells(lat, "+0"), by_cells(lat, "0+")
    assert len(lat) == 3 and lat.law_checks_passed
    assert set(lat.hasse_edges) == {(e1, top), (e2, top)}
    assert lat.greatest() == top and lat.least() is None
    assert not lat.is_chain()


def test_lex23_lattice(lex23):
    lat = structure.components(lex23)
    assert [set(E.cells) for E in lat.components] == [{"++", "+0", "+-"}, {"0+"}]
    assert lat.is_chain() and lat.chain() == (1, 0)


def test_to_dot_structure(quad2):
    dot = structure.to_dot(structure.components(quad2))
    assert dot.startswith("digraph components {") and dot.rstrip().endswith("}")
    assert dot.count("->") == 2 and "rankdir" not in dot


def test_unvalidated_cone_skips_laws():
    c = build(2, [[1, 0], [0, 1]], ["+0", "0+"])
    lat = structure.components(c, validated=False)
    assert lat.law_checks_passed is None and lat.greatest() is None


def test_majorization_multiplier_is_genuine(quad2):
    mu = structure.majorization_multiplier(quad2, (1, 0), (1, 1))
    assert mu is not None and mu > 0 and quad2.contains(sub((1, 1), scale(mu, (1, 0))))
    assert structure.majorization_multiplier(quad2, (1, 1), (1, 0)) is None
    with pytest.raises(PreconditionError):
        structure.majorizes(quad2, (-1, 0), (1, 1))


def test_interval_meet():
    a = structure.Interval(Fraction(0), True, Fraction(2), False)
    b = structure.Interval(Fraction(2), False, None, True)
    m = a.meet(b)
    assert not m.empty and m.pick() == 2
    assert a.meet(structure.Interval(Fraction(2), True, None, True)).empty


@given(st.integers(0, 10_000))
def test_majorization_agrees_with_grid(seed):
    pool = random_pool()
    rng = random.Random(seed)
    a = pool[rng.randrange(len(pool))]
    c = a.cone
    y = c.representative(rng.choice(c.realizable_cells))
    z = c.representative(rng.choice(c.realizable_cells))
    exact = structure.majorization_multiplier(c, y, z)
    if oracle.grid_majorize(c, y, z, 6):
        assert exact is not None
    if exact is not None:
        assert c.contains(sub(z, scale(exact, y)))


def test_faces_of_quad2(quad2):
    lat = structure.components(quad2)
    top, e1, e2 = by_cells(lat, "++"), by_cells(lat, "+0"), by_cells(lat, "0+")
    strict = structure.strict_face_below(lat, top)
    assert set(strict.members) == {e1, e2} and not strict.convex
    assert structure.strict_face_below(lat, e1).empty and structure.strict_face_below(lat, e2).empty
    full = structure.face_below(lat, top)
    assert full.face_axiom and full.icr_matches
    assert structure.upper_set(lat, e1) == tuple(sorted((e1, top)))
    assert structure.strong_positives(lat).cells == ("++",)
    assert not structure.is_relatively_open_preference(lat)


def test_join_of_quad2(quad2):
    lat = structure.components(quad2)
    top, e1, e2 = by_cells(lat, "++"), by_cells(lat, "+0"), by_cells(lat, "0+")
    assert structure.join(lat, e1, e2).index == top
    assert structure.lub(lat, e1, e2) == top


@pytest.mark.parametrize("make, expected", [
    (generators.quad2, zero_space(2)),
    (generators.lex23, span([(0, 0, 1)], 3)),
    (generators.halfplane, span([(1, -1)], 2)),
    (generators.duplicated_halfplane, span([(0, 1)], 2)),
    (generators.open_quadrant, zero_space(2)),
])
def test_lineality_of_fixtures(make, expected):
    c = make()
    assert structure.lineality(c, structure.components(c)) == expected


def test_translation_invariant(lex23):
    assert structure.translation_invariant(lex23, (0, 0, 1))
    assert not structure.translation_invariant(lex23, (0, 1, 0))


def test_components_are_open_and_partition_pool():
    for a in random_pool():
        lat, c = a.lattice, a.cone
        cells = [s for E in lat.components for s in E.cells]
        assert sorted(cells) == sorted(c.realizable_cells)
        for E in lat.components:
            for s in E.cells:
                p = c.representative(s)
                for d in E.lin_hull.basis:
                    t = openness_step(c.A, p, d)
                    for q in (add(p, scale(t, d)), sub(p, scale(t, d))):
                        assert lat.component_of(q) == E.index


def test_lineality_is_intersection_over_pool():
    for a in random_pool():
        for h in a.lineality.basis:
            for s in a.cone.realizable_cells:
                p = a.cone.representative(s)
                assert a.cone.contains(add(p, h)) and a.cone.contains(sub(p, scale(7, h)))


def _pool_case(seed):
    pool = random_pool()
    rng = random.Random(seed)
    a = pool[rng.randrange(len(pool))]
    pos = oracle.sample(a.cone, 8, seed).positive(a.cone)
    return a, rng, pos


@given(st.integers(0, 10_000))
def test_preference_implies_majorization(seed):
    a, rng, pos = _pool_case(seed)
    c = a.cone
    y, z = rng.choice(pos), rng.choice(pos)
    if c.contains(sub(z, y)):
        assert structure.majorizes(c, y, z)
    if a.lineality.contains(sub(z, y)):
        assert structure.majorizes(c, y, z) and structure.majorizes(c, z, y)


@given(st.integers(0, 10_000))
def test_majorization_scales_and_adds(seed):
    a, rng, pos = _pool_case(seed)
    c = a.cone
    y1, y2, z = rng.choice(pos), rng.choice(pos), rng.choice(pos)
    alpha, beta = Fraction(rng.randint(1, 7), rng.randint(1, 7)), Fraction(rng.randint(1, 7), rng.randint(1, 7))
    if structure.majorizes(c, y1, z):
        assert structure.majorizes(c, scale(alpha, y1), scale(beta, z))
    if structure.majorizes(c, y1, z) and structure.majorizes(c, y2, z):
        assert structure.majorizes(c, add(y1, y2), z)
    if structure.majorizes(c, z, y1) and structure.majorizes(c, z, y2):
        assert structure.majorizes(c, z, add(y1, y2))


def test_face_and_upper_set_duality():
    for a in random_pool()[:30]:
        lat = a.lattice
        for i in range(len(lat)):
            for j in range(len(lat)):
                below_i = set(structure.face_below(lat, i).members)
                below_j = set(structure.face_below(lat, j).members)
                assert lat.leq(i, j) == (below_i <= below_j)
                assert lat.leq(i, j) == (set(structure.upper_set(lat, j)) <= set(structure.upper_set(lat, i)))


def test_greatest_component_is_strongly_positive():
    for a in random_pool():
        lat, c = a.lattice, a.cone
        g = lat.greatest()
        if g is None:
            continue
        r = lat.components[g].representative
        for E in lat.components:
            mu = structure.majorization_multiplier(c, E.representative, r)
            assert mu is not None and c.contains(sub(r, scale(mu, E.representative)))


def test_lineality_agrees_with_equipotency():
    for a in random_pool():
        c, L = a.cone, a.lineality
        zero = (0,) * c.dim
        for h in L.basis:
            assert conemodel.relate(c, zero, h, L) is conemodel.RelationVerdict.EQUIPOTENT
            assert structure.translation_invariant(c, h)
        for d in L.pivot_complement():
            assert not structure.translation_invariant(c, d)


def test_interior_of_face_is_the_component():
    for a in random_pool()[:30]:
        lat, c = a.lattice, a.cone
        for e in range(len(lat)):
            face = structure.face_below(lat, e)
            cells = frozenset(face.cells)
            lin = lat.components[e].lin_hull
            for s in face.cells:
                assert structure.open_along(c, s, cells, lin) == (lat.cell_component[s] == e)
