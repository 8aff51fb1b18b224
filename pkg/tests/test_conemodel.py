import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pool import grid_points, sign_vector
from prefcone import generators
from prefcone.conemodel import (
    RelationVerdict, arrangement_signs, build, convexity_counterexample, enumerate_signs, is_perfect,
    load, load_file, negate_sign, relate, require_partial_preference, validate_partial_preference,
)
from prefcone.errors import CapExceeded, DimensionMismatch, ParseError, PreconditionError
from prefcone.exactnum import add, scale, span, zero_space
from prefcone.lpcore import LinearSystem


@given(st.integers(0, 10_000))
def test_arrangement_matches_grid_in_the_plane(seed):
    rng = random.Random(seed)
    A = generators.random_matrix(rng, rng.randint(1, 4), 2)
    found = arrangement_signs(A, 2)
    # planar cells for rows bounded by 3 all contain a grid point of norm at most 6
    assert set(found) == {sign_vector(A, x) for x in grid_points(2, 6)}
    for s, p in found.items():
        assert sign_vector(A, p) == s


def test_enumeration_cap(monkeypatch):
    monkeypatch.setenv("PREFCONE_MAX_ROWS", "2")
    with pytest.raises(CapExceeded):
        enumerate_signs(LinearSystem(2), [(1, 0), (0, 1), (1, 1)])


def test_build_marks_unrealizable_cells():
    c = build(2, [[1, 0], [2, 0]], ["+-", "++"])
    assert c.realizable_cells == ("++",) and c.unrealizable == ("+-",)


@pytest.mark.parametrize("data, fragment", [
    ({"dim": 2, "A": [[1, 0]]}, "cells"),
    ({"dim": 2, "A": [[1, 0]], "cells": ["+x"]}, "malformed"),
    ({"dim": 2, "A": [[1, 0]], "cells": ["++"]}, "width"),
    ({"dim": 2, "A": [[1]], "cells": ["+"]}, "row 0"),
    ({"dim": 2, "A": [["0.5", 0]], "cells": ["+"]}, "field 'A'"),
    ({"dim": "2", "A": [[1, 0]], "cells": ["+"]}, "dim"),
    ({"dim": 2, "A": [[1, 0]], "cells": []}, "empty"),
])
def test_load_errors_name_the_field(data, fragment):
    with pytest.raises(ParseError, match=fragment):
        load(data)


def test_load_rejects_bad_json():
    with pytest.raises(ParseError, match="line"):
        load("{not json")


def test_json_round_trip(quad2, tmp_path):
    path = tmp_path / "q.json"
    path.write_text(quad2.to_json())
    again = load_file(path)
    assert again.S == quad2.S and again.A == quad2.A and again.name == "QUAD2"
    assert json.loads(again.to_json()) == json.loads(quad2.to_json())


def test_validation_accepts_fixtures():
    for c in (generators.quad2(), generators.lex23(), generators.halfplane(), generators.duplicated_halfplane()):
        assert validate_partial_preference(c).passed


def test_validation_finds_asymmetry_violation():
    c = build(2, [[1, 0]], ["+", "-"])
    report = validate_partial_preference(c)
    assert not report.asymmetric
    w = report.asymmetry_witness
    assert c.contains(w) and c.contains(tuple(-x for x in w))
    with pytest.raises(PreconditionError):
        require_partial_preference(c)


def test_validation_finds_convexity_violation():
    c = build(2, [[1, 0], [0, 1]], ["+0", "0+"])
    report = validate_partial_preference(c)
    assert report.asymmetric and not report.convex
    y, z = report.convexity_witness
    assert c.contains(y) and c.contains(z) and not c.contains(add(y, z))


@given(st.integers(0, 10_000))
def test_convexity_counterexample_is_genuine(seed):
    rng = random.Random(seed)
    A = generators.random_matrix(rng, rng.randint(1, 3), 2)
    cells = [s for s in arrangement_signs(A, 2) if rng.random() < 0.5 and s != "0" * len(A)]
    if not cells:
        return
    hit = convexity_counterexample(A, 2, cells)
    if hit is not None:
        y, z = hit
        assert sign_vector(A, y) in cells and sign_vector(A, z) in cells
        assert sign_vector(A, add(y, z)) not in cells
    else:
        # no pair of grid points escapes the union
        pts = [x for x in grid_points(2, 3) if sign_vector(A, x) in cells]
        assert all(sign_vector(A, add(p, q)) in cells for p in pts for q in pts)


def test_relate_verdicts(lex23):
    L = span([(0, 0, 1)], 3)
    assert relate(lex23, (0, 0, 0), (1, -5, 0), L) is RelationVerdict.PRECEDES
    assert relate(lex23, (1, -5, 0), (0, 0, 0), L) is RelationVerdict.SUCCEEDS
    assert relate(lex23, (0, 0, 0), (0, 0, 7), L) is RelationVerdict.EQUIPOTENT
    quad = generators.quad2()
    assert relate(quad, (0, 0), (1, -1), zero_space(2)) is RelationVerdict.INDIFFERENT_ONLY
    with pytest.raises(DimensionMismatch):
        relate(quad, (0, 0), (1, 0, 0), zero_space(2))


def test_is_perfect():
    lex2 = build(2, [[1, 0], [0, 1]], ["++", "+0", "+-", "0+"])
    assert is_perfect(lex2)
    assert not is_perfect(generators.lex23())
    assert not is_perfect(generators.quad2())


def test_negate_sign():
    assert negate_sign("+0-") == "-0+"


def _pool_points(seed):
    from pool import random_pool
    from prefcone import oracle

    pool = random_pool()
    rng = random.Random(seed)
    a = pool[rng.randrange(len(pool))]
    return a, rng, list(oracle.sample(a.cone, 8, seed).points)


@given(st.integers(0, 10_000))
def test_relation_is_compatible(seed):
    a, rng, pts = _pool_points(seed)
    c, L = a.cone, a.lineality
    y, z, w = rng.choice(pts), rng.choice(pts), rng.choice(pts)
    lam = Fraction(rng.randint(1, 9), rng.randint(1, 9))
    v = relate(c, y, z, L)
    assert relate(c, scale(lam, y), scale(lam, z), L) is v
    assert relate(c, add(y, w), add(z, w), L) is v
    assert c.contains(y) == c.contains(scale(lam, y))


@given(st.integers(0, 10_000))
def test_transitivity_and_mixed_transport(seed):
    a, rng, pts = _pool_points(seed)
    c, L = a.cone, a.lineality
    y, z, u = rng.choice(pts), rng.choice(pts), rng.choice(pts)
    if relate(c, y, z, L) is RelationVerdict.PRECEDES and relate(c, z, u, L) is RelationVerdict.PRECEDES:
        assert relate(c, y, u, L) is RelationVerdict.PRECEDES
    if relate(c, y, z, L) is RelationVerdict.PRECEDES and L.basis:
        h = L.basis[rng.randrange(L.dim)]
        assert relate(c, y, add(z, scale(rng.randint(-5, 5), h)), L) is RelationVerdict.PRECEDES
