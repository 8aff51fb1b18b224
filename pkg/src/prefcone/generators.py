"""Named fixtures and seeded random instance families."""

from __future__ import annotations

import random

from .conemodel import SignCone, arrangement_signs, build
from .exactnum import Matrix, rank
from .steplin import Cortege, is_lex_positive, lex_cone, validate_cortege


def quad2() -> SignCone:
    """Closed quadrant of Q^2 without the origin."""
    return build(2, [[1, 0], [0, 1]], ["++", "+0", "0+"], name="QUAD2")


def lex23() -> SignCone:
    """Lexicographic order on the first two coordinates of Q^3."""
    return build(3, [[1, 0, 0], [0, 1, 0]], ["++", "+0", "+-", "0+"], name="LEX23")


def halfplane() -> SignCone:
    return build(2, [[1, 1]], ["+"], name="HALFPLANE")


def duplicated_halfplane() -> SignCone:
    """``{y1 > 0}`` written with a repeated row and a redundant second coordinate row."""
    return build(2, [[1, 0], [1, 0], [0, 1]], ["+++", "++0", "++-"], name="HALFPLANE-DUP")


def open_quadrant() -> SignCone:
    return build(2, [[1, 0], [0, 1]], ["++"], name="OPEN-QUADRANT")


def random_matrix(rng: random.Random, m: int, n: int, bound: int = 3) -> Matrix:
    rows = []
    while len(rows) < m:
        r = tuple(rng.randint(-bound, bound) for _ in range(n))
        if any(r):
            rows.append(r)
    return tuple(rows)


def random_cortege(rng: random.Random, n: int, k: int | None = None, bound: int = 3) -> Cortege:
    """Independent integer functionals; ``k`` defaults to a random length in ``1..n``."""
    k = k if k is not None else rng.randint(1, n)
    rows: list[tuple] = []
    while len(rows) < k:
        r = tuple(rng.randint(-bound, bound) for _ in range(n))
        if any(r) and rank(rows + [r]) == len(rows) + 1:
            rows.append(r)
    return validate_cortege(rows, n)


def lex_instance(cortege: Cortege, extra_rows: Matrix = (), name: str | None = None) -> SignCone:
    """``{u > 0}`` for the cortege, optionally re-encoded over extra cutting rows."""
    if not extra_rows:
        return lex_cone(cortege, name=name)
    k = len(cortege)
    A = tuple(cortege.functionals) + tuple(extra_rows)
    cells = [s for s in arrangement_signs(A, cortege.ambient_dim) if is_lex_positive(s[:k])]
    return build(cortege.ambient_dim, A, cells, name=name)


def random_weak(rng: random.Random, n: int, extra: int = 0) -> tuple[SignCone, Cortege]:
    cortege = random_cortege(rng, n)
    extra_rows = random_matrix(rng, extra, n) if extra else ()
    return lex_instance(cortege, extra_rows, name="random-weak"), cortege


def random_pointed(rng: random.Random, n: int, m: int) -> SignCone:
    """``{A y >= 0} \\ {A y = 0}``: a partial preference with lineality ``ker A``."""
    zero = "0" * m
    while True:
        A = random_matrix(rng, m, n)
        cells = [s for s in arrangement_signs(A, n) if "-" not in s and s != zero]
        # redrawn when the closed cone is only the origin
        if cells:
            return build(n, A, cells, name="random-pointed")


def random_lex_intersection(rng: random.Random, n: int, max_len: int = 2) -> SignCone:
    """Intersection of two lexicographic cones of length at most ``max_len``."""
    while True:
        a = random_cortege(rng, n, rng.randint(1, min(n, max_len)))
        b = random_cortege(rng, n, rng.randint(1, min(n, max_len)))
        A = tuple(a.functionals) + tuple(b.functionals)
        k = len(a)
        cells = [s for s in arrangement_signs(A, n) if is_lex_positive(s[:k]) and is_lex_positive(s[k:])]
        # opposite corteges leave nothing
        if cells:
            return build(n, A, cells, name="random-lex-intersection")


def random_partial(rng: random.Random, n: int, max_cells: int = 16) -> SignCone:
    """One of the partial-preference families above, resampled until small enough."""
    while True:
        kind = rng.randrange(3)
        if kind == 0:
            c = random_pointed(rng, n, rng.randint(2, min(n + 1, 4)))
        elif kind == 1:
            c = random_lex_intersection(rng, n)
        else:
            c = random_weak(rng, n, extra=rng.randint(0, 1))[0]
        if len(c.realizable_cells) <= max_cells:
            return c
