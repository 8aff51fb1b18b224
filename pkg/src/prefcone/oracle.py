"""Brute-force counterparts of the symbolic routines.

Nothing here solves an LP: points are sampled and checked by evaluating
signs, and majorization is searched on a rational grid. These routines
ship with the library so reports can carry counterexample certificates.
"""

from __future__ import annotations

import itertools
import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .conemodel import SignCone
from .errors import InvariantViolation, PreconditionError
from .exactnum import Subspace, Vector, add, combine, format_vector, neg, scale, sub
from .structure import _cell_closure, majorizes

log = logging.getLogger(__name__)

REPRESENTATIVE = "representative"
IN_CELL = "random-in-cell"
AMBIENT = "random-ambient"


@dataclass(frozen=True)
class SampleSet:
    points: tuple[Vector, ...]
    seed: int
    provenance: tuple[str, ...]
    cells: tuple[str | None, ...]

    def __len__(self) -> int:
        return len(self.points)

    def positive(self, c: SignCone) -> list[Vector]:
        return [p for p in self.points if c.contains(p)]


def _rat(rng: random.Random, bound: int = 5) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, 3))


def sample(c: SignCone, count: int, seed: int = 0) -> SampleSet:
    """Seeded points: at least ``count / cells`` per realizable cell plus ambient points.

    In-cell points are the representative moved by a random nonnegative
    combination of the cell's closure rays and a random combination of its
    lines; each is re-checked by its sign vector.
    """
    rng = random.Random(seed)
    cells = c.realizable_cells
    per_cell = math.ceil(count / len(cells)) if cells else 0
    points, tags, owners = [], [], []
    for s in cells:
        rep = c.representative(s)
        g = _cell_closure(c.A, c.dim, s)
        points.append(rep), tags.append(REPRESENTATIVE), owners.append(s)
        for _ in range(per_cell - 1):
            lam = [Fraction(rng.randint(0, 4), rng.randint(1, 3)) for _ in g.rays]
            mu = [_rat(rng) for _ in g.lines]
            p = add(scale(rng.randint(1, 3), rep), combine(lam + mu, g.rays + g.lines, c.dim))
            if c.sign_of(p) != s:
                raise InvariantViolation(f"sampled point left cell {s}")
            points.append(p), tags.append(IN_CELL), owners.append(s)
    for _ in range(max(1, count // 4)):
        p = tuple(_rat(rng) for _ in range(c.dim))
        points.append(p), tags.append(AMBIENT), owners.append(None)
    return SampleSet(tuple(points), seed, tuple(tags), tuple(owners))


@dataclass
class AxiomReport:
    checked: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.counterexamples

    def fail(self, axiom: str, *points) -> None:
        if len(self.counterexamples) < 20:
            self.counterexamples.append({"axiom": axiom, "points": [format_vector(p) for p in points]})

    def to_dict(self) -> dict:
        return {"clean": self.clean, "checked": self.checked, "counterexamples": self.counterexamples}


def replay_axioms(c: SignCone, samples: SampleSet, L: Subspace | None = None, weak: bool = False,
                  triple_limit: int = 12, seed: int = 0) -> AxiomReport:
    """Replay the order axioms on sampled points, directly from sign evaluations.

    Triples are drawn from the first ``triple_limit`` points. Negative
    transitivity is checked only when ``weak`` is set.
    """
    rng = random.Random(seed)
    pts = list(samples.points)

    def prec(y, z):
        return c.contains(sub(z, y))

    report = AxiomReport()
    n_pairs = 0
    for y, z in itertools.product(pts, repeat=2):
        n_pairs += 1
        if prec(y, z) and prec(z, y):
            report.fail("asymmetry", y, z)
    report.checked["asymmetry"] = n_pairs
    few = pts[:triple_limit]
    n_triples = 0
    for x, y, z in itertools.product(few, repeat=3):
        n_triples += 1
        xy, yz, xz = prec(x, y), prec(y, z), prec(x, z)
        if xy and yz and not xz:
            report.fail("transitivity", x, y, z)
        if weak and not xy and not yz and xz:
            report.fail("negative-transitivity", x, y, z)
    report.checked["transitivity"] = n_triples
    if weak:
        report.checked["negative-transitivity"] = n_triples
    n_moves = 0
    for y, z in itertools.product(few, repeat=2):
        w = rng.choice(pts)
        alpha = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        base = prec(y, z)
        if prec(add(y, w), add(z, w)) != base:
            report.fail("translation", y, z, w)
        if prec(scale(alpha, y), scale(alpha, z)) != base:
            report.fail("scaling", y, z)
        if L is not None and not L.is_zero:
            h = combine([_rat(rng) for _ in L.basis], L.basis, c.dim)
            if prec(add(y, h), z) != base:
                report.fail("equipotent-transport", y, z, h)
        n_moves += 1
    report.checked["translation"] = report.checked["scaling"] = n_moves
    if L is not None:
        report.checked["equipotent-transport"] = n_moves
    for p in pts:
        if c.contains(p) and c.contains(neg(p)):
            report.fail("asymmetry", p, neg(p))
    return report


def grid_majorize(c: SignCone, y: Sequence, z: Sequence, depth: int) -> bool:
    """Search ``mu = p/q`` with ``1 <= p, q <= depth`` for ``z - mu*y`` in ``P``."""
    if not c.contains(y) or not c.contains(z):
        raise PreconditionError("majorization is defined on positive vectors only")
    mus = sorted({Fraction(p, q) for p in range(1, depth + 1) for q in range(1, depth + 1)})
    return any(c.contains(sub(z, scale(mu, y))) for mu in mus)


def check_majorization_concordance(c: SignCone, y: Sequence, z: Sequence, depth: int = 8) -> bool:
    """One-sided agreement; returns the symbolic verdict.

    A grid hit that the interval routine rejects is a soundness breach and
    raises; a grid miss on a true verdict is only logged.
    """
    grid = grid_majorize(c, y, z, depth)
    exact = majorizes(c, y, z)
    if grid and not exact:
        raise InvariantViolation(f"grid finds a multiplier the interval routine rejects: {y} vs {z}")
    if exact and not grid:
        log.debug("grid depth %d too coarse for %s vs %s", depth, y, z)
    return exact
