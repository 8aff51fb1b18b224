"""Majorization, open components and their upper lattice.

``y`` is majorized by ``z`` (both positive) when ``z - mu*y`` is positive
for some ``mu > 0``. The symmetric part of this preorder splits ``P`` into
open components; each component is a union of cells of the sign cone, and
the components ordered by majorization form an upper lattice whose join is
the component of the sum of representatives.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .conemodel import (
    SignCone,
    cell_lin_hull,
    cell_system,
    convexity_counterexample,
    enumerate_signs,
    sign_key,
)
from .errors import DimensionMismatch, InvariantViolation, PreconditionError
from .exactnum import (
    Subspace,
    Vector,
    add,
    dot,
    format_vector,
    intersect,
    primitive,
    sign,
    subspace_sum,
)
from .lpcore import GeneratorCone, LinearSystem, LPStats, lineality_space, primal_description

log = logging.getLogger(__name__)


# -- majorization ---------------------------------------------------------------

@dataclass(frozen=True)
class Interval:
    """Subset of (0, inf) with rational endpoints; ``hi=None`` means unbounded."""

    lo: Fraction
    lo_open: bool
    hi: Fraction | None
    hi_open: bool

    @property
    def empty(self) -> bool:
        if self.hi is None:
            return False
        return self.lo > self.hi or (self.lo == self.hi and (self.lo_open or self.hi_open))

    def meet(self, other: "Interval") -> "Interval":
        if other.lo > self.lo or (other.lo == self.lo and other.lo_open):
            lo, lo_open = other.lo, other.lo_open
        else:
            lo, lo_open = self.lo, self.lo_open
        if self.hi is None:
            hi, hi_open = other.hi, other.hi_open
        elif other.hi is None or self.hi < other.hi or (self.hi == other.hi and self.hi_open):
            hi, hi_open = self.hi, self.hi_open
        else:
            hi, hi_open = other.hi, other.hi_open
        return Interval(lo, lo_open, hi, hi_open)

    def pick(self) -> Fraction:
        if self.hi is None:
            return self.lo + 1
        if self.lo == self.hi:
            return self.lo
        return (self.lo + self.hi) / 2


POSITIVE_REALS = Interval(Fraction(0), True, None, False)
_EMPTY = Interval(Fraction(1), True, Fraction(0), True)


def _row_interval(alpha: Fraction, beta: Fraction, ch: str) -> Interval | None:
    """``{mu : sign(alpha - mu*beta) = ch}`` as an interval, or None for 'all mu'."""
    want = {"+": 1, "0": 0, "-": -1}[ch]
    if beta == 0:
        return None if sign(alpha) == want else _EMPTY
    root = alpha / beta
    if want == 0:
        return Interval(root, False, root, False)
    below = (want > 0) == (beta > 0)  # mu must lie below the root
    if below:
        return Interval(Fraction(0), True, root, True)
    return Interval(root, True, None, False)


def majorization_multiplier(c: SignCone, y: Sequence, z: Sequence) -> Fraction | None:
    """Some ``mu > 0`` with ``z - mu*y`` in ``P``, or None when ``y`` is not majorized by ``z``."""
    if len(y) != c.dim or len(z) != c.dim:
        raise DimensionMismatch("points must live in the cone's ambient space")
    if not c.contains(y) or not c.contains(z):
        raise PreconditionError("majorization is defined on positive vectors only")
    return _multiplier(c, y, z)


def _multiplier(c: SignCone, y, z) -> Fraction | None:
    ay = [dot(a, y) for a in c.A]
    az = [dot(a, z) for a in c.A]
    for s in c.realizable_cells:
        iv = POSITIVE_REALS
        for alpha, beta, ch in zip(az, ay, s):
            r = _row_interval(alpha, beta, ch)
            if r is not None:
                iv = iv.meet(r)
                if iv.empty:
                    break
        if not iv.empty:
            return iv.pick()
    return None


def majorizes(c: SignCone, y: Sequence, z: Sequence) -> bool:
    """True iff ``z`` majorizes ``y``."""
    return majorization_multiplier(c, y, z) is not None


# -- components -------------------------------------------------------------------

@dataclass(frozen=True)
class Component:
    index: int
    cells: tuple[str, ...]
    representative: Vector
    lin_hull: Subspace
    lineality: Subspace

    @property
    def label(self) -> str:
        return ",".join(self.cells)

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "cells": list(self.cells),
            "representative": format_vector(self.representative),
            "lin_hull": [format_vector(b) for b in self.lin_hull.basis],
            "lineality": [format_vector(b) for b in self.lineality.basis],
        }


@dataclass(frozen=True)
class ComponentLattice:
    cone: SignCone
    components: tuple[Component, ...]
    order: tuple[tuple[bool, ...], ...]
    joins: tuple[tuple[int | None, ...], ...]
    hasse_edges: tuple[tuple[int, int], ...]
    validated: bool
    law_checks_passed: bool | None
    open_components: tuple[bool, ...]
    cell_component: dict = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.components)

    def leq(self, i: int, j: int) -> bool:
        return self.order[i][j]

    def lt(self, i: int, j: int) -> bool:
        return self.order[i][j] and i != j

    def component_of(self, y: Sequence) -> int | None:
        return self.cell_component.get(self.cone.sign_of(y))

    def greatest(self) -> int | None:
        for j in range(len(self.components)):
            if all(self.order[i][j] for i in range(len(self.components))):
                return j
        return None

    def least(self) -> int | None:
        for i in range(len(self.components)):
            if all(self.order[i][j] for j in range(len(self.components))):
                return i
        return None

    def is_chain(self) -> bool:
        k = len(self.components)
        return all(self.order[i][j] or self.order[j][i] for i in range(k) for j in range(k))

    def chain(self) -> tuple[int, ...]:
        """Component indices in increasing order (only meaningful for chains)."""
        return tuple(sorted(range(len(self.components)), key=lambda i: sum(self.order[j][i] for j in range(len(self.components)))))

    def to_dict(self) -> dict:
        return {
            "components": [E.to_dict() for E in self.components],
            "order": [[int(x) for x in row] for row in self.order],
            "joins": [list(row) for row in self.joins],
            "hasse_edges": [list(e) for e in self.hasse_edges],
            "validated": self.validated,
            "law_checks_passed": self.law_checks_passed,
        }


@lru_cache(maxsize=4096)
def _cell_closure(A, n: int, s: str) -> GeneratorCone:
    return primal_description(cell_system(A, s, n).closure())


def closure_generators(c: SignCone, cells: Sequence[str]) -> GeneratorCone:
    """Generators of the closed convex hull of a union of cells."""
    rays, lines = [], []
    for s in cells:
        g = _cell_closure(c.A, c.dim, s)
        rays.extend(g.rays)
        lines.extend(g.lines)
    return GeneratorCone(c.dim, tuple(dict.fromkeys(rays)), tuple(dict.fromkeys(lines)))


def open_along(c: SignCone, s: str, cellset: frozenset, lin: Subspace) -> bool:
    """Relative openness of the union ``cellset`` at every point of cell ``s``.

    Moving from a point of ``s`` by a small multiple of ``d`` keeps the
    nonzero signs and replaces each zero sign by ``sign(a.d)``; the union
    is open there iff every such perturbed sign vector stays in it.
    """
    for d in lin.basis:
        for orient in (1, -1):
            p = "".join(
                ch if ch != "0" else "+0-"[1 - sign(orient * dot(a, d))] for a, ch in zip(c.A, s)
            )
            if p not in cellset:
                return False
    return True


def components(c: SignCone, validated: bool = True, stats: LPStats | None = None) -> ComponentLattice:
    """Split the realizable cells into open components and build the majorization lattice.

    With ``validated=False`` (diagnostics on inputs that failed validation)
    the lattice laws are not enforced and ``law_checks_passed`` is None.
    """
    cells = c.realizable_cells
    if not cells:
        raise PreconditionError("empty positive cone")
    classes: list[list[str]] = []
    for s in cells:
        r = c.representative(s)
        for cls in classes:
            q = c.representative(cls[0])
            if _multiplier(c, r, q) is not None and _multiplier(c, q, r) is not None:
                cls.append(s)
                break
        else:
            classes.append([s])
    classes = [sorted(cls, key=sign_key) for cls in classes]
    classes.sort(key=lambda cls: [sign_key(s) for s in cls])

    comps = []
    for idx, cls in enumerate(classes):
        rep = primitive(_sum(c.representative(s) for s in cls))
        lin = subspace_sum(*(cell_lin_hull(c.A, s, c.dim) for s in cls))
        lam = lineality_space(closure_generators(c, cls))
        comps.append(Component(idx, tuple(cls), rep, lin, lam))
    k = len(comps)
    cell_component = {s: E.index for E in comps for s in E.cells}
    order = tuple(
        tuple(i == j or _multiplier(c, comps[i].representative, comps[j].representative) is not None for j in range(k))
        for i in range(k)
    )
    joins = tuple(
        tuple(cell_component.get(c.sign_of(add(comps[i].representative, comps[j].representative))) for j in range(k))
        for i in range(k)
    )
    hasse = tuple(
        (i, j)
        for i in range(k)
        for j in range(k)
        if i != j and order[i][j] and not any(
            t not in (i, j) and order[i][t] and order[t][j] for t in range(k)
        )
    )
    openness = tuple(
        all(open_along(c, s, frozenset(E.cells), E.lin_hull) for s in E.cells) for E in comps
    )
    lattice = ComponentLattice(c, tuple(comps), order, joins, hasse, validated, None, openness, cell_component)
    if not validated:
        return lattice
    _check_laws(lattice)
    return ComponentLattice(c, tuple(comps), order, joins, hasse, validated, True, openness, cell_component)


def _sum(vectors):
    vectors = list(vectors)
    out = vectors[0]
    for v in vectors[1:]:
        out = add(out, v)
    return out


def _check_laws(l: ComponentLattice) -> None:
    k = len(l.components)
    cells = [s for E in l.components for s in E.cells]
    if len(cells) != len(set(cells)) or set(cells) != set(l.cone.realizable_cells):
        raise InvariantViolation("components do not partition the realizable cells")
    for i in range(k):
        for j in range(k):
            if i != j and l.order[i][j] and l.order[j][i]:
                raise InvariantViolation(f"order not antisymmetric on {i},{j}")
            for t in range(k):
                if l.order[i][j] and l.order[j][t] and not l.order[i][t]:
                    raise InvariantViolation(f"order not transitive on {i},{j},{t}")
    for i in range(k):
        for j in range(k):
            jn = l.joins[i][j]
            if jn is None:
                raise InvariantViolation(f"sum of representatives {i},{j} left the cone")
            if lub(l, i, j) != jn:
                raise InvariantViolation(f"join law fails on components {i},{j}")
    for E, ok in zip(l.components, l.open_components):
        if not ok:
            raise InvariantViolation(f"component {E.label} is not relatively open")
        if len(E.cells) > 1 and convexity_counterexample(l.cone.A, l.cone.dim, E.cells) is not None:
            raise InvariantViolation(f"component {E.label} is not convex")


def lub(l: ComponentLattice, i: int, j: int) -> int | None:
    """Least upper bound of two components computed from the order table alone."""
    k = len(l.components)
    ups = [t for t in range(k) if l.order[i][t] and l.order[j][t]]
    least = [t for t in ups if all(l.order[t][u] for u in ups)]
    return least[0] if least else None


def join(l: ComponentLattice, i: int, j: int) -> Component:
    """Join of two components; the component containing the sum of their representatives."""
    jn = l.joins[i][j]
    if jn is None or (l.validated and lub(l, i, j) != jn):
        raise InvariantViolation(f"join of components {i},{j} is undefined")
    return l.components[jn]


def to_dot(l: ComponentLattice) -> str:
    """Hasse diagram in DOT; edges run from the lower to the upper component."""
    lines = ["digraph components {"]
    for E in l.components:
        lines.append(f'  E{E.index} [label="{E.label}"];')
    for i, j in l.hasse_edges:
        lines.append(f"  E{i} -> E{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- faces --------------------------------------------------------------------

@dataclass(frozen=True)
class Face:
    top: int
    strict: bool
    members: tuple[int, ...]
    cells: tuple[str, ...]
    convex: bool
    face_axiom: bool
    icr_matches: bool | None

    @property
    def empty(self) -> bool:
        return not self.members


def _face(l: ComponentLattice, e: int, strict: bool) -> Face:
    k = len(l.components)
    members = tuple(t for t in range(k) if l.order[t][e] and (not strict or t != e))
    cells = tuple(s for t in members for s in l.components[t].cells)
    c = l.cone
    convex = not cells or len(cells) == 1 or convexity_counterexample(c.A, c.dim, cells) is None
    member_set = set(members)
    # face axiom on cell representatives: u + v in the face forces u, v in it
    axiom = True
    for s in c.realizable_cells:
        for t in c.realizable_cells:
            w = l.component_of(add(c.representative(s), c.representative(t)))
            if w in member_set and not (l.cell_component[s] in member_set and l.cell_component[t] in member_set):
                axiom = False
    icr = None
    if not strict:
        cellset = frozenset(cells)
        lin = l.components[e].lin_hull
        icr = all(
            open_along(c, s, cellset, lin) == (l.cell_component[s] == e) for s in cells
        )
    if l.validated and (not axiom or icr is False):
        raise InvariantViolation(f"face check failed below component {e}")
    return Face(e, strict, members, cells, convex, axiom, icr)


def face_below(l: ComponentLattice, e: int) -> Face:
    """The face ``F(E)``: union of the components below ``E``."""
    return _face(l, e, strict=False)


def strict_face_below(l: ComponentLattice, e: int) -> Face:
    """``F(E)`` without ``E`` itself; may be empty or non-convex."""
    return _face(l, e, strict=True)


def upper_set(l: ComponentLattice, e: int) -> tuple[int, ...]:
    """Components of ``G(z)`` for ``z`` in ``E``: everything majorizing ``E``."""
    return tuple(t for t in range(len(l.components)) if l.order[e][t])


def strong_positives(l: ComponentLattice) -> Component | None:
    g = l.greatest()
    return None if g is None else l.components[g]


def is_relatively_open_preference(l: ComponentLattice) -> bool:
    return len(l.components) == 1


# -- lineality --------------------------------------------------------------------

def translation_invariant(c: SignCone, h: Sequence, stats: LPStats | None = None) -> bool:
    """Exact test of ``P + t*h = P`` for all real ``t``.

    For every admitted realizable cell, enumerates the sign vectors reached by
    ``y + t*h`` with ``y`` in the cell and ``t`` free; all must be admitted.
    """
    n = c.dim
    admitted = c.S_set
    rows = [tuple(a) + (dot(a, h),) for a in c.A]
    for s in c.realizable_cells:
        base = c.cell_system(s)
        lifted = LinearSystem(
            n + 1,
            tuple(r + (Fraction(0),) for r in base.eq_rows),
            tuple(r + (Fraction(0),) for r in base.strict_rows),
            (),
        )
        for u in enumerate_signs(lifted, rows, stats):
            if u not in admitted:
                return False
    return True


def lineality(c: SignCone, l: ComponentLattice, check: bool = True) -> Subspace:
    """``L_P`` as the intersection of the components' lineality spaces.

    The result is cross-checked against the translation test: every basis
    vector must leave ``P`` invariant and no pivot-complement vector may.
    Disagreement raises :class:`InvariantViolation`.
    """
    L = intersect(*(E.lineality for E in l.components))
    if check:
        for h in L.basis:
            if not translation_invariant(c, h):
                raise InvariantViolation(f"lineality basis vector {format_vector(h)} moves P")
        for d in L.pivot_complement():
            if translation_invariant(c, d):
                raise InvariantViolation(f"direction {format_vector(d)} is missing from the lineality space")
    return L
