"""Corteges of linear functionals and the step-linear functions they generate.

A step-linear function evaluates a point by the first functional of its
cortege that does not vanish there. The representation check turns the
set equalities ``{u > 0} = P`` and ``{u = 0} = L`` into finitely many
exact LP certificates by splitting ``{u > 0}`` into branch regions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .conemodel import SignCone, arrangement_signs, build, enumerate_signs
from .errors import DimensionMismatch, InvalidCortege, InvariantViolation, ParseError
from .exactnum import (
    Subspace,
    Vector,
    dot,
    format_vector,
    is_zero,
    kernel,
    parse_vector,
    rank,
)
from .lpcore import LinearSystem, LPStats


@dataclass(frozen=True)
class Cortege:
    """Linearly independent functionals, least (in the cortege order) first."""

    functionals: tuple[Vector, ...]
    ambient_dim: int

    def __len__(self) -> int:
        return len(self.functionals)

    def __iter__(self):
        return iter(self.functionals)

    def prefix_kernel(self, i: int) -> Subspace:
        """Common kernel of the first ``i`` functionals."""
        return kernel(self.functionals[:i], self.ambient_dim)

    @property
    def common_kernel(self) -> Subspace:
        return self.prefix_kernel(len(self.functionals))

    def to_list(self) -> list[list[str]]:
        return [format_vector(f) for f in self.functionals]

    def to_json(self) -> str:
        return json.dumps(self.to_list())


def validate_cortege(seq: Iterable[Sequence], n: int | None = None) -> Cortege:
    """Check nonzero entries and strictly increasing prefix rank."""
    rows = [tuple(Fraction(x) for x in f) for f in seq]
    if not rows:
        raise InvalidCortege("empty cortege", 0)
    if n is None:
        n = len(rows[0])
    for i, f in enumerate(rows, 1):
        if len(f) != n:
            raise DimensionMismatch(f"functional {i} has {len(f)} entries, expected {n}")
        if is_zero(f):
            raise InvalidCortege(f"functional {i} is zero", i)
        if rank(rows[:i]) != i:
            raise InvalidCortege(f"functional {i} vanishes wherever its predecessors do", i)
    return Cortege(tuple(rows), n)


def load_cortege(obj, n: int | None = None) -> Cortege:
    """Parse a JSON array of vectors, or an object with a ``cortege`` key."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise ParseError(f"cortege is not valid JSON: {exc}") from exc
    if isinstance(obj, dict):
        if "cortege" not in obj:
            raise ParseError("cortege object lacks a 'cortege' field")
        obj = obj["cortege"]
    if not isinstance(obj, list):
        raise ParseError("cortege must be a JSON array of vectors")
    return validate_cortege([parse_vector(f, n) for f in obj], n)


@dataclass(frozen=True)
class StepLinearFn:
    cortege: Cortege

    def __call__(self, y: Sequence) -> Fraction:
        return evaluate(self, y)

    def leading_index(self, y: Sequence) -> int | None:
        """0-based index of the first functional not vanishing at ``y``."""
        for i, f in enumerate(self.cortege.functionals):
            if dot(f, y) != 0:
                return i
        return None


def evaluate(u: StepLinearFn | Cortege, y: Sequence) -> Fraction:
    """Value of the first non-vanishing functional at ``y``; 0 if all vanish."""
    cortege = u.cortege if isinstance(u, StepLinearFn) else u
    if len(y) != cortege.ambient_dim:
        raise DimensionMismatch(f"point of length {len(y)} for dimension {cortege.ambient_dim}")
    for f in cortege.functionals:
        v = dot(f, y)
        if v != 0:
            return v
    return Fraction(0)


def branch_system(cortege: Cortege, i: int, positive: bool = True) -> LinearSystem:
    """Branch region ``{f_1 = .. = f_{i-1} = 0, +-f_i > 0}`` (``i`` is 0-based)."""
    f = cortege.functionals
    lead = f[i] if positive else tuple(-x for x in f[i])
    return LinearSystem(cortege.ambient_dim, tuple(f[:i]), (lead,), ())


def is_lex_positive(s: str) -> bool:
    """Sign string whose first nonzero entry is '+'."""
    for ch in s:
        if ch != "0":
            return ch == "+"
    return False


def lex_cone(cortege: Cortege, name: str | None = None) -> SignCone:
    """The sign cone ``{u > 0}`` over the cortege rows."""
    A = cortege.functionals
    cells = [s for s in arrangement_signs(A, cortege.ambient_dim) if is_lex_positive(s)]
    return build(cortege.ambient_dim, A, cells, name=name)


def lex_positive_on_cell(cortege: Cortege, cell: LinearSystem, stats: LPStats | None = None) -> str | None:
    """None if ``u > 0`` on the whole cell, else a sign pattern of the cortege where it fails."""
    for s in enumerate_signs(cell, cortege.functionals, stats):
        if not is_lex_positive(s):
            return s
    return None


@dataclass(frozen=True)
class RepresentationReport:
    branches_inside: bool
    cells_positive: bool
    kernel_matches: bool
    failures: tuple[str, ...] = field(default=())

    def __bool__(self) -> bool:
        return self.branches_inside and self.cells_positive and self.kernel_matches

    @property
    def passed(self) -> bool:
        return bool(self)

    def to_dict(self) -> dict:
        return {
            "represents": self.passed,
            "branches_inside": self.branches_inside,
            "cells_positive": self.cells_positive,
            "kernel_matches": self.kernel_matches,
            "failures": list(self.failures),
        }


def check_represents(u: StepLinearFn | Cortege, c: SignCone, L: Subspace,
                     stats: LPStats | None = None) -> RepresentationReport:
    """Exact test of ``{u > 0} = P`` and ``{u = 0} = L``."""
    cortege = u.cortege if isinstance(u, StepLinearFn) else u
    if cortege.ambient_dim != c.dim:
        raise DimensionMismatch("cortege and cone live in different dimensions")
    failures = []
    admitted = c.S_set
    inside = True
    for i in range(len(cortege)):
        for s in enumerate_signs(branch_system(cortege, i), c.A, stats):
            if s not in admitted:
                inside = False
                failures.append(f"branch {i + 1} meets cell {s} outside P")
    positive = True
    for s in c.realizable_cells:
        bad = lex_positive_on_cell(cortege, c.cell_system(s), stats)
        if bad is not None:
            positive = False
            failures.append(f"cell {s} meets cortege pattern {bad}")
    matches = cortege.common_kernel == L
    if not matches:
        failures.append("common kernel differs from the lineality space")
    return RepresentationReport(inside, positive, matches, tuple(failures))


@dataclass(frozen=True)
class LinearVerdict:
    functional: Vector | None
    reason: str

    def to_dict(self) -> dict:
        return {
            "representable": self.functional is not None,
            "functional": None if self.functional is None else format_vector(self.functional),
            "reason": self.reason,
        }


def linear_representability(c: SignCone, l, w) -> LinearVerdict:
    """A single functional ``f`` with ``P = {f > 0}``, when one exists.

    ``l`` is the component lattice and ``w`` the weakness analysis.
    """
    if not w.is_weak:
        return LinearVerdict(None, "not-weak")
    if len(l.components) != 1:
        return LinearVerdict(None, "several-components")
    if not l.components[0].lin_hull.is_full:
        return LinearVerdict(None, "component-not-full-dimensional")
    f = w.functionals[0]
    cortege = Cortege((f,), c.dim)
    if not check_represents(cortege, c, w.rest_space):
        raise InvariantViolation("single extracted functional does not represent P")
    return LinearVerdict(f, "ok")
