"""Separation by corteges, regular weak extensions and non-preference witnesses.

``separate`` builds a cortege whose step-linear function is positive on a
cone ``K`` and zero on a subspace ``L``: at each step it takes a relative
interior point of the dual of the closed hull of what is left of ``K``,
then restricts to the kernel of that functional. ``K`` is passed as a list
of closed generator cones whose relative interiors make up ``K``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .conemodel import RelationVerdict, SignCone, relate
from .errors import DimensionMismatch, InvariantViolation, PreconditionError
from .exactnum import (
    Subspace,
    Vector,
    combine,
    dot,
    format_rational,
    format_vector,
    full_space,
    intersect,
    kernel,
    neg,
    sub,
)
from .lpcore import (
    GeneratorCone,
    LinearSystem,
    LPStats,
    dual_cone,
    dual_description,
    primal_description,
    relative_interior_point,
    strictly_feasible,
)
from .steplin import (
    Cortege,
    StepLinearFn,
    evaluate,
    lex_cone,
    lex_positive_on_cell,
    validate_cortege,
)
from .structure import ComponentLattice, _cell_closure


def _relint_meets(g: GeneratorCone, W: Subspace, stats: LPStats | None) -> bool:
    """Whether the relative interior of ``g`` meets ``W`` (one LP over the multipliers)."""
    k, l = len(g.rays), len(g.lines)
    if k == 0:
        return True
    ann = W.annihilator() if not W.is_full else ()
    gens = g.rays + g.lines
    eq = tuple(tuple(dot(a, v) for v in gens) for a in ann)
    strict = tuple(tuple(Fraction(int(i == j)) for j in range(k + l)) for i in range(k))
    return strictly_feasible(LinearSystem(k + l, eq, strict, ()), stats) is not None


def _restrict(g: GeneratorCone, W: Subspace) -> GeneratorCone:
    if W.is_full:
        return g
    h = dual_description(g)
    return primal_description(h.extend(eq=W.annihilator()))


def separate(pieces: Sequence[GeneratorCone], L: Subspace, stats: LPStats | None = None) -> Cortege:
    """Cortege positive on the union of the pieces' relative interiors and zero on ``L``.

    The pieces must jointly form an asymmetric convex cone missing ``L``;
    a violation surfaces as :class:`InvariantViolation`.
    """
    n = L.ambient_dim
    if not pieces:
        raise PreconditionError("nothing to separate")
    for g in pieces:
        if g.ambient_dim != n:
            raise DimensionMismatch("pieces and subspace live in different dimensions")
    live = [GeneratorCone(n, g.rays, g.lines + L.basis) for g in pieces]
    W = full_space(n)
    functionals: list[Vector] = []
    while True:
        live = [_restrict(g, W) for g in live if _relint_meets(g, W, stats)]
        if not live:
            break
        if any(not g.rays for g in live):
            raise InvariantViolation("separated cone contains a subspace")
        hull = GeneratorCone(
            n,
            tuple(dict.fromkeys(r for g in live for r in g.rays)),
            tuple(dict.fromkeys(v for g in live for v in g.lines)),
        )
        D = dual_cone(hull, within=W)
        if D.is_zero_cone or not D.rays:
            raise InvariantViolation("dual cone has no interior direction; input is not asymmetric")
        phi = relative_interior_point(D, stats)
        if all(x == 0 for x in phi):
            raise InvariantViolation("zero separating functional")
        functionals.append(phi)
        W = intersect(W, kernel([phi], n))
    cortege = validate_cortege(functionals, n)
    for g in pieces:
        if evaluate(cortege, combine([1] * len(g.rays), g.rays, n)) <= 0:
            raise InvariantViolation("cortege is not positive inside a supplied piece")
    if any(dot(f, h) != 0 for f in cortege for h in L.basis):
        raise InvariantViolation("cortege does not vanish on the subspace")
    return cortege


def cell_pieces(c: SignCone) -> list[GeneratorCone]:
    """Closure generators of every realizable cell of ``P``."""
    return [_cell_closure(c.A, c.dim, s) for s in c.realizable_cells]


def positive_on_cone(cortege: Cortege, c: SignCone, stats: LPStats | None = None) -> bool:
    """Certificate that the step-linear function is positive on every cell of ``P``."""
    return all(lex_positive_on_cell(cortege, c.cell_system(s), stats) is None for s in c.realizable_cells)


@dataclass(frozen=True)
class ExtensionResult:
    cortege: Cortege
    extended_cone: SignCone
    contains_positive_cone: bool
    contains_lineality: bool

    @property
    def regular(self) -> bool:
        return self.contains_positive_cone and self.contains_lineality

    def to_dict(self) -> dict:
        return {
            "cortege": self.cortege.to_list(),
            "extended": self.extended_cone.to_dict(),
            "contains_positive_cone": self.contains_positive_cone,
            "contains_lineality": self.contains_lineality,
        }


def extend_regular(c: SignCone, L: Subspace, stats: LPStats | None = None) -> ExtensionResult:
    """A weak preference containing ``P`` whose equipotency contains ``L``."""
    cortege = separate(cell_pieces(c), L, stats)
    name = f"{c.name}-extended" if c.name else None
    extended = lex_cone(cortege, name=name)
    inside = positive_on_cone(cortege, c, stats)
    lin = L <= cortege.common_kernel
    if not (inside and lin):
        raise InvariantViolation("extension is not regular")
    return ExtensionResult(cortege, extended, inside, lin)


@dataclass(frozen=True)
class Witness:
    pair: tuple[Vector, Vector]
    u: StepLinearFn
    value: Fraction
    verdict: RelationVerdict

    def to_dict(self) -> dict:
        return {
            "pair": [format_vector(self.pair[0]), format_vector(self.pair[1])],
            "verdict": self.verdict.value,
            "cortege": self.u.cortege.to_list(),
            "value": format_rational(self.value),
        }


class WitnessFamily:
    """Certified step-linear functions collected so far.

    Every member is positive on ``P`` and zero on ``L``; the first member is
    the regular extension's cortege.
    """

    def __init__(self, c: SignCone, L: Subspace, stats: LPStats | None = None):
        self.cone = c
        self.lineality = L
        self.stats = stats
        self.members: list[Cortege] = [extend_regular(c, L, stats).cortege]

    def __len__(self) -> int:
        return len(self.members)

    def witness(self, y: Sequence, z: Sequence) -> Witness:
        c, L = self.cone, self.lineality
        verdict = relate(c, y, z, L)
        if verdict is RelationVerdict.PRECEDES:
            raise PreconditionError("y precedes z; no witness exists")
        p = sub(z, y)
        # an indifferent pair needs a nonzero value to tell it apart from equipotency
        strict = verdict is not RelationVerdict.EQUIPOTENT
        for cortege in self.members:
            v = evaluate(cortege, p)
            if v < 0 or (v == 0 and not strict):
                return Witness((tuple(y), tuple(z)), StepLinearFn(cortege), v, verdict)
        if verdict is not RelationVerdict.INDIFFERENT_ONLY:
            raise InvariantViolation("certified family member is positive off the cone")
        cortege = self._build(p)
        self.members.append(cortege)
        v = evaluate(cortege, p)
        if v >= 0:
            raise InvariantViolation("witness construction failed to separate the pair")
        return Witness((tuple(y), tuple(z)), StepLinearFn(cortege), v, verdict)

    def _build(self, p: Vector) -> Cortege:
        c, L = self.cone, self.lineality
        back = neg(p)
        ray = GeneratorCone(c.dim, (back,), ())
        cells = cell_pieces(c)
        pieces = cells + [ray] + [GeneratorCone(c.dim, g.rays + (back,), g.lines) for g in cells]
        cortege = separate(pieces, L, self.stats)
        if not positive_on_cone(cortege, c, self.stats):
            raise InvariantViolation("witness is not positive on the cone")
        return cortege


def witness_non_preference(c: SignCone, L: Subspace, y: Sequence, z: Sequence,
                           family: WitnessFamily | None = None) -> Witness:
    """A certified step-linear function ``u`` with ``u(z - y) <= 0``."""
    family = family or WitnessFamily(c, L)
    return family.witness(y, z)


@dataclass
class IntersectionReport:
    pairs: int = 0
    preceding: int = 0
    equipotent: int = 0
    separated: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "pairs": self.pairs,
            "preceding": self.preceding,
            "equipotent": self.equipotent,
            "separated": self.separated,
            "violations": self.violations,
        }


def check_intersection_representation(c: SignCone, L: Subspace, pairs, family: WitnessFamily | None = None
                                      ) -> IntersectionReport:
    """Check that the collected family characterizes preference and equipotency on the pairs.

    A pair preceding must be positive under every member; a pair not
    preceding must get a nonpositive witness; an equipotent pair must be
    zero under every member.
    """
    family = family or WitnessFamily(c, L)
    report = IntersectionReport()
    pairs = list(pairs)
    for y, z in pairs:
        report.pairs += 1
        verdict = relate(c, y, z, L)
        if verdict is RelationVerdict.PRECEDES:
            report.preceding += 1
            continue
        w = family.witness(y, z)
        if w.value > 0 or (verdict is not RelationVerdict.EQUIPOTENT and w.value == 0):
            report.violations.append({"pair": [format_vector(y), format_vector(z)], "clause": "witness"})
        report.separated += 1
    # membership clauses are re-checked against the final family
    for y, z in pairs:
        verdict = relate(c, y, z, L)
        p = sub(z, y)
        values = [evaluate(m, p) for m in family.members]
        if verdict is RelationVerdict.PRECEDES and not all(v > 0 for v in values):
            report.violations.append({"pair": [format_vector(y), format_vector(z)], "clause": "preceding"})
        if verdict is RelationVerdict.EQUIPOTENT:
            report.equipotent += 1
        if (verdict is RelationVerdict.EQUIPOTENT) != all(v == 0 for v in values):
            report.violations.append({"pair": [format_vector(y), format_vector(z)], "clause": "equipotent"})
    return report


def monotone_linear_for_open(c: SignCone, l: ComponentLattice, L: Subspace,
                             stats: LPStats | None = None) -> Vector | None:
    """A linear functional positive on ``P`` and zero on ``L`` when ``P`` is relatively open."""
    if len(l.components) != 1:
        return None
    cortege = separate(cell_pieces(c), L, stats)
    if len(cortege) != 1:
        raise InvariantViolation("relatively open cone needed more than one functional")
    phi = cortege.functionals[0]
    if not positive_on_cone(cortege, c, stats) or any(dot(phi, h) != 0 for h in L.basis):
        raise InvariantViolation("linear functional is not certified on the cone")
    return phi
