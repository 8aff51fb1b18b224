"""Weakness test, chain structure and the functionals of a weak preference.

A partial preference is weak exactly when the points outside ``P`` and
``-P`` form a subspace. For sign cones that subspace candidate is the span
of the cells outside ``S`` and ``-S``; the preference is weak iff no cell of
``S`` meets it. When weak, every open component ``E`` is an open halfspace
of its linear hull, cut out by one functional that vanishes on ``L_E``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .conemodel import SignCone, cell_lin_hull, enumerate_signs, negate_sign
from .errors import InvariantViolation, PreconditionError
from .exactnum import (
    Subspace,
    Vector,
    format_vector,
    full_space,
    intersect,
    kernel,
    neg,
    rank,
    solve,
    subspace_sum,
    zero_space,
)
from .lpcore import LinearSystem, LPStats, strictly_feasible
from .steplin import Cortege, validate_cortege
from .structure import Component, ComponentLattice, lineality


@dataclass(frozen=True)
class WeakAnalysis:
    is_weak: bool
    chain: tuple[Component, ...] = ()
    rest_space: Subspace | None = None
    functionals: tuple[Vector, ...] = ()
    blocking_cell: str | None = None
    blocking_point: Vector | None = None

    def to_dict(self) -> dict:
        d = {"is_weak": self.is_weak}
        if self.is_weak:
            d["chain"] = [list(E.cells) for E in self.chain]
            d["rest_space"] = [format_vector(b) for b in self.rest_space.basis]
            d["functionals"] = [format_vector(f) for f in self.functionals]
        else:
            d["blocking_cell"] = self.blocking_cell
            d["blocking_point"] = format_vector(self.blocking_point)
        return d


def subspace_system(V: Subspace) -> LinearSystem:
    return LinearSystem(V.ambient_dim, tuple(V.annihilator()), (), ())


def complement_span(c: SignCone) -> Subspace:
    """Span of every realizable cell outside ``S`` and ``-S``."""
    both = c.S_set | {negate_sign(s) for s in c.S}
    hulls = [cell_lin_hull(c.A, u, c.dim) for u in c.arrangement() if u not in both]
    return subspace_sum(*hulls) if hulls else zero_space(c.dim)


def analyze_weak(c: SignCone, l: ComponentLattice, stats: LPStats | None = None) -> WeakAnalysis:
    """Decide weakness; for weak input also return the chain and its functionals."""
    V = complement_span(c)
    ann = tuple(V.annihilator())
    for s in c.realizable_cells:
        p = strictly_feasible(c.cell_system(s).extend(eq=ann), stats)
        if p is not None:
            return WeakAnalysis(False, blocking_cell=s, blocking_point=p)
    if not l.is_chain():
        raise InvariantViolation("weak preference whose components are not a chain")
    L = lineality(c, l)
    if V != L:
        raise InvariantViolation("rest space of a weak preference differs from its lineality")
    chain = tuple(l.components[i] for i in l.chain())
    functionals = tuple(component_functional(c, E, stats) for E in chain)
    return WeakAnalysis(True, chain, V, functionals)


def component_functional(c: SignCone, E: Component, stats: LPStats | None = None) -> Vector:
    """The functional cutting ``E`` out of ``Lin(E)`` with kernel ``L_E`` there.

    Normalized by value 1 at the representative and zero on the echelon
    complement of ``Lin(E)``; positivity on ``E`` is then certified cell by cell.
    """
    n = c.dim
    if E.lin_hull.dim != E.lineality.dim + 1:
        raise InvariantViolation(f"component {E.label} is not a halfspace of its linear hull")
    rows = list(E.lineality.basis) + list(E.lin_hull.pivot_complement()) + [E.representative]
    rhs = [0] * (len(rows) - 1) + [1]
    phi = solve(rows, rhs)
    if phi is None or rank(rows) != n:
        raise InvariantViolation(f"functional for component {E.label} is not determined")
    lin = subspace_system(E.lin_hull)
    for s in E.cells:
        if strictly_feasible(c.cell_system(s).extend(weak=[neg(phi)]), stats) is not None:
            raise InvariantViolation(f"functional for {E.label} is not positive on cell {s}")
    cells = set(E.cells)
    for u in enumerate_signs(lin.extend(strict=[phi]), c.A, stats):
        if u not in cells:
            raise InvariantViolation(f"positive side of the functional for {E.label} meets cell {u}")
    if intersect(E.lin_hull, kernel([phi], n)) != E.lineality:
        raise InvariantViolation(f"kernel of the functional for {E.label} differs from L_E on Lin(E)")
    return phi


def extract_cortege(w: WeakAnalysis) -> Cortege:
    """Functionals ordered greatest component first."""
    if not w.is_weak:
        raise PreconditionError("cortege extraction needs a weak preference")
    return validate_cortege(reversed(w.functionals), w.rest_space.ambient_dim)


@dataclass(frozen=True)
class StructureReport:
    checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return dict(self.checks)


def verify_structure_equalities(w: WeakAnalysis, c: SignCone, l: ComponentLattice,
                                stats: LPStats | None = None) -> StructureReport:
    """Check the subspace identities of a weak preference; any failure is a hard error."""
    if not w.is_weak:
        raise PreconditionError("structure equalities are stated for weak preferences")
    n = c.dim
    L = w.rest_space
    chain, phis = w.chain, w.functionals
    k = len(chain)
    checks: dict[str, bool] = {}
    both = c.S_set | {negate_sign(s) for s in c.S}
    rest_cells = [u for u in c.arrangement() if u not in both]
    rest_ok = all(cell_lin_hull(c.A, u, n) <= L for u in rest_cells)
    for i, E in enumerate(chain):
        face = {s for F in chain[: i + 1] for s in F.cells}
        face_both = face | {negate_sign(s) for s in face}
        inside = all(cell_lin_hull(c.A, s, n) <= E.lin_hull for s in face) and L <= E.lin_hull
        covered = all(
            u in face_both or u in rest_cells
            for u in enumerate_signs(subspace_system(E.lin_hull), c.A, stats)
        )
        checks[f"lin_hull_decomposition[{i}]"] = inside and covered and rest_ok
        above = phis[i + 1:]
        expected_lin = kernel(above, n) if above else full_space(n)
        checks[f"lin_hull_kernel[{i}]"] = E.lin_hull == expected_lin
        checks[f"component_lineality_kernel[{i}]"] = E.lineality == kernel(phis[i:], n)
        checks[f"lineality_nesting[{i}]"] = L <= E.lineality <= E.lin_hull
    for i in range(k - 1):
        checks[f"strict_growth[{i}]"] = chain[i].lin_hull < chain[i + 1].lin_hull
    checks["top_full"] = chain[-1].lin_hull.is_full
    checks["common_kernel"] = kernel(phis, n) == L
    checks["least_lineality"] = chain[0].lineality == L
    checks["independent"] = rank(phis) == k
    report = StructureReport(checks)
    if not report.passed:
        failed = [name for name, ok in checks.items() if not ok]
        raise InvariantViolation(f"structure identities failed: {', '.join(failed)}")
    return report
