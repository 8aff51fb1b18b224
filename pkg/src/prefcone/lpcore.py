"""Exact homogeneous linear feasibility and cone representation conversion.

Everything here is conical: right-hand sides are zero. Two engines:

* :func:`strictly_feasible` decides systems mixing ``=``, ``>`` and ``>=``
  rows with a dense rational simplex (Bland's rule) on the homogenised
  problem ``max d  s.t.  strict.x >= d, weak.x >= 0, eq.x = 0, d <= 1``.
* :func:`hrep_to_vrep` is a double description method; :func:`dual_description`
  and :func:`primal_description` are thin wrappers around it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from gmpy2 import mpq

from .errors import CapExceeded, DimensionMismatch, InvariantViolation, PreconditionError
from .exactnum import (
    ONE,
    ZERO,
    Matrix,
    Subspace,
    Vector,
    combine,
    dot,
    is_zero,
    kernel,
    orthogonal_projection,
    primitive,
    span,
    zeros,
)

DEFAULT_DIM_CAP = 8
_Q0 = mpq(0)
_Q1 = mpq(1)
MAX_PIVOTS = 100_000


@dataclass(frozen=True)
class LinearSystem:
    """Homogeneous system ``eq.x = 0, strict.x > 0, weak.x >= 0`` in Q^n."""

    ambient_dim: int
    eq_rows: Matrix = ()
    strict_rows: Matrix = ()
    weak_rows: Matrix = ()

    def __post_init__(self):
        for rows in (self.eq_rows, self.strict_rows, self.weak_rows):
            for r in rows:
                if len(r) != self.ambient_dim:
                    raise DimensionMismatch(
                        f"row of length {len(r)} in a system of dimension {self.ambient_dim}"
                    )

    def satisfied_by(self, x: Sequence) -> bool:
        return (
            all(dot(r, x) == 0 for r in self.eq_rows)
            and all(dot(r, x) > 0 for r in self.strict_rows)
            and all(dot(r, x) >= 0 for r in self.weak_rows)
        )

    def extend(self, eq=(), strict=(), weak=()) -> "LinearSystem":
        return LinearSystem(
            self.ambient_dim,
            self.eq_rows + tuple(map(tuple, eq)),
            self.strict_rows + tuple(map(tuple, strict)),
            self.weak_rows + tuple(map(tuple, weak)),
        )

    def closure(self) -> "LinearSystem":
        """Strict rows relaxed to weak ones (the closure when the system is feasible)."""
        return LinearSystem(self.ambient_dim, self.eq_rows, (), self.weak_rows + self.strict_rows)


@dataclass(frozen=True)
class GeneratorCone:
    """The closed cone ``cone(rays) + span(lines)``."""

    ambient_dim: int
    rays: Matrix = ()
    lines: Matrix = ()

    def __post_init__(self):
        for r in self.rays + self.lines:
            if len(r) != self.ambient_dim:
                raise DimensionMismatch("generator of wrong length")
            if is_zero(r):
                raise ValueError("zero generator")

    @property
    def is_zero_cone(self) -> bool:
        return not self.rays and not self.lines


@dataclass
class LPStats:
    """Optional instrumentation for the simplex (calls and pivots)."""

    calls: int = 0
    pivots: int = 0
    max_pivots_single: int = 0
    per_call: list = field(default_factory=list)


# -- simplex ---------------------------------------------------------------------

def _simplex_max(M, b, c, stats: LPStats | None):
    """Maximise ``c.v`` over ``M v <= b, v >= 0`` with ``b >= 0`` (slack basis feasible).

    Entries are ``gmpy2.mpq``. Returns ``(value, v)``. The feasible region is
    assumed bounded in the objective direction (callers guarantee it).
    """
    m, k = len(M), len(c)
    width = k + m
    T = []
    for i in range(m):
        row = list(M[i]) + [_Q0] * m + [mpq(b[i])]
        row[k + i] = _Q1
        T.append(row)
    basis = [k + i for i in range(m)]
    obj = list(c) + [_Q0] * m + [_Q0]
    pivots = 0
    while True:
        enter = next((j for j in range(width) if obj[j] > 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            raise InvariantViolation("unbounded homogenised LP")
        r = best[1]
        prow = T[r]
        pv = prow[enter]
        if pv != 1:
            prow = [x / pv for x in prow]
            T[r] = prow
        nz = [j for j, x in enumerate(prow) if x]
        for i in range(m):
            if i != r:
                f = T[i][enter]
                if f:
                    ti = T[i]
                    for j in nz:
                        ti[j] -= f * prow[j]
        f = obj[enter]
        for j in nz:
            obj[j] -= f * prow[j]
        basis[r] = enter
        pivots += 1
        if pivots > MAX_PIVOTS:
            raise InvariantViolation("simplex pivot limit exceeded")
    if stats is not None:
        stats.calls += 1
        stats.pivots += pivots
        stats.max_pivots_single = max(stats.max_pivots_single, pivots)
        stats.per_call.append((m, k, pivots))
    v = [_Q0] * width
    for i, bv in enumerate(basis):
        v[bv] = T[i][-1]
    return -obj[-1], v[:k]


def _q(x) -> "mpq":
    x = Fraction(x)
    return mpq(x.numerator, x.denominator)


def _kernel_q(rows, n: int) -> list[list]:
    """Null-space basis of mpq rows (Gauss-Jordan)."""
    m = [list(r) for r in rows]
    piv: list[int] = []
    r = 0
    for col in range(n):
        p = next((i for i in range(r, len(m)) if m[i][col]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][col]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        piv.append(col)
        r += 1
        if r == len(m):
            break
    basis = []
    for f in (j for j in range(n) if j not in piv):
        x = [_Q0] * n
        x[f] = _Q1
        for row, p in zip(m, piv):
            x[p] = -row[f]
        basis.append(x)
    return basis


def strictly_feasible(sys: LinearSystem, stats: LPStats | None = None) -> Vector | None:
    """A point satisfying every row of ``sys`` exactly, or None if none exists."""
    n = sys.ambient_dim
    if not sys.strict_rows:
        return zeros(n)
    if sys.eq_rows:
        basis = _kernel_q([[_q(x) for x in r] for r in sys.eq_rows], n)
    else:
        basis = [[_Q1 if j == i else _Q0 for j in range(n)] for i in range(n)]
    d = len(basis)
    if d == 0:
        return None

    def reduce_row(r):
        rq = [_q(x) for x in r]
        return [sum((a * b for a, b in zip(rq, v)), _Q0) for v in basis]

    strict = [reduce_row(r) for r in sys.strict_rows]
    if any(not any(r) for r in strict):
        return None
    weak = [w for w in (reduce_row(r) for r in sys.weak_rows) if any(w)]
    # variables: t+ (d), t- (d), delta
    M, b = [], []
    for s in strict:
        M.append([-x for x in s] + list(s) + [_Q1])
        b.append(_Q0)
    for w in weak:
        M.append([-x for x in w] + list(w) + [_Q0])
        b.append(_Q0)
    M.append([_Q0] * (2 * d) + [_Q1])
    b.append(_Q1)
    c = [_Q0] * (2 * d) + [_Q1]
    value, v = _simplex_max(M, b, c, stats)
    if value <= 0:
        return None
    x = [_Q0] * n
    for i in range(d):
        t = v[i] - v[d + i]
        if t:
            for j in range(n):
                x[j] += t * basis[i][j]
    if not _satisfied_q(sys, x):
        raise InvariantViolation("simplex returned a point violating the system")
    return tuple(Fraction(int(q.numerator), int(q.denominator)) for q in x)


def _satisfied_q(sys: LinearSystem, x) -> bool:
    def val(r):
        return sum((_q(a) * b for a, b in zip(r, x)), _Q0)

    return (
        all(val(r) == 0 for r in sys.eq_rows)
        and all(val(r) > 0 for r in sys.strict_rows)
        and all(val(r) >= 0 for r in sys.weak_rows)
    )


def is_feasible(sys: LinearSystem, stats: LPStats | None = None) -> bool:
    return strictly_feasible(sys, stats) is not None


def cone_contains(g: GeneratorCone, x: Sequence, stats: LPStats | None = None) -> bool:
    """Membership of ``x`` in the closed cone ``g`` decided by one LP (no double description).

    Variables ``(lambda, mu, tau)`` with ``R lambda + L mu - tau x = 0``,
    ``lambda >= 0`` and ``tau > 0``.
    """
    n = g.ambient_dim
    if len(x) != n:
        raise DimensionMismatch("point of wrong length")
    if is_zero(x):
        return True
    nr, nl = len(g.rays), len(g.lines)
    width = nr + 2 * nl + 1
    eq = []
    for j in range(n):
        row = [r[j] for r in g.rays] + [l[j] for l in g.lines] + [-l[j] for l in g.lines] + [-x[j]]
        eq.append(tuple(Fraction(v) for v in row))
    weak = [tuple(ONE if k == i else ZERO for k in range(width)) for i in range(nr + 2 * nl)]
    strict = [tuple(ONE if k == width - 1 else ZERO for k in range(width))]
    return is_feasible(LinearSystem(width, tuple(eq), tuple(strict), tuple(weak)), stats)


# -- double description ---------------------------------------------------------------

def _check_cap(n: int, cap: int | None) -> None:
    cap = DEFAULT_DIM_CAP if cap is None else cap
    if n > cap:
        raise CapExceeded(f"ambient dimension {n} exceeds the cap {cap}")


def hrep_to_vrep(
    eq_rows: Sequence[Sequence], weak_rows: Sequence[Sequence], n: int, cap: int | None = None
) -> GeneratorCone:
    """Generators of ``{x : eq.x = 0, weak.x >= 0}`` by double description.

    Output is canonical: lines are the RREF basis of the lineality space,
    rays are primitive integer vectors orthogonal to it, sorted.
    """
    _check_cap(n, cap)
    constraints = [(tuple(map(Fraction, a)), True) for a in eq_rows]
    constraints += [(tuple(map(Fraction, a)), False) for a in weak_rows]
    lines: list[Vector] = [tuple(ONE if j == i else ZERO for j in range(n)) for i in range(n)]
    rays: list[tuple[Vector, frozenset]] = []
    for idx, (a, is_eq) in enumerate(constraints):
        if len(a) != n:
            raise DimensionMismatch("constraint row of wrong length")
        if is_zero(a):
            continue
        li = next((i for i, l in enumerate(lines) if dot(a, l) != 0), None)
        if li is not None:
            l = lines.pop(li)
            al = dot(a, l)
            if al < 0:
                l, al = tuple(-x for x in l), -al
            lines = [_eliminate(l2, l, dot(a, l2) / al) for l2 in lines]
            rays = [(_eliminate(r, l, dot(a, r) / al), t | {idx}) for r, t in rays]
            if not is_eq:
                rays.append((l, frozenset(range(idx))))
            rays = _dedupe(rays)
            continue
        pos, zer, negs = [], [], []
        for i, (r, t) in enumerate(rays):
            v = dot(a, r)
            (pos if v > 0 else negs if v < 0 else zer).append((i, v))
        new = [(rays[i][0], rays[i][1] | {idx}) for i, _ in zer]
        if not is_eq:
            new += [rays[i] for i, _ in pos]
        for ip, vp in pos:
            rp, tp = rays[ip]
            for iq, vq in negs:
                rq, tq = rays[iq]
                common = tp & tq
                if _adjacent(common, ip, iq, rays):
                    combo = tuple(vp * x - vq * y for x, y in zip(rq, rp))
                    if not is_zero(combo):
                        new.append((combo, common | {idx}))
        rays = _dedupe(new)
    lin = span(lines, n)
    out = []
    for r, _ in rays:
        rp = tuple(x - y for x, y in zip(r, orthogonal_projection(r, lin)))
        if not is_zero(rp):
            out.append(primitive(rp))
    return GeneratorCone(n, tuple(sorted(set(out))), lin.basis)


def _eliminate(v, l, factor):
    if not factor:
        return v
    return tuple(x - factor * y for x, y in zip(v, l))


def _adjacent(common, ip, iq, rays) -> bool:
    # combinatorial test; exact because the ray list is kept irredundant
    for k, (_, t) in enumerate(rays):
        if k != ip and k != iq and common <= t:
            return False
    return True


def _dedupe(rays):
    seen = {}
    for r, t in rays:
        key = primitive(r)
        if key in seen:
            seen[key] = (key, seen[key][1] | t)
        else:
            seen[key] = (key, t)
    return list(seen.values())


def dual_description(g: GeneratorCone, cap: int | None = None) -> LinearSystem:
    """Inequality description of the closed cone generated by ``g``."""
    dual = hrep_to_vrep(g.lines, g.rays, g.ambient_dim, cap)
    return LinearSystem(g.ambient_dim, dual.lines, (), dual.rays)


def primal_description(sys: LinearSystem, cap: int | None = None) -> GeneratorCone:
    """Generators of the closed cone of ``sys`` (strict rows read as weak)."""
    return hrep_to_vrep(sys.eq_rows, sys.weak_rows + sys.strict_rows, sys.ambient_dim, cap)


def dual_cone(g: GeneratorCone, within: Subspace | None = None, cap: int | None = None) -> GeneratorCone:
    """Generators of ``{phi in W : phi.r >= 0 for rays, phi.l = 0 for lines}``.

    ``W`` defaults to the whole space; functionals are represented inside ``W``.
    """
    eq = list(g.lines)
    if within is not None:
        eq += list(within.annihilator()) if not within.is_full else []
    return hrep_to_vrep(eq, g.rays, g.ambient_dim, cap)


def lineality_space(g: GeneratorCone, cap: int | None = None) -> Subspace:
    """Lineality space of the closed cone ``g`` (common kernel of its facet rows)."""
    h = dual_description(g, cap)
    rows = h.eq_rows + h.weak_rows
    return kernel(rows, g.ambient_dim) if rows else span(
        [tuple(ONE if j == i else ZERO for j in range(g.ambient_dim)) for i in range(g.ambient_dim)],
        g.ambient_dim,
    )


def relative_interior_point(g: GeneratorCone, stats: LPStats | None = None, cap: int | None = None) -> Vector:
    """A point of the relative interior of the closed cone ``g``.

    The sum of the rays is tried first and checked against the facet rows
    that are not implicit equalities; the fallback maximises the minimum
    facet slack.
    """
    if g.is_zero_cone:
        raise PreconditionError("zero cone")
    n = g.ambient_dim
    h = dual_description(g, cap)
    implicit = [r for r in h.weak_rows if all(dot(r, ray) == 0 for ray in g.rays)]
    facets = [r for r in h.weak_rows if any(dot(r, ray) != 0 for ray in g.rays)]
    candidate = combine([ONE] * len(g.rays), g.rays, n)
    if _strictly_inside(candidate, h, implicit, facets):
        return candidate
    sys = LinearSystem(n, h.eq_rows + tuple(implicit), tuple(facets), ())
    x = strictly_feasible(sys, stats)
    if x is None:
        raise InvariantViolation("relative interior of a nonzero cone is empty")
    return primitive(x)


def _strictly_inside(x, h: LinearSystem, implicit, facets) -> bool:
    return (
        all(dot(r, x) == 0 for r in h.eq_rows)
        and all(dot(r, x) == 0 for r in implicit)
        and all(dot(r, x) > 0 for r in facets)
    )


def facet_rows(g: GeneratorCone, cap: int | None = None) -> tuple[Matrix, Matrix]:
    """``(equalities, proper facets)`` of the closed cone ``g``."""
    h = dual_description(g, cap)
    implicit = tuple(r for r in h.weak_rows if all(dot(r, ray) == 0 for ray in g.rays))
    facets = tuple(r for r in h.weak_rows if any(dot(r, ray) != 0 for ray in g.rays))
    return h.eq_rows + implicit, facets
