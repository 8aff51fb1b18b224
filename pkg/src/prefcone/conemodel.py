"""Sign cones: the representation of a compatible relation by its positive cone.

A sign cone over a rational ``m x n`` matrix ``A`` and a set ``S`` of sign
strings (characters ``+``, ``0``, ``-``) is the point set
``P = {y : sign(A y) in S}``. The relation it encodes is ``y < z`` iff
``z - y in P``.
"""

from __future__ import annotations

import enum
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import CapExceeded, DimensionMismatch, ParseError, PreconditionError
from .exactnum import (
    Matrix,
    Subspace,
    Vector,
    contains as subspace_contains,
    dot,
    format_vector,
    kernel,
    mat_vec,
    neg,
    parse_rational,
    primitive,
    sign,
    sub,
    zeros,
)
from .lpcore import LinearSystem, LPStats, strictly_feasible

SIGN_CHARS = "+0-"
_ORDER = {"+": 0, "0": 1, "-": 2}
DEFAULT_MAX_ROWS = 8
MAX_ROWS_ENV = "PREFCONE_MAX_ROWS"


def max_rows() -> int:
    """Row cap for sign enumeration; overridable through ``PREFCONE_MAX_ROWS``."""
    raw = os.environ.get(MAX_ROWS_ENV)
    if raw is None:
        return DEFAULT_MAX_ROWS
    try:
        return int(raw)
    except ValueError as exc:
        raise ParseError(f"{MAX_ROWS_ENV} must be an integer, got {raw!r}") from exc


def sign_key(s: str) -> tuple:
    return tuple(_ORDER[ch] for ch in s)


def sort_signs(signs: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(set(signs), key=sign_key))


def negate_sign(s: str) -> str:
    return s.translate(str.maketrans("+-", "-+"))


def sign_of(A: Sequence[Sequence], y: Sequence) -> str:
    return "".join(SIGN_CHARS[1 - sign(v)] for v in mat_vec(A, y))


def _constraint(sys: LinearSystem, row, ch: str) -> LinearSystem:
    if ch == "+":
        return sys.extend(strict=[row])
    if ch == "-":
        return sys.extend(strict=[neg(row)])
    return sys.extend(eq=[row])


def cell_system(A: Sequence[Sequence], s: str, n: int | None = None) -> LinearSystem:
    """The relatively open polyhedral cell ``{y : sign(A y) = s}``."""
    if len(s) != len(A):
        raise DimensionMismatch(f"sign string of width {len(s)} for {len(A)} rows")
    if n is None:
        n = len(A[0])
    eq = tuple(a for a, ch in zip(A, s) if ch == "0")
    strict = tuple(a if ch == "+" else neg(a) for a, ch in zip(A, s) if ch != "0")
    return LinearSystem(n, eq, strict, ())


def enumerate_signs(
    base: LinearSystem, rows: Sequence[Sequence], stats: LPStats | None = None
) -> dict[str, Vector]:
    """All sign strings of ``rows . x`` realised on the set described by ``base``.

    Depth-first over the rows; the witness of the parent node realises one
    child for free, so only the other children cost an LP. Returns a map from
    sign string to a witness point.
    """
    # the search is exponential in the worst case; desk-scale cap
    if len(rows) > max_rows():
        raise CapExceeded(f"{len(rows)} rows exceed the sign enumeration cap {max_rows()}")
    x0 = strictly_feasible(base, stats)
    out: dict[str, Vector] = {}
    if x0 is None:
        return out

    def rec(sys: LinearSystem, depth: int, prefix: str, witness: Vector) -> None:
        if depth == len(rows):
            out[prefix] = witness
            return
        row = rows[depth]
        wch = SIGN_CHARS[1 - sign(dot(row, witness))]
        for ch in SIGN_CHARS:
            child = _constraint(sys, row, ch)
            if ch == wch:
                rec(child, depth + 1, prefix + ch, witness)
            else:
                p = strictly_feasible(child, stats)
                if p is not None:
                    rec(child, depth + 1, prefix + ch, p)

    rec(base, 0, "", x0)
    return {k: out[k] for k in sort_signs(out)}


@lru_cache(maxsize=256)
def arrangement_signs(A: Matrix, n: int) -> dict[str, Vector]:
    """Every realisable sign vector of the central arrangement given by ``A``."""
    return enumerate_signs(LinearSystem(n), A)


class RelationVerdict(enum.Enum):
    PRECEDES = "PRECEDES"
    SUCCEEDS = "SUCCEEDS"
    EQUIPOTENT = "EQUIPOTENT"
    INDIFFERENT_ONLY = "INDIFFERENT_ONLY"


@dataclass(frozen=True)
class Cell:
    sign: str
    representative: Vector | None
    lin_hull: Subspace | None

    @property
    def realizable(self) -> bool:
        return self.representative is not None


@dataclass(frozen=True)
class SignCone:
    """Positive cone ``{y : sign(A y) in S}`` with cached cell representatives."""

    dim: int
    A: Matrix
    S: tuple[str, ...]
    representatives: tuple[tuple[str, Vector], ...] = ()
    unrealizable: tuple[str, ...] = ()
    name: str | None = None
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", dict(self.representatives))

    @property
    def m(self) -> int:
        return len(self.A)

    @property
    def realizable_cells(self) -> tuple[str, ...]:
        return tuple(s for s, _ in self.representatives)

    @property
    def S_set(self) -> frozenset:
        return frozenset(self.S)

    def representative(self, s: str) -> Vector:
        return self._index[s]

    def cell(self, s: str) -> Cell:
        rep = self._index.get(s)
        return Cell(s, rep, cell_lin_hull(self.A, s, self.dim) if rep is not None else None)

    def cell_system(self, s: str) -> LinearSystem:
        return cell_system(self.A, s, self.dim)

    def sign_of(self, y: Sequence) -> str:
        if len(y) != self.dim:
            raise DimensionMismatch(f"point of length {len(y)} in dimension {self.dim}")
        return sign_of(self.A, y) if self.A else ""

    def contains(self, y: Sequence) -> bool:
        return self.sign_of(y) in self.S_set

    def arrangement(self) -> dict[str, Vector]:
        if not self.A:
            return {"": zeros(self.dim)}
        return arrangement_signs(self.A, self.dim)

    def to_dict(self) -> dict:
        d = {
            "dim": self.dim,
            "A": [format_vector(r) for r in self.A],
            "cells": list(self.S),
        }
        if self.name:
            d["name"] = self.name
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def cell_lin_hull(A: Sequence[Sequence], s: str, n: int) -> Subspace:
    """Linear hull of a nonempty cell: the kernel of its zero rows."""
    return kernel([a for a, ch in zip(A, s) if ch == "0"], n)


def build(dim: int, A: Sequence[Sequence], cells: Iterable[str], name: str | None = None,
          stats: LPStats | None = None) -> SignCone:
    """Construct a SignCone, deciding realisability of every admitted cell."""
    A = tuple(tuple(Fraction(x) for x in r) for r in A)
    if dim < 1:
        raise ParseError("dim must be positive")
    for i, r in enumerate(A):
        if len(r) != dim:
            raise ParseError(f"A row {i} has {len(r)} entries, expected {dim}")
    cells = list(cells)
    if not cells:
        raise ParseError("empty cell set")
    for s in cells:
        if not isinstance(s, str) or any(ch not in SIGN_CHARS for ch in s):
            raise ParseError(f"malformed sign string {s!r}")
        if len(s) != len(A):
            raise ParseError(f"sign string {s!r} has width {len(s)}, A has {len(A)} rows")
    S = sort_signs(cells)
    reps, bad = [], []
    for s in S:
        p = strictly_feasible(cell_system(A, s, dim), stats) if A else zeros(dim)
        if p is None:
            bad.append(s)
        else:
            reps.append((s, primitive(p)))
    return SignCone(dim, A, S, tuple(reps), tuple(bad), name)


def load(data: Mapping | str) -> SignCone:
    """Parse the JSON instance format ``{"dim": n, "A": [[rat]], "cells": [...]}``."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(data, Mapping):
        raise ParseError("instance must be a JSON object")
    for key in ("dim", "A", "cells"):
        if key not in data:
            raise ParseError(f"missing field {key!r}")
    dim = data["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise ParseError("field 'dim' must be an integer")
    if not isinstance(data["A"], list) or not all(isinstance(r, list) for r in data["A"]):
        raise ParseError("field 'A' must be a list of rows")
    try:
        A = [[parse_rational(x) for x in row] for row in data["A"]]
    except ParseError as exc:
        raise ParseError(f"field 'A': {exc}") from exc
    if not isinstance(data["cells"], list):
        raise ParseError("field 'cells' must be a list of sign strings")
    return build(dim, A, data["cells"], data.get("name"))


def load_file(path) -> SignCone:
    with open(path) as fh:
        return load(fh.read())


def contains(c: SignCone, y: Sequence) -> bool:
    return c.contains(y)


# -- validation ----------------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    asymmetric: bool
    asymmetry_witness: Vector | None
    convex: bool
    convexity_witness: tuple[Vector, Vector] | None
    unrealizable: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return self.asymmetric and self.convex

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "asymmetric": self.asymmetric,
            "asymmetry_witness": format_vector(self.asymmetry_witness) if self.asymmetry_witness else None,
            "convex": self.convex,
            "convexity_witness": (
                [format_vector(v) for v in self.convexity_witness] if self.convexity_witness else None
            ),
            "unrealizable_cells": list(self.unrealizable),
        }


def _sum_candidates(s: str, t: str) -> tuple[str, list[int]]:
    """Forced coordinates of ``sign(y + z)`` (``?`` where signs oppose) and the free positions."""
    forced, free = [], []
    for i, (a, b) in enumerate(zip(s, t)):
        if a == "0":
            forced.append(b)
        elif b == "0" or a == b:
            forced.append(a)
        else:
            forced.append("?")
            free.append(i)
    return "".join(forced), free


def convexity_counterexample(
    A: Matrix, n: int, cells: Sequence[str], admitted: frozenset | None = None,
    stats: LPStats | None = None,
) -> tuple[Vector, Vector] | None:
    """Points ``y, z`` in the union of ``cells`` with ``y + z`` outside it, if any.

    For each pair of cells the sign pattern of ``A(y+z)`` is forced wherever
    the two signs do not oppose; the remaining coordinates are enumerated
    exactly over ``{y in s, z in t}``.
    """
    admitted = frozenset(cells) if admitted is None else admitted
    cells = list(cells)
    for i, s in enumerate(cells):
        for t in cells[i + 1:]:
            forced, free = _sum_candidates(s, t)
            if not free:
                if forced not in admitted:
                    base = _pair_system(A, n, s, t)
                    p = strictly_feasible(base, stats)
                    if p is not None:
                        return p[:n], p[n:]
                continue
            base = _pair_system(A, n, s, t)
            rows = [tuple(A[k]) + tuple(A[k]) for k in free]
            for tail, p in enumerate_signs(base, rows, stats).items():
                u = list(forced)
                for k, ch in zip(free, tail):
                    u[k] = ch
                if "".join(u) not in admitted:
                    return p[:n], p[n:]
    return None


def _pair_system(A, n, s, t) -> LinearSystem:
    zero = (Fraction(0),) * n
    eq, strict = [], []
    for a, ch in zip(A, s):
        row = tuple(a) + zero
        (eq if ch == "0" else strict).append(row if ch != "-" else neg(row))
    for a, ch in zip(A, t):
        row = zero + tuple(a)
        (eq if ch == "0" else strict).append(row if ch != "-" else neg(row))
    return LinearSystem(2 * n, tuple(eq), tuple(strict), ())


def validate_partial_preference(c: SignCone, stats: LPStats | None = None) -> ValidationReport:
    """Check that ``P`` is asymmetric and convex, with witness points on failure."""
    cells = c.realizable_cells
    cell_set = set(cells)
    asym_witness = None
    for s in cells:
        if negate_sign(s) in cell_set:
            asym_witness = c.representative(s)
            break
    conv = convexity_counterexample(c.A, c.dim, cells, c.S_set, stats) if c.A else None
    return ValidationReport(asym_witness is None, asym_witness, conv is None, conv, c.unrealizable)


def is_partial_preference(c: SignCone) -> bool:
    return validate_partial_preference(c).passed


def relate(c: SignCone, y: Sequence, z: Sequence, lineality: Subspace) -> RelationVerdict:
    """Verdict for the ordered pair ``(y, z)`` given the lineality space of ``P``."""
    if len(y) != c.dim or len(z) != c.dim:
        raise DimensionMismatch("points must live in the cone's ambient space")
    d = sub(z, y)
    if c.contains(d):
        return RelationVerdict.PRECEDES
    if c.contains(neg(d)):
        return RelationVerdict.SUCCEEDS
    if subspace_contains(lineality, d):
        return RelationVerdict.EQUIPOTENT
    return RelationVerdict.INDIFFERENT_ONLY


def is_perfect(c: SignCone) -> bool:
    """True iff ``P`` is a semispace at the origin: ``P`` and ``-P`` cover every nonzero point."""
    if not c.A or not kernel(c.A, c.dim).is_zero:
        return False
    both = c.S_set | {negate_sign(s) for s in c.S}
    zero_sign = "0" * c.m
    return all(s in both for s in c.arrangement() if s != zero_sign)


def require_partial_preference(c: SignCone) -> ValidationReport:
    report = validate_partial_preference(c)
    if not report.passed:
        raise PreconditionError("instance is not a compatible partial preference")
    return report
