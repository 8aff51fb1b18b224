"""Exact rational vectors, matrices and subspaces.

Scalars are :class:`fractions.Fraction` (arbitrary precision, always reduced,
zero is ``0/1``). Vectors are tuples of Fractions and matrices are tuples of
such rows; both are immutable, so values can be shared freely.

Subspaces are stored by their reduced row echelon basis, which makes set
equality a syntactic comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionMismatch, ParseError

Vector = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple[Vector, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


# -- scalars -----------------------------------------------------------------

def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction.

    Floats are rejected: they would silently smuggle binary rounding into
    an exact pipeline.
    """
    if isinstance(text, bool):
        raise ParseError(f"not a rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"not a rational: {text!r}")
    s = text.strip()
    if not s or any(ch in s for ch in ".eE_ "):
        raise ParseError(f"not a rational: {text!r}")
    try:
        value = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational: {text!r}") from exc
    return value


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def sign(q) -> int:
    return (q > 0) - (q < 0)


# -- vectors -----------------------------------------------------------------

def vec(values: Iterable) -> Vector:
    return tuple(parse_rational(v) if isinstance(v, str) else Fraction(v) for v in values)


def mat(rows: Iterable[Iterable]) -> Matrix:
    return tuple(vec(r) for r in rows)


def zeros(n: int) -> Vector:
    return (ZERO,) * n


def unit(n: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(n))


def dot(a: Sequence, b: Sequence) -> Fraction:
    if len(a) != len(b):
        raise DimensionMismatch(f"length {len(a)} vs {len(b)}")
    return sum((x * y for x, y in zip(a, b)), ZERO)


def add(a: Sequence, b: Sequence) -> Vector:
    if len(a) != len(b):
        raise DimensionMismatch(f"length {len(a)} vs {len(b)}")
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> Vector:
    if len(a) != len(b):
        raise DimensionMismatch(f"length {len(a)} vs {len(b)}")
    return tuple(x - y for x, y in zip(a, b))


def scale(q, a: Sequence) -> Vector:
    q = Fraction(q)
    return tuple(q * x for x in a)


def neg(a: Sequence) -> Vector:
    return tuple(-x for x in a)


def is_zero(a: Sequence) -> bool:
    return all(x == 0 for x in a)


def mat_vec(m: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in m)


def combine(coeffs: Sequence, vectors: Sequence[Sequence], n: int) -> Vector:
    """Linear combination ``sum(c_i * v_i)`` in dimension ``n``."""
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for j in range(n):
                out[j] += c * v[j]
    return tuple(out)


def primitive(a: Sequence) -> Vector:
    """Positive rescaling of ``a`` to a coprime integer vector (zero stays zero)."""
    if is_zero(a):
        return tuple(Fraction(x) for x in a)
    lcm = 1
    for x in a:
        d = Fraction(x).denominator
        lcm = lcm * d // gcd(lcm, d)
    ints = [int(Fraction(x) * lcm) for x in a]
    g = reduce(gcd, (abs(i) for i in ints if i))
    return tuple(Fraction(i // g) for i in ints)


def format_vector(a: Sequence) -> list[str]:
    return [format_rational(x) for x in a]


# -- row reduction -------------------------------------------------------------

def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    m = [list(map(Fraction, r)) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r]), tuple(pivots)


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[0])


def solve(m: Sequence[Sequence], b: Sequence) -> Vector | None:
    """Solve ``m x = b``; returns one solution or None if inconsistent."""
    ncols = len(m[0]) if m else 0
    aug = [list(row) + [bi] for row, bi in zip(m, b)]
    red, piv = rref(aug, ncols + 1)
    if ncols in piv:
        return None
    x = [ZERO] * ncols
    for row, c in zip(red, piv):
        x[c] = row[ncols]
    return tuple(x)


# -- subspaces ---------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^n held by its canonical (RREF) basis."""

    basis: Matrix
    ambient_dim: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_zero(self) -> bool:
        return not self.basis

    @property
    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def contains(self, v: Sequence) -> bool:
        return contains(self, v)

    def __le__(self, other: "Subspace") -> bool:
        _check_same(self, other)
        return all(contains(other, b) for b in self.basis)

    def __lt__(self, other: "Subspace") -> bool:
        return self <= other and self.dim < other.dim

    def annihilator(self) -> Matrix:
        """Rows whose common kernel is this subspace (orthogonal complement basis)."""
        return kernel(self.basis, self.ambient_dim).basis if self.basis else _identity(self.ambient_dim)

    def pivot_complement(self) -> Matrix:
        """Unit vectors at the non-pivot columns: a fixed complement of this subspace."""
        _, piv = rref(self.basis, self.ambient_dim) if self.basis else ((), ())
        return tuple(unit(self.ambient_dim, j) for j in range(self.ambient_dim) if j not in piv)

    def __repr__(self) -> str:
        inner = ", ".join("(" + ",".join(format_vector(b)) + ")" for b in self.basis)
        return f"Subspace(dim={self.dim}, n={self.ambient_dim}, [{inner}])"


def _identity(n: int) -> Matrix:
    return tuple(unit(n, i) for i in range(n))


def _check_same(v: Subspace, w: Subspace) -> None:
    if v.ambient_dim != w.ambient_dim:
        raise DimensionMismatch(f"ambient {v.ambient_dim} vs {w.ambient_dim}")


def span(vectors: Iterable[Sequence], n: int) -> Subspace:
    rows = [tuple(map(Fraction, v)) for v in vectors]
    for r in rows:
        if len(r) != n:
            raise DimensionMismatch(f"vector of length {len(r)} in dimension {n}")
    if not rows:
        return Subspace((), n)
    return Subspace(rref(rows, n)[0], n)


def zero_space(n: int) -> Subspace:
    return Subspace((), n)


def full_space(n: int) -> Subspace:
    return Subspace(_identity(n), n)


def kernel(m: Sequence[Sequence], n: int | None = None) -> Subspace:
    """The null space ``{x : m x = 0}`` as a canonical Subspace."""
    if n is None:
        if not m:
            raise DimensionMismatch("empty matrix needs an explicit ambient dimension")
        n = len(m[0])
    if any(len(r) != n for r in m):
        raise DimensionMismatch("ragged matrix or wrong ambient dimension")
    if not m:
        return full_space(n)
    red, piv = rref(m, n)
    free = [j for j in range(n) if j not in piv]
    basis = []
    for f in free:
        x = [ZERO] * n
        x[f] = ONE
        for row, p in zip(red, piv):
            x[p] = -row[f]
        basis.append(x)
    return span(basis, n)


def contains(v: Subspace, x: Sequence) -> bool:
    if len(x) != v.ambient_dim:
        raise DimensionMismatch(f"vector length {len(x)} in dimension {v.ambient_dim}")
    if is_zero(x):
        return True
    if not v.basis:
        return False
    # reduce x against the RREF basis
    _, piv = rref(v.basis, v.ambient_dim)
    r = list(map(Fraction, x))
    for row, p in zip(v.basis, piv):
        if r[p]:
            f = r[p]
            r = [a - f * b for a, b in zip(r, row)]
    return is_zero(r)


def intersect(*spaces: Subspace) -> Subspace:
    if not spaces:
        raise ValueError("intersect needs at least one subspace")
    for s in spaces[1:]:
        _check_same(spaces[0], s)
    n = spaces[0].ambient_dim
    rows = [r for s in spaces for r in s.annihilator()] if any(not s.is_full for s in spaces) else []
    return kernel(rows, n) if rows else full_space(n)


def subspace_sum(*spaces: Subspace) -> Subspace:
    if not spaces:
        raise ValueError("subspace_sum needs at least one subspace")
    for s in spaces[1:]:
        _check_same(spaces[0], s)
    return span([b for s in spaces for b in s.basis], spaces[0].ambient_dim)


def orthogonal_projection(v: Sequence, space: Subspace) -> Vector:
    """Exact orthogonal projection of ``v`` onto ``space`` (standard inner product)."""
    if space.is_zero:
        return zeros(len(v))
    b = space.basis
    gram = [[dot(x, y) for y in b] for x in b]
    rhs = [dot(x, v) for x in b]
    coeffs = solve(gram, rhs)
    assert coeffs is not None
    return combine(coeffs, b, space.ambient_dim)


def parse_vector(obj, n: int | None = None) -> Vector:
    """Parse a JSON array or a comma-separated string such as ``"1/2,-3"``."""
    if isinstance(obj, str):
        parts = [p for p in obj.split(",")]
        if not obj.strip():
            parts = []
        values = [parse_rational(p) for p in parts]
    elif isinstance(obj, (list, tuple)):
        values = [parse_rational(p) for p in obj]
    else:
        raise ParseError(f"not a vector: {obj!r}")
    if n is not None and len(values) != n:
        raise DimensionMismatch(f"expected {n} entries, got {len(values)}")
    return tuple(values)
