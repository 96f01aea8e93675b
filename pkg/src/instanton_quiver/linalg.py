"""Exact linear algebra over the rationals.

Dense matrices with `fractions.Fraction` entries.  Rank and determinant run
fraction-free Bareiss elimination on row-scaled integer copies; kernels,
solving and inversion use reduced row echelon form with exact arithmetic.
No floating point anywhere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

Rational = Fraction


class NotSkewSymmetric(ValueError):
    """The matrix handed to a Pfaffian routine is not skew-symmetric."""


class SingularMatrix(ValueError):
    """An inverse was requested for a matrix without one."""


def _frac(x: Fraction | int) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"matrix entries must be exact rationals, got {type(x).__name__}")


@dataclass(frozen=True)
class RationalMatrix:
    """Immutable dense matrix of rationals, stored row-major."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        ents = tuple(_frac(x) for x in self.entries)
        if len(ents) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(ents)}"
            )
        object.__setattr__(self, "entries", ents)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Fraction | int]]) -> "RationalMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        flat: list[Fraction | int] = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            flat.extend(r)
        return cls(nrows, ncols, tuple(flat))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, tuple(Fraction(1 if i == j else 0) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def column_vector(cls, v: Sequence[Fraction | int]) -> "RationalMatrix":
        return cls(len(v), 1, tuple(v))

    @classmethod
    def row_vector(cls, v: Sequence[Fraction | int]) -> "RationalMatrix":
        return cls(1, len(v), tuple(v))

    def at(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_lists(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            self.cols,
            self.rows,
            tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._require_same_shape(other)
        return RationalMatrix(
            self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries))
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._require_same_shape(other)
        return RationalMatrix(
            self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries))
        )

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def __mul__(self, other):
        if isinstance(other, RationalMatrix):
            return self._matmul(other)
        if isinstance(other, (int, Fraction)):
            s = _frac(other)
            return RationalMatrix(self.rows, self.cols, tuple(a * s for a in self.entries))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def _matmul(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape} * {other.shape}")
        out: list[Fraction] = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                acc = Fraction(0)
                for k in range(self.cols):
                    acc += ri[k] * other.at(k, j)
                out.append(acc)
        return RationalMatrix(self.rows, other.cols, tuple(out))

    def apply(self, v: Sequence[Fraction | int]) -> tuple[Fraction, ...]:
        """Matrix times column vector, returned as a plain tuple."""
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        vv = [_frac(x) for x in v]
        return tuple(
            sum((self.at(i, k) * vv[k] for k in range(self.cols)), Fraction(0))
            for i in range(self.rows)
        )

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def _require_same_shape(self, other: "RationalMatrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))


def hstack(mats: Sequence[RationalMatrix]) -> RationalMatrix:
    if not mats:
        raise ValueError("hstack of nothing")
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise ValueError("hstack requires equal row counts")
    out_rows = [sum((list(m.row(i)) for m in mats), []) for i in range(rows)]
    if rows == 0:
        return RationalMatrix(0, sum(m.cols for m in mats), ())
    return RationalMatrix.from_rows(out_rows)


def vstack(mats: Sequence[RationalMatrix]) -> RationalMatrix:
    if not mats:
        raise ValueError("vstack of nothing")
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise ValueError("vstack requires equal column counts")
    flat: list[Fraction] = []
    for m in mats:
        flat.extend(m.entries)
    return RationalMatrix(sum(m.rows for m in mats), cols, tuple(flat))


def _integer_rows(m: RationalMatrix) -> list[list[int]]:
    # Row scaling by positive integers preserves rank and kernel.
    out: list[list[int]] = []
    for i in range(m.rows):
        row = m.row(i)
        scale = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * scale) for x in row])
    return out


def _bareiss(rows: list[list[int]]) -> tuple[int, int, int, bool]:
    """Fraction-free elimination in place.

    Returns (rank, sign, last_pivot, skipped_column).  Pivot choice is the
    first nonzero entry in column order, so results are deterministic.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    prev = 1
    r = 0
    sign = 1
    skipped = False
    last_pivot = 1
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            skipped = True
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            sign = -sign
        pivot = rows[r][c]
        for i in range(r + 1, m):
            head = rows[i][c]
            if head == 0 and prev == 1:
                continue
            ri = rows[i]
            rr = rows[r]
            for j in range(c + 1, n):
                ri[j] = (pivot * ri[j] - head * rr[j]) // prev
            ri[c] = 0
        prev = pivot
        last_pivot = pivot
        r += 1
    return r, sign, last_pivot, skipped


def rank(m: RationalMatrix) -> int:
    """Exact rank over the rationals via Bareiss elimination."""
    if m.rows == 0 or m.cols == 0:
        return 0
    rows = _integer_rows(m)
    r, _, _, _ = _bareiss(rows)
    return r


def det(m: RationalMatrix) -> Fraction:
    """Exact determinant of a square matrix."""
    if m.rows != m.cols:
        raise ValueError("determinant requires a square matrix")
    if m.rows == 0:
        return Fraction(1)
    scale = Fraction(1)
    int_rows: list[list[int]] = []
    for i in range(m.rows):
        row = m.row(i)
        s = lcm(*(x.denominator for x in row))
        scale *= s
        int_rows.append([int(x * s) for x in row])
    r, sign, last_pivot, _ = _bareiss(int_rows)
    if r < m.rows:
        return Fraction(0)
    return Fraction(sign * last_pivot) / scale


def rref(m: RationalMatrix) -> tuple[RationalMatrix, tuple[int, ...]]:
    """Reduced row echelon form and the pivot column indices."""
    rows = m.row_lists()
    nrows, ncols = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if nrows == 0:
        return m, ()
    return RationalMatrix.from_rows(rows), tuple(pivots)


def kernel_basis(m: RationalMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right null space; empty iff rank equals cols."""
    if m.cols == 0:
        return []
    if m.rows == 0:
        return [
            tuple(Fraction(1 if i == j else 0) for i in range(m.cols))
            for j in range(m.cols)
        ]
    red, pivots = rref(m)
    pivot_set = set(pivots)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        v = [Fraction(0)] * m.cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red.at(r, fc)
        basis.append(tuple(v))
    return basis


@dataclass(frozen=True)
class LinearSystemSolution:
    """Particular solution plus a basis of the homogeneous solutions."""

    particular: tuple[Fraction, ...]
    homogeneous_basis: tuple[tuple[Fraction, ...], ...]


def solve_linear_system(
    A: RationalMatrix, b: Sequence[Fraction | int]
) -> LinearSystemSolution | None:
    """Solve A x = b exactly; None signals that no solution exists."""
    if len(b) != A.rows:
        raise ValueError("right-hand side length must equal the row count")
    bb = [_frac(x) for x in b]
    aug = RationalMatrix(
        A.rows,
        A.cols + 1,
        tuple(
            A.at(i, j) if j < A.cols else bb[i]
            for i in range(A.rows)
            for j in range(A.cols + 1)
        ),
    )
    red, pivots = rref(aug)
    if A.cols in pivots:
        return None
    x = [Fraction(0)] * A.cols
    for r, pc in enumerate(pivots):
        x[pc] = red.at(r, A.cols)
    return LinearSystemSolution(tuple(x), tuple(kernel_basis(A)))


def inverse(m: RationalMatrix) -> RationalMatrix:
    """Exact inverse; raises SingularMatrix when rank is deficient."""
    if m.rows != m.cols:
        raise SingularMatrix("only square matrices are invertible")
    n = m.rows
    aug = hstack([m, RationalMatrix.identity(n)]) if n else RationalMatrix(0, 0, ())
    if n == 0:
        return m
    red, pivots = rref(aug)
    if len(pivots) < n or any(p >= n for p in pivots):
        raise SingularMatrix("matrix is singular")
    return RationalMatrix.from_rows(
        [[red.at(i, n + j) for j in range(n)] for i in range(n)]
    )


def column_space(m: RationalMatrix) -> RationalMatrix:
    """Canonical basis of the column span, returned as matrix columns.

    The basis is the reduced row echelon form of the transpose, so equal
    subspaces always produce identical bases.
    """
    red, pivots = rref(m.transpose())
    basis_rows = [list(red.row(i)) for i in range(len(pivots))]
    if not basis_rows:
        return RationalMatrix(m.rows, 0, ())
    return RationalMatrix.from_rows(basis_rows).transpose()


def in_column_span(basis: RationalMatrix, v: Sequence[Fraction | int]) -> bool:
    """Does v lie in the span of the columns of basis?"""
    if basis.cols == 0:
        return all(_frac(x) == 0 for x in v)
    return solve_linear_system(basis, list(v)) is not None


def columns_in_span(basis: RationalMatrix, candidates: RationalMatrix) -> bool:
    if basis.rows != candidates.rows:
        raise ValueError("ambient dimensions differ")
    r0 = rank(basis)
    return rank(hstack([basis, candidates])) == r0


def pfaffian4(m: RationalMatrix) -> Fraction:
    """Pfaffian of a 4x4 skew-symmetric matrix, in the sign convention
    be - af - dc for the upper-triangle labels

        [ 0 -a -b -c ]
        [ a  0 -d -e ]
        [ b  d  0 -f ]
        [ c  e  f  0 ].

    Its square equals the determinant.
    """
    if m.shape != (4, 4):
        raise NotSkewSymmetric("pfaffian4 requires a 4x4 matrix")
    for i in range(4):
        for j in range(4):
            if m.at(i, j) != -m.at(j, i):
                raise NotSkewSymmetric(f"entry ({i},{j}) breaks skew symmetry")
    a = m.at(1, 0)
    b = m.at(2, 0)
    c = m.at(3, 0)
    d = m.at(2, 1)
    e = m.at(3, 1)
    f = m.at(3, 2)
    return b * e - a * f - d * c


DEFAULT_NUMERATOR_BOUND = 9
DEFAULT_DENOMINATORS = (1, 2, 3)


def random_rational(
    rng: random.Random,
    numerator_bound: int = DEFAULT_NUMERATOR_BOUND,
    denominators: Sequence[int] = DEFAULT_DENOMINATORS,
) -> Fraction:
    """Bounded random rational; the default box keeps test data reproducible."""
    return Fraction(
        rng.randint(-numerator_bound, numerator_bound), rng.choice(list(denominators))
    )


def random_matrix(rng: random.Random, rows: int, cols: int) -> RationalMatrix:
    return RationalMatrix(
        rows, cols, tuple(random_rational(rng) for _ in range(rows * cols))
    )


def random_invertible(rng: random.Random, n: int) -> RationalMatrix:
    while True:
        m = random_matrix(rng, n, n)
        if rank(m) == n:
            return m


def random_skew4(rng: random.Random) -> RationalMatrix:
    """Random 4x4 skew-symmetric matrix over the sampling box."""
    a, b, c, d, e, f = (random_rational(rng) for _ in range(6))
    return skew4_from_coords((a, b, c, d, e, f))


def skew4_from_coords(coords: Sequence[Fraction | int]) -> RationalMatrix:
    """Assemble the 4x4 skew matrix from its six upper-triangle labels."""
    a, b, c, d, e, f = (_frac(x) for x in coords)
    return RationalMatrix.from_rows(
        [
            [0, -a, -b, -c],
            [a, 0, -d, -e],
            [b, d, 0, -f],
            [c, e, f, 0],
        ]
    )
