"""Exact matrix arithmetic over the Gaussian rationals Q(i).

Every rank decision in this package is made here, over an exact field:
complex numbers whose real and imaginary parts are arbitrary-precision
rationals.  All values are immutable and all operations are pure, so the
module is safe to use from multiple threads without coordination.

>>> a = GaussianRational(Fraction(1, 2), Fraction(-1, 3))
>>> print(a * a.conjugate())
13/36
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Union

from .errors import InconsistentSystemError

Rationalish = Union[int, Fraction]
Scalarish = Union[int, Fraction, "GaussianRational"]


@dataclass(frozen=True)
class GaussianRational:
    """A complex number with exact rational real and imaginary parts.

    ``Fraction`` keeps numerators and denominators coprime with positive
    denominators, so equality of normalized values is plain field equality.
    """

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if not isinstance(self.re, Fraction):
            object.__setattr__(self, "re", Fraction(self.re))
        if not isinstance(self.im, Fraction):
            object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def coerce(value: Scalarish) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return GaussianRational(Fraction(value))

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other: Scalarish) -> "GaussianRational":
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: Scalarish) -> "GaussianRational":
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: Scalarish) -> "GaussianRational":
        other = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __radd__ = __add__
    __rmul__ = __mul__

    def __truediv__(self, other: Scalarish) -> "GaussianRational":
        other = GaussianRational.coerce(other)
        norm = other.re * other.re + other.im * other.im
        if not norm:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs_max(self) -> Fraction:
        """Rational-valued magnitude surrogate max(|re|, |im|)."""
        return max(abs(self.re), abs(self.im))

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        if self.re:
            parts.append(str(self.re))
        if self.im:
            sign = "+" if (self.im > 0 and parts) else ""
            coeff = "" if abs(self.im) == 1 else str(abs(self.im))
            parts.append(f"{sign}{'-' if self.im < 0 else ''}{coeff}i")
        return "".join(parts)


ZERO = GaussianRational()
ONE = GaussianRational(Fraction(1))


def gq(re: Rationalish = 0, im: Rationalish = 0) -> GaussianRational:
    """Shorthand constructor: gq(1, -2) is 1 - 2i."""
    return GaussianRational(Fraction(re), Fraction(im))


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix over Q(i), row-major.

    Vectors are rows throughout the package; a linear map C^n -> C^m is an
    n x m matrix acting by right multiplication, x -> x @ a.
    """

    rows: int
    cols: int
    entries: tuple[tuple[GaussianRational, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows:
            raise ValueError("row count mismatch")
        if any(len(row) != self.cols for row in self.entries):
            raise ValueError("column count mismatch")

    @staticmethod
    def from_rows(rows: Sequence[Sequence[Scalarish]]) -> "Matrix":
        grid = tuple(
            tuple(GaussianRational.coerce(x) for x in row) for row in rows
        )
        if not grid:
            raise ValueError("a matrix needs at least one row; use zeros()")
        return Matrix(len(grid), len(grid[0]), grid)

    @staticmethod
    def zeros(rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols, tuple(tuple(ZERO for _ in range(cols)) for _ in range(rows)))

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(
            n, n,
            tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)),
        )

    def __getitem__(self, key: tuple[int, int]) -> GaussianRational:
        i, j = key
        return self.entries[i][j]

    def row(self, i: int) -> tuple[GaussianRational, ...]:
        return self.entries[i]

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(ra, rb))
            for ra, rb in zip(self.entries, other.entries)
        ))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(self.rows, self.cols, tuple(
            tuple(a - b for a, b in zip(ra, rb))
            for ra, rb in zip(self.entries, other.entries)
        ))

    def scale(self, factor: Scalarish) -> "Matrix":
        factor = GaussianRational.coerce(factor)
        return Matrix(self.rows, self.cols, tuple(
            tuple(factor * e for e in row) for row in self.entries
        ))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        grid = tuple(
            tuple(
                sum((row[l] * other.entries[l][j] for l in range(self.cols)), ZERO)
                for j in range(other.cols)
            )
            for row in self.entries
        )
        return Matrix(self.rows, other.cols, grid)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else tuple(() for _ in range(self.cols)))

    def conjugate(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(
            tuple(e.conjugate() for e in row) for row in self.entries
        ))

    def conjugate_transpose(self) -> "Matrix":
        return self.conjugate().transpose()

    def stack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ValueError("stacked matrices need equal column counts")
        return Matrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def take_rows(self, count: int) -> "Matrix":
        return Matrix(count, self.cols, self.entries[:count])

    def drop_rows(self, count: int) -> "Matrix":
        return Matrix(self.rows - count, self.cols, self.entries[count:])

    def max_abs(self) -> Fraction:
        """Largest max(|re|, |im|) over all entries (0 for empty matrices)."""
        best = Fraction(0)
        for row in self.entries:
            for e in row:
                m = e.abs_max()
                if m > best:
                    best = m
        return best

    def _check_same_shape(self, other: "Matrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    def __str__(self) -> str:
        return "\n".join("[" + "  ".join(str(e) for e in row) + "]" for row in self.entries)


def stack_all(matrices: Iterable[Matrix]) -> Matrix:
    mats = list(matrices)
    out = mats[0]
    for m in mats[1:]:
        out = out.stack(m)
    return out


class RrefResult(NamedTuple):
    matrix: Matrix
    rank: int
    pivots: tuple[int, ...]


def rref(m: Matrix) -> RrefResult:
    """Reduced row echelon form by Gauss-Jordan elimination.

    Over an exact field the first nonzero entry is always an acceptable
    pivot; no size heuristics are involved.  The result is the unique RREF
    of the row space, so two matrices have equal row spaces iff their
    reduced forms agree entrywise.
    """
    grid = [list(row) for row in m.entries]
    n_rows, n_cols = m.rows, m.cols
    pivots: list[int] = []
    piv_r = 0
    for col in range(n_cols):
        sel = None
        for r in range(piv_r, n_rows):
            if not grid[r][col].is_zero():
                sel = r
                break
        if sel is None:
            continue
        grid[piv_r], grid[sel] = grid[sel], grid[piv_r]
        inv = ONE / grid[piv_r][col]
        grid[piv_r] = [inv * e for e in grid[piv_r]]
        for r in range(n_rows):
            if r == piv_r:
                continue
            factor = grid[r][col]
            if factor.is_zero():
                continue
            grid[r] = [a - factor * b for a, b in zip(grid[r], grid[piv_r])]
        pivots.append(col)
        piv_r += 1
        if piv_r == n_rows:
            break
    reduced = Matrix(n_rows, n_cols, tuple(tuple(row) for row in grid))
    return RrefResult(reduced, len(pivots), tuple(pivots))


def rank(m: Matrix) -> int:
    return rref(m).rank


def kernel(m: Matrix) -> Matrix:
    """Basis of the right null space, one solution of m @ x^T = 0 per row.

    Returns a (cols - rank) x cols matrix; a full-column-rank input yields
    a 0 x cols matrix.
    """
    reduced, rk, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    rows = []
    for f in free:
        vec = [ZERO] * m.cols
        vec[f] = ONE
        for r, p in enumerate(pivots):
            vec[p] = -reduced[r, f]
        rows.append(tuple(vec))
    return Matrix(len(rows), m.cols, tuple(rows))


def solve(a: Matrix, b: Matrix) -> Matrix:
    """One exact solution x of a @ x = b, with zero residual.

    Free variables are set to zero, making the result deterministic.
    Raises InconsistentSystemError when b is not in the column space of a.
    """
    if a.rows != b.rows:
        raise ValueError("a and b need the same number of rows")
    augmented = Matrix(
        a.rows, a.cols + b.cols,
        tuple(ra + rb for ra, rb in zip(a.entries, b.entries)),
    )
    reduced, _, pivots = rref(augmented)
    if any(p >= a.cols for p in pivots):
        raise InconsistentSystemError("right-hand side is outside the column space")
    x = [[ZERO] * b.cols for _ in range(a.cols)]
    for r, p in enumerate(pivots):
        for c in range(b.cols):
            x[p][c] = reduced[r, a.cols + c]
    return Matrix(a.cols, b.cols, tuple(tuple(row) for row in x))


def invert(m: Matrix) -> Matrix:
    """Exact inverse of a square matrix."""
    if m.rows != m.cols:
        raise ValueError("only square matrices are invertible")
    try:
        return solve(m, Matrix.identity(m.rows))
    except InconsistentSystemError:
        raise InconsistentSystemError("matrix is singular") from None


def is_invertible(m: Matrix) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def _int_str(value: int) -> str:
    return str(value)


def matrix_to_json(m: Matrix) -> dict:
    """Wire form: integer components as decimal strings, row-major.

    ``{"rows": R, "cols": C, "entries": [[re_num, re_den, im_num, im_den], ...]}``
    """
    entries = []
    for row in m.entries:
        for e in row:
            entries.append([
                _int_str(e.re.numerator), _int_str(e.re.denominator),
                _int_str(e.im.numerator), _int_str(e.im.denominator),
            ])
    return {"rows": m.rows, "cols": m.cols, "entries": entries}


def matrix_from_json(data: dict) -> Matrix:
    rows, cols = int(data["rows"]), int(data["cols"])
    raw = data["entries"]
    if len(raw) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, got {len(raw)}")
    flat = [
        GaussianRational(
            Fraction(int(q[0]), int(q[1])),
            Fraction(int(q[2]), int(q[3])),
        )
        for q in raw
    ]
    grid = tuple(tuple(flat[r * cols:(r + 1) * cols]) for r in range(rows))
    return Matrix(rows, cols, grid)
