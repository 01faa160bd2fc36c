"""Points of Grassmannians, configurations, and the sum-dimension strata.

A point of Gr(k, n) is stored as its unique reduced-row-echelon basis, so
subspace equality is entrywise equality of basis matrices.  An ordered
configuration of h pairwise-distinct k-subspaces of C^n with
dim(H_1 + ... + H_h) = i is a point of the stratum named by
StratumId(h, i, k, n).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import linalg
from .errors import (
    DuplicatePointsError,
    EmptyStratumError,
    FullSpaceError,
    MixedAmbientError,
    NotComplementaryError,
    ZeroSubspaceError,
)
from .linalg import GaussianRational, Matrix

SeedLike = Union[int, str]


def _is_canonical_rref(m: Matrix) -> bool:
    last_pivot = -1
    for r in range(m.rows):
        lead = None
        for c in range(m.cols):
            if not m[r, c].is_zero():
                lead = c
                break
        if lead is None or lead <= last_pivot:
            return False
        if m[r, lead] != linalg.ONE:
            return False
        if any(not m[rr, lead].is_zero() for rr in range(m.rows) if rr != r):
            return False
        last_pivot = lead
    return True


@dataclass(frozen=True)
class Subspace:
    """A k-dimensional subspace of C^n; basis rows are in canonical RREF."""

    n: int
    k: int
    basis: Matrix

    def __post_init__(self) -> None:
        if not 0 < self.k <= self.n:
            raise ValueError(f"need 0 < k <= n, got k={self.k}, n={self.n}")
        if self.basis.rows != self.k or self.basis.cols != self.n:
            raise ValueError("basis shape does not match (k, n)")
        if not _is_canonical_rref(self.basis):
            raise ValueError("basis is not in canonical reduced row echelon form")

    def pivots(self) -> tuple[int, ...]:
        return tuple(
            next(c for c in range(self.n) if not self.basis[r, c].is_zero())
            for r in range(self.k)
        )

    def contains(self, other: "Subspace") -> bool:
        if other.n != self.n:
            raise MixedAmbientError("ambient dimensions differ")
        return linalg.rank(self.basis.stack(other.basis)) == self.k

    def __str__(self) -> str:
        return f"Subspace(k={self.k}, n={self.n})\n{self.basis}"


@dataclass(frozen=True)
class Configuration:
    """Ordered tuple of pairwise-distinct k-subspaces of a common C^n."""

    h: int
    k: int
    n: int
    points: tuple[Subspace, ...]

    def __post_init__(self) -> None:
        if self.h < 1 or len(self.points) != self.h:
            raise ValueError("a configuration needs h >= 1 points")
        for p in self.points:
            if p.n != self.n:
                raise MixedAmbientError("all points must share the ambient space")
            if p.k != self.k:
                raise ValueError("all points must share the subspace dimension")
        for a in range(self.h):
            for b in range(a + 1, self.h):
                if self.points[a] == self.points[b]:
                    raise DuplicatePointsError(f"points {a} and {b} coincide")

    @staticmethod
    def of(points: Sequence[Subspace]) -> "Configuration":
        if not points:
            raise ValueError("empty configuration")
        return Configuration(len(points), points[0].k, points[0].n, tuple(points))


@dataclass(frozen=True)
class StratumId:
    """Index data (h, i, k, n) of the stratum of h-tuples with sum dimension i."""

    h: int
    i: int
    k: int
    n: int

    def __post_init__(self) -> None:
        if not 0 < self.k < self.n:
            raise ValueError(f"need 0 < k < n, got k={self.k}, n={self.n}")
        if self.h < 1:
            raise ValueError("need h >= 1")

    def __str__(self) -> str:
        return f"F_{self.h}^{self.i}({self.k},{self.n})"


def canonicalize(raw_basis: Matrix, n: int) -> Subspace:
    """The subspace spanned by the rows, in canonical form.

    The dimension is the rank of the generating set; dependent generators
    collapse.  Raises ZeroSubspaceError when every row is zero.
    """
    if raw_basis.cols != n:
        raise MixedAmbientError(f"expected {n} columns, got {raw_basis.cols}")
    reduced, rk, _ = linalg.rref(raw_basis)
    if rk == 0:
        raise ZeroSubspaceError("generating set spans only the zero subspace")
    return Subspace(n, rk, reduced.take_rows(rk))


def subspace_sum(parts: Sequence[Subspace]) -> Subspace:
    """Span of the union of bases, H_1 + ... + H_m."""
    if not parts:
        raise ValueError("empty sum")
    n = parts[0].n
    if any(p.n != n for p in parts):
        raise MixedAmbientError("ambient dimensions differ")
    return canonicalize(linalg.stack_all(p.basis for p in parts), n)


def subspace_intersection(a: Subspace, b: Subspace) -> Optional[Subspace]:
    """Exact intersection; None encodes the zero subspace.

    Solutions of x·A = y·B are read off the null space of the stacked
    basis matrix, so dim(A+B) + dim(A∩B) = dim A + dim B holds exactly.
    """
    if a.n != b.n:
        raise MixedAmbientError("ambient dimensions differ")
    stacked = a.basis.stack(b.basis.scale(-1))
    null_rows = linalg.kernel(stacked.transpose())
    if null_rows.rows == 0:
        return None
    coeff_a = Matrix(null_rows.rows, a.k, tuple(row[: a.k] for row in null_rows.entries))
    return canonicalize(coeff_a @ a.basis, a.n)


def intersection_dim(a: Subspace, b: Subspace) -> int:
    s = subspace_intersection(a, b)
    return 0 if s is None else s.k


def complement(v: Subspace) -> Subspace:
    """The deterministic complement spanned by non-pivot standard vectors.

    Because the basis is in RREF, the standard basis vectors at non-pivot
    columns always complete it to a basis of C^n.
    """
    if v.k == v.n:
        raise FullSpaceError("the full space has no complement")
    pivots = set(v.pivots())
    rows = []
    for c in range(v.n):
        if c in pivots:
            continue
        rows.append(tuple(linalg.ONE if j == c else linalg.ZERO for j in range(v.n)))
    return Subspace(v.n, v.n - v.k, Matrix(len(rows), v.n, tuple(rows)))


def projection_along(target: Subspace, along: Subspace) -> Matrix:
    """Matrix of the idempotent with image ``target`` and kernel ``along``.

    Acts on row vectors by right multiplication.  Requires
    target ⊕ along = C^n.
    """
    if target.n != along.n:
        raise MixedAmbientError("ambient dimensions differ")
    n = target.n
    if target.k + along.k != n:
        raise NotComplementaryError("dimensions do not add up to the ambient dimension")
    stacked = target.basis.stack(along.basis)
    if linalg.rank(stacked) != n:
        raise NotComplementaryError("subspaces intersect nontrivially")
    picked = target.basis.stack(Matrix.zeros(along.k, n))
    return linalg.invert(stacked) @ picked


def transform(v: Subspace, g: Matrix) -> Subspace:
    """Image of the subspace under the invertible coordinate change g."""
    return canonicalize(v.basis @ g, g.cols)


def transform_configuration(c: Configuration, g: Matrix) -> Configuration:
    return Configuration(c.h, c.k, g.cols, tuple(transform(p, g) for p in c.points))


def stratum_of(c: Configuration) -> int:
    """dim(H_1 + ... + H_h), the stratum index of the configuration."""
    return subspace_sum(c.points).k


def stratum_id_of(c: Configuration) -> StratumId:
    return StratumId(c.h, stratum_of(c), c.k, c.n)


def is_stratum_nonempty(s: StratumId) -> bool:
    """Emptiness predicate: h=1 needs i=k; h>=2 needs k+1 <= i <= min(hk, n)."""
    if s.h == 1:
        return s.i == s.k
    return s.k + 1 <= s.i <= min(s.h * s.k, s.n)


def stratum_dimension(s: StratumId) -> int:
    """Complex dimension i(n-i) + hk(i-k) of the nonempty stratum."""
    if not is_stratum_nonempty(s):
        raise EmptyStratumError(f"{s} is empty")
    return s.i * (s.n - s.i) + s.h * s.k * (s.i - s.k)


def strata_list(h: int, k: int, n: int) -> list[StratumId]:
    """All nonempty strata for h >= 2, in increasing i; the last is open."""
    if h < 2:
        raise ValueError("strata_list applies to h >= 2; h = 1 has the single stratum i = k")
    if not 0 < k < n:
        raise ValueError(f"need 0 < k < n, got k={k}, n={n}")
    return [StratumId(h, i, k, n) for i in range(k + 1, min(h * k, n) + 1)]


def stratum_closure(s: StratumId) -> list[StratumId]:
    """Strata contained in the closure: every index from k+1 up to i."""
    if s.h < 2:
        raise ValueError("closure adjacency applies to h >= 2")
    if not is_stratum_nonempty(s):
        raise EmptyStratumError(f"{s} is empty")
    return [StratumId(s.h, j, s.k, s.n) for j in range(s.k + 1, s.i + 1)]


# ---------------------------------------------------------------------------
# seeded random constructions


def _rand_fraction(rng: random.Random, span: int = 3, max_den: int = 2) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, max_den))


def _rand_scalar(rng: random.Random) -> GaussianRational:
    return GaussianRational(_rand_fraction(rng), _rand_fraction(rng))


def random_matrix(rows: int, cols: int, rng: random.Random) -> Matrix:
    return Matrix(rows, cols, tuple(
        tuple(_rand_scalar(rng) for _ in range(cols)) for _ in range(rows)
    ))


def random_invertible(n: int, rng: random.Random) -> Matrix:
    while True:
        m = random_matrix(n, n, rng)
        if linalg.rank(m) == n:
            return m


def sample_subspace(k: int, n: int, seed: SeedLike) -> Subspace:
    """A seeded random point of Gr(k, n)."""
    rng = random.Random(f"subspace:{k}:{n}:{seed}")
    while True:
        raw = random_matrix(k, n, rng)
        if linalg.rank(raw) == k:
            return canonicalize(raw, n)


def _unit_row(idx: int, n: int) -> tuple[GaussianRational, ...]:
    return tuple(linalg.ONE if j == idx else linalg.ZERO for j in range(n))


def _model_bases(h: int, i: int, k: int, n: int) -> list[Matrix]:
    """Coordinate model of the stratum: fresh directions first, then tilts.

    H_1 takes the first k standard directions of the target span
    V = <e_0, ..., e_{i-1}>.  Later subspaces consume fresh directions of V
    until it is exhausted, topping up with already-used ones; afterwards
    distinctness comes from tilting e_0 toward e_k inside V, which leaves
    the sum untouched (i >= k+1 whenever tilts occur).
    """
    bases = [Matrix(k, n, tuple(_unit_row(r, n) for r in range(k)))]
    used = k
    tilt = 0
    for _ in range(h - 1):
        fresh = min(k, i - used)
        if fresh > 0:
            rows = [_unit_row(used + r, n) for r in range(fresh)]
            rows += [_unit_row(r, n) for r in range(k - fresh)]
            used += fresh
        else:
            tilt += 1
            t = GaussianRational(Fraction(tilt))
            tilted = list(_unit_row(0, n))
            tilted[k] = t
            rows = [tuple(tilted)] + [_unit_row(r, n) for r in range(1, k)]
        bases.append(Matrix(k, n, tuple(rows)))
    return bases


def sample_configuration(s: StratumId, seed: SeedLike) -> Configuration:
    """A seeded configuration lying exactly in the stratum.

    A coordinate model with sum <e_0, ..., e_{i-1}> is moved by a seeded
    invertible rational change of coordinates of C^n.  Exact arithmetic
    makes collisions impossible in theory; the seed still advances and the
    construction retries if distinctness were ever to fail.
    """
    if not is_stratum_nonempty(s):
        raise EmptyStratumError(f"{s} is empty")
    bases = _model_bases(s.h, s.i, s.k, s.n)
    rng = random.Random(f"config:{s.h}:{s.i}:{s.k}:{s.n}:{seed}")
    while True:
        g = random_invertible(s.n, rng)
        points = [canonicalize(b @ g, s.n) for b in bases]
        if all(points[a] != points[b] for a in range(s.h) for b in range(a + 1, s.h)):
            return Configuration(s.h, s.k, s.n, tuple(points))


# ---------------------------------------------------------------------------
# wire formats


def subspace_to_json(v: Subspace) -> dict:
    return {"n": v.n, "k": v.k, "basis": linalg.matrix_to_json(v.basis)}


def subspace_from_json(data: dict) -> Subspace:
    """Parse and re-canonicalize; rank-deficient bases are rejected."""
    n, k = int(data["n"]), int(data["k"])
    basis = linalg.matrix_from_json(data["basis"])
    sub = canonicalize(basis, n)
    if sub.k != k:
        raise ValueError(f"declared dimension {k} but basis has rank {sub.k}")
    return sub


def configuration_to_json(c: Configuration) -> dict:
    return {
        "h": c.h,
        "k": c.k,
        "n": c.n,
        "points": [subspace_to_json(p) for p in c.points],
    }


def configuration_from_json(data: dict) -> Configuration:
    points = tuple(subspace_from_json(p) for p in data["points"])
    cfg = Configuration(int(data["h"]), int(data["k"]), int(data["n"]), points)
    return cfg
