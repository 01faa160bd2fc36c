"""The three fibrations of sum-dimension strata, with exact trivializations.

* gamma sends a configuration to the sum of its subspaces; over the chart
  of an i-plane V0 with fixed complement L0, the projection onto V0 along
  L0 carries the configuration into V0.
* pr forgets the last subspace of a direct-sum configuration; the fiber
  point is the image of the forgotten subspace under the isomorphism that
  agrees with the projection on the base sum and fixes L0.
* eta sends a pair to its intersection; the fiber point is the pair of
  images in the quotient by the intersection, modeled concretely on L0.

Every trivialization here is an exact bijection on its chart: composing
with its inverse returns the input entrywise over Q(i).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from . import grassmann, linalg
from .errors import (
    DirectSumError,
    NotDirectSumError,
    OutsideChartError,
    WrongArityError,
)
from .grassmann import Configuration, Subspace
from .linalg import Matrix

FiberPoint = Union[Configuration, Matrix, Subspace, tuple[Subspace, Subspace]]


@dataclass(frozen=True)
class Trivialization:
    """Chart data: a base point V0, a complement L0, and the projector onto
    V0 along L0 (as a matrix acting on row vectors)."""

    base_point: Subspace
    complement: Subspace
    projector: Matrix

    @staticmethod
    def over(v0: Subspace, l0: Optional[Subspace] = None) -> "Trivialization":
        """Build the chart over v0; without l0, the deterministic
        non-pivot complement is used."""
        if l0 is None:
            l0 = grassmann.complement(v0)
        projector = grassmann.projection_along(v0, l0)
        return Trivialization(v0, l0, projector)

    @property
    def n(self) -> int:
        return self.base_point.n


@dataclass(frozen=True)
class ChartPoint:
    """Image of a point under a trivialization: (base component, fiber
    component).  The fiber type depends on the fibration: a Configuration
    for gamma, chart coordinates or a Subspace for pr, and a pair of
    quotient subspaces for eta."""

    base: Union[Subspace, Configuration]
    fiber: FiberPoint


def _require_transverse(v: Subspace, triv: Trivialization, what: str) -> None:
    if v.n != triv.n:
        raise OutsideChartError(f"{what}: ambient dimension mismatch")
    if v.k != triv.base_point.k:
        raise OutsideChartError(
            f"{what}: dimension {v.k} does not match the chart base dimension {triv.base_point.k}"
        )
    if linalg.rank(v.basis.stack(triv.complement.basis)) != v.n:
        raise OutsideChartError(f"{what}: not transverse to the chart complement")


def extend_isomorphism(v: Subspace, triv: Trivialization) -> Matrix:
    """The automorphism of C^n restricting to the chart projection on v and
    to the identity on L0.

    On v it is an isomorphism v -> V0; invertibility follows from
    v ⊕ L0 = C^n.
    """
    _require_transverse(v, triv, "extend_isomorphism")
    source = v.basis.stack(triv.complement.basis)
    target = (v.basis @ triv.projector).stack(triv.complement.basis)
    return linalg.invert(source) @ target


def gamma_trivialize(c: Configuration, triv: Trivialization) -> ChartPoint:
    """Split a configuration into (sum, configuration inside V0).

    The fiber is the image of the configuration under the projection onto
    V0 along L0, a configuration of the same stratum index inside V0.
    """
    total = grassmann.subspace_sum(c.points)
    _require_transverse(total, triv, "gamma_trivialize")
    images = tuple(
        grassmann.canonicalize(p.basis @ triv.projector, c.n) for p in c.points
    )
    fiber = Configuration(c.h, c.k, c.n, images)
    return ChartPoint(base=total, fiber=fiber)


def gamma_untrivialize(p: ChartPoint, triv: Trivialization) -> Configuration:
    """Inverse of gamma_trivialize over the same chart."""
    base = p.base
    fiber = p.fiber
    if not isinstance(base, Subspace) or not isinstance(fiber, Configuration):
        raise TypeError("gamma chart points have a Subspace base and a Configuration fiber")
    for q in fiber.points:
        if not triv.base_point.contains(q):
            raise OutsideChartError("fiber configuration does not lie in the chart base point")
    iso = extend_isomorphism(base, triv)
    back = linalg.invert(iso)
    points = tuple(
        grassmann.canonicalize(q.basis @ back, fiber.n) for q in fiber.points
    )
    return Configuration(fiber.h, fiber.k, fiber.n, points)


def pr_forget_last(c: Configuration) -> Configuration:
    """Drop the last subspace of a direct-sum configuration."""
    if c.h < 2:
        raise WrongArityError("need at least two subspaces to forget one")
    if grassmann.stratum_of(c) != c.h * c.k:
        raise NotDirectSumError("the subspaces are not in direct sum")
    return Configuration(c.h - 1, c.k, c.n, c.points[:-1])


def chart_coordinates(hh: Subspace, w: Subspace) -> Matrix:
    """Graph coordinates of hh on the chart of subspaces complementary to w.

    Writing the basis of hh in the decomposition C^n = C ⊕ w, where C is
    the deterministic complement of w, and normalizing the C-block to the
    identity leaves the k x (n-k) coefficient matrix on w: hh is the graph
    of that linear map C -> w.
    """
    if hh.n != w.n:
        raise OutsideChartError("ambient dimension mismatch")
    if hh.k + w.k != hh.n:
        raise OutsideChartError(
            f"chart of Gr({hh.k},{hh.n}) needs a complementary w of dimension {hh.n - hh.k}"
        )
    c_part = grassmann.complement(w)
    frame = c_part.basis.stack(w.basis)
    coeff = hh.basis @ linalg.invert(frame)
    p_block = Matrix(hh.k, hh.k, tuple(row[: hh.k] for row in coeff.entries))
    q_block = Matrix(hh.k, w.k, tuple(row[hh.k:] for row in coeff.entries))
    if not linalg.is_invertible(p_block):
        raise OutsideChartError("subspace meets w nontrivially")
    return linalg.invert(p_block) @ q_block


def chart_point(coords: Matrix, w: Subspace) -> Subspace:
    """Inverse of chart_coordinates: the graph of the coefficient matrix."""
    k = coords.rows
    if coords.cols != w.k or k + w.k != w.n:
        raise ValueError("coordinate matrix shape does not match the chart")
    c_part = grassmann.complement(w)
    return grassmann.canonicalize(c_part.basis + coords @ w.basis, w.n)


def pr_trivialize(c: Configuration, triv: Trivialization) -> ChartPoint:
    """Split a direct-sum configuration into (first h-1 subspaces, fiber).

    The fiber is the image of the last subspace under the isomorphism
    carrying the base sum to the chart base point.  When n = hk that image
    is recorded in chart coordinates relative to the base point; for
    n > hk no single chart covers the fiber and the image subspace itself
    is returned.
    """
    front = pr_forget_last(c)
    base_sum = grassmann.subspace_sum(front.points)
    _require_transverse(base_sum, triv, "pr_trivialize")
    iso = extend_isomorphism(base_sum, triv)
    image = grassmann.canonicalize(c.points[-1].basis @ iso, c.n)
    fiber: FiberPoint
    if c.n == c.h * c.k:
        fiber = chart_coordinates(image, triv.base_point)
    else:
        fiber = image
    return ChartPoint(base=front, fiber=fiber)


def pr_untrivialize(p: ChartPoint, triv: Trivialization) -> Configuration:
    """Inverse of pr_trivialize: reattach the forgotten subspace."""
    front = p.base
    if not isinstance(front, Configuration):
        raise TypeError("pr chart points have a Configuration base")
    if isinstance(p.fiber, Matrix):
        image = chart_point(p.fiber, triv.base_point)
    elif isinstance(p.fiber, Subspace):
        image = p.fiber
    else:
        raise TypeError("pr fiber is chart coordinates or a subspace")
    if grassmann.intersection_dim(image, triv.base_point) != 0:
        raise OutsideChartError("fiber subspace meets the chart base point")
    base_sum = grassmann.subspace_sum(front.points)
    _require_transverse(base_sum, triv, "pr_untrivialize")
    iso = extend_isomorphism(base_sum, triv)
    last = grassmann.canonicalize(image.basis @ linalg.invert(iso), front.n)
    return Configuration(front.h + 1, front.k, front.n, front.points + (last,))


def eta(c: Configuration) -> Subspace:
    """Intersection of a pair of subspaces with nonzero intersection."""
    if c.h != 2:
        raise WrongArityError("the intersection map applies to pairs")
    inter = grassmann.subspace_intersection(c.points[0], c.points[1])
    if inter is None:
        raise DirectSumError("the pair is in direct sum; the intersection is zero")
    return inter


def eta_fiber_point(c: Configuration, triv: Trivialization) -> ChartPoint:
    """Split a pair into (intersection, quotient pair).

    The quotient C^n / V is identified with L0 through the projection
    along the chart base point; the two images are subspaces of L0 of
    dimension k - dim(V), in direct sum.
    """
    inter = eta(c)
    _require_transverse(inter, triv, "eta_fiber_point")
    iso = extend_isomorphism(inter, triv)
    to_quotient = grassmann.projection_along(triv.complement, triv.base_point)
    images = tuple(
        grassmann.canonicalize(p.basis @ iso @ to_quotient, c.n) for p in c.points
    )
    return ChartPoint(base=inter, fiber=(images[0], images[1]))


def eta_fiber_lift(p: ChartPoint, triv: Trivialization) -> Configuration:
    """Inverse of eta_fiber_point: rebuild the pair over the recorded
    intersection from its quotient images."""
    base = p.base
    fiber = p.fiber
    if not isinstance(base, Subspace) or not isinstance(fiber, tuple):
        raise TypeError("eta chart points have a Subspace base and a pair fiber")
    first, second = fiber
    for q in (first, second):
        if not triv.complement.contains(q):
            raise OutsideChartError("quotient images must lie in the chart complement")
    if grassmann.intersection_dim(first, second) != 0:
        raise OutsideChartError("quotient images must be in direct sum")
    iso = extend_isomorphism(base, triv)
    back = linalg.invert(iso)
    points = tuple(
        grassmann.canonicalize(
            triv.base_point.basis.stack(q.basis) @ back, base.n
        )
        for q in (first, second)
    )
    return Configuration(2, points[0].k, base.n, points)
