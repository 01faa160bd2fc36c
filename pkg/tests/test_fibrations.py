import random

import pytest

from grassconf.errors import (
    DirectSumError,
    NotDirectSumError,
    OutsideChartError,
    WrongArityError,
)
from grassconf.fibrations import (
    ChartPoint,
    Trivialization,
    chart_coordinates,
    chart_point,
    eta,
    eta_fiber_lift,
    eta_fiber_point,
    extend_isomorphism,
    gamma_trivialize,
    gamma_untrivialize,
    pr_forget_last,
    pr_trivialize,
    pr_untrivialize,
)
from grassconf.grassmann import (
    Configuration,
    StratumId,
    canonicalize,
    complement,
    random_invertible,
    sample_configuration,
    sample_subspace,
    stratum_of,
    subspace_sum,
    transform_configuration,
)
from grassconf.linalg import Matrix, is_invertible, rank


def unit_rows(n, *idx):
    return Matrix.from_rows([[1 if j == i else 0 for j in range(n)] for i in idx])


def chart_containing(v, seed_tag, dim=None):
    """A trivialization with random base point and complement whose chart
    contains v."""
    dim = v.k if dim is None else dim
    for attempt in range(64):
        v0 = sample_subspace(dim, v.n, f"{seed_tag}:{attempt}")
        l0 = sample_subspace(v.n - dim, v.n, f"{seed_tag}:comp:{attempt}")
        if rank(v0.basis.stack(l0.basis)) < v.n:
            continue
        if rank(v.basis.stack(l0.basis)) == v.n:
            return Trivialization.over(v0, l0)
    raise AssertionError("no chart found")


# --- extend_isomorphism ----------------------------------------------------


def test_extension_at_base_point_is_identity():
    v0 = sample_subspace(3, 5, 1)
    triv = Trivialization.over(v0)
    assert extend_isomorphism(v0, triv) == Matrix.identity(5)


def test_extension_is_invertible_and_fixes_complement():
    for seed in range(20):
        v0 = sample_subspace(2, 5, f"ext:{seed}")
        triv = Trivialization.over(v0)
        v = sample_subspace(2, 5, f"ext:other:{seed}")
        if rank(v.basis.stack(triv.complement.basis)) < 5:
            continue
        iso = extend_isomorphism(v, triv)
        assert is_invertible(iso)
        assert triv.complement.basis @ iso == triv.complement.basis
        assert canonicalize(v.basis @ iso, 5) == v0


def test_extension_outside_chart_raises():
    v0 = canonicalize(unit_rows(4, 0, 1), 4)
    triv = Trivialization.over(v0)
    meets = canonicalize(unit_rows(4, 2, 3), 4)
    with pytest.raises(OutsideChartError):
        extend_isomorphism(meets, triv)


# --- gamma ------------------------------------------------------------------


def test_gamma_inside_base_point_is_identity_chart():
    v0 = canonicalize(unit_rows(5, 0, 1, 2), 5)
    triv = Trivialization.over(v0)
    pts = (
        canonicalize(unit_rows(5, 0, 1), 5),
        canonicalize(unit_rows(5, 1, 2), 5),
    )
    c = Configuration(2, 2, 5, pts)
    point = gamma_trivialize(c, triv)
    assert point.base == v0
    assert point.fiber == c
    assert gamma_untrivialize(point, triv) == c


def test_gamma_round_trip_seeded():
    for h, i, k, n in ((2, 3, 2, 5), (3, 4, 2, 6), (2, 4, 2, 6)):
        for seed in range(15):
            c = sample_configuration(StratumId(h, i, k, n), f"g:{seed}")
            total = subspace_sum(c.points)
            triv = chart_containing(total, f"gbase:{h}:{i}:{k}:{n}:{seed}")
            point = gamma_trivialize(c, triv)
            assert point.base == total
            assert stratum_of(point.fiber) == i
            assert subspace_sum(point.fiber.points) == triv.base_point
            assert gamma_untrivialize(point, triv) == c
            assert gamma_trivialize(gamma_untrivialize(point, triv), triv) == point


def test_gamma_outside_chart_raises():
    c = Configuration(
        2, 2, 4,
        (canonicalize(unit_rows(4, 0, 1), 4), canonicalize(unit_rows(4, 1, 2), 4)),
    )
    v0 = canonicalize(unit_rows(4, 0, 1, 3), 4)  # complement meets the sum
    with pytest.raises(OutsideChartError):
        gamma_trivialize(c, Trivialization.over(v0))


# --- pr ---------------------------------------------------------------------


def test_pr_forget_last_coordinate_planes():
    pts = tuple(canonicalize(unit_rows(6, 2 * j, 2 * j + 1), 6) for j in range(3))
    c = Configuration(3, 2, 6, pts)
    front = pr_forget_last(c)
    assert front.points == pts[:2]
    assert stratum_of(front) == 4


def test_pr_forget_last_requires_direct_sum():
    c = sample_configuration(StratumId(2, 3, 2, 5), 0)
    with pytest.raises(NotDirectSumError):
        pr_forget_last(c)
    single = Configuration.of([sample_subspace(2, 5, 0)])
    with pytest.raises(WrongArityError):
        pr_forget_last(single)


def test_chart_coordinates_of_standard_complement_is_zero():
    w = sample_subspace(3, 5, 31)
    hh = complement(w)
    coords = chart_coordinates(hh, w)
    assert coords == Matrix.zeros(2, 3)
    assert chart_point(coords, w) == hh


def test_chart_coordinates_round_trip():
    for seed in range(100):
        n = 5
        w = sample_subspace(3, n, f"w:{seed}")
        hh = sample_subspace(2, n, f"hh:{seed}")
        if rank(hh.basis.stack(w.basis)) < n:
            continue
        coords = chart_coordinates(hh, w)
        assert coords.rows == 2 and coords.cols == 3
        assert chart_point(coords, w) == hh


def test_chart_coordinates_outside_chart_raises():
    w = canonicalize(unit_rows(4, 0, 1), 4)
    hh = canonicalize(unit_rows(4, 1, 2), 4)
    with pytest.raises(OutsideChartError):
        chart_coordinates(hh, w)


def test_pr_trivialize_over_own_base():
    pts = tuple(canonicalize(unit_rows(6, 2 * j, 2 * j + 1), 6) for j in range(3))
    c = Configuration(3, 2, 6, pts)
    v0 = subspace_sum(pts[:2])
    triv = Trivialization.over(v0)
    point = pr_trivialize(c, triv)
    assert point.base == pr_forget_last(c)
    assert point.fiber == chart_coordinates(pts[2], v0)
    assert pr_untrivialize(point, triv) == c


@pytest.mark.parametrize("h,k,n", [(2, 2, 4), (3, 2, 6), (2, 2, 5), (3, 1, 5)])
def test_pr_round_trip_seeded(h, k, n):
    for seed in range(10):
        c = sample_configuration(StratumId(h, h * k, k, n), f"pr:{seed}")
        front_sum = subspace_sum(c.points[:-1])
        triv = None
        for attempt in range(64):
            base_cfg = sample_configuration(
                StratumId(h - 1, (h - 1) * k, k, n), f"prb:{h}:{k}:{n}:{seed}:{attempt}"
            )
            cand = Trivialization.over(subspace_sum(base_cfg.points))
            if rank(front_sum.basis.stack(cand.complement.basis)) == n:
                triv = cand
                break
        assert triv is not None
        point = pr_trivialize(c, triv)
        assert point.base == pr_forget_last(c)
        if n == h * k:
            assert isinstance(point.fiber, Matrix)
            assert point.fiber.rows == k and point.fiber.cols == n - k
        else:
            assert point.fiber.k == k
        assert pr_untrivialize(point, triv) == c
        assert pr_trivialize(pr_untrivialize(point, triv), triv) == point


# --- eta ----------------------------------------------------------------------


def test_eta_two_planes_sharing_a_line():
    h1 = canonicalize(unit_rows(3, 0, 1), 3)
    h2 = canonicalize(unit_rows(3, 0, 2), 3)
    c = Configuration(2, 2, 3, (h1, h2))
    assert eta(c) == canonicalize(unit_rows(3, 0), 3)


def test_eta_requires_pairs_and_nonzero_intersection():
    triple = sample_configuration(StratumId(3, 4, 2, 6), 0)
    with pytest.raises(WrongArityError):
        eta(triple)
    split = sample_configuration(StratumId(2, 4, 2, 5), 0)
    with pytest.raises(DirectSumError):
        eta(split)


def test_eta_dimension_and_equivariance():
    for seed in range(10):
        c = sample_configuration(StratumId(2, 3, 2, 5), f"eta:{seed}")
        inter = eta(c)
        assert inter.k == 2 * 2 - 3
        g = random_invertible(5, random.Random(seed))
        moved = transform_configuration(c, g)
        assert eta(moved) == canonicalize(inter.basis @ g, 5)


def test_eta_fiber_point_standard_model():
    h1 = canonicalize(unit_rows(4, 0, 1), 4)
    h2 = canonicalize(unit_rows(4, 0, 2), 4)
    c = Configuration(2, 2, 4, (h1, h2))
    v0 = canonicalize(unit_rows(4, 0), 4)
    triv = Trivialization.over(v0)
    point = eta_fiber_point(c, triv)
    assert point.base == v0
    first, second = point.fiber
    assert first == canonicalize(unit_rows(4, 1), 4)
    assert second == canonicalize(unit_rows(4, 2), 4)
    assert eta_fiber_lift(point, triv) == c


@pytest.mark.parametrize("k,i,n", [(2, 3, 4), (2, 3, 5), (3, 4, 5), (3, 5, 6)])
def test_eta_round_trip_seeded(k, i, n):
    for seed in range(10):
        c = sample_configuration(StratumId(2, i, k, n), f"etart:{seed}")
        inter = eta(c)
        triv = chart_containing(inter, f"etabase:{k}:{i}:{n}:{seed}")
        point = eta_fiber_point(c, triv)
        assert point.base == inter
        first, second = point.fiber
        assert first.k == i - k and second.k == i - k
        assert triv.complement.contains(first) and triv.complement.contains(second)
        assert subspace_sum([first, second]).k == 2 * (i - k)
        assert eta_fiber_lift(point, triv) == c
        assert eta_fiber_point(eta_fiber_lift(point, triv), triv) == point


def test_eta_fiber_outside_chart_raises():
    h1 = canonicalize(unit_rows(4, 0, 1), 4)
    h2 = canonicalize(unit_rows(4, 0, 2), 4)
    c = Configuration(2, 2, 4, (h1, h2))
    v0 = canonicalize(unit_rows(4, 3), 4)  # complement contains the intersection
    with pytest.raises(OutsideChartError):
        eta_fiber_point(c, Trivialization.over(v0))
