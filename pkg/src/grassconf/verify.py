"""Numerical and constructive verification suites.

Three batch checks back the exact layer:

* check_dimension drives an explicit chart of a stratum with float
  arithmetic and confirms that the finite-difference Jacobian has real
  rank twice the predicted complex dimension i(n-i) + hk(i-k).
* check_adjacency produces an exact witness arbitrarily close to a given
  configuration inside a higher stratum, and confirms that small exact
  perturbations never lower the stratum.
* run_roundtrip_suite exercises the gamma/pr/eta trivializations on
  seeded samples, entrywise over Q(i).

Each case is a pure function of (parameters, seed, case index), so suites
can run in any order, or in parallel, with identical reports.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Optional, Sequence, Union

import numpy as np

from . import fibrations, grassmann, linalg
from .errors import EmptyStratumError, GrassconfError, UnreachableError
from .fibrations import Trivialization
from .grassmann import Configuration, StratumId, Subspace
from .linalg import GaussianRational, Matrix

SeedLike = Union[int, str]

FD_STEPS = (1e-4, 1e-5)


@dataclass
class VerificationReport:
    suite: str
    cases: int = 0
    passed: int = 0
    failures: list[tuple[str, str]] = field(default_factory=list)
    parameters: dict = field(default_factory=dict)

    def record(self, seed: SeedLike, desc: Optional[str]) -> None:
        self.cases += 1
        if desc is None:
            self.passed += 1
        else:
            self.failures.append((str(seed), desc))

    @property
    def ok(self) -> bool:
        return self.passed == self.cases

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "cases": self.cases,
            "passed": self.passed,
            "failures": [{"seed": s, "desc": d} for s, d in self.failures],
            "params": self.parameters,
        }


# ---------------------------------------------------------------------------
# exact chart metric


def orthogonal_projector(v: Subspace) -> Matrix:
    """Hermitian idempotent with image v, exact over Q(i)."""
    b = v.basis
    bh = b.conjugate_transpose()
    gram = b @ bh
    return bh @ linalg.invert(gram) @ b


# The metric itself runs on scaled Gaussian-integer arithmetic: for an
# integer row basis B the projector is B^H adj(B B^H) B / det(B B^H), a
# Gaussian-integer matrix over a positive integer, so distance comparisons
# never touch Fraction normalization (the hot path of the perturbation
# suites).  Entries are (re, im) integer pairs.

GInt = tuple[int, int]


def _gadd(a: GInt, b: GInt) -> GInt:
    return (a[0] + b[0], a[1] + b[1])


def _gsub(a: GInt, b: GInt) -> GInt:
    return (a[0] - b[0], a[1] - b[1])


def _gmul(a: GInt, b: GInt) -> GInt:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gdet(grid: list[list[GInt]]) -> GInt:
    size = len(grid)
    if size == 0:
        return (1, 0)
    if size == 1:
        return grid[0][0]
    total = (0, 0)
    for col in range(size):
        entry = grid[0][col]
        if entry == (0, 0):
            continue
        minor = [[row[c] for c in range(size) if c != col] for row in grid[1:]]
        term = _gmul(entry, _gdet(minor))
        total = _gadd(total, term) if col % 2 == 0 else _gsub(total, term)
    return total


def _gsum(terms) -> GInt:
    re = im = 0
    for t in terms:
        re += t[0]
        im += t[1]
    return (re, im)


def _integer_rows(basis: Matrix) -> list[list[GInt]]:
    """Row-scale the basis to Gaussian-integer entries (same row space)."""
    rows = []
    for row in basis.entries:
        scale = 1
        for e in row:
            for den in (e.re.denominator, e.im.denominator):
                scale = scale * den // gcd(scale, den)
        rows.append([(int(e.re * scale), int(e.im * scale)) for e in row])
    return rows


def _integer_projector(basis: Matrix) -> tuple[list[list[GInt]], int]:
    """(N, d) with orthogonal projector N / d; d > 0 iff the rows are
    independent (d = 0 signals a rank drop)."""
    rows = _integer_rows(basis)
    k, n = len(rows), len(rows[0])
    conj = [[(e[0], -e[1]) for e in row] for row in rows]
    gram = [
        [_gsum(_gmul(rows[a][l], conj[b][l]) for l in range(n)) for b in range(k)]
        for a in range(k)
    ]
    det = _gdet(gram)
    if det[1] != 0:
        raise ArithmeticError("Gram determinant must be real")
    if det[0] == 0:
        return [], 0
    adj = []
    for a in range(k):
        adj_row = []
        for b in range(k):
            minor = [
                [gram[r][c] for c in range(k) if c != a]
                for r in range(k) if r != b
            ]
            cof = _gdet(minor)
            if (a + b) % 2:
                cof = (-cof[0], -cof[1])
            adj_row.append(cof)
        adj.append(adj_row)
    bh_adj = [
        [_gsum(_gmul(conj[r][a], adj[r][b]) for r in range(k)) for b in range(k)]
        for a in range(n)
    ]
    numerator = [
        [_gsum(_gmul(bh_adj[a][r], rows[r][b]) for r in range(k)) for b in range(n)]
        for a in range(n)
    ]
    if det[0] < 0:
        numerator = [[(-e[0], -e[1]) for e in row] for row in numerator]
    return numerator, abs(det[0])


def _projector_gap(na, da, nb, db) -> int:
    """max-entry of |N_a/d_a - N_b/d_b| scaled by d_a*d_b (an integer)."""
    worst = 0
    for row_a, row_b in zip(na, nb):
        for ea, eb in zip(row_a, row_b):
            re = abs(ea[0] * db - eb[0] * da)
            im = abs(ea[1] * db - eb[1] * da)
            if re > worst:
                worst = re
            if im > worst:
                worst = im
    return worst


def subspace_distance(a: Subspace, b: Subspace) -> Fraction:
    """Max-entry distance of orthogonal projectors; rational-valued, zero
    iff the subspaces are equal."""
    if a.n != b.n:
        raise ValueError("subspaces are not comparable")
    na, da = _integer_projector(a.basis)
    nb, db = _integer_projector(b.basis)
    return Fraction(_projector_gap(na, da, nb, db), da * db)


def configuration_distance(c1: Configuration, c2: Configuration) -> Fraction:
    if c1.h != c2.h or c1.n != c2.n:
        raise ValueError("configurations are not comparable")
    return max(subspace_distance(p, q) for p, q in zip(c1.points, c2.points))


# ---------------------------------------------------------------------------
# dimension of the strata via float chart rank


def matrix_to_complex(m: Matrix) -> np.ndarray:
    return np.array(
        [[e.to_complex() for e in row] for row in m.entries], dtype=complex
    ).reshape(m.rows, m.cols)


def float_rank(a: np.ndarray, tol: float) -> int:
    """Rank with a relative pivot threshold after row-scaling.

    Rows are scaled to unit max-norm, then eliminated with full pivoting;
    a pivot below tol ends the count.
    """
    m = np.array(a, dtype=float)
    if m.size == 0:
        return 0
    norms = np.max(np.abs(m), axis=1)
    nonzero = norms > 0.0
    m = m[nonzero] / norms[nonzero, None]
    rank = 0
    while m.shape[0] and m.shape[1]:
        r, c = np.unravel_index(int(np.argmax(np.abs(m))), m.shape)
        pivot = m[r, c]
        if abs(pivot) <= tol:
            break
        rank += 1
        row = m[r] / pivot
        m = np.delete(m, r, axis=0)
        if m.shape[0]:
            m = m - np.outer(m[:, c], row)
            m = np.delete(m, c, axis=1)
        else:
            break
    return rank


def _coefficients_in(v: Subspace, p: Subspace) -> Matrix:
    """Rows of p expressed in the basis of the enclosing subspace v."""
    return linalg.solve(v.basis.transpose(), p.basis.transpose()).transpose()


def _chart_map(c: Configuration):
    """Float chart of the stratum at c.

    Parameters move the sum V inside Gr(i, n) by graph coordinates and
    each subspace inside V by graph coordinates; the value is the stacked
    real/imaginary parts of the h orthogonal projector matrices.
    Returns (map, parameter count).
    """
    h, k, n = c.h, c.k, c.n
    total = grassmann.subspace_sum(c.points)
    i = total.k
    vb = matrix_to_complex(total.basis)
    if i < n:
        wb = matrix_to_complex(grassmann.complement(total).basis)
    else:
        wb = None
    coeffs = []
    inner_complements = []
    for p in c.points:
        coeff = _coefficients_in(total, p)
        coeffs.append(matrix_to_complex(coeff))
        if k < i:
            inner = grassmann.complement(grassmann.canonicalize(coeff, i))
            inner_complements.append(matrix_to_complex(inner.basis))
        else:
            inner_complements.append(None)
    n_outer = i * (n - i)
    n_inner = k * (i - k)
    n_complex = n_outer + h * n_inner

    def chart(theta: np.ndarray) -> np.ndarray:
        z = theta[: len(theta) // 2] + 1j * theta[len(theta) // 2:]
        pos = 0
        va = vb
        if n_outer:
            a = z[pos:pos + n_outer].reshape(i, n - i)
            pos += n_outer
            va = vb + a @ wb
        out = []
        for idx in range(h):
            cj = coeffs[idx]
            if n_inner:
                b = z[pos:pos + n_inner].reshape(k, i - k)
                pos += n_inner
                cj = cj + b @ inner_complements[idx]
            basis = cj @ va
            gram = basis @ basis.conj().T
            proj = basis.conj().T @ np.linalg.solve(gram, basis)
            out.append(proj.real.ravel())
            out.append(proj.imag.ravel())
        return np.concatenate(out)

    return chart, 2 * n_complex


def _fd_jacobian(f, n_params: int, step: float) -> np.ndarray:
    """Central-difference Jacobian at 0, parameters as rows."""
    rows = []
    for p in range(n_params):
        theta = np.zeros(n_params)
        theta[p] = step
        plus = f(theta)
        theta[p] = -step
        minus = f(theta)
        rows.append((plus - minus) / (2.0 * step))
    return np.vstack(rows)


def _dimension_case(c: Configuration, s: StratumId, tol: float) -> Optional[str]:
    chart, n_params = _chart_map(c)
    expected = 2 * grassmann.stratum_dimension(s)
    if n_params != expected:
        return f"chart has {n_params} parameters, formula predicts {expected}"
    ranks = [float_rank(_fd_jacobian(chart, n_params, step), tol) for step in FD_STEPS]
    if ranks[0] != ranks[1]:
        return f"step sizes disagree on the rank: {ranks[0]} vs {ranks[1]}"
    if ranks[0] != expected:
        return f"chart rank {ranks[0]} != 2 * dimension {expected}"
    return None


def check_dimension(
    s: StratumId,
    samples: int = 3,
    tol: float = 1e-6,
    seed: SeedLike = 0,
) -> VerificationReport:
    """Float-rank verification of the dimension formula at sampled points."""
    if not grassmann.is_stratum_nonempty(s):
        raise EmptyStratumError(f"{s} is empty")
    if tol <= 0:
        raise ValueError("tol must be positive")
    report = VerificationReport(
        suite="dimension",
        parameters={
            "h": s.h, "i": s.i, "k": s.k, "n": s.n,
            "samples": samples, "tol": tol, "steps": list(FD_STEPS),
            "seed": str(seed),
        },
    )
    for idx in range(samples):
        case_seed = f"{seed}:{idx}"
        c = grassmann.sample_configuration(s, case_seed)
        report.record(case_seed, _dimension_case(c, s, tol))
    return report


# ---------------------------------------------------------------------------
# adjacency of strata


def _all_rows(points: Sequence[Subspace]) -> Matrix:
    return linalg.stack_all(p.basis for p in points)


def _tilt_rows(basis: Matrix, slot: int, direction: tuple, t: Fraction) -> Matrix:
    factor = GaussianRational(t)
    rows = [
        tuple(e + factor * d for e, d in zip(row, direction)) if r == slot else row
        for r, row in enumerate(basis.entries)
    ]
    return Matrix(basis.rows, basis.cols, tuple(rows))


def _raise_stratum(points: list[Subspace], target_i: int, t: Fraction) -> Optional[list[Subspace]]:
    """Greedy exact tilts: nudge redundant basis vectors toward fresh
    directions until the sum reaches target_i.  Each step provably raises
    the rank by one; the exact checks below are guards."""
    pts = list(points)
    current = linalg.rank(_all_rows(pts))
    while current < target_i:
        fresh = grassmann.complement(grassmann.subspace_sum(pts)).basis.row(0)
        advanced = False
        for m_idx, p in enumerate(pts):
            for slot in range(p.k):
                remaining = [q.basis for q in pts[:m_idx] + pts[m_idx + 1:]]
                remaining.append(Matrix(p.k - 1, p.n, tuple(
                    row for r, row in enumerate(p.basis.entries) if r != slot
                )))
                if linalg.rank(linalg.stack_all(remaining)) != current:
                    continue
                tilted = grassmann.canonicalize(_tilt_rows(p.basis, slot, fresh, t), p.n)
                if tilted.k != p.k:
                    continue
                trial = pts[:m_idx] + [tilted] + pts[m_idx + 1:]
                if any(trial[a] == trial[b] for a in range(len(trial)) for b in range(a + 1, len(trial))):
                    continue
                if linalg.rank(_all_rows(trial)) != current + 1:
                    continue
                pts = trial
                current += 1
                advanced = True
                break
            if advanced:
                break
        if not advanced:
            return None
    return pts


def _adjacency_witness(c: Configuration, target_i: int, eps: Fraction) -> Optional[str]:
    if grassmann.stratum_of(c) == target_i:
        return None
    t = eps / 8
    for _ in range(80):
        pts = _raise_stratum(list(c.points), target_i, t)
        if pts is None:
            return "no tilt slot raises the sum dimension"
        witness = Configuration(c.h, c.k, c.n, tuple(pts))
        if grassmann.stratum_of(witness) != target_i:
            return "tilted configuration missed the target stratum"
        if configuration_distance(c, witness) < eps:
            return None
        t = t / 4
    return "could not meet the distance bound"


def _semicontinuity_trial(
    c: Configuration,
    base_rank: int,
    cached: Sequence[tuple[list[list[GInt]], int]],
    eps: Fraction,
    rng: random.Random,
) -> Optional[str]:
    """One seeded exact perturbation of chart-metric size < eps.

    Directions come from the {-1, 0, 1} lattice; the scale is randomized
    and then shrunk until the distance bound and nondegeneracy hold.
    Returns a failure description when the stratum drops, None otherwise.
    """
    directions = [
        tuple(
            tuple(
                GaussianRational(Fraction(rng.randint(-1, 1)), Fraction(rng.randint(-1, 1)))
                for _ in range(c.n)
            )
            for _ in range(c.k)
        )
        for _ in range(c.h)
    ]
    t = eps * Fraction(rng.randint(1, 4096), 4096) / 8
    for _ in range(80):
        raw = [
            p.basis + Matrix(c.k, c.n, d).scale(GaussianRational(t))
            for p, d in zip(c.points, directions)
        ]
        projectors = [_integer_projector(b) for b in raw]
        degenerate = any(d == 0 for _, d in projectors)
        if not degenerate:
            for a in range(c.h):
                for b in range(a + 1, c.h):
                    na, da = projectors[a]
                    nb, db = projectors[b]
                    if _projector_gap(na, da, nb, db) == 0:
                        degenerate = True
        if degenerate:
            t = t / 4
            continue
        within = True
        for (np_, dp), (no, do) in zip(projectors, cached):
            gap = _projector_gap(np_, dp, no, do)
            if gap * eps.denominator >= eps.numerator * dp * do:
                within = False
                break
        if not within:
            t = t / 4
            continue
        if linalg.rank(linalg.stack_all(raw)) < base_rank:
            return "stratum dropped under a perturbation of size < eps"
        return None
    return "could not build a perturbation inside the bound"


def check_adjacency(
    c: Configuration,
    target_i: int,
    eps: Fraction,
    trials: int = 0,
    seed: SeedLike = 0,
) -> VerificationReport:
    """Exact witness in the target stratum within eps of c, plus the
    semicontinuity counterpart: perturbations of size < eps are recorded
    as failures whenever they lower the stratum."""
    j0 = grassmann.stratum_of(c)
    if not j0 <= target_i <= min(c.h * c.k, c.n):
        raise UnreachableError(
            f"target {target_i} is not reachable from stratum {j0}"
        )
    if eps <= 0:
        raise ValueError("eps must be positive")
    report = VerificationReport(
        suite="adjacency",
        parameters={
            "h": c.h, "k": c.k, "n": c.n, "from": j0, "target_i": target_i,
            "eps": str(eps), "trials": trials, "seed": str(seed),
        },
    )
    report.record(f"{seed}:witness", _adjacency_witness(c, target_i, eps))
    cached = [_integer_projector(p.basis) for p in c.points]
    for idx in range(trials):
        case_seed = f"{seed}:{idx}"
        desc = _semicontinuity_trial(
            c, j0, cached, eps, random.Random(f"adjacency:{case_seed}")
        )
        report.record(case_seed, desc)
    return report


# ---------------------------------------------------------------------------
# round-trip suites for the three fibrations


DEFAULT_GRIDS = {
    "gamma": {"h": 2, "i": 3, "k": 2, "n": 5},
    "pr": {"h": 3, "k": 2, "n": 6},
    "eta": {"h": 2, "i": 3, "k": 2, "n": 4},
}


def _expand_grid(grid: dict) -> list[dict]:
    keys = sorted(grid)
    combos: list[dict] = [{}]
    for key in keys:
        value = grid[key]
        values = list(value) if isinstance(value, (list, tuple, range)) else [value]
        combos = [dict(c, **{key: v}) for c in combos for v in values]
    return combos


def _random_chart(dim: int, over: Subspace, seed_tag: str) -> Optional[Trivialization]:
    """A trivialization with seeded random base point AND complement whose
    chart contains ``over``.  Randomizing the complement matters: the
    deterministic one is constant across generic base points, so a sample
    touching it would never find a chart by resampling the base alone."""
    n = over.n
    for attempt in range(64):
        v0 = grassmann.sample_subspace(dim, n, f"{seed_tag}:base:{attempt}")
        l0 = grassmann.sample_subspace(n - dim, n, f"{seed_tag}:comp:{attempt}")
        if linalg.rank(v0.basis.stack(l0.basis)) != n:
            continue
        if linalg.rank(over.basis.stack(l0.basis)) != n:
            continue
        return Trivialization.over(v0, l0)
    return None


def _gamma_case(params: dict, case_seed: str) -> Optional[str]:
    h, i, k, n = params["h"], params["i"], params["k"], params["n"]
    c = grassmann.sample_configuration(StratumId(h, i, k, n), case_seed)
    total = grassmann.subspace_sum(c.points)
    triv = _random_chart(i, total, case_seed)
    if triv is None:
        return "no chart found containing the sample"
    point = fibrations.gamma_trivialize(c, triv)
    if point.base != total:
        return "base component differs from the subspace sum"
    fiber = point.fiber
    if grassmann.subspace_sum(fiber.points) != triv.base_point:
        return "fiber does not span the chart base point"
    if grassmann.stratum_of(fiber) != i:
        return "fiber stratum index changed"
    back = fibrations.gamma_untrivialize(point, triv)
    if back != c:
        return "round trip failed (untrivialize o trivialize)"
    again = fibrations.gamma_trivialize(back, triv)
    if again != point:
        return "round trip failed (trivialize o untrivialize)"
    return None


def _pr_case(params: dict, case_seed: str) -> Optional[str]:
    h, k, n = params["h"], params["k"], params["n"]
    c = grassmann.sample_configuration(StratumId(h, h * k, k, n), case_seed)
    front = fibrations.pr_forget_last(c)
    front_sum = grassmann.subspace_sum(front.points)
    triv = None
    for attempt in range(64):
        base_cfg = grassmann.sample_configuration(
            StratumId(h - 1, (h - 1) * k, k, n), f"{case_seed}:cfg:{attempt}"
        )
        v0 = grassmann.subspace_sum(base_cfg.points)
        l0 = grassmann.sample_subspace(n - v0.k, n, f"{case_seed}:comp:{attempt}")
        if linalg.rank(v0.basis.stack(l0.basis)) != n:
            continue
        if linalg.rank(front_sum.basis.stack(l0.basis)) != n:
            continue
        triv = Trivialization.over(v0, l0)
        break
    if triv is None:
        return "no chart found containing the sample"
    point = fibrations.pr_trivialize(c, triv)
    if point.base != front:
        return "base component differs from the forgotten-last projection"
    if grassmann.stratum_of(point.base) != (h - 1) * k:
        return "base stratum index is wrong"
    if isinstance(point.fiber, Matrix):
        if n != h * k:
            return "chart coordinates returned although n > hk"
        image = fibrations.chart_point(point.fiber, triv.base_point)
        if linalg.rank(image.basis.stack(triv.base_point.basis)) != n:
            return "fiber is not complementary to the chart base point"
    else:
        image = point.fiber
        if grassmann.intersection_dim(image, triv.base_point) != 0:
            return "fiber image meets the chart base point"
    back = fibrations.pr_untrivialize(point, triv)
    if back != c:
        return "round trip failed (untrivialize o trivialize)"
    again = fibrations.pr_trivialize(back, triv)
    if again != point:
        return "round trip failed (trivialize o untrivialize)"
    return None


def _eta_case(params: dict, case_seed: str) -> Optional[str]:
    k, i, n = params["k"], params["i"], params["n"]
    c = grassmann.sample_configuration(StratumId(2, i, k, n), case_seed)
    inter = fibrations.eta(c)
    if inter.k != 2 * k - i:
        return "intersection dimension differs from 2k - i"
    triv = _random_chart(2 * k - i, inter, case_seed)
    if triv is None:
        return "no chart found containing the sample"
    point = fibrations.eta_fiber_point(c, triv)
    if point.base != inter:
        return "base component differs from the intersection"
    first, second = point.fiber
    if first.k != i - k or second.k != i - k:
        return "quotient images have the wrong dimension"
    if not (triv.complement.contains(first) and triv.complement.contains(second)):
        return "quotient images do not lie in the chart complement"
    if grassmann.intersection_dim(first, second) != 0:
        return "quotient images are not in direct sum"
    if grassmann.subspace_sum([first, second]).k != 2 * (i - k):
        return "quotient pair is not in the direct-sum stratum"
    back = fibrations.eta_fiber_lift(point, triv)
    if back != c:
        return "round trip failed (lift o fiber point)"
    again = fibrations.eta_fiber_point(back, triv)
    if again != point:
        return "round trip failed (fiber point o lift)"
    return None


_SUITE_CASES: dict[str, Callable[[dict, str], Optional[str]]] = {
    "gamma": _gamma_case,
    "pr": _pr_case,
    "eta": _eta_case,
}


def run_roundtrip_suite(
    which: str,
    grid: Optional[dict] = None,
    cases: int = 100,
    seed: SeedLike = 0,
) -> VerificationReport:
    """Exercise one fibration's trivialization on seeded samples.

    ``grid`` maps parameter names to a value or list of values; cases
    cycle through the combinations.  Failures are recorded in the report,
    never raised.
    """
    if which not in _SUITE_CASES:
        raise ValueError(f"unknown suite {which!r}; pick gamma, pr, or eta")
    grid = grid or DEFAULT_GRIDS[which]
    missing = set(DEFAULT_GRIDS[which]) - set(grid)
    if missing:
        raise ValueError(f"grid for {which} is missing {sorted(missing)}")
    combos = _expand_grid(grid)
    if not combos:
        raise ValueError("empty parameter grid")
    case_fn = _SUITE_CASES[which]
    grid_json = {
        key: list(value) if isinstance(value, (list, tuple, range)) else value
        for key, value in grid.items()
    }
    report = VerificationReport(
        suite=which,
        parameters={"grid": grid_json, "cases": cases, "seed": str(seed)},
    )
    for idx in range(cases):
        params = combos[idx % len(combos)]
        case_seed = f"{seed}:{idx}"
        try:
            desc = case_fn(params, case_seed)
        except GrassconfError as exc:
            desc = f"{type(exc).__name__}: {exc}"
        report.record(case_seed, desc)
    return report
