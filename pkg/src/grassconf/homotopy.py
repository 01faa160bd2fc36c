"""Symbolic homotopy groups of Stiefel manifolds, Grassmannians, and
sum-dimension configuration strata.

Groups are carried up to isomorphism as normal-form expressions:

>>> print(product(free_abelian(2), free_abelian(1)))
Z^3
>>> print(config_pi2(StratumId(h=3, i=6, k=2, n=6)))
Z^2

The derivation engine rewrites a query pi_j(F_h^i(k,n)) along the three
fibrations (sum, forget-last, intersection) down to Grassmannian base
cases, recording each rule application so the trace replays to the
answer.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EmptyStratumError, OutOfRangeError, OutOfScopeError
from .grassmann import StratumId, is_stratum_nonempty

PI2_UNCOVERED = "pi_2 has no computed value for h >= 3 with k < i < hk"
PI1_LINE_CASE = "pi_1 of line configurations (k = 1) is outside these tables"


class GroupExpr:
    """Base class of the symbolic group expressions."""

    def render(self) -> str:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class Zero(GroupExpr):
    def render(self) -> str:
        return "0"

    def to_json(self) -> dict:
        return {"variant": "Zero"}


@dataclass(frozen=True)
class FreeAbelian(GroupExpr):
    rank: int

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise ValueError("use free_abelian(); rank 0 normalizes to Zero")

    def render(self) -> str:
        return "Z" if self.rank == 1 else f"Z^{self.rank}"

    def to_json(self) -> dict:
        return {"variant": "FreeAbelian", "rank": self.rank}


@dataclass(frozen=True)
class PureSphereBraid(GroupExpr):
    """Opaque atom: the pure braid group on ``strands`` strings of the
    2-sphere.  No presentation is carried."""

    strands: int

    def render(self) -> str:
        return f"PB_{self.strands}(S^2)"

    def to_json(self) -> dict:
        return {"variant": "PureSphereBraid", "strands": self.strands}


@dataclass(frozen=True)
class Symmetric(GroupExpr):
    """Opaque atom: the symmetric group on ``degree`` letters."""

    degree: int

    def render(self) -> str:
        return f"Sigma_{self.degree}"

    def to_json(self) -> dict:
        return {"variant": "Symmetric", "degree": self.degree}


@dataclass(frozen=True)
class Product(GroupExpr):
    """Direct product in normal form; build through product()."""

    factors: tuple[GroupExpr, ...]

    def render(self) -> str:
        return " x ".join(f.render() for f in self.factors)

    def to_json(self) -> dict:
        return {"variant": "Product", "factors": [f.to_json() for f in self.factors]}


@dataclass(frozen=True)
class Unknown(GroupExpr):
    reason: str

    def render(self) -> str:
        return f"Unknown({self.reason})"

    def to_json(self) -> dict:
        return {"variant": "Unknown", "reason": self.reason}


@dataclass(frozen=True)
class PiQuery(GroupExpr):
    """A pending homotopy-group query, used inside derivation traces."""

    degree: int
    h: int
    i: int
    k: int
    n: int

    def render(self) -> str:
        return f"pi_{self.degree}(F_{self.h}^{self.i}({self.k},{self.n}))"

    def to_json(self) -> dict:
        return {
            "variant": "PiQuery",
            "degree": self.degree,
            "h": self.h, "i": self.i, "k": self.k, "n": self.n,
        }


TRIVIAL = Zero()
Z = FreeAbelian(1)


def free_abelian(rank: int) -> GroupExpr:
    """Z^rank, with rank 0 normalized to the trivial group."""
    if rank < 0:
        raise ValueError("rank must be nonnegative")
    return TRIVIAL if rank == 0 else FreeAbelian(rank)


def _sort_key(expr: GroupExpr) -> tuple:
    if isinstance(expr, FreeAbelian):
        return (0, expr.rank)
    if isinstance(expr, PureSphereBraid):
        return (1, expr.strands)
    if isinstance(expr, Symmetric):
        return (2, expr.degree)
    if isinstance(expr, PiQuery):
        return (3, expr.degree, expr.h, expr.i, expr.k, expr.n)
    raise TypeError(f"unexpected factor {expr!r}")


def product(*factors: GroupExpr) -> GroupExpr:
    """Normal-form direct product.

    Products flatten, trivial factors disappear, free-abelian ranks add,
    an Unknown factor absorbs the whole product, and the remaining
    factors are sorted into a stable order, so equal groups compare equal.
    """
    flat: list[GroupExpr] = []
    stack = list(factors)
    while stack:
        f = stack.pop(0)
        if isinstance(f, Product):
            stack = list(f.factors) + stack
        elif isinstance(f, Zero):
            continue
        else:
            flat.append(f)
    for f in flat:
        if isinstance(f, Unknown):
            return f
    rank = sum(f.rank for f in flat if isinstance(f, FreeAbelian))
    rest = [f for f in flat if not isinstance(f, FreeAbelian)]
    out: list[GroupExpr] = ([FreeAbelian(rank)] if rank else []) + sorted(rest, key=_sort_key)
    if not out:
        return TRIVIAL
    if len(out) == 1:
        return out[0]
    return Product(tuple(out))


def group_from_json(data: dict) -> GroupExpr:
    variant = data["variant"]
    if variant == "Zero":
        return TRIVIAL
    if variant == "FreeAbelian":
        return FreeAbelian(int(data["rank"]))
    if variant == "PureSphereBraid":
        return PureSphereBraid(int(data["strands"]))
    if variant == "Symmetric":
        return Symmetric(int(data["degree"]))
    if variant == "Product":
        return Product(tuple(group_from_json(f) for f in data["factors"]))
    if variant == "Unknown":
        return Unknown(str(data["reason"]))
    if variant == "PiQuery":
        return PiQuery(int(data["degree"]), int(data["h"]), int(data["i"]),
                       int(data["k"]), int(data["n"]))
    raise ValueError(f"unknown variant {variant!r}")


# ---------------------------------------------------------------------------
# closed-form tables


def _check_degree(j: int) -> None:
    if j not in (1, 2, 3):
        raise OutOfRangeError(f"pi_{j} is outside the computed range (1 <= j <= 3)")


def stiefel_pi(j: int, k: int, n: int) -> GroupExpr:
    """pi_j of the complex Stiefel manifold V_{k,n}, for j <= 3.

    V_{n,n} = U(n) and V_{1,n} = S^{2n-1}; removing the last vector
    identifies pi_j(V_{k,n}) with pi_j of an odd sphere when k < n.
    """
    _check_degree(j)
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if k == n:
        if n == 1:
            return Z if j == 1 else TRIVIAL
        return {1: Z, 2: TRIVIAL, 3: Z}[j]
    sphere_dim = 2 * (n - k) + 1
    if j == 3 and sphere_dim == 3:
        return Z
    return TRIVIAL


def grassmann_pi(j: int, k: int, n: int) -> GroupExpr:
    """pi_j of Gr(k,n) for j <= 3: simply connected, pi_2 = Z, and pi_3
    trivial except for the sphere Gr(1,2)."""
    _check_degree(j)
    if not 0 < k < n:
        raise ValueError(f"need 0 < k < n, got k={k}, n={n}")
    if j == 1:
        return TRIVIAL
    if j == 2:
        return Z
    return Z if (k, n) == (1, 2) else TRIVIAL


def _require_nonempty(s: StratumId) -> None:
    if not is_stratum_nonempty(s):
        raise EmptyStratumError(f"{s} is empty")


def config_pi1(s: StratumId) -> GroupExpr:
    """Fundamental group of the stratum.

    Zero for k > 1 on every nonempty stratum.  For k = 1 only the open
    stratum is tabulated: the sphere braid group when n = 2, zero when
    n differs from hk, Unknown otherwise.
    """
    _require_nonempty(s)
    if s.h == 1:
        return TRIVIAL
    if s.k > 1:
        return TRIVIAL
    if s.n == 2:
        return PureSphereBraid(s.h)
    if s.i == min(s.n, s.h) and s.n != s.h:
        return TRIVIAL
    return Unknown(PI1_LINE_CASE)


def config_unordered_pi1(s: StratumId) -> GroupExpr:
    """Fundamental group of the unordered quotient: the symmetric group,
    reported as an opaque atom (k > 1 only)."""
    _require_nonempty(s)
    if s.k == 1:
        raise OutOfScopeError("unordered line configurations (k = 1) are out of scope")
    return Symmetric(s.h)


def config_pi2(s: StratumId) -> GroupExpr:
    """Second homotopy group of the stratum, k > 1.

    Direct-sum strata (i = hk) give Z^{h-1} when n = hk and Z^h when
    n > hk; pairs (h = 2) with i < 2k give Z^2 when i = n and Z^3 when
    i < n.  Everything else is a typed Unknown.
    """
    _require_nonempty(s)
    if s.k == 1:
        raise OutOfScopeError("pi_2 for line configurations (k = 1) is out of scope")
    if s.i == s.h * s.k:
        return free_abelian(s.h - 1) if s.n == s.i else free_abelian(s.h)
    if s.h == 2:
        return free_abelian(2) if s.i == s.n else free_abelian(3)
    return Unknown(PI2_UNCOVERED)


# ---------------------------------------------------------------------------
# derivation engine


@dataclass(frozen=True)
class DerivationStep:
    rule: str
    statement: str
    before: GroupExpr
    after: GroupExpr

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "statement": self.statement,
            "before": self.before.render(),
            "after": self.after.render(),
        }


@dataclass(frozen=True)
class DerivationTrace:
    initial: GroupExpr
    steps: tuple[DerivationStep, ...]
    result: GroupExpr

    def replay(self) -> GroupExpr:
        """Re-run the recorded rewrites; raises if any step fails to chain."""
        current = self.initial
        for step in self.steps:
            if step.before != current:
                raise ValueError(
                    f"trace does not replay: expected {current.render()}, "
                    f"step starts from {step.before.render()}"
                )
            current = step.after
        if current != self.result:
            raise ValueError("trace does not replay to the recorded result")
        return current

    def render_lines(self) -> list[str]:
        lines = [f"query: {self.initial.render()}"]
        for idx, step in enumerate(self.steps, start=1):
            lines.append(f"step {idx} [{step.rule}]: {step.before.render()} -> {step.after.render()}")
            lines.append(f"        {step.statement}")
        lines.append(f"answer: {self.result.render()}")
        return lines

    def to_json(self) -> dict:
        return {
            "initial": self.initial.render(),
            "steps": [s.to_json() for s in self.steps],
            "result": self.result.render(),
        }


def _find_query(expr: GroupExpr) -> PiQuery | None:
    if isinstance(expr, PiQuery):
        return expr
    if isinstance(expr, Product):
        for f in expr.factors:
            if isinstance(f, PiQuery):
                return f
    return None


def _substitute(expr: GroupExpr, query: PiQuery, replacement: GroupExpr) -> GroupExpr:
    if expr == query:
        return product(replacement)
    if isinstance(expr, Product):
        return product(*(replacement if f == query else f for f in expr.factors))
    raise ValueError("query not found in expression")


RULE_SINGLE = (
    "single-subspace-base",
    "a configuration of one subspace is a point of Gr(k,n); its homotopy is the Grassmannian's",
)
RULE_OPEN = (
    "open-stratum-base",
    "the open stratum with n != hk is simply connected",
)
RULE_BRAID = (
    "sphere-braid-base",
    "h distinct points of Gr(1,2) = S^2: pi_1 is the pure braid group of the sphere on h strands",
)
RULE_LINE = (
    "line-case-out-of-range",
    "k = 1 strata below the open one are not tabulated here",
)
RULE_GAMMA_PI1 = (
    "gamma-reduction",
    "pi_1 surjects from the fiber of the sum fibration over the simply connected Gr(i,n); "
    "the fiber is the same stratum inside the i-plane",
)
RULE_PR = (
    "pr-equality",
    "forgetting the last subspace of a direct-sum configuration in C^{hk} is a fibration "
    "with fiber a chart C^{k(hk-k)}, so pi_j is unchanged",
)
RULE_GAMMA_SPLIT = (
    "gamma-split",
    "the sum fibration over Gr(i,n) splits on pi_2 when i < n: "
    "pi_2(total) = pi_2(fiber inside the i-plane) x Z",
)
RULE_ETA_SPLIT = (
    "eta-split",
    "the intersection fibration over Gr(2k-i,n) splits on pi_2: "
    "pi_2(total) = Z x pi_2(direct-sum pairs of (i-k)-planes in the quotient)",
)
RULE_UNCOVERED = (
    "uncovered-pi2",
    "no computed value covers h >= 3 with k < i < hk",
)


def _pi1_rule(q: PiQuery) -> tuple[str, str, GroupExpr]:
    h, i, k, n = q.h, q.i, q.k, q.n
    if h == 1:
        return (*RULE_SINGLE, grassmann_pi(1, k, n))
    if k == 1:
        if n == 2:
            return (*RULE_BRAID, PureSphereBraid(h))
        if i == min(n, h) and n != h:
            return (*RULE_OPEN, TRIVIAL)
        return (*RULE_LINE, Unknown(PI1_LINE_CASE))
    if i == min(n, h * k) and n != h * k:
        return (*RULE_OPEN, TRIVIAL)
    if i == h * k and i == n:
        return (*RULE_PR, PiQuery(1, h - 1, k * (h - 1), k, n))
    return (*RULE_GAMMA_PI1, PiQuery(1, h, i, k, i))


def _pi2_rule(q: PiQuery) -> tuple[str, str, GroupExpr]:
    h, i, k, n = q.h, q.i, q.k, q.n
    if h == 1:
        return (*RULE_SINGLE, grassmann_pi(2, k, n))
    if i < n:
        return (*RULE_GAMMA_SPLIT, product(Z, PiQuery(2, h, i, k, i)))
    if i == h * k:
        return (*RULE_PR, PiQuery(2, h - 1, k * (h - 1), k, n))
    if h == 2 and i < 2 * k:
        m = i - k
        return (*RULE_ETA_SPLIT, product(Z, PiQuery(2, 2, 2 * m, m, n - 2 * k + i)))
    return (*RULE_UNCOVERED, Unknown(PI2_UNCOVERED))


def derive(s: StratumId, j: int) -> tuple[GroupExpr, DerivationTrace]:
    """Compute pi_j of the stratum by rewriting, with a replayable trace.

    Only j = 1 and j = 2 are derivable for configuration strata; for
    j = 2 the k = 1 case is out of scope, matching config_pi2.
    """
    if j not in (1, 2):
        raise OutOfRangeError(f"pi_{j} of configuration strata is outside the computed range")
    _require_nonempty(s)
    if j == 2 and s.k == 1:
        raise OutOfScopeError("pi_2 for line configurations (k = 1) is out of scope")
    initial = PiQuery(j, s.h, s.i, s.k, s.n)
    rule_of = _pi1_rule if j == 1 else _pi2_rule
    current: GroupExpr = initial
    steps: list[DerivationStep] = []
    for _ in range(200):
        query = _find_query(current)
        if query is None:
            break
        name, statement, replacement = rule_of(query)
        after = _substitute(current, query, replacement)
        steps.append(DerivationStep(name, statement, current, after))
        current = after
    else:
        raise RuntimeError("derivation did not terminate")
    trace = DerivationTrace(initial, tuple(steps), current)
    return current, trace
