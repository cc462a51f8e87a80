"""Grid verification of the inequality corollaries of the two families.

Each check evaluates its clauses as signed margins (lhs - rhs for a
claim lhs <= rhs) over a dense grid: uniform points, geometrically
spaced points near both endpoints (where the binding cases live), and
the exact midpoint 1/2 (where several bounds are tight).  Strictness is
certified as "violation no worse than -1e-12 slack"; floating point
cannot certify strictness at an equality point itself, so strict gaps
are confirmed only away from the recorded equality points.

Reports are independent and deterministic; random-pair checks take an
explicit seed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable

from . import family
from .certify import DEFAULT_SCAN, ScanConfig, find_x_p
from .specfun import (
    GAMMA_QUARTER,
    GAMMA_THREE_QUARTER,
    PI,
    DomainError,
    ellip_k,
)

# A clause is violated only beyond this; |margin| <= EQUALITY_TOL marks
# an equality point.  Nearby equality points cluster within CLUSTER_TOL.
VIOLATION_TOL = 1e-12
EQUALITY_TOL = 1e-9
CLUSTER_TOL = 1e-6

SQRT2 = math.sqrt(2.0)

_GEOMETRIC_POINTS = 20


@dataclass(frozen=True)
class InequalityReport:
    """Outcome of one inequality check.

    clause_margins holds, per clause, the maximum of (lhs - rhs) over
    the grid for a claim lhs <= rhs, so a pass shows values <= ~0.
    equality_points lists grid locations (clustered) where a tight
    clause is an equality to within EQUALITY_TOL.  verdict is "fail"
    iff some clause exceeds VIOLATION_TOL, in which case the witness
    fields identify the first offending point.
    """

    name: str
    param: float | None
    grid_n: int
    clause_margins: dict[str, float]
    equality_points: list[float]
    verdict: str
    witness_x: float | None = None
    witness_value: float | None = None
    witness_clause: str | None = None
    x_p: float | None = None


def inequality_grid(cfg: ScanConfig = DEFAULT_SCAN, *, hi: float | None = None) -> list[float]:
    """Uniform grid plus geometric endpoint tails plus the exact midpoint."""
    lo_v = cfg.lo + cfg.endpoint_offset
    hi_v = (hi if hi is not None else cfg.hi) - cfg.endpoint_offset
    if not lo_v < hi_v:
        raise ValueError("empty grid interval")
    step = (hi_v - lo_v) / (cfg.n - 1)
    pts = {min(lo_v + i * step, hi_v) for i in range(cfg.n)}
    pts.add(hi_v)
    # geometric tails from each endpoint up to one uniform step inward
    for base, inward in ((lo_v, +1.0), (hi_v, -1.0)):
        span = step / cfg.endpoint_offset
        if span > 1.0:
            ratio = span ** (1.0 / (_GEOMETRIC_POINTS + 1))
            d = cfg.endpoint_offset
            for _ in range(_GEOMETRIC_POINTS):
                d *= ratio
                pts.add(base + inward * d)
    if lo_v < 0.5 < hi_v:
        pts.add(0.5)
    return sorted(pts)


def _cluster(points: list[tuple[int, float, float]]) -> list[float]:
    """One representative per contiguous run of equality hits.

    Near a tight point the margin is quadratically flat, so a whole band
    of grid points can sit inside EQUALITY_TOL; a run of consecutive
    grid indices (or points within CLUSTER_TOL) collapses to its
    tightest member.
    """
    out: list[float] = []
    best: tuple[float, float] | None = None
    prev_i: int | None = None
    for i, x, m in sorted(points):
        contiguous = (prev_i is not None
                      and (i - prev_i <= 1 or (best is not None and x - best[0] <= CLUSTER_TOL)))
        if best is not None and not contiguous:
            out.append(best[0])
            best = None
        if best is None or abs(m) < abs(best[1]):
            best = (x, m)
        prev_i = i
    if best is not None:
        out.append(best[0])
    return out


def _run(name: str,
         param: float | None,
         xs: list[float],
         clauses: dict[str, Callable[[float], float]],
         tight: tuple[str, ...],
         x_p: float | None = None) -> InequalityReport:
    margins = {cl: -math.inf for cl in clauses}
    eq_hits: list[tuple[int, float, float]] = []
    witness = None
    for i, x in enumerate(xs):
        for cl, fnc in clauses.items():
            m = fnc(x)
            if m > margins[cl]:
                margins[cl] = m
            if witness is None and m > VIOLATION_TOL:
                witness = (x, m, cl)
            if cl in tight and abs(m) <= EQUALITY_TOL:
                eq_hits.append((i, x, m))
    return InequalityReport(
        name=name,
        param=param,
        grid_n=len(xs),
        clause_margins=margins,
        equality_points=_cluster(eq_hits),
        verdict="fail" if witness else "pass",
        witness_x=witness[0] if witness else None,
        witness_value=witness[1] if witness else None,
        witness_clause=witness[2] if witness else None,
        x_p=x_p,
    )


def check_sum_bounds(a: float, cfg: ScanConfig = DEFAULT_SCAN) -> InequalityReport:
    """4K(1/2)/(2a+log 2) <= f(a,r) + f(a,1-r) < 1 + pi/(2a) on (0,1).

    The bounds are claimed for a at or above the computed sharp constant;
    the lower bound is tight exactly at r = 1/2, the upper is approached
    (at a logarithmic rate) as r -> 0 or 1.  Called with smaller a the
    check runs anyway and reports the failure witness.
    """
    lower = 4.0 * ellip_k(0.5) / (2.0 * a + math.log(2.0))
    upper = 1.0 + PI / (2.0 * a)

    def total(r: float) -> float:
        return family.f(a, r) + family.f(a, 1.0 - r)

    xs = inequality_grid(cfg)
    return _run("sum-bounds", a, xs,
                {"lower": lambda r: lower - total(r),
                 "upper": lambda r: total(r) - upper},
                tight=("lower",))


def check_weighted_sum(p: float, cfg: ScanConfig = DEFAULT_SCAN) -> InequalityReport:
    """K(1/2)/2^(p-1) <= h(p,r) + h(p,1-r) < pi/2 for p >= 3(2+sqrt2)/8.

    For p in the concavity window [3(2-sqrt2)/8, 1] both bounds reverse.
    Midpoint equality at r = 1/2 in both regimes.
    """
    mid_bound = ellip_k(0.5) / 2.0 ** (p - 1.0)

    def total(r: float) -> float:
        return family.h(p, r) + family.h(p, 1.0 - r)

    if p >= family.P_CONVEX_HI:
        clauses = {"lower": lambda r: mid_bound - total(r),
                   "upper": lambda r: total(r) - PI / 2}
    elif family.P_CONCAVE_LO <= p <= 1.0:
        clauses = {"lower": lambda r: PI / 2 - total(r),
                   "upper": lambda r: total(r) - mid_bound}
    else:
        raise DomainError(
            f"weighted-sum bounds are claimed only for p >= {family.P_CONVEX_HI!r} "
            f"or p in [{family.P_CONCAVE_LO!r}, 1]; got p={p!r}")

    xs = inequality_grid(cfg)
    tight = ("lower",) if p >= family.P_CONVEX_HI else ("upper",)
    return _run("weighted-sum", p, xs, clauses, tight=tight)


def check_product_pair(p: float, cfg: ScanConfig = DEFAULT_SCAN) -> InequalityReport:
    """Product-side bounds of the power family.

    sum_lower (p >= 0):  2^(1+p) K(1/2) (r-r^2)^p <= r^p K(r) + (1-r)^p K(1-r)
    geo_upper (p >= 7/32): sqrt((r-r^2)^p K(r) K(1-r)) <= K(1/2) / 2^p
    Equality at r = 1/2 for both.
    """
    if p < 0.0:
        raise DomainError(f"product-pair bounds need p >= 0; got p={p!r}")
    k_half = ellip_k(0.5)

    def sum_lower(r: float) -> float:
        rhs = r ** p * ellip_k(r) + (1.0 - r) ** p * ellip_k(1.0 - r)
        return 2.0 ** (1.0 + p) * k_half * (r - r * r) ** p - rhs

    clauses: dict[str, Callable[[float], float]] = {"sum_lower": sum_lower}
    tight = ["sum_lower"]
    if p >= family.P_LOGCONCAVE:
        def geo_upper(r: float) -> float:
            lhs = math.sqrt((r - r * r) ** p * ellip_k(r) * ellip_k(1.0 - r))
            return lhs - k_half / 2.0 ** p
        clauses["geo_upper"] = geo_upper
        tight.append("geo_upper")

    xs = inequality_grid(cfg)
    return _run("product-pair", p, xs, clauses, tight=tuple(tight))


def _mean_chain_clauses(p: float) -> dict[str, Callable[[tuple[float, float]], float]]:
    """Clauses of the mean-value chain for h(p, .), keyed by regime.

    geometric   (p >= 7/32):          sqrt(h(x)h(y)) <= h((x+y)/2)
    midpoint    (p in [p_lo, 1]):     (h(x)+h(y))/2  <= h((x+y)/2)
    geo_argument(p >= 1/4):           h((x+y)/2)     <= h(sqrt(xy))
    All are equalities iff x = y.
    """
    clauses: dict[str, Callable[[tuple[float, float]], float]] = {}
    if p >= family.P_LOGCONCAVE:
        def geometric(pair: tuple[float, float]) -> float:
            x, y = pair
            return (math.sqrt(family.h(p, x) * family.h(p, y))
                    - family.h(p, 0.5 * (x + y)))
        clauses["geometric"] = geometric
    if family.P_CONCAVE_LO <= p <= 1.0:
        def midpoint(pair: tuple[float, float]) -> float:
            x, y = pair
            return (0.5 * (family.h(p, x) + family.h(p, y))
                    - family.h(p, 0.5 * (x + y)))
        clauses["midpoint"] = midpoint
    if p >= family.P_MONOTONE:
        def geo_argument(pair: tuple[float, float]) -> float:
            x, y = pair
            return family.h(p, 0.5 * (x + y)) - family.h(p, math.sqrt(x * y))
        clauses["geo_argument"] = geo_argument
    if not clauses:
        raise DomainError(f"no mean-chain clause applies at p={p!r}")
    return clauses


def check_mean_chain(p: float, x: float, y: float) -> InequalityReport:
    """All mean-chain clauses applicable at p, for one pair (x, y)."""
    clauses = _mean_chain_clauses(p)
    margins = {}
    witness = None
    eq_hits: list[tuple[int, float, float]] = []
    for cl, fnc in clauses.items():
        m = fnc((x, y))
        margins[cl] = m
        if witness is None and m > VIOLATION_TOL:
            witness = (x, m, cl)
        if abs(m) <= EQUALITY_TOL:
            eq_hits.append((0, x, m))
    return InequalityReport(
        name="mean-chain", param=p, grid_n=1,
        clause_margins=margins,
        equality_points=_cluster(eq_hits),
        verdict="fail" if witness else "pass",
        witness_x=witness[0] if witness else None,
        witness_value=witness[1] if witness else None,
        witness_clause=witness[2] if witness else None,
    )


def check_mean_chain_pairs(p: float, n_pairs: int = 1000, seed: int = 0,
                           cfg: ScanConfig = DEFAULT_SCAN) -> InequalityReport:
    """Mean-chain clauses over seeded random pairs in the scan interval."""
    clauses = _mean_chain_clauses(p)
    rng = random.Random(seed)
    lo = cfg.lo + cfg.endpoint_offset
    hi = cfg.hi - cfg.endpoint_offset
    margins = {cl: -math.inf for cl in clauses}
    witness = None
    for _ in range(n_pairs):
        pair = (rng.uniform(lo, hi), rng.uniform(lo, hi))
        for cl, fnc in clauses.items():
            m = fnc(pair)
            if m > margins[cl]:
                margins[cl] = m
            if witness is None and m > VIOLATION_TOL:
                witness = (pair[0], m, cl)
    return InequalityReport(
        name="mean-chain", param=p, grid_n=n_pairs,
        clause_margins=margins,
        equality_points=[],
        verdict="fail" if witness else "pass",
        witness_x=witness[0] if witness else None,
        witness_value=witness[1] if witness else None,
        witness_clause=witness[2] if witness else None,
    )


def check_k_envelope(p: float, cfg: ScanConfig = DEFAULT_SCAN) -> InequalityReport:
    """Power-law envelopes of K.

    p >= 1/4:    (pi/2)(1-r)^p < K(r) < (pi/2)/(1-r)^p on (0,1).
    0 < p < 1/4: (pi/2)/(1-r)^p < K(r) < (1-x_p)^p K(x_p)/(1-r)^p on
                 (0, x_p), with x_p located by certify.find_x_p.
    """
    if p <= 0.0:
        raise DomainError(f"k-envelope needs p > 0; got p={p!r}")
    if p >= family.P_MONOTONE:
        xs = inequality_grid(cfg)
        return _run("k-envelope", p, xs,
                    {"lower": lambda r: (PI / 2) * (1.0 - r) ** p - ellip_k(r),
                     "upper": lambda r: ellip_k(r) - (PI / 2) / (1.0 - r) ** p},
                    tight=())
    x_p = find_x_p(p)
    cap = (1.0 - x_p) ** p * ellip_k(x_p)
    xs = inequality_grid(cfg, hi=x_p)
    return _run("k-envelope", p, xs,
                {"lower": lambda r: (PI / 2) / (1.0 - r) ** p - ellip_k(r),
                 "upper": lambda r: ellip_k(r) - cap / (1.0 - r) ** p},
                tight=(), x_p=x_p)


def check_gamma_constant_identities(grid_n: int = 1000) -> InequalityReport:
    """Consistency of the elliptic kernel with the embedded Gamma constants.

    Checks K(1/2) = pi^(3/2) / (2 Gamma(3/4)^2) and
    K(1/2)^2 = Gamma(1/4)^4 / (16 pi) to 1e-12 relative,
    Gamma(1/4) Gamma(3/4) = pi sqrt(2) to 1e-13, and the p = 1/4
    product/sum chain against alpha = Gamma(1/4)^4 / (2^(2+2p) pi)
    on a grid.
    """
    k_half = ellip_k(0.5)
    closed = PI * math.sqrt(PI) / (2.0 * GAMMA_THREE_QUARTER ** 2)
    sq = GAMMA_QUARTER ** 4 / (16.0 * PI)
    refl = GAMMA_QUARTER * GAMMA_THREE_QUARTER - PI * SQRT2

    margins = {
        "k_half_closed_form": abs(k_half - closed) / closed - 1e-12,
        "k_half_squared": abs(k_half * k_half - sq) / sq - 1e-12,
        "gamma_reflection": abs(refl) - 1e-13,
    }

    p = 0.25
    alpha = GAMMA_QUARTER ** 4 / (2.0 ** (2.0 + 2.0 * p) * PI)
    worst_lo = -math.inf
    worst_hi = -math.inf
    worst_outer = -math.inf
    lo, hi = 1e-6, 1.0 - 1e-6
    xs = [lo + i * (hi - lo) / (grid_n - 1) for i in range(grid_n)]
    xs.append(0.5)
    for r in xs:
        s = (1.0 - r) ** p * ellip_k(r) + r ** p * ellip_k(1.0 - r)
        worst_lo = max(worst_lo,
                       4.0 * ellip_k(r) * ellip_k(1.0 - r) * (r - r * r) ** p - s * s)
        worst_hi = max(worst_hi, s * s - alpha)
        g = math.sqrt(r - r * r)
        worst_outer = max(worst_outer,
                          alpha - 4.0 * (1.0 - g) ** (2.0 * p) * ellip_k(g) ** 2)
    margins["chain_product_le_sum_sq"] = worst_lo
    margins["chain_sum_sq_le_alpha"] = worst_hi
    margins["chain_alpha_le_outer"] = worst_outer

    bad = [(cl, m) for cl, m in margins.items() if m > VIOLATION_TOL]
    return InequalityReport(
        name="gamma-constants", param=None, grid_n=grid_n,
        clause_margins=margins,
        equality_points=[0.5],
        verdict="fail" if bad else "pass",
        witness_x=None if not bad else 0.5,
        witness_value=None if not bad else bad[0][1],
        witness_clause=None if not bad else bad[0][0],
    )
