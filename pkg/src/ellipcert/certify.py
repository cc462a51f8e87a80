"""Numerical certification: sign scans, monotonicity scans, the sharp
constant a_c, and the turning-point root x_p.

Certificates here are numerical evidence, not proofs: grids plus local
refinement around near-zero values.  Endpoint offsets keep the scans on
the open interval, where the certified statements live and where several
factors genuinely vanish.  Grid evaluation is strictly sequential and
deterministic; a witness always re-evaluates to its reported value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

from .family import CriticalConstants, l_factor, w_plus
from .specfun import ellip_k

# Sign violations are only counted beyond this tolerance: floating point
# cannot certify strictness at an equality point itself.
SIGN_TOLERANCE = 1e-12

# Local refinement is capped so a function that is near zero everywhere
# (e.g. the constant 0) cannot blow the scan up; the cap keeps the
# flagged set deterministic (smallest |value| first, then leftmost).
_MAX_FLAGGED = 256
_SUBDIVISIONS = 8

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class InconclusiveScanError(RuntimeError):
    """A scan could not separate its answer from the interval boundary."""


class BracketNotFoundError(RuntimeError):
    """No sign change was found where a root was requested."""


@dataclass(frozen=True)
class ScanConfig:
    """Grid specification for all certification runs.

    The scan covers [lo + endpoint_offset, hi - endpoint_offset] with n
    uniform points; refine_depth levels of local refinement are applied
    around near-zero values.
    """

    lo: float = 0.0
    hi: float = 1.0
    n: int = 10_000
    endpoint_offset: float = 1e-9
    refine_depth: int = 2

    def __post_init__(self) -> None:
        if not 0.0 <= self.lo < self.hi <= 1.0:
            raise ValueError(f"need 0 <= lo < hi <= 1; got lo={self.lo}, hi={self.hi}")
        if self.n < 2:
            raise ValueError(f"grid size must be at least 2; got n={self.n}")
        if self.endpoint_offset <= 0.0:
            raise ValueError(f"endpoint_offset must be positive; got {self.endpoint_offset}")
        if self.refine_depth < 0:
            raise ValueError(f"refine_depth must be >= 0; got {self.refine_depth}")
        if self.lo + self.endpoint_offset >= self.hi - self.endpoint_offset:
            raise ValueError("offsets leave an empty scan interval")

    def grid(self) -> list[float]:
        lo = self.lo + self.endpoint_offset
        hi = self.hi - self.endpoint_offset
        step = (hi - lo) / (self.n - 1)
        pts = [lo + i * step for i in range(self.n)]
        pts[-1] = hi
        return pts


DEFAULT_SCAN = ScanConfig()


@dataclass(frozen=True)
class SignCertificate:
    """Outcome of a sign or monotonicity scan.

    verdict is "nonnegative" / "nonpositive" when the claim held on the
    (refined) grid, or "mixed" with a witness otherwise.  For sign scans
    witness_value = fn(witness_x); for monotonicity scans the witness is
    the pair (witness_x, witness_x + witness_step) and witness_value is
    the offending difference fn(witness_x + witness_step) - fn(witness_x).
    min_abs_margin is the smallest |value| seen where the claim held.
    """

    verdict: Literal["nonnegative", "nonpositive", "mixed"]
    witness_x: float | None
    witness_value: float | None
    min_abs_margin: float
    witness_step: float | None = None

    def __post_init__(self) -> None:
        if (self.verdict == "mixed") != (self.witness_x is not None):
            raise ValueError("witness present if and only if verdict is mixed")


@dataclass(frozen=True)
class ExtremumResult:
    """Location, value and attained bracket width of a 1-D maximization."""

    x_star: float
    value: float
    tolerance: float


def _mixed(x: float, v: float, margin: float, step: float | None = None) -> SignCertificate:
    return SignCertificate("mixed", x, v, margin, step)


def certify_sign(fn: Callable[[float], float],
                 claimed: Literal["nonnegative", "nonpositive"],
                 cfg: ScanConfig = DEFAULT_SCAN) -> SignCertificate:
    """Scan fn on the grid for the claimed sign, refining near zeros.

    Returns "mixed" with the first (leftmost) strict violation beyond
    SIGN_TOLERANCE; otherwise refines refine_depth times around grid
    values with |value| < 10 * min_abs_margin and returns the claimed
    verdict with the final margin.
    """
    if claimed not in ("nonnegative", "nonpositive"):
        raise ValueError(f"claimed must be 'nonnegative' or 'nonpositive'; got {claimed!r}")
    sgn = 1.0 if claimed == "nonnegative" else -1.0

    pts = cfg.grid()
    seen: dict[float, float] = {}
    margin = math.inf
    for x in pts:
        v = fn(x)
        if sgn * v < -SIGN_TOLERANCE:
            return _mixed(x, v, margin if margin < math.inf else abs(v))
        seen[x] = v
        if abs(v) < margin:
            margin = abs(v)

    for _ in range(cfg.refine_depth):
        threshold = 10.0 * margin
        flagged = sorted(range(len(pts)), key=lambda i: (abs(seen[pts[i]]), i))
        flagged = [i for i in flagged if abs(seen[pts[i]]) <= threshold][:_MAX_FLAGGED]
        if not flagged:
            break
        new_xs: set[float] = set()
        for i in flagged:
            for j in (i - 1, i):
                if 0 <= j < len(pts) - 1:
                    a, b = pts[j], pts[j + 1]
                    stepw = (b - a) / (_SUBDIVISIONS + 1)
                    new_xs.update(a + k * stepw for k in range(1, _SUBDIVISIONS + 1))
        fresh = sorted(x for x in new_xs if x not in seen)
        if not fresh:
            break
        for x in fresh:
            v = fn(x)
            if sgn * v < -SIGN_TOLERANCE:
                return _mixed(x, v, margin)
            seen[x] = v
            if abs(v) < margin:
                margin = abs(v)
        pts = sorted(seen)

    return SignCertificate(claimed, None, None, margin)


def certify_monotone(fn: Callable[[float], float],
                     direction: Literal["increasing", "decreasing"],
                     cfg: ScanConfig = DEFAULT_SCAN) -> SignCertificate:
    """Certify strict monotonicity via consecutive grid differences.

    The difference sequence fn(x_{i+1}) - fn(x_i) is sign-checked with
    the same tolerance, refinement and witness contract as certify_sign.
    """
    if direction not in ("increasing", "decreasing"):
        raise ValueError(f"direction must be 'increasing' or 'decreasing'; got {direction!r}")
    sgn = 1.0 if direction == "increasing" else -1.0
    verdict: Literal["nonnegative", "nonpositive"] = (
        "nonnegative" if direction == "increasing" else "nonpositive")

    pts = cfg.grid()
    vals = [fn(x) for x in pts]
    margin = math.inf

    def check(seq_x: list[float], seq_v: list[float]) -> SignCertificate | None:
        nonlocal margin
        for i in range(len(seq_x) - 1):
            d = seq_v[i + 1] - seq_v[i]
            if sgn * d < -SIGN_TOLERANCE:
                return _mixed(seq_x[i], d,
                              margin if margin < math.inf else abs(d),
                              seq_x[i + 1] - seq_x[i])
            if abs(d) < margin:
                margin = abs(d)
        return None

    bad = check(pts, vals)
    if bad is not None:
        return bad

    for _ in range(cfg.refine_depth):
        threshold = 10.0 * margin
        diffs = [vals[i + 1] - vals[i] for i in range(len(pts) - 1)]
        flagged = sorted(range(len(diffs)), key=lambda i: (abs(diffs[i]), i))
        flagged = [i for i in flagged if abs(diffs[i]) <= threshold][:_MAX_FLAGGED]
        if not flagged:
            break
        progressed = False
        for i in sorted(flagged):
            a, b = pts[i], pts[i + 1]
            stepw = (b - a) / (_SUBDIVISIONS + 1)
            seg_x = [a + k * stepw for k in range(_SUBDIVISIONS + 2)]
            seg_x[0], seg_x[-1] = a, b
            if seg_x[1] <= a or seg_x[-2] >= b:
                continue  # interval already at float resolution
            progressed = True
            seg_v = [vals[i]] + [fn(x) for x in seg_x[1:-1]] + [vals[i + 1]]
            bad = check(seg_x, seg_v)
            if bad is not None:
                return bad
        if not progressed:
            break

    return SignCertificate(verdict, None, None, margin)


def find_a_c(cfg: ScanConfig = DEFAULT_SCAN) -> ExtremumResult:
    """Maximize w_plus over the scan interval: coarse grid, then golden section.

    The best coarse bracket is refined to an x-width of 1e-10; the
    returned value is the best evaluation seen anywhere (so it is never
    below the grid maximum).  Ties on the grid go to the leftmost
    bracket.  Raises InconclusiveScanError if the winner sits at the
    scan boundary, which the endpoint limits 4/3 and log 4 rule out for
    any sane configuration.
    """
    pts = cfg.grid()
    best_i = 0
    best_v = -math.inf
    for i, x in enumerate(pts):
        v = w_plus(x)
        if v > best_v:
            best_i, best_v = i, v
    if best_i in (0, len(pts) - 1):
        raise InconclusiveScanError(
            f"maximum at scan boundary x={pts[best_i]!r}; widen the interval")

    a, b = pts[best_i - 1], pts[best_i + 1]
    best_x = pts[best_i]
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = w_plus(c), w_plus(d)
    for x, v in ((c, fc), (d, fd)):
        if v > best_v:
            best_x, best_v = x, v
    while b - a > 1e-10:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = w_plus(c)
            if fc > best_v:
                best_x, best_v = c, fc
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = w_plus(d)
            if fd > best_v:
                best_x, best_v = d, fd
    return ExtremumResult(x_star=best_x, value=best_v, tolerance=b - a)


def critical_constants(cfg: ScanConfig = DEFAULT_SCAN) -> CriticalConstants:
    """All sharp thresholds, with a_c computed live by find_a_c."""
    return CriticalConstants(a_c=find_a_c(cfg).value)


# Scan ladder for locating the sign change of L: dense enough that the
# single + -> - transition of l_factor cannot be missed, reaching the
# 1e-9 neighborhoods of both ends.
_XP_LADDER = (
    [10.0 ** (-j) for j in range(9, 0, -1)]
    + [i / 10.0 for i in range(2, 10)]
    + [1.0 - 10.0 ** (-j) for j in range(2, 10)]
)


def find_x_p(p: float, tol: float = 1e-12) -> float:
    """The unique zero of l_factor(p, .) in (0, 1), for p in (0, 1/4).

    A geometric ladder locates the single + -> - sign change, bisection
    shrinks it to float resolution, and the endpoint with the smaller
    |L| wins.  Outside (0, 1/4) the factor has constant sign and
    BracketNotFoundError is raised.

    The residual target is |L(x_p)| <= tol * K(x_p).  For roots very
    close to 1 (small p) the steepness of L makes the achievable
    residual quantization-limited: no double between the bracketing
    neighbors of the true root gets closer than |L'(x_p)| * ulp(x_p).
    """
    if tol <= 0.0:
        raise ValueError(f"tol must be positive; got {tol!r}")
    signs = []
    for x in _XP_LADDER:
        v = l_factor(p, x)
        signs.append((x, v))
    changes = [i for i in range(len(signs) - 1)
               if signs[i][1] > 0.0 >= signs[i + 1][1]]
    if not changes or signs[0][1] <= 0.0:
        raise BracketNotFoundError(
            f"l_factor has no + -> - sign change for p={p!r}; "
            "a turning point exists only for p in (0, 1/4)")
    if len(changes) > 1:
        raise BracketNotFoundError(
            f"multiple sign changes for p={p!r}; scan inconsistent")
    lo, flo = signs[changes[0]]
    hi, fhi = signs[changes[0] + 1]

    k_scale = ellip_k(lo)
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        v = l_factor(p, mid)
        if abs(v) <= tol * k_scale:
            return mid
        if v > 0.0:
            lo, flo = mid, v
        else:
            hi, fhi = mid, v
    return lo if abs(flo) <= abs(fhi) else hi
