"""The convexity function zoo built on the elliptic kernels.

Two parametric families live here: the log-shift ratio family
f(a, x) = K(x) / (a - log(1-x)/2) and the power family
h(p, x) = (1-x)^p K(x), together with the auxiliary functions whose
signs carry their second derivatives (g_factor, phi - a, p + G, J, L).

Sign factors are evaluated through exact rearrangements in terms of
K, E, P = (K-E)/x and T2 = ((2-x)K-2E)/x^2, so they remain
sign-trustworthy at both interval ends where the textbook expressions
are 0/0-ill-conditioned.  Raw numerical differentiation is never used
here; finite differences exist only as oracles in the test suite.

Everything is a pure function; endpoint extension values are produced
only when the caller passes an explicit endpoint flag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .specfun import (
    PI,
    LOG4,
    DomainError,
    ellip_k,
    ellip_ke,
    ke_ratio,
    ke_ratio2,
    require_unit_interval,
)

SQRT2 = math.sqrt(2.0)

# Parameter thresholds of the zoo (all algebraic except a_c, which is
# computed by certify.find_a_c and deliberately not hard-coded here).
A_CONCAVE = 4.0 / 3.0            # unique concavity value of f(a, .)
A_RECIP_CONVEX = LOG4            # 1/f convex  iff a <= log 4
A_RECIP_CONCAVE = 8.0 / 5.0      # 1/f concave iff a >= 8/5
P_LOGCONCAVE = 7.0 / 32.0        # h log-concave iff p >= 7/32
P_MONOTONE = 0.25                # h decreasing iff p >= 1/4
P_CONVEX_HI = 3.0 * (2.0 + SQRT2) / 8.0   # h convex iff p <= 0 or p >= this
P_CONCAVE_LO = 3.0 * (2.0 - SQRT2) / 8.0  # h concave iff p in [this, 1]
ALPHA_LEMMA = (8.0 / 97.0) * (11.0 - 2.0 * math.sqrt(6.0))

# Series fallbacks near x = 0 where even the rearranged closed forms
# divide two vanishing quantities.  Switch points sit where fallback and
# closed form agree to well under 1e-9 (checked in the tests).
_PHI_SERIES_CUT = 1e-6
_G_SERIES_CUT = 1e-5


@dataclass(frozen=True)
class CriticalConstants:
    """The sharp parameter thresholds, with a_c computed at run time."""

    a_c: float
    p_logconcave: float = P_LOGCONCAVE
    p_convex_hi: float = P_CONVEX_HI
    p_concave_lo: float = P_CONCAVE_LO
    p_monotone: float = P_MONOTONE
    a_recip_convex: float = A_RECIP_CONVEX
    a_recip_concave: float = A_RECIP_CONCAVE
    alpha_lemma: float = ALPHA_LEMMA

    def __post_init__(self) -> None:
        if not self.a_recip_convex < self.a_c < self.a_recip_concave:
            raise ValueError(
                f"a_c={self.a_c!r} must lie in (log 4, 8/5)")


def _core(x: float) -> tuple[float, float, float, float]:
    """(K, E, P, T2) at x with P = (K-E)/x, T2 = ((2-x)K-2E)/x^2."""
    k, e = ellip_ke(x)
    return k, e, ke_ratio(x), ke_ratio2(x)


def f(a: float, x: float, *, endpoint: bool = False) -> float:
    """K(x) / (a - log(1-x)/2); continuous extensions at 0 and 1 on request.

    With ``endpoint=True`` the closures f(a, 0) = pi/(2a) and f(a, 1) = 1
    are returned at exactly 0.0 / 1.0; otherwise endpoints raise.
    """
    if endpoint and x == 0.0:
        if a <= 0.0:
            raise DomainError(f"f endpoint value at 0 needs a > 0; got a={a!r}")
        return PI / (2.0 * a)
    if endpoint and x == 1.0:
        return 1.0
    require_unit_interval(x, "f")
    den = a - 0.5 * math.log1p(-x)
    if den <= 0.0:
        raise DomainError(
            f"f denominator a - log(1-x)/2 = {den!r} is not positive at x={x!r}")
    return ellip_k(x) / den


def _uvds(x: float) -> tuple[float, float, float, float]:
    """(u, v, Delta, s) with s = 2F1(1/2,1/2;1;x) = (2/pi) K.

    Closed forms via K, E:
        2F1(1/2,1/2;2;x)  = (4/pi)(K - P)
        2F1(3/2,3/2;3;x)  = (16/pi) T2
    so u = ((1-x) T2 + 2(K-P)) / pi and v = 2(2K - P) / pi.
    """
    k, _e, p, t2 = _core(x)
    s = (2.0 / PI) * k
    u = ((1.0 - x) * t2 + 2.0 * (k - p)) / PI
    v = 2.0 * (2.0 * k - p) / PI
    d = v * v - 4.0 * u * s
    return u, v, d, s


def u_aux(x: float) -> float:
    """Leading quadratic coefficient; increasing from 9/16 toward 2/pi."""
    require_unit_interval(x, "u_aux")
    return _uvds(x)[0]


def v_aux(x: float) -> float:
    """Middle quadratic coefficient; positive on [0, 1)."""
    require_unit_interval(x, "v_aux")
    return _uvds(x)[1]


def delta_aux(x: float) -> float:
    """Discriminant v^2 - 4 u s; increasing from 0, slope 3/16 at 0."""
    require_unit_interval(x, "delta_aux")
    return _uvds(x)[2]


def _w_pair(x: float) -> tuple[float, float]:
    u, v, d, s = _uvds(x)
    sq = math.sqrt(d) if d > 0.0 else 0.0
    lw = 0.5 * math.log1p(-x)
    # w_minus via the conjugate form 2s/(v + sqrt(Delta)): the direct
    # (v - sqrt(Delta)) difference cancels catastrophically near x = 0.
    return lw + (v + sq) / (2.0 * u), lw + 2.0 * s / (v + sq)


def w_plus(x: float) -> float:
    """Upper root (in a) of the f'' quadratic; 4/3 at 0+, log 4 at 1-.

    Its maximum over (0,1) is the sharp convexity threshold of f(a, .).
    Carries a sqrt(3x/16) cusp at 0, so it sits ~1.2e-5 above 4/3
    already at x = 1e-9.
    """
    require_unit_interval(x, "w_plus")
    return _w_pair(x)[0]


def w_minus(x: float) -> float:
    """Lower root (in a) of the f'' quadratic; 4/3 at 0+, -inf at 1-."""
    require_unit_interval(x, "w_minus")
    return _w_pair(x)[1]


def g_factor(a: float, x: float) -> float:
    """u(x) (a - w_plus(x)) (a - w_minus(x)); same sign as f''(a, .) at x."""
    require_unit_interval(x, "g_factor")
    u, v, d, s = _uvds(x)
    sq = math.sqrt(d) if d > 0.0 else 0.0
    lw = 0.5 * math.log1p(-x)
    wp = lw + (v + sq) / (2.0 * u)
    wm = lw + 2.0 * s / (v + sq)
    return u * (a - wp) * (a - wm)


def g_factor_quadratic(a: float, x: float) -> float:
    """Unfactored form z^2 u - z v + s with z = a - log(1-x)/2.

    Algebraically identical to g_factor; kept as a cross-check of the
    root factorization.
    """
    require_unit_interval(x, "g_factor_quadratic")
    u, v, _d, s = _uvds(x)
    z = a - 0.5 * math.log1p(-x)
    return (z * u - v) * z + s


def phi(x: float) -> float:
    """Decreasing map of (0,1) onto (log 4, 8/5) steering 1/f convexity.

    Stabilized form: phi = log(1-x)/2 - 2 K P / B with
    B = 2P^2 - K^2 - K T2 (the denominator bracket divided by x^2).
    Below the series cut the two-term expansion 8/5 - 7x/50 is used.
    """
    require_unit_interval(x, "phi")
    if x < _PHI_SERIES_CUT:
        return 1.6 - 0.14 * x
    k, _e, p, t2 = _core(x)
    b = 2.0 * p * p - k * k - k * t2
    return 0.5 * math.log1p(-x) - 2.0 * k * p / b


def recip_f_second_sign(a: float, x: float) -> float:
    """phi(x) - a: positive iff 1/f(a, .) is locally strictly convex at x."""
    return phi(x) - a


def recip_f_multiplier(x: float) -> float:
    """2KE - x(1-x)K^2 - 2E^2, the positive factor relating (1/f)'' to phi - a.

    Computed as -x^2 (2P^2 - K^2 - K T2), which keeps the sign exact at
    small x where the three raw terms cancel to O(x^2).
    """
    require_unit_interval(x, "recip_f_multiplier")
    k, _e, p, t2 = _core(x)
    return -x * x * (2.0 * p * p - k * k - k * t2)


def h(p: float, x: float, *, endpoint: bool = False) -> float:
    """(1-x)^p K(x); endpoint closures h(p, 0) = pi/2 and h(p, 1) = 0 (p > 0)."""
    if endpoint and x == 0.0:
        return PI / 2
    if endpoint and x == 1.0:
        if p <= 0.0:
            raise DomainError(f"h diverges at x=1 for p <= 0; got p={p!r}")
        return 0.0
    require_unit_interval(x, "h")
    return (1.0 - x) ** p * ellip_k(x)


def g_aux(x: float) -> float:
    """Increasing map of (0,1) onto (-7/32, 0) steering log-concavity of h.

    Stabilized form G = ((P^2 + 2KP - 2K^2) - K T2) / (4 K^2); under the
    series cut the expansion -7/32 + x/32 takes over.  The approach to 0
    at x -> 1 is logarithmic, G ~ -1/(2K).
    """
    require_unit_interval(x, "g_aux")
    if x < _G_SERIES_CUT:
        return -7.0 / 32.0 + x / 32.0
    k, _e, p, t2 = _core(x)
    return ((p * p + 2.0 * k * p - 2.0 * k * k) - k * t2) / (4.0 * k * k)


def log_h_second_factor(p: float, x: float) -> float:
    """p + G(x); its sign is opposite to the sign of (log h(p, .))'' at x."""
    return p + g_aux(x)


def j_factor(p: float, x: float) -> float:
    """Sign carrier of h''(p, .): h'' = J / (4 x^2 (1-x)^(2-p)).

    Stabilized form J = x^2 (T2 + (4p^2-8p+3)K + 4(p-1)P); near 0 this
    gives J/x^2 -> (pi/16)(32p^2 - 48p + 9) without cancellation.
    """
    require_unit_interval(x, "j_factor")
    k, _e, pr, t2 = _core(x)
    return x * x * (t2 + (4.0 * p * p - 8.0 * p + 3.0) * k + 4.0 * (p - 1.0) * pr)


def l_factor(p: float, x: float) -> float:
    """Sign carrier of h'(p, .): equals E + ((1-2p)x - 1)K = x((1-2p)K - P).

    Slope (pi/4)(1 - 4p) at 0; for p in (0, 1/4) it has exactly one sign
    change (the turning point of h).
    """
    require_unit_interval(x, "l_factor")
    k, _e, pr, _t2 = _core(x)
    return x * ((1.0 - 2.0 * p) * k - pr)
