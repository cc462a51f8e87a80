"""Complete elliptic integrals, the Gauss hypergeometric series, and
cancellation-free helper ratios.

Argument convention
-------------------
Every function of ``x`` below takes the *parameter* m = x, i.e.
``ellip_k(x)`` integrates with modulus sqrt(x).  Conflating parameter
and modulus is the classic bug with these integrals, so the classical
modulus form is exposed only through the explicit ``*_modulus``
adapters.

The production path for K and E is the arithmetic-geometric mean, which
converges quadratically (about five doublings to machine precision).
The hypergeometric series is kept as a second, independent route; the
two are required to agree to 1e-12 relative on (1e-6, 0.95).

All functions are pure, deterministic and safe to call concurrently.
"""

from __future__ import annotations

import math

PI = math.pi
LOG4 = math.log(4.0)

# Gamma(1/4) and Gamma(3/4), rounded to nearest double from the
# 40-digit values 3.625609908221908311930685155867672002995...
# and 1.225416702465177645129098303362890526851...
# Only these two irrational Gamma points are ever needed, so the
# constants are embedded instead of implementing a general Gamma.
# Reflection forces Gamma(1/4)*Gamma(3/4) = pi*sqrt(2), which the test
# suite checks against these literals.
GAMMA_QUARTER = 3.6256099082219083
GAMMA_THREE_QUARTER = 1.2254167024651776


class DomainError(ValueError):
    """Argument outside a function's domain."""


class ConvergenceError(RuntimeError):
    """A series failed to converge within its term cap."""


def require_unit_interval(x: float, what: str = "x") -> None:
    """Reject arguments outside the open interval (0, 1)."""
    if not 0.0 < x < 1.0:
        raise DomainError(f"{what} must lie in the open interval (0, 1); got {x!r}")


def _agm(x: float) -> tuple[float, float]:
    """(K(x), E(x)) by the AGM iteration, 0 <= x < 1.

    The loop stops once a and b agree to ~2 ulp; pushing further lets the
    2^n weights amplify the rounding fixpoint of a-b into the E sum.
    """
    if x == 0.0:
        return PI / 2, PI / 2
    a, b = 1.0, math.sqrt(1.0 - x)
    csum = 0.5 * x  # 2^{-1} c_0^2 with c_0^2 = x
    pw = 0.5
    for _ in range(40):
        c = 0.5 * (a - b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        pw *= 2.0
        csum += pw * c * c
        if abs(a - b) <= 4e-16 * a:
            c = 0.5 * (a - b)
            csum += 2.0 * pw * c * c
            break
    k = PI / (a + b)
    return k, k * (1.0 - csum)


def ellip_k(x: float) -> float:
    """Complete integral of the first kind at parameter x, 0 <= x < 1.

    Strictly increasing, diverging like -log(1-x)/2 as x -> 1.
    Relative error is a few ulp across the domain.
    """
    if not 0.0 <= x < 1.0:
        raise DomainError(f"ellip_k requires 0 <= x < 1; got {x!r}")
    return _agm(x)[0]


def ellip_e(x: float) -> float:
    """Complete integral of the second kind at parameter x, 0 <= x <= 1.

    Strictly decreasing from pi/2 to 1.
    """
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"ellip_e requires 0 <= x <= 1; got {x!r}")
    if x == 1.0:
        return 1.0
    return _agm(x)[1]


def ellip_ke(x: float) -> tuple[float, float]:
    """Both integrals in one AGM pass; same domain as ellip_k."""
    if not 0.0 <= x < 1.0:
        raise DomainError(f"ellip_ke requires 0 <= x < 1; got {x!r}")
    return _agm(x)


def ellip_k_modulus(r: float) -> float:
    """First-kind integral at modulus r (parameter r**2)."""
    if not 0.0 <= r < 1.0:
        raise DomainError(f"ellip_k_modulus requires 0 <= r < 1; got {r!r}")
    return ellip_k(r * r)


def ellip_e_modulus(r: float) -> float:
    """Second-kind integral at modulus r (parameter r**2)."""
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"ellip_e_modulus requires 0 <= r <= 1; got {r!r}")
    return ellip_e(r * r)


def _check_c(c: float) -> None:
    if c <= 0.0 and c == math.floor(c):
        raise DomainError(f"lower parameter c={c!r} is zero or a negative integer")


def hyp2f1(a: float, b: float, c: float, x: float, *,
           rel_tol: float = 1e-17, max_terms: int = 1_000_000) -> float:
    """Gauss hypergeometric series 2F1(a, b; c; x) for |x| < 1.

    Sums the defining series with the term recurrence
    t_{n+1} = t_n (a+n)(b+n) x / ((c+n)(1+n)), stopping once
    |t_n| < rel_tol * |partial sum|.  The term cap guards against the
    logarithmic divergence of parameter combinations like
    (1/2, 1/2; 1) turning into a hang near x = 1.
    """
    _check_c(c)
    if not -1.0 < x < 1.0:
        raise DomainError(f"hyp2f1 series argument must satisfy |x| < 1; got {x!r}")
    term = 1.0
    total = 1.0
    n = 0
    while n < max_terms:
        term *= (a + n) * (b + n) * x / ((c + n) * (1.0 + n))
        total += term
        n += 1
        if abs(term) < rel_tol * abs(total):
            return total
    raise ConvergenceError(
        f"2F1({a}, {b}; {c}; {x}) did not converge within {max_terms} terms")


def hyp2f1_euler(a: float, b: float, c: float, x: float) -> float:
    """2F1 via the Euler transformation (1-x)^(c-a-b) 2F1(c-a, c-b; c; x).

    Agrees with the direct series on the overlap and improves accuracy
    toward x -> 1 when c - a - b > 0.
    """
    _check_c(c)
    if not -1.0 < x < 1.0:
        raise DomainError(f"hyp2f1_euler argument must satisfy |x| < 1; got {x!r}")
    return (1.0 - x) ** (c - a - b) * hyp2f1(c - a, c - b, c, x)


def hyp2f1_at_one(a: float, b: float, c: float) -> float:
    """Value of 2F1(a, b; c; 1) = Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b)).

    Defined only when c - a - b > 0 (checked here); c must not be a pole.
    """
    _check_c(c)
    if c - a - b <= 0.0:
        raise DomainError(
            f"2F1 at unit argument needs c - a - b > 0; got {c - a - b!r}")
    return (math.gamma(c) * math.gamma(c - a - b)
            / (math.gamma(c - a) * math.gamma(c - b)))


# Series cutoff for the ratio helpers below.  Under the cutoff the direct
# differences K-E and (2-x)K-2E lose relative accuracy to cancellation,
# while the series converge in a few dozen terms.
_RATIO_SERIES_CUT = 0.25


def ke_ratio(x: float) -> float:
    """(K(x) - E(x)) / x without cancellation; limit pi/4 at x = 0.

    For small x uses (pi/4) 2F1(1/2, 3/2; 2; x), whose terms are all
    positive, so the tiny difference K - E is never formed explicitly.
    """
    if not 0.0 <= x < 1.0:
        raise DomainError(f"ke_ratio requires 0 <= x < 1; got {x!r}")
    if x < _RATIO_SERIES_CUT:
        return (PI / 4) * hyp2f1(0.5, 1.5, 2.0, x)
    k, e = _agm(x)
    return (k - e) / x


def ke_ratio2(x: float) -> float:
    """((2 - x)K(x) - 2E(x)) / x**2 without cancellation; limit pi/16 at 0.

    Small-x series: (pi/2) * sum_{n>=1} c_n^2 n/(n+1) x^(n-1) with
    c_n = (1/2)_n / n!; every term is positive.
    """
    if not 0.0 <= x < 1.0:
        raise DomainError(f"ke_ratio2 requires 0 <= x < 1; got {x!r}")
    if x < _RATIO_SERIES_CUT:
        c2 = 1.0
        xn = 1.0
        total = 0.0
        for n in range(1, 10_000):
            c2 *= ((2 * n - 1) / (2.0 * n)) ** 2
            term = c2 * (n / (n + 1.0)) * xn
            total += term
            xn *= x
            if term < 1e-17 * total:
                break
        return (PI / 2) * total
    k, e = _agm(x)
    return ((2.0 - x) * k - 2.0 * e) / (x * x)


def d_ellip_k(x: float) -> float:
    """dK/dx = (E - (1-x)K) / (2x(1-x)), rearranged to stay finite at 0+.

    With P = (K-E)/x the numerator is x(K - P), so the derivative equals
    (K - P) / (2(1-x)); limit pi/8 as x -> 0.
    """
    require_unit_interval(x, "d_ellip_k")
    return (ellip_k(x) - ke_ratio(x)) / (2.0 * (1.0 - x))


def d_ellip_e(x: float) -> float:
    """dE/dx = (E - K) / (2x) = -(K-E)/x / 2; always negative on (0,1)."""
    require_unit_interval(x, "d_ellip_e")
    return -0.5 * ke_ratio(x)


def k_near_one(x: float, *, min_x: float = 0.9) -> float:
    """Asymptotic form of K for x close to 1.

    Returns log 4 + theta - (1-x) theta / 4 with theta = -log(1-x)/2.
    The leading terms log 4 + theta are the true divergent asymptotics
    (the source display carries theta with the opposite sign, which
    would send K to -infinity; the divergent-to-+infinity sign is used).
    The (1-x) theta correction term keeps the displayed coefficient; the
    next-order expansion of K actually carries +(1-x)(theta+log4-1)/4,
    so this form is good to O((1-x) theta) absolute, which is what its
    contract promises.
    """
    if not min_x < x < 1.0:
        raise DomainError(f"k_near_one requires {min_x} < x < 1; got {x!r}")
    theta = -0.5 * math.log1p(-x)
    return LOG4 + theta - 0.25 * (1.0 - x) * theta


def legendre_residual(x: float) -> float:
    """E(x)K(1-x) + E(1-x)K(x) - K(x)K(1-x) - pi/2.

    Identically zero in exact arithmetic; a continuous self-test of the
    K/E kernel, expected below 1e-12 in magnitude everywhere on (0,1).
    """
    require_unit_interval(x, "legendre_residual")
    kx, ex = _agm(x)
    kc, ec = _agm(1.0 - x)
    return ex * kc + ec * kx - kx * kc - 0.5 * PI
