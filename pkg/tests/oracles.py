"""Independent numerical oracles for the test suite.

Everything here is test-only and deliberately primitive: adaptive
quadrature of the defining integrals, brute-force series accumulation,
finite differences, and plain bisection.  The production package must
never import this module; expected values in the tests are produced by
these oracles first and then pinned as literals.
"""

from __future__ import annotations

import math
import warnings

from scipy.integrate import IntegrationWarning, quad

PI = math.pi

_QUAD_OPTS = dict(epsabs=1e-15, epsrel=1e-14, limit=400)


def quad_k(x: float) -> float:
    """First-kind integral from its defining integrand, modulus sqrt(x)."""
    r2 = x
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        val, _err = quad(lambda t: 1.0 / math.sqrt(1.0 - r2 * math.sin(t) ** 2),
                         0.0, PI / 2, **_QUAD_OPTS)
    return val


def quad_e(x: float) -> float:
    """Second-kind integral from its defining integrand, modulus sqrt(x)."""
    r2 = x
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        val, _err = quad(lambda t: math.sqrt(1.0 - r2 * math.sin(t) ** 2),
                         0.0, PI / 2, **_QUAD_OPTS)
    return val


def series_2f1(a: float, b: float, c: float, x: float, terms: int = 100_000) -> float:
    """Brute-force hypergeometric partial sum with explicit Pochhammer growth."""
    total = 0.0
    poch = 1.0  # (a)_n (b)_n / ((c)_n n!) x^n
    for n in range(terms):
        total += poch
        poch *= (a + n) * (b + n) * x / ((c + n) * (1.0 + n))
        if abs(poch) < 1e-18 * abs(total):
            break
    return total + poch


def series_k(x: float, terms: int = 60) -> float:
    """Small-x series of the first-kind integral (parameter form)."""
    c = 1.0
    total = 0.0
    xn = 1.0
    for n in range(terms):
        total += c * c * xn
        c *= (n + 0.5) / (n + 1.0)
        xn *= x
    return (PI / 2) * total


def series_e(x: float, terms: int = 60) -> float:
    """Small-x series of the second-kind integral (parameter form)."""
    total = 1.0
    coef = 1.0  # (1/2)_n (-1/2)_n / (n!)^2
    xn = 1.0
    for n in range(1, terms):
        coef *= (n - 0.5) * (n - 1.5) / (n * n)
        xn *= x
        total += coef * xn
    return (PI / 2) * total


def central_diff(fn, x: float, h: float) -> float:
    return (fn(x + h) - fn(x - h)) / (2.0 * h)


def second_central_diff(fn, x: float, h: float) -> float:
    return (fn(x + h) - 2.0 * fn(x) + fn(x - h)) / (h * h)


def bisect(fn, lo: float, hi: float, iters: int = 200) -> float:
    """Sign-change bisection; fn(lo) and fn(hi) must have opposite signs."""
    flo = fn(lo)
    fhi = fn(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0.0) == (fhi > 0.0):
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = fn(mid)
        if fm == 0.0:
            return mid
        if (fm > 0.0) == (flo > 0.0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    return 0.5 * (lo + hi)


def gamma(z: float) -> float:
    """Gamma oracle for the unit-argument hypergeometric value."""
    return math.gamma(z)
