"""Bessel functions of the first kind for real order, and their first zeros.

J_nu is evaluated from the ascending series

    J_nu(x) = (x/2)^nu / Gamma(nu+1) * sum_k (-y)^k / (k! (nu+1)_k),  y = x^2/4

The alternating sum is accumulated in decimal arithmetic whose precision
is picked from an upper bound on the largest term, so the cancellation
that ruins a double-precision sum at large x/nu never reaches the result.
"""

from __future__ import annotations

import decimal
import math
from functools import lru_cache

import numpy as np

from .errors import BracketError, ConvergenceError, DomainError

MAX_ORDER = 60.0
MAX_TERMS = 2000
# Leading coefficient of the large-order expansion of the first zero.
_ZERO_SEED_COEF = 1.8557571
_GUARD_DIGITS = 25


def ln_gamma(x: float) -> float:
    """Natural log of Gamma(x) for x > 0."""
    x = float(x)
    if not (x > 0.0) or math.isinf(x):
        raise DomainError(f"ln_gamma needs a finite x > 0, got {x!r}")
    return math.lgamma(x)


def _check_order(nu):
    nu = float(nu)
    if not (math.isfinite(nu) and nu >= 0.0):
        raise DomainError(f"Bessel order must be finite and >= 0, got {nu!r}")
    return nu


def _working_digits(nu, x, y):
    # sum_k |t_k| <= exp(y/(nu+1)); the error of J is prefactor * eps * that.
    log_scale = nu * math.log(x / 2.0) - ln_gamma(nu + 1.0) + y / (nu + 1.0)
    return _GUARD_DIGITS + 17 + max(0, math.ceil(log_scale / math.log(10.0)))


@lru_cache(maxsize=1 << 16)
def _bessel_j_scalar(nu: float, x: float) -> float:
    if x == 0.0:
        return 1.0 if nu == 0.0 else 0.0
    y = 0.25 * x * x
    ctx = decimal.Context(prec=_working_digits(nu, x, y), Emin=-999999, Emax=999999)
    D = ctx.create_decimal
    half = ctx.divide(D(x), D(2))
    ydec = ctx.multiply(half, half)
    nudec = D(nu)
    term = D(1)
    total = D(1)
    magnitude = D(1)
    cutoff = ctx.power(D(10), -ctx.prec)
    for k in range(1, MAX_TERMS):
        denom = ctx.multiply(D(k), ctx.add(nudec, D(k)))
        term = ctx.divide(ctx.multiply(term, ydec), denom).copy_negate()
        total = ctx.add(total, term)
        abs_term = term.copy_abs()
        magnitude = ctx.add(magnitude, abs_term)
        if k * (nu + k) > y and abs_term <= ctx.multiply(magnitude, cutoff):
            break
    else:
        raise ConvergenceError(f"Bessel series for nu={nu}, x={x} did not converge in {MAX_TERMS} terms")
    log_prefactor = nu * math.log(0.5 * x) - math.lgamma(nu + 1.0)
    if log_prefactor < -745.0:
        return 0.0
    return math.exp(log_prefactor) * float(total)


def bessel_j(nu: float, x):
    """J_nu(x) for real nu >= 0 and x >= 0.

    ``x`` may be a scalar or an array; the return value has the same shape.
    Absolute error stays below about 1e-10 for nu <= 60 and
    x <= nu + 10 nu^(1/3) + 20.
    """
    nu = _check_order(nu)
    arr = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0.0):
        raise DomainError("bessel_j needs finite x >= 0")
    if arr.ndim == 0:
        return _bessel_j_scalar(nu, float(arr))
    out = np.fromiter((_bessel_j_scalar(nu, float(v)) for v in arr.ravel()), dtype=float, count=arr.size)
    return out.reshape(arr.shape)


def bessel_j_prime(nu: float, x):
    """dJ_nu/dx via (nu/x) J_nu(x) - J_{nu+1}(x); requires x > 0."""
    nu = _check_order(nu)
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0.0)):
        raise DomainError("bessel_j_prime needs x > 0")
    return nu / arr * bessel_j(nu, arr) - bessel_j(nu + 1.0, arr)


def zero_seed(nu: float) -> float:
    if nu < 1.0:
        return 2.4
    return nu + _ZERO_SEED_COEF * nu ** (1.0 / 3.0)


@lru_cache(maxsize=256)
def first_zero(nu: float) -> float:
    """Smallest positive zero of J_nu, for 0 <= nu <= 60.

    The asymptotic seed is only a starting point: a sign change is found by
    marching outward from it, the bracket is bisected down to a few ulps and
    then polished by Newton steps that are kept inside the bracket.
    """
    nu = _check_order(nu)
    if nu > MAX_ORDER:
        raise DomainError(f"first_zero supports nu <= {MAX_ORDER:g}, got {nu}")
    step = 0.25
    x = zero_seed(nu)
    fx = bessel_j(nu, x)
    lo = hi = None
    for _ in range(400):
        if fx > 0.0:
            nxt = x + step
            fn = bessel_j(nu, nxt)
            if fn <= 0.0:
                lo, hi = x, nxt
                break
        else:
            nxt = x - step
            if nxt <= 0.0:
                break
            fn = bessel_j(nu, nxt)
            if fn > 0.0:
                lo, hi = nxt, x
                break
        x, fx = nxt, fn
    if lo is None:
        raise BracketError(f"no sign change of J_{nu} found near {zero_seed(nu):.6g}")

    while hi - lo > 1e-9 * max(1.0, lo):
        mid = 0.5 * (lo + hi)
        if bessel_j(nu, mid) > 0.0:
            lo = mid
        else:
            hi = mid

    x = 0.5 * (lo + hi)
    for _ in range(6):
        fx = bessel_j(nu, x)
        if fx == 0.0:
            break
        if fx > 0.0:
            lo = x
        else:
            hi = x
        dx = fx / bessel_j_prime(nu, x)
        new = x - dx
        if not lo <= new <= hi:
            new = 0.5 * (lo + hi)
        if abs(new - x) <= 4.0 * math.ulp(x):
            x = new
            break
        x = new
    return float(x)
