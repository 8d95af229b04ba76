"""Gauss-Legendre rules and tensor-product integration over the wedge."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NonFiniteIntegrand, UnsupportedOrder

log = logging.getLogger(__name__)

MIN_NODES = 2
MAX_NODES = 512
DEFAULT_NODES = 96


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Gauss-Legendre nodes (ascending) and weights on [-1, 1]."""

    n: int
    nodes: np.ndarray
    weights: np.ndarray

    def scaled(self, a: float, b: float):
        """Nodes and weights mapped affinely onto [a, b]."""
        half = 0.5 * (b - a)
        return a + half * (self.nodes + 1.0), half * self.weights


@lru_cache(maxsize=64)
def gauss_legendre(n: int) -> QuadratureRule:
    """n-point Gauss-Legendre rule by Newton iteration on P_n.

    Exact for polynomials of degree <= 2n - 1.
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or not MIN_NODES <= n <= MAX_NODES:
        raise UnsupportedOrder(f"Gauss-Legendre order must be an integer in [{MIN_NODES}, {MAX_NODES}], got {n!r}")
    n = int(n)
    # Only the non-negative half is iterated; the rule is symmetric.
    m = (n + 1) // 2
    i = np.arange(1, m + 1)
    x = np.cos(math.pi * (i - 0.25) / (n + 0.5))
    for _ in range(100):
        p0 = np.ones_like(x)
        p1 = x.copy()
        for k in range(2, n + 1):
            p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
        dp = n * (x * p1 - p0) / (x * x - 1.0)
        dx = p1 / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    # Re-evaluate the derivative at the converged nodes for the weights.
    p0 = np.ones_like(x)
    p1 = x.copy()
    for k in range(2, n + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    dp = n * (x * p1 - p0) / (x * x - 1.0)
    w = 2.0 / ((1.0 - x * x) * dp * dp)

    if n % 2:
        x[-1] = 0.0
    nodes = np.concatenate([-x, x[::-1][n % 2:]])
    weights = np.concatenate([w, w[::-1][n % 2:]])
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(n, nodes, weights)


def wedge_nodes(geometry, nr: int, nt: int):
    """Radial and angular nodes/weights as broadcastable (nr,1) and (1,nt) arrays."""
    rho, wr = gauss_legendre(nr).scaled(0.0, geometry.d)
    half = 0.5 * geometry.theta0
    theta, wt = gauss_legendre(nt).scaled(-half, half)
    return rho[:, None], wr[:, None], theta[None, :], wt[None, :]


def integrate_wedge(f, geometry, nr: int = DEFAULT_NODES, nt: int = DEFAULT_NODES):
    """Approximate the double integral of f(rho, theta) dtheta drho over the wedge.

    ``f`` is called once with ``rho`` of shape (nr, 1) and ``theta`` of
    shape (1, nt) and must broadcast them.  The polar Jacobian is not
    supplied; include the factor rho in ``f`` where needed.

    ``f`` may also return a stack of shape (k, nr, nt), in which case an
    array of k integrals is returned.
    """
    rho, wr, theta, wt = wedge_nodes(geometry, nr, nt)
    values = np.asarray(f(rho, theta), dtype=float)
    lead = values.shape[:-2] if values.ndim > 2 else ()
    values = np.broadcast_to(values, lead + (rho.shape[0], theta.shape[1]))
    if not np.all(np.isfinite(values)):
        raise NonFiniteIntegrand("integrand produced non-finite samples on the wedge")
    result = (values @ wt[0]) @ wr[:, 0]
    return float(result) if not lead else result


def doubling_check(f, geometry, nr: int = DEFAULT_NODES, nt: int = DEFAULT_NODES, warn_above: float = 1e-8):
    """Integrate at (nr, nt) and (2nr, 2nt); return (fine value, relative change)."""
    coarse = integrate_wedge(f, geometry, nr, nt)
    fine = integrate_wedge(f, geometry, min(2 * nr, MAX_NODES), min(2 * nt, MAX_NODES))
    rel = abs(fine - coarse) / abs(fine) if fine != 0.0 else abs(fine - coarse)
    if rel > warn_above:
        log.warning("quadrature doubling changed the integral by %.3g (relative)", rel)
    return fine, rel


def converged_order(f, geometry, rtol: float = 1e-9, start: int = 8):
    """Smallest n (doubling from ``start``) with |I(2n) - I(n)| / |I(2n)| < rtol."""
    n = start
    while 2 * n <= MAX_NODES:
        _, rel = doubling_check(f, geometry, n, n, warn_above=math.inf)
        if rel < rtol:
            return n
        n *= 2
    return None
