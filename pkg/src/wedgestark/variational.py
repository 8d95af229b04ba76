"""Minimisation of the trial energy over beta and assembly of the Stark shift."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .energy import evaluate_trial, ground_state
from .errors import BracketFailure, MaxIterations
from .model import WedgeGeometry, as_field
from .quadrature import DEFAULT_NODES

log = logging.getLogger(__name__)

GOLDEN_GROW = 1.618033988749895
CGOLD = 0.3819660112501051
DEFAULT_TOL = 1e-8
PRESCAN_POINTS = 8
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class Bracket:
    """a <= b <= c with f(b) below f(a) and f(c).

    ``boundary`` marks the degenerate bracket a == b == 0 returned when the
    function increases away from zero at every probed scale.
    """

    a: float
    b: float
    c: float
    fa: float
    fb: float
    fc: float
    boundary: bool = False

    @property
    def width(self) -> float:
        return self.c - self.a

    def as_tuple(self):
        return (self.a, self.b, self.c)


@dataclass(frozen=True)
class MinimizeResult:
    x: float
    fun: float
    bracket: tuple
    iterations: int
    converged: bool


def bracket_minimum(func, beta_init: float = 0.0, step: float = 0.05, beta_max: float = math.inf,
                    max_shrink: int = 40) -> Bracket:
    """Bracket a minimum of ``func`` on [0, beta_max] starting at ``beta_init``.

    Steps outward geometrically while the function descends.  If the first
    step already goes uphill, the step is halved until a dip appears; if
    none does, the search turns towards zero, and a function that rises
    away from zero at every scale yields a boundary bracket at 0.
    """
    if beta_init < 0.0 or step <= 0.0:
        raise ValueError("need beta_init >= 0 and step > 0")
    a, fa = beta_init, func(beta_init)
    b = a + step
    if b > beta_max:
        raise BracketFailure(f"first step {b:.6g} already exceeds beta_max {beta_max:.6g}")
    fb = func(b)

    if fb < fa:
        while True:
            c = b + GOLDEN_GROW * (b - a)
            if c > beta_max:
                raise BracketFailure(f"still descending at beta = {b:.6g} (limit {beta_max:.6g})")
            fc = func(c)
            if fc > fb:
                return Bracket(a, b, c, fa, fb, fc)
            a, fa, b, fb = b, fb, c, fc

    # A dip must clear rounding noise; otherwise halving would chase it to 0.
    floor = fa - 8.0 * _EPS * max(1.0, abs(fa))
    c, fc = b, fb
    for _ in range(max_shrink):
        m = a + 0.5 * (c - a)
        fm = func(m)
        if fm < floor:
            return Bracket(a, m, c, fa, fm, fc)
        c, fc = m, fm

    if a == 0.0:
        return Bracket(0.0, 0.0, c, fa, fa, fc, boundary=True)

    # Uphill to the right at every scale: walk left, clamped at zero.
    c, fc = a, fa
    b = max(a - step, 0.0)
    fb = func(b)
    if fb >= fc:
        return Bracket(b, a, a + step, fb, fa, func(a + step))
    while True:
        if b == 0.0:
            return Bracket(0.0, 0.0, c, fb, fb, fc, boundary=True)
        nxt = max(b - GOLDEN_GROW * (c - b), 0.0)
        fn = func(nxt)
        if fn > fb:
            return Bracket(nxt, b, c, fn, fb, fc)
        c, fc, b, fb = b, fb, nxt, fn


def minimize_scalar(func, bracket: Bracket, tol: float = DEFAULT_TOL, max_iter: int = 500) -> MinimizeResult:
    """Brent minimisation inside ``bracket``.

    Parabolic steps are taken only when they land well inside the bracket
    and shrink faster than golden section would; otherwise a golden step is
    used.  Stops when the bracket is narrower than tol * max(1, |x|).
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if bracket.boundary:
        return MinimizeResult(bracket.a, bracket.fa, bracket.as_tuple(), 0, True)

    a, c = bracket.a, bracket.c
    x = w = v = bracket.b
    fx = fw = fv = bracket.fb
    d = e = 0.0
    for it in range(1, max_iter + 1):
        xm = 0.5 * (a + c)
        tol1 = 0.25 * tol * max(1.0, abs(x))
        tol2 = 2.0 * tol1
        if abs(x - xm) <= tol2 - 0.5 * (c - a):
            return MinimizeResult(x, fx, (a, x, c), it - 1, True)
        golden = True
        if abs(e) > tol1:
            r = (x - w) * (fx - fv)
            q = (x - v) * (fx - fw)
            p = (x - v) * q - (x - w) * r
            q = 2.0 * (q - r)
            if q > 0.0:
                p = -p
            q = abs(q)
            e_prev, e = e, d
            if abs(p) < abs(0.5 * q * e_prev) and q * (a - x) < p < q * (c - x):
                d = p / q
                u = x + d
                if u - a < tol2 or c - u < tol2:
                    d = math.copysign(tol1, xm - x)
                golden = False
        if golden:
            e = (a - x) if x >= xm else (c - x)
            d = CGOLD * e
        u = x + d if abs(d) >= tol1 else x + math.copysign(tol1, d)
        fu = func(u)
        if fu <= fx:
            if u >= x:
                a = x
            else:
                c = x
            v, fv, w, fw, x, fx = w, fw, x, fx, u, fu
        else:
            if u < x:
                a = u
            else:
                c = u
            if fu <= fw or w == x:
                v, fv, w, fw = w, fw, u, fu
            elif fu <= fv or v == x or v == w:
                v, fv = u, fu
    raise MaxIterations(f"Brent search did not reach width {tol:g} in {max_iter} iterations")


@dataclass(frozen=True)
class VariationalResult:
    beta_star: float
    energy: float
    stark_shift: float
    E0: float
    F: float
    evaluations: int
    converged: bool
    bracket: tuple
    boundary: bool
    multimodal: bool


def _prescan(energy, beta_lo, beta_hi):
    betas = np.geomspace(beta_lo, beta_hi, PRESCAN_POINTS)
    values = np.array([energy(0.0)] + [energy(float(b)) for b in betas])
    interior = (values[1:-1] < values[:-2]) & (values[1:-1] < values[2:])
    return np.concatenate([[0.0], betas]), values, int(interior.sum())


def stark_shift(g: WedgeGeometry, F, nr: int = DEFAULT_NODES, nt: int = DEFAULT_NODES,
                tol: float = DEFAULT_TOL, prescan: bool = True) -> VariationalResult:
    """Variational Stark shift min_beta E(beta) - E0 for one geometry and field."""
    field = as_field(F)
    gs = ground_state(g)
    seen = {}

    def planar(beta):
        if beta not in seen:
            seen[beta] = evaluate_trial(gs, field, beta, nr, nt).planar
        return seen[beta]

    step = 0.05 / g.d
    bracket = bracket_minimum(planar, 0.0, step, gs.beta_max)
    found = minimize_scalar(planar, bracket, tol)

    multimodal = False
    if prescan:
        betas, values, n_minima = _prescan(planar, step, gs.beta_max)
        multimodal = n_minima > 1 or bool(np.min(values) < found.fun - 1e-12 * abs(found.fun))
        if multimodal:
            log.warning("E(beta) looks multimodal for %s at F=%g (coarse scan minima at %s)",
                        g, field.F, betas[1:-1][(values[1:-1] < values[:-2]) & (values[1:-1] < values[2:])])

    energy = found.fun + gs.kz2
    return VariationalResult(
        beta_star=found.x,
        energy=energy,
        stark_shift=energy - gs.E0,
        E0=gs.E0,
        F=field.F,
        evaluations=len(seen),
        converged=found.converged,
        bracket=found.bracket,
        boundary=bracket.boundary,
        multimodal=multimodal,
    )
