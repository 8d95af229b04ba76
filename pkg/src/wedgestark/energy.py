"""Field-free ground state of the wedge and the energy of the Stark trial function.

The trial function is the field-free ground state times exp(-beta*rho*cos(theta)).
It factors as f(rho, theta) * cos(pi z / L); the z factor contributes
exactly (pi/L)^2 to the energy, so only planar integrals are computed:

    S   = int f^2 rho
    K2D = int [(d_rho f)^2 + (d_theta f / rho)^2] rho
    P   = int rho cos(theta) f^2 rho

and E(beta) = (K2D + F P) / S + (pi/L)^2 in units of R*.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NonFiniteResult, OrderTooLarge
from .model import WedgeGeometry, as_field
from .quadrature import DEFAULT_NODES, integrate_wedge
from .specfun import MAX_ORDER, bessel_j, bessel_j_prime, first_zero

# |beta| * d above this is rejected; keeps exp(-beta rho cos) representable.
BETA_D_LIMIT = 500.0


@dataclass(frozen=True)
class GroundState:
    """Exact field-free ground state: J_m0(alpha rho/d) cos(m0 theta) cos(pi z/L)."""

    m0: float
    alpha: float
    E0: float
    geometry: WedgeGeometry

    @property
    def planar_energy(self) -> float:
        return (self.alpha / self.geometry.d) ** 2

    @property
    def kz2(self) -> float:
        return (math.pi / self.geometry.L) ** 2

    @property
    def beta_max(self) -> float:
        return BETA_D_LIMIT / self.geometry.d


def ground_state(g: WedgeGeometry) -> GroundState:
    m0 = math.pi / g.theta0
    if m0 > MAX_ORDER:
        raise OrderTooLarge(
            f"theta0 = {g.theta0:.6g} gives Bessel order {m0:.6g}; the supported limit is {MAX_ORDER:g} "
            f"(theta0 >= pi/{MAX_ORDER:g})"
        )
    alpha = first_zero(m0)
    E0 = (alpha / g.d) ** 2 + (math.pi / g.L) ** 2
    return GroundState(m0=m0, alpha=alpha, E0=E0, geometry=g)


class TrialFactor:
    """Planar trial function and its polar derivatives for one value of beta.

    The exponential is multiplied by the constant exp(beta * x_ref), with
    x_ref the extreme of rho*cos(theta) on the wedge, so that it never
    exceeds one.  Rayleigh quotients are unaffected by the constant.
    """

    def __init__(self, gs: GroundState, beta: float):
        beta = float(beta)
        g = gs.geometry
        if not math.isfinite(beta):
            raise DomainError(f"beta must be finite, got {beta!r}")
        if abs(beta) > gs.beta_max:
            raise DomainError(f"|beta| = {abs(beta):.6g} exceeds {gs.beta_max:.6g} (= {BETA_D_LIMIT:g}/d)")
        self.gs = gs
        self.beta = beta
        self.k = gs.alpha / g.d
        if beta >= 0.0:
            self.x_ref = min(0.0, g.d * math.cos(0.5 * g.theta0))
        else:
            self.x_ref = g.d

    def _check(self, rho, theta, need_interior_rho):
        g = self.gs.geometry
        rho = np.asarray(rho, dtype=float)
        theta = np.asarray(theta, dtype=float)
        half = 0.5 * g.theta0
        slack = 1e-12 * max(1.0, g.d)
        bad_rho = (rho <= 0.0) if need_interior_rho else (rho < 0.0)
        if np.any(bad_rho | (rho > g.d + slack)) or np.any(np.abs(theta) > half * (1.0 + 1e-12)):
            raise DomainError("trial function evaluated outside the wedge")
        return rho, theta

    def _pieces(self, rho, theta):
        m0 = self.gs.m0
        x = rho * np.cos(theta)
        expo = np.exp(-self.beta * (x - self.x_ref))
        return m0, bessel_j(m0, self.k * rho), np.cos(m0 * theta), expo

    def f(self, rho, theta):
        rho, theta = self._check(rho, theta, need_interior_rho=False)
        _, jr, ang, expo = self._pieces(rho, theta)
        return jr * ang * expo

    def d_rho(self, rho, theta):
        rho, theta = self._check(rho, theta, need_interior_rho=True)
        return self.fields(rho, theta)[1]

    def d_theta(self, rho, theta):
        rho, theta = self._check(rho, theta, need_interior_rho=False)
        m0, jr, ang, expo = self._pieces(rho, theta)
        return (-m0 * np.sin(m0 * theta) + self.beta * rho * np.sin(theta) * ang) * jr * expo

    def fields(self, rho, theta):
        """(f, d_rho f, d_theta f) at interior points, sharing one Bessel evaluation."""
        rho, theta = self._check(rho, theta, need_interior_rho=True)
        m0, jr, ang, expo = self._pieces(rho, theta)
        jp = bessel_j_prime(m0, self.k * rho)
        f = jr * ang * expo
        dr = (self.k * jp - self.beta * np.cos(theta) * jr) * ang * expo
        dt = (-m0 * np.sin(m0 * theta) + self.beta * rho * np.sin(theta) * ang) * jr * expo
        return f, dr, dt


def trial_factor(gs: GroundState, beta: float) -> TrialFactor:
    return TrialFactor(gs, beta)


@dataclass(frozen=True)
class TrialEvaluation:
    beta: float
    F: float
    S: float
    K2D: float
    P: float
    planar: float
    E: float


def _trial_integrand(tf: TrialFactor):
    def integrand(rho, theta):
        f, dr, dt = tf.fields(rho, theta)
        f2 = f * f
        return np.stack([f2 * rho, dr * dr * rho + dt * dt / rho, f2 * rho * rho * np.cos(theta)])

    return integrand


def evaluate_trial(gs: GroundState, F, beta: float, nr: int = DEFAULT_NODES, nt: int = DEFAULT_NODES) -> TrialEvaluation:
    """Rayleigh quotient of H = -laplacian + F rho cos(theta) for the trial function."""
    F = as_field(F).F
    tf = trial_factor(gs, beta)
    S, K2D, P = (float(v) for v in integrate_wedge(_trial_integrand(tf), gs.geometry, nr, nt))
    if not all(math.isfinite(v) for v in (S, K2D, P)) or S <= 0.0:
        raise NonFiniteResult(f"trial integrals are degenerate at beta={beta}: S={S}, K2D={K2D}, P={P}")
    planar = (K2D + F * P) / S
    return TrialEvaluation(beta=tf.beta, F=F, S=S, K2D=K2D, P=P, planar=planar, E=planar + gs.kz2)


def mean_dipole(gs: GroundState, nr: int = DEFAULT_NODES, nt: int = DEFAULT_NODES) -> float:
    """<rho cos(theta)> in the field-free ground state (units a*)."""
    ev = evaluate_trial(gs, 0.0, 0.0, nr, nt)
    return ev.P / ev.S
