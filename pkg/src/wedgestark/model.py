"""Geometry, field and unit-system types.

All physics runs in reduced atomic units: lengths in effective Bohr radii
a*, energies in effective Rydbergs R*, fields in F0 = e/(2 eps a*^2).  In
these units the planar Hamiltonian is ``-laplacian + F * rho * cos(theta)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import constants

from .errors import ApertureOutOfRange, NegativeField, NonPositiveDimension, NonPositiveParameter

TWO_PI = 2.0 * math.pi


def _checked_geometry(d, theta0, L):
    try:
        d, theta0, L = float(d), float(theta0), float(L)
    except (TypeError, ValueError) as exc:
        raise NonPositiveDimension(f"geometry values must be real numbers: {exc}") from None
    for name, value in (("d", d), ("L", L)):
        if not (math.isfinite(value) and value > 0.0):
            raise NonPositiveDimension(f"{name} must be a positive finite length, got {value!r}")
    if not (math.isfinite(theta0) and 0.0 < theta0 <= TWO_PI):
        raise ApertureOutOfRange(f"theta0 must satisfy 0 < theta0 <= 2*pi, got {theta0!r}")
    return d, theta0, L


@dataclass(frozen=True)
class WedgeGeometry:
    """Slice of a cake: 0 <= rho <= d, |theta| <= theta0/2, |z| <= L/2.

    ``d`` and ``L`` are in units of a*, ``theta0`` in radians.
    """

    d: float
    theta0: float
    L: float

    def __post_init__(self):
        d, theta0, L = _checked_geometry(self.d, self.theta0, self.L)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "theta0", theta0)
        object.__setattr__(self, "L", L)

    @property
    def order(self) -> float:
        """Bessel order pi/theta0 of the field-free ground state."""
        return math.pi / self.theta0

    def with_(self, **changes) -> WedgeGeometry:
        fields = {"d": self.d, "theta0": self.theta0, "L": self.L}
        fields.update(changes)
        return WedgeGeometry(**fields)


def validate_geometry(d: float, theta0: float, L: float) -> WedgeGeometry:
    """Check raw geometry values and return a :class:`WedgeGeometry`.

    Raises NonPositiveDimension if d or L is not strictly positive and
    finite, ApertureOutOfRange unless 0 < theta0 <= 2*pi.  Values are never
    clamped.
    """
    return WedgeGeometry(d, theta0, L)


@dataclass(frozen=True)
class FieldSpec:
    """Field magnitude in units of F0, always pointing along +x (towards the
    wide end of the slice)."""

    F: float
    direction: str = "+x"

    def __post_init__(self):
        F = float(self.F)
        if not math.isfinite(F) or F < 0.0:
            raise NegativeField(f"field magnitude must be finite and >= 0, got {self.F!r}")
        if self.direction != "+x":
            raise NegativeField("only fields along +x are supported")
        object.__setattr__(self, "F", F)


def as_field(F) -> FieldSpec:
    return F if isinstance(F, FieldSpec) else FieldSpec(F)


@dataclass(frozen=True)
class UnitScales:
    """Physical size of the reduced units for a given material.

    bohr_star in nm, rydberg_star in meV, field_unit in kV/cm.
    """

    epsilon: float
    effective_mass_ratio: float
    bohr_star: float
    rydberg_star: float
    field_unit: float

    @property
    def bohr_star_m(self) -> float:
        return self.bohr_star * 1e-9

    @property
    def rydberg_star_J(self) -> float:
        return self.rydberg_star * 1e-3 * constants.e

    @property
    def field_unit_V_per_m(self) -> float:
        return self.field_unit * 1e5


def unit_scales(effective_mass_ratio: float, epsilon: float = 1.0) -> UnitScales:
    """Effective Bohr radius, Rydberg and field unit for m*/m_e and eps.

    The Gaussian-unit definitions a* = hbar^2 eps/(m* e^2),
    R* = m* e^4/(2 hbar^2 eps^2) and F0 = e/(2 eps a*^2) are evaluated in SI
    by replacing e^2 with e^2/(4 pi eps_0).
    """
    for name, value in (("effective_mass_ratio", effective_mass_ratio), ("epsilon", epsilon)):
        if not (math.isfinite(value) and value > 0.0):
            raise NonPositiveParameter(f"{name} must be positive and finite, got {value!r}")
    e = constants.e
    coulomb = 4.0 * math.pi * constants.epsilon_0 * epsilon
    mass = effective_mass_ratio * constants.m_e
    bohr = coulomb * constants.hbar**2 / (mass * e**2)
    rydberg = mass * e**4 / (2.0 * coulomb**2 * constants.hbar**2)
    field = e / (2.0 * coulomb * bohr**2)
    return UnitScales(
        epsilon=float(epsilon),
        effective_mass_ratio=float(effective_mass_ratio),
        bohr_star=bohr * 1e9,
        rydberg_star=rydberg / e * 1e3,
        field_unit=field * 1e-5,
    )
