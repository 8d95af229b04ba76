"""Parameter scans of the Stark shift along one axis (radius, field or aperture)."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .errors import OrderTooLarge, PartialSweep, SweepSpecError, WedgeStarkError
from .model import FieldSpec, WedgeGeometry
from .oracle import DEFAULT_GRID, PolarGrid, fd_stark_shift
from .quadrature import DEFAULT_NODES
from .specfun import MAX_ORDER
from .variational import DEFAULT_TOL, stark_shift

AXES = ("radius", "field", "aperture")
WORKERS_ENV = "WEDGESTARK_WORKERS"

# Artifact defaults chosen to show the qualitative trends; not taken from any figure.
DEFAULT_RADII = tuple(float(v) for v in np.arange(2.0, 20.0 + 1e-9, 2.0))
DEFAULT_FIELDS = tuple(float(v) for v in np.arange(0.0, 2.0 + 1e-9, 0.25))
DEFAULT_APERTURES = (math.pi / 20, math.pi / 10)


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    values: tuple
    d: float = 10.0
    theta0: float = math.pi / 20
    F: float = 1.0
    L: float = 1.0
    nr: int = DEFAULT_NODES
    nt: int = DEFAULT_NODES
    tol: float = DEFAULT_TOL
    with_oracle: bool = False
    oracle_grid: tuple = DEFAULT_GRID

    def __post_init__(self):
        if self.axis not in AXES:
            raise SweepSpecError(f"axis must be one of {AXES}, got {self.axis!r}")
        values = tuple(float(v) for v in self.values)
        if not values:
            raise SweepSpecError("sweep needs at least one value")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise SweepSpecError("sweep values must be strictly increasing")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "oracle_grid", tuple(int(n) for n in self.oracle_grid))
        if not (math.isfinite(self.tol) and self.tol > 0.0):
            raise SweepSpecError(f"tol must be positive, got {self.tol!r}")
        # Fail on the first bad point before any work is done.
        for v in values:
            g, fs = self.point(v)
            if g.order > MAX_ORDER:
                raise OrderTooLarge(f"theta0 = {g.theta0:.6g} needs Bessel order {g.order:.6g} > {MAX_ORDER:g}")
            if self.with_oracle:
                PolarGrid(*self.oracle_grid, g)

    def point(self, value: float):
        """Geometry and field for one swept value."""
        d, theta0, F = self.d, self.theta0, self.F
        if self.axis == "radius":
            d = value
        elif self.axis == "field":
            F = value
        else:
            theta0 = value
        return WedgeGeometry(d, theta0, self.L), FieldSpec(F)

    def fixed(self) -> dict:
        """The parameters held constant along the axis."""
        params = {"d": self.d, "theta0": self.theta0, "F": self.F, "L": self.L}
        params.pop({"radius": "d", "field": "F", "aperture": "theta0"}[self.axis])
        return params


@dataclass(frozen=True)
class SweepRecord:
    axis_value: float
    delta_e: float
    beta_star: float
    e_min: float
    e0: float
    evaluations: int
    oracle_delta_e: float | None = None


@dataclass
class SweepTable:
    axis: str
    records: list
    metadata: dict = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.records], dtype=float)


def sweep_metadata(spec: SweepSpec) -> dict:
    meta = asdict(spec)
    for key in ("d", "theta0", "F"):
        if key not in spec.fixed():
            del meta[key]
    meta["values"] = list(spec.values)
    meta["oracle_grid"] = "x".join(str(n) for n in spec.oracle_grid)
    meta["version"] = __version__
    return meta


def evaluate_point(spec: SweepSpec, value: float) -> SweepRecord:
    g, fs = spec.point(value)
    res = stark_shift(g, fs, spec.nr, spec.nt, spec.tol)
    oracle = None
    if spec.with_oracle:
        oracle = fd_stark_shift(g, fs, PolarGrid(*spec.oracle_grid, g))
    return SweepRecord(
        axis_value=value,
        delta_e=res.stark_shift,
        beta_star=res.beta_star,
        e_min=res.energy,
        e0=res.E0,
        evaluations=res.evaluations,
        oracle_delta_e=oracle,
    )


def run_sweep(spec: SweepSpec, workers: int | None = None) -> SweepTable:
    """Evaluate every point of ``spec``; records come back in spec order.

    Points are independent and may run on a thread pool.  If any point
    fails, PartialSweep is raised carrying the records that precede the
    first failing value.
    """
    workers = default_workers() if workers is None else max(1, int(workers))
    results = [None] * len(spec.values)
    errors = {}

    def task(i):
        try:
            results[i] = evaluate_point(spec, spec.values[i])
        except WedgeStarkError as exc:
            errors[i] = exc

    if workers == 1:
        for i in range(len(spec.values)):
            task(i)
            if errors:
                break
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(task, range(len(spec.values))))

    if errors:
        first = min(errors)
        done = results[:first]
        raise PartialSweep(
            f"sweep failed at {spec.axis} = {spec.values[first]:g}: {errors[first]}", done, errors[first]
        ) from errors[first]
    return SweepTable(axis=spec.axis, records=results, metadata=sweep_metadata(spec))


def compare_apertures(d: float, F: float, apertures, L: float = 1.0, workers: int | None = None,
                      **options) -> SweepTable:
    """Stark shift at fixed radius and field for increasing apertures, each <= pi."""
    apertures = tuple(float(a) for a in apertures)
    for a in apertures:
        if not 0.0 < a <= math.pi:
            raise SweepSpecError(f"aperture comparison needs 0 < theta0 <= pi, got {a!r}")
    spec = SweepSpec(axis="aperture", values=apertures, d=d, F=F, L=L, **options)
    return run_sweep(spec, workers=workers)
