import math

import numpy as np
import pytest
import scipy.sparse as sp

from wedgestark.energy import ground_state
from wedgestark.errors import GridTooSmall
from wedgestark.model import WedgeGeometry
from wedgestark.oracle import (
    PolarGrid,
    assemble,
    discretization_error,
    fd_ground_energy,
    fd_stark_shift,
    ground_eigenvalue,
)


def test_grid_nodes_are_cell_centred(half_disk):
    grid = PolarGrid(8, 10, half_disk)
    assert grid.rho[0] == pytest.approx(1 / 16)
    assert grid.rho[-1] == pytest.approx(1 - 1 / 16)
    assert grid.theta[0] == pytest.approx(-math.pi / 2 + math.pi / 20)
    assert np.all(np.abs(grid.theta) < math.pi / 2)


@pytest.mark.parametrize("nr,nt", [(7, 16), (16, 4), (16.0, 16)])
def test_grid_too_small(half_disk, nr, nt):
    with pytest.raises(GridTooSmall):
        PolarGrid(nr, nt, half_disk)


def test_weighted_matrix_symmetric(reference_wedge):
    op = assemble(reference_wedge, 1.0, PolarGrid(12, 10, reference_wedge))
    A = op.weighted.toarray()
    assert np.allclose(A, A.T, rtol=0, atol=1e-12 * np.abs(A).max())
    B = op.matrix.toarray()
    assert np.allclose(B, B.T, rtol=0, atol=1e-12 * np.abs(B).max())


def test_zero_field_diagonal_dominance(half_disk):
    op = assemble(half_disk, 0.0, PolarGrid(12, 12, half_disk))
    A = op.weighted.toarray()
    diag = np.diag(A)
    off = np.abs(A).sum(axis=1) - np.abs(diag)
    assert np.all(off <= diag * (1 + 1e-12))


def test_two_by_two():
    assert ground_eigenvalue(np.diag([1.0, 3.0])).energy == pytest.approx(1.0, abs=1e-12)
    assert ground_eigenvalue(sp.diags([3.0, 1.0, 2.0])).energy == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("n", [10, 50, 200])
def test_discrete_dirichlet_laplacian(n):
    h = 1.0 / (n + 1)
    T = sp.diags([-np.ones(n - 1), 2 * np.ones(n), -np.ones(n - 1)], [-1, 0, 1]) / h**2
    exact = 4.0 / h**2 * math.sin(math.pi * h / 2) ** 2
    assert ground_eigenvalue(T).energy == pytest.approx(exact, rel=1e-11)


def test_converges_to_bessel_energy_at_second_order(half_disk):
    exact = ground_state(half_disk).planar_energy
    errors = [abs(fd_ground_energy(half_disk, 0.0, PolarGrid(n, n, half_disk)).energy - exact) for n in (24, 48, 96)]
    assert errors[0] / errors[1] == pytest.approx(4.0, rel=0.05)
    assert errors[1] / errors[2] == pytest.approx(4.0, rel=0.05)


def test_richardson_matches_exact(reference_wedge):
    exact = ground_state(reference_wedge).planar_energy
    coarse, fine, eps = discretization_error(reference_wedge, 0.0, PolarGrid(48, 48, reference_wedge))
    extrapolated = fine + (fine - coarse) / 3
    assert abs(extrapolated - exact) < 0.05 * abs(fine - exact)
    assert abs(coarse - exact) <= 1.1 * eps


def test_eigenvector_single_signed(reference_wedge):
    sol = fd_ground_energy(reference_wedge, 2.0, PolarGrid(32, 16, reference_wedge))
    assert sol.residual < 1e-8
    u = sol.grid_values()
    assert np.all(u > -1e-8 * np.abs(u).max())
    # field pushes weight to small x: density peak sits closer to the tip than at F = 0
    u0 = fd_ground_energy(reference_wedge, 0.0, PolarGrid(32, 16, reference_wedge)).grid_values()
    assert np.argmax(u.max(axis=1)) < np.argmax(u0.max(axis=1))


def test_stark_shift_same_grid(reference_wedge):
    grid = PolarGrid(24, 16, reference_wedge)
    assert fd_stark_shift(reference_wedge, 0.0, grid) == 0.0
    assert fd_stark_shift(reference_wedge, 1.0, grid) > 0.0


def test_negative_potential_region():
    g = WedgeGeometry(2.0, 1.5 * math.pi, 1.0)
    sol = fd_ground_energy(g, 2.0, PolarGrid(24, 24, g))
    dense = np.linalg.eigvalsh(assemble(g, 2.0, PolarGrid(24, 24, g)).matrix.toarray())
    assert sol.energy == pytest.approx(dense[0], rel=1e-10)
