import numpy as np
import pytest

from semiwkb import closed
from semiwkb.errors import ConvergenceError, DomainError, SupercriticalCouplingError
from semiwkb.model import QuantumNumbers
from semiwkb.oracle import (
    Equation,
    RadialGrid,
    Spacing,
    default_grid,
    ode_eigenvalue_kg,
    ode_eigenvalue_nr,
    radial_solution,
)
from semiwkb.quantize import Method
from semiwkb.wavefn import sign_changes


def bound_part(u, floor=1e-6):
    """Samples up to where the decaying tail falls below ``floor``."""
    peak = int(np.argmax(np.abs(u)))
    below = np.nonzero(np.abs(u[peak:]) < floor)[0]
    return u[: peak + below[0]] if below.size else u


def test_kg_ground_state():
    result = ode_eigenvalue_kg(QuantumNumbers(0, 0), 1.0, 0.3)
    assert result.energy == pytest.approx(0.9486833, abs=1e-6)
    assert result.method is Method.ODE_ORACLE


def test_kg_excited_state_matches_closed_form():
    qn = QuantumNumbers(1, 1)
    assert ode_eigenvalue_kg(qn, 1.0, 0.1).energy == pytest.approx(closed.coulomb_vector_energy(qn, 1.0, 0.1), rel=1e-6)


def test_kg_free_limit_has_no_bound_state():
    with pytest.raises(ConvergenceError, match="non-convergence"):
        ode_eigenvalue_kg(QuantumNumbers(0, 0), 1.0, 0.0)


def test_kg_supercritical():
    with pytest.raises(SupercriticalCouplingError):
        ode_eigenvalue_kg(QuantumNumbers(0, 0), 1.0, 0.6)


def test_nr_examples():
    assert ode_eigenvalue_nr(QuantumNumbers(0, 0), 1.0, 0.2).energy == pytest.approx(-0.02, abs=1e-8)
    assert ode_eigenvalue_nr(QuantumNumbers(1, 1), 1.0, 0.2).energy == pytest.approx(-0.04 / 18, rel=1e-8)


def test_mass_scaling():
    qn = QuantumNumbers(0, 2)
    assert ode_eigenvalue_kg(qn, 3.0, 0.3).energy / 3.0 == pytest.approx(ode_eigenvalue_kg(qn, 1.0, 0.3).energy, rel=1e-10)


@pytest.mark.parametrize("kind", ["kg", "nr"])
def test_grid_refinement_order(kind):
    qn = QuantumNumbers(1, 0)
    alpha = 0.3
    if kind == "kg":
        exact = closed.coulomb_vector_energy(qn, 1.0, alpha)
        solve = ode_eigenvalue_kg
    else:
        exact = closed.schrodinger_coulomb_energy(qn, 1.0, alpha)
        solve = ode_eigenvalue_nr
    coarse = default_grid(qn, 1.0, alpha, points=1000)
    errors = [abs(solve(qn, 1.0, alpha, grid).energy - exact) for grid in (coarse, coarse.refined(2), coarse.refined(4))]
    assert errors[0] / errors[1] >= 4.0
    assert errors[1] / errors[2] >= 4.0


@pytest.mark.parametrize("kind", [Equation.KLEIN_GORDON, Equation.SCHRODINGER])
@pytest.mark.parametrize("n_r, l", [(0, 0), (2, 1), (3, 3)])
def test_converged_solution_has_n_r_nodes(kind, n_r, l):
    qn = QuantumNumbers(n_r, l)
    solve = ode_eigenvalue_kg if kind is Equation.KLEIN_GORDON else ode_eigenvalue_nr
    energy = solve(qn, 1.0, 0.3).energy
    r, u = radial_solution(kind, qn, 1.0, 0.3, energy, default_grid(qn, 1.0, 0.3))
    assert np.max(np.abs(u)) == pytest.approx(1.0)
    assert sign_changes(bound_part(u)) == n_r


def test_uniform_grid_agrees():
    qn = QuantumNumbers(0, 1)
    grid = RadialGrid(1e-4, 200.0, 200000, Spacing.UNIFORM)
    expected = closed.coulomb_vector_energy(qn, 1.0, 0.3)
    assert ode_eigenvalue_kg(qn, 1.0, 0.3, grid).energy == pytest.approx(expected, rel=1e-6)


def test_grid_invariants():
    with pytest.raises(DomainError):
        RadialGrid(1.0, 0.5)
    with pytest.raises(DomainError):
        RadialGrid(0.0, 1.0)
    with pytest.raises(DomainError):
        RadialGrid(1e-3, 1.0, points=999)
    grid = RadialGrid(1e-3, 10.0, 1001, "uniform")
    assert grid.spacing is Spacing.UNIFORM
    assert grid.refined(2).points == 2001
    radii = grid.radii()
    assert radii[0] == 1e-3 and radii[-1] == pytest.approx(10.0)


def test_default_grid_layout():
    grid = default_grid(QuantumNumbers(1, 1), 1.0, 0.1)
    assert grid.r_min == pytest.approx(1e-5)
    assert grid.r_max == pytest.approx(50 * 9 / 0.1)
    assert grid.points == 20000
