"""Eigenvalues from the leading-order quantization condition.

The real-axis condition is ``integral p dr = pi (n_r + 1/2)`` between the
physical turning points.  The phase is monotone in E, so a coarse geometric
grid brackets the target once and Brent's method finishes the job.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from . import closed
from .errors import NoBoundRegionError, NoBoundStateError, ConvergenceError
from .model import (
    AngularEigenvalue,
    Coupling,
    Family,
    PotentialSpec,
    QuantumNumbers,
)
from .phase import TurningPoints, angular_phase_integral, find_turning_points, radial_phase_integral

DEFAULT_TOLERANCE = 1e-10
_GRID_POINTS = 400


class Method(str, enum.Enum):
    CLOSED_FORM = "closed"
    NUMERIC_WKB = "wkb"
    ODE_ORACLE = "ode"


@dataclass(frozen=True)
class EigenvalueResult:
    energy: float
    method: Method
    residual: float
    qn: QuantumNumbers
    turning_points: Optional[TurningPoints] = None

    @property
    def energy_sq(self) -> float:
        return self.energy * self.energy


def phase_target(n_r: int) -> float:
    return math.pi * (n_r + 0.5)


def _phase_or_zero(energy, spec, qn):
    try:
        return radial_phase_integral(energy, spec, qn).value
    except NoBoundRegionError:
        return 0.0


def _energy_grid(spec: PotentialSpec, qn: QuantumNumbers, extend: int):
    if spec.family is Family.COULOMB:
        ceiling = spec.mass * (2.0 if spec.two_body and spec.coupling is Coupling.SCALAR else 1.0)
        # approach the threshold geometrically in the binding
        return ceiling * (1.0 - np.geomspace(1.0 - 1e-12, 1e-11, _GRID_POINTS))
    scale = 1.0 if spec.two_body else 0.5
    e_max = 10.0 * (scale * math.sqrt(8.0 * spec.kappa * (2 * qn.n_r + qn.l + 1.5)) + 2.0 * spec.mass)
    e_max += 10.0 * scale * math.sqrt(8.0 * spec.kappa * spec.alpha)
    e_max *= 2.0**extend
    return np.geomspace(1e-8 * e_max, e_max, _GRID_POINTS)


def _bracket(f, grid):
    """Smallest grid interval with f(lo) < 0 <= f(hi), by bisection on indices."""
    lo, hi = 0, len(grid) - 1
    f_hi = f(grid[hi])
    if f_hi < 0.0:
        return None
    f_lo = f(grid[lo])
    if f_lo >= 0.0:
        return None
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if f(grid[mid]) < 0.0:
            lo = mid
        else:
            hi = mid
    return grid[lo], grid[hi]


def _polish(f, energy: float, max_steps: int = 64) -> float:
    """Walk float by float to the sign change of the increasing ``f``.

    Brent stops within a few ulps; near the Coulomb threshold each ulp is
    worth ~1e-10 of phase, so the last steps are taken explicitly.
    """
    value = f(energy)
    if value == 0.0:
        return energy
    direction = -math.inf if value > 0.0 else math.inf
    for _ in range(max_steps):
        step = float(np.nextafter(energy, direction))
        step_value = f(step)
        if (step_value > 0.0) != (value > 0.0) or step_value == 0.0:
            return step if abs(step_value) < abs(value) else energy
        energy, value = step, step_value
    return energy


def _float_limited(f, energy: float) -> bool:
    """True when the root sits between ``energy`` and a neighbouring float.

    Close to the Coulomb threshold the phase is so steep in E that one ulp
    of E moves it by more than the tolerance; the residual then measures the
    float grid, not the solver.
    """
    below = np.nextafter(energy, -math.inf)
    above = np.nextafter(energy, math.inf)
    f_mid = f(energy)
    return f(below) * f_mid <= 0.0 or f_mid * f(above) <= 0.0


def solve_radial_eigenvalue(
    qn: QuantumNumbers,
    spec: PotentialSpec,
    tolerance: float = DEFAULT_TOLERANCE,
) -> EigenvalueResult:
    """Energy at which the radial phase integral equals ``pi (n_r + 1/2)``."""
    spec.check_solvable(qn.l)
    if spec.family is Family.COULOMB and spec.alpha == 0.0:
        raise NoBoundStateError("no bound state with these quantum numbers: alpha = 0")
    target = phase_target(qn.n_r)

    def f(energy):
        return _phase_or_zero(energy, spec, qn) - target

    bracket = None
    for extend in range(0, 1 if spec.family is Family.COULOMB else 40):
        bracket = _bracket(f, _energy_grid(spec, qn, extend))
        if bracket is not None:
            break
    if bracket is None:
        raise NoBoundStateError(f"no bound state with these quantum numbers {qn}")
    energy = _polish(f, brentq(f, *bracket, xtol=1e-300, rtol=1e-15, maxiter=500))
    report = radial_phase_integral(energy, spec, qn)
    residual = abs(report.value - target)
    if residual > tolerance and not _float_limited(f, energy):
        raise ConvergenceError(
            f"quantization residual {residual:.3e} exceeds tolerance {tolerance:.1e}",
            estimate=residual,
        )
    return EigenvalueResult(
        energy=energy,
        method=Method.NUMERIC_WKB,
        residual=residual,
        qn=qn,
        turning_points=report.turning_points,
    )


def closed_form_eigenvalue(qn: QuantumNumbers, spec: PotentialSpec) -> EigenvalueResult:
    """The analytic level for the spec; the funnel value is first order in alpha_s."""
    spec.check_solvable(qn.l)
    two_body = spec.two_body and spec.coupling is Coupling.SCALAR
    if spec.family is Family.COULOMB:
        if spec.coupling is Coupling.VECTOR:
            energy = closed.coulomb_vector_energy(qn, spec.mass, spec.alpha)
        else:
            energy = closed.coulomb_scalar_energy(qn, spec.mass, spec.alpha)
            if two_body:
                energy *= 2.0
    else:
        if spec.family is Family.LINEAR:
            e_sq = closed.linear_scalar_energy_sq(qn, spec.kappa)
        else:
            e_sq = closed.funnel_energy_sq(qn, spec.kappa, spec.alpha)
        if not two_body:
            e_sq /= 4.0
        energy = math.sqrt(e_sq)
    return EigenvalueResult(energy=energy, method=Method.CLOSED_FORM, residual=0.0, qn=qn)


def angular_eigenvalues(l: int, m_int: int) -> AngularEigenvalue:
    """``M^2 = (l + 1/2)^2`` from ``sqrt(M^2) = M_z + n_theta + 1/2`` with integer M_z."""
    qn = QuantumNumbers(n_r=0, l=l, m_int=m_int)
    m_z = qn.m_int
    root = m_z + qn.n_theta + 0.5
    return AngularEigenvalue(m_squared=root * root, m_z=m_z, n_theta=qn.n_theta)


def invert_angular_quantization(n_theta: int, m_z: int) -> float:
    """Solve the polar quantization condition numerically for M^2."""
    target = math.pi * (n_theta + 0.5)

    def f(m_total):
        return angular_phase_integral(m_total, m_z) - target

    # the root satisfies M >= M_z + 1/2; a sliver-thin region near M_z only costs precision
    lo = m_z + 0.25
    hi = m_z + n_theta + 2.0
    m_total = brentq(f, lo, hi, xtol=1e-15, rtol=1e-15)
    return m_total * m_total
