"""Independent eigenvalue oracle: Numerov shooting on the exact radial ODEs.

Both the Klein-Gordon and the Schrodinger Coulomb problems use the true
``l (l + 1)`` centrifugal term; nothing here touches the WKB machinery.

With ``r = exp(x)`` and ``u = exp(x/2) phi`` every radial equation of the
form ``u'' = [(c0 - 1/4)/r^2 + c1/r + c2] u`` becomes
``phi'' = (c0 + c1 r + c2 r^2) phi``, which is solved on a uniform x grid.

* Klein-Gordon: ``c0 = (l + 1/2)^2 - alpha^2``, ``c1 = -2 alpha E``,
  ``c2 = m^2 - E^2``.
* Schrodinger: ``c0 = (l + 1/2)^2``, ``c1 = -2 m alpha``, ``c2 = -2 m E'``.

The eigenvalue with ``n_r`` nodes is the lowest energy at which the outward
solution acquires ``n_r + 1`` sign changes, the last one being the tail
swinging through zero instead of blowing up past the outer turning point.
Bisection on that count brackets it down to adjacent floating-point
energies.  Since the coefficients are polynomial in E, the Klein-Gordon
energy dependence needs no separate fixed-point loop.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numba
import numpy as np

from .errors import ConvergenceError, DomainError, SupercriticalCouplingError
from .model import QuantumNumbers
from .quantize import EigenvalueResult, Method

DEFAULT_POINTS = 20000
MAX_BISECTIONS = 200


class Spacing(str, enum.Enum):
    UNIFORM = "uniform"
    LOGARITHMIC = "logarithmic"


@dataclass(frozen=True)
class RadialGrid:
    r_min: float
    r_max: float
    points: int = DEFAULT_POINTS
    spacing: Spacing = Spacing.LOGARITHMIC

    def __post_init__(self):
        object.__setattr__(self, "spacing", Spacing(self.spacing))
        if not 0.0 < self.r_min < self.r_max:
            raise DomainError(f"need 0 < r_min < r_max, got {self.r_min}, {self.r_max}")
        if self.points < 1000:
            raise DomainError(f"grid needs at least 1000 points, got {self.points}")

    def radii(self) -> np.ndarray:
        if self.spacing is Spacing.LOGARITHMIC:
            return np.geomspace(self.r_min, self.r_max, self.points)
        return np.linspace(self.r_min, self.r_max, self.points)

    def refined(self, factor: int = 2) -> "RadialGrid":
        """Same span with the spacing divided by ``factor``."""
        return RadialGrid(self.r_min, self.r_max, (self.points - 1) * factor + 1, self.spacing)


def default_grid(qn: QuantumNumbers, mass: float, alpha: float, points: int = DEFAULT_POINTS) -> RadialGrid:
    """Log grid from ``1e-6 / (m alpha)`` to ``50 n^2 / (m alpha)``."""
    bohr = 1.0 / (mass * alpha)
    return RadialGrid(1e-6 * bohr, 50.0 * qn.n**2 * bohr, points, Spacing.LOGARITHMIC)


@numba.njit(nogil=True)
def _shoot(c0, c1, c2, r_min, r_max, points, log_spacing, keep, r_turn):
    """Outward Numerov integration; returns (sign changes, last value, profile).

    Past ``r_turn`` the coefficient stays positive, so once the solution
    moves away from the axis there it can never cross again and the
    integration stops; the remaining profile entries repeat the last value.
    """
    lam = math.sqrt(c0)
    a1 = c1 / (2.0 * lam + 1.0)
    out = np.empty(points if keep else 1)
    if log_spacing:
        h = math.log(r_max / r_min) / (points - 1)
    else:
        h = (r_max - r_min) / (points - 1)
    h12 = h * h / 12.0

    def coeff(i):
        if log_spacing:
            r = r_min * math.exp(i * h)
            return c0 + r * (c1 + c2 * r)
        r = r_min + i * h
        return (c0 - 0.25) / (r * r) + c1 / r + c2

    def start(i):
        # regular solution r^lam (1 + a1 r), in phi (log) or u (uniform) form
        if log_spacing:
            r = r_min * math.exp(i * h)
            return r**lam * (1.0 + a1 * r)
        r = r_min + i * h
        return r ** (lam + 0.5) * (1.0 + a1 * r)

    y_prev = start(0)
    y_cur = start(1)
    g_prev = coeff(0)
    g_cur = coeff(1)
    scale = 1.0 / abs(y_cur)
    y_prev *= scale
    y_cur *= scale
    if keep:
        out[0] = y_prev
        out[1] = y_cur
    nodes = 0
    stop = points
    for i in range(2, points):
        if g_cur > 0.0 and y_cur * (y_cur - y_prev) > 0.0:
            r = r_min * math.exp((i - 1) * h) if log_spacing else r_min + (i - 1) * h
            if r > r_turn:
                stop = i
                break
        g_next = coeff(i)
        y_next = (
            2.0 * y_cur * (1.0 + 5.0 * h12 * g_cur) - y_prev * (1.0 - h12 * g_prev)
        ) / (1.0 - h12 * g_next)
        if (y_next < 0.0 and y_cur > 0.0) or (y_next > 0.0 and y_cur < 0.0):
            nodes += 1
        if abs(y_next) > 1e150:
            y_next *= 1e-150
            y_cur *= 1e-150
            if keep:
                for j in range(i):
                    out[j] *= 1e-150
        if keep:
            out[i] = y_next
        y_prev, y_cur = y_cur, y_next
        g_prev, g_cur = g_cur, g_next
    if keep:
        for j in range(stop, points):
            out[j] = y_cur
    else:
        out[0] = y_cur
    return nodes, y_cur, out


class Equation(str, enum.Enum):
    KLEIN_GORDON = "kg"
    SCHRODINGER = "nr"


def _coefficients(kind: Equation, qn: QuantumNumbers, mass: float, alpha: float, energy: float):
    lsq = (qn.l + 0.5) ** 2
    if kind is Equation.KLEIN_GORDON:
        return lsq - alpha * alpha, -2.0 * alpha * energy, (mass - energy) * (mass + energy)
    return lsq, -2.0 * mass * alpha, -2.0 * mass * energy


def _outer_turning_radius(c0, c1, c2, log_spacing):
    """Largest root of ``r^2 x coefficient``; beyond it the solution is evanescent."""
    c0 = c0 if log_spacing else c0 - 0.25
    if c2 <= 0.0:
        return math.inf
    disc = c1 * c1 - 4.0 * c2 * c0
    if disc < 0.0:
        return 0.0 if c0 > 0.0 else math.inf
    return max((-c1 + math.sqrt(disc)) / (2.0 * c2), 0.0)


def _integrate(kind, qn, mass, alpha, energy, grid, keep):
    c0, c1, c2 = _coefficients(kind, qn, mass, alpha, energy)
    log_spacing = grid.spacing is Spacing.LOGARITHMIC
    r_turn = _outer_turning_radius(c0, c1, c2, log_spacing)
    return _shoot(c0, c1, c2, grid.r_min, grid.r_max, grid.points, log_spacing, keep, r_turn)


def _count(kind, qn, mass, alpha, energy, grid):
    nodes, last, _ = _integrate(kind, qn, mass, alpha, energy, grid, False)
    return nodes, last


def radial_solution(
    kind: Equation, qn: QuantumNumbers, mass: float, alpha: float, energy: float, grid: RadialGrid
) -> Tuple[np.ndarray, np.ndarray]:
    """``(r, u)`` of the outward solution at ``energy``, u scaled to max |u| = 1."""
    _, _, y = _integrate(Equation(kind), qn, mass, alpha, energy, grid, True)
    log_spacing = grid.spacing is Spacing.LOGARITHMIC
    r = grid.radii()
    u = y * np.sqrt(r) if log_spacing else y
    return r, u / np.max(np.abs(u))


def _solve(kind, qn, mass, alpha, grid, lo, hi):
    target = qn.n_r + 1
    n_hi, _ = _count(kind, qn, mass, alpha, hi, grid)
    if n_hi < target:
        raise ConvergenceError(
            f"non-convergence: fewer than {target} nodes below threshold; no bound state on this grid"
        )
    n_lo, _ = _count(kind, qn, mass, alpha, lo, grid)
    if n_lo >= target:
        raise ConvergenceError("lower energy bound already exceeds the requested node count")
    for _ in range(MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        nodes, _ = _count(kind, qn, mass, alpha, mid, grid)
        if nodes >= target:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi), (hi - lo)


def ode_eigenvalue_kg(
    qn: QuantumNumbers, mass: float, alpha: float, grid: Optional[RadialGrid] = None
) -> EigenvalueResult:
    """Klein-Gordon Coulomb level (absolute energy) by node-count shooting."""
    if alpha > qn.l + 0.5:
        raise SupercriticalCouplingError(f"supercritical coupling: alpha={alpha} > l + 1/2")
    if alpha <= 0.0:
        raise ConvergenceError("non-convergence: alpha = 0 has no bound state below threshold")
    grid = grid or default_grid(qn, mass, alpha)
    energy, width = _solve(Equation.KLEIN_GORDON, qn, mass, alpha, grid, 0.0, mass * (1.0 - 1e-15))
    return EigenvalueResult(energy=energy, method=Method.ODE_ORACLE, residual=width / mass, qn=qn)


def ode_eigenvalue_nr(
    qn: QuantumNumbers, mass: float, alpha: float, grid: Optional[RadialGrid] = None
) -> EigenvalueResult:
    """Schrodinger Coulomb binding energy by node-count shooting."""
    if alpha <= 0.0:
        raise ConvergenceError("non-convergence: alpha = 0 has no bound state")
    grid = grid or default_grid(qn, mass, alpha)
    floor = -mass * alpha * alpha
    energy, width = _solve(Equation.SCHRODINGER, qn, mass, alpha, grid, floor, floor * 1e-12)
    return EigenvalueResult(energy=energy, method=Method.ODE_ORACLE, residual=width / abs(floor), qn=qn)
