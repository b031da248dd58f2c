"""Leading-order WKB radial eigenfunctions.

Inside the classically allowed region ``[r_in, r_out]``::

    R~(r) = A / sqrt|p| * cos(Phi(r) - pi/4),   Phi(r) = integral_{r_in}^r p dr

Outside, the decaying continuations ``A / (2 sqrt|p|) exp(-integral |p| dr)``
are used, with the factor ``(-1)^n_r`` beyond ``r_out`` that follows from
the quantization condition.  ``R = R~ / r`` is the radial function of the
three-dimensional wavefunction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import roots_legendre

from .errors import ConvergenceError, DomainError, NoBoundRegionError, UsageError
from .model import Family, PotentialSpec, QuantumNumbers, coulomb_aux, p_squared_unchecked
from .phase import TurningPoints, radial_phase_integral
from .quantize import DEFAULT_TOLERANCE, phase_target, solve_radial_eigenvalue

P_FLOOR = 1e-12
_NORM_SAMPLES = 1000


@dataclass(frozen=True)
class WkbWavefunction:
    qn: QuantumNumbers
    spec: PotentialSpec
    energy: float
    turning_points: TurningPoints
    # |p_n| r_in: the constant-momentum action at the inner turning point
    chi1: float
    normalization: float
    momentum_scale: float

    @property
    def p_n(self) -> float:
        """Constant-momentum magnitude ``sqrt(m^2 - E^2)`` of the Coulomb problems."""
        return coulomb_momentum(self.spec, self.energy)


def coulomb_momentum(spec: PotentialSpec, energy: float) -> float:
    if spec.family is not Family.COULOMB:
        raise UsageError("a constant |p_n| is only defined for Coulomb problems")
    e_kin = 0.5 * energy if spec.two_body else energy
    return math.sqrt((spec.mass - e_kin) * (spec.mass + e_kin))


def _cumulative_action(p2, start: float, ends: np.ndarray, nodes: int = 256) -> np.ndarray:
    """``integral_start^end sqrt(max(p2, 0)) dr`` for each end (signed by direction).

    ``start`` is a turning point (square-root zero).  Geometric spacing in
    the substitution keeps ``1/r`` behaviour near the origin resolved.
    """
    ends = np.asarray(ends, dtype=float)
    out = np.zeros_like(ends)
    x, w = roots_legendre(nodes)
    t = (x + 1.0) * (math.pi / 4.0)
    u = np.sin(t) ** 2
    du = w * (math.pi / 4.0) * 2.0 * np.sin(t) * np.cos(t)
    mask = ends != start
    b = ends[mask][:, None]
    if start > 0.0:
        ratio = np.log(b / start)
        r = start * np.exp(u[None, :] * ratio)
        jac = r * ratio
    else:
        r = start + (b - start) * u[None, :]
        jac = np.broadcast_to(b - start, r.shape)
    with np.errstate(invalid="ignore", divide="ignore"):
        vals = np.sqrt(np.maximum(p2(r), 0.0))
    out[mask] = (vals * jac) @ du
    return out


def wkb_wavefunction(
    qn: QuantumNumbers,
    spec: PotentialSpec,
    energy: Optional[float] = None,
    tolerance: float = DEFAULT_TOLERANCE,
) -> WkbWavefunction:
    """Build the eigenfunction for ``qn``; ``energy`` must satisfy the quantization condition."""
    if energy is None:
        energy = solve_radial_eigenvalue(qn, spec, tolerance=tolerance).energy
    report = radial_phase_integral(energy, spec, qn)
    residual = abs(report.value - phase_target(qn.n_r))
    if residual > max(tolerance, 10.0 * report.error_estimate):
        raise ConvergenceError(
            f"E={energy} is not an eigenvalue for {qn}: phase residual {residual:.3e}",
            estimate=residual,
        )
    tp = report.turning_points
    r_in, r_out = tp.inner, tp.outer
    inside = r_in + (r_out - r_in) * np.arange(1, _NORM_SAMPLES) / _NORM_SAMPLES
    p_inside = np.sqrt(np.maximum(p_squared_unchecked(inside, energy, spec, qn.l), 0.0))
    momentum_scale = float(np.max(p_inside))
    chi1 = coulomb_momentum(spec, energy) * r_in if spec.family is Family.COULOMB else 0.0
    draft = WkbWavefunction(qn, spec, energy, tp, chi1, 1.0, momentum_scale)
    amplitude = float(np.max(np.abs(wkb_radial_wavefunction(inside, draft))))
    return WkbWavefunction(qn, spec, energy, tp, chi1, 1.0 / amplitude, momentum_scale)


def phase_at(r, wf: WkbWavefunction):
    """``Phi(r) = integral_{r_in}^r p dr`` for radii inside the allowed region."""
    r = np.atleast_1d(np.asarray(r, dtype=float))
    tp = wf.turning_points
    if np.any((r < tp.inner) | (r > tp.outer)):
        raise DomainError("phase_at is defined inside the allowed region only")
    return _cumulative_action(lambda x: _p2(x, wf), tp.inner, r)


def _p2(r, wf):
    with np.errstate(divide="ignore"):
        return p_squared_unchecked(r, wf.energy, wf.spec, wf.qn.l)


def wkb_radial_wavefunction(r, wf: WkbWavefunction):
    """``R~(r)``, the WKB radial function at each radius (array in, array out)."""
    r = np.asarray(r, dtype=float)
    scalar = r.ndim == 0
    r = np.atleast_1d(r)
    if np.any(r <= 0.0):
        raise DomainError("radius must be strictly positive")
    tp = wf.turning_points
    r_in, r_out = tp.inner, tp.outer
    p_abs = np.sqrt(np.abs(_p2(r, wf)))
    p_abs = np.maximum(p_abs, P_FLOOR * wf.momentum_scale)
    amp = wf.normalization / np.sqrt(p_abs)
    out = np.empty_like(r)

    left = r < r_in
    right = r > r_out
    mid = ~(left | right)
    if np.any(mid):
        phase = _cumulative_action(lambda x: _p2(x, wf), r_in, r[mid])
        out[mid] = amp[mid] * np.cos(phase - math.pi / 4.0)
    neg_p2 = lambda x: -_p2(x, wf)  # noqa: E731
    if np.any(left):
        decay = -_cumulative_action(neg_p2, r_in, r[left])
        out[left] = 0.5 * amp[left] * np.exp(-decay)
    if np.any(right):
        decay = _cumulative_action(neg_p2, r_out, r[right])
        out[right] = (-1.0) ** wf.qn.n_r * 0.5 * amp[right] * np.exp(-decay)
    return out[0] if scalar else out


def standing_wave(r, wf: WkbWavefunction, p_n: Optional[float] = None):
    """``C cos(|p_n| r - chi1 - pi/4)`` with C the wavefunction's normalization."""
    p_n = wf.p_n if p_n is None else abs(p_n)
    return wf.normalization * np.cos(p_n * np.asarray(r, dtype=float) - wf.chi1 - math.pi / 4.0)


def sign_changes(values) -> int:
    signs = np.sign(np.asarray(values))
    signs = signs[signs != 0]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def sample_radii(wf: WkbWavefunction, samples: int = 2000) -> np.ndarray:
    """Radii covering both evanescent tails and the allowed region."""
    tp = wf.turning_points
    r_in, r_out = tp.inner, tp.outer
    lo = r_in * 0.2 if r_in > 0.0 else r_out * 1e-4
    inner_tail = np.geomspace(lo, r_in, samples // 8, endpoint=False) if r_in > 0.0 else np.empty(0)
    body = r_in + (r_out - r_in) * (np.arange(1, samples) / samples)
    outer_tail = np.linspace(r_out, 2.0 * r_out, samples // 8 + 1)[1:]
    return np.concatenate([inner_tail, body, outer_tail])


def node_count(wf: WkbWavefunction, samples: int = 4000) -> int:
    return sign_changes(wkb_radial_wavefunction(sample_radii(wf, samples), wf))


def small_r_exponent(wf: WkbWavefunction, fit_points: int = 41) -> float:
    """Log-slope ``d ln R / d ln r`` of ``R = R~/r`` deep inside the inner barrier.

    Expected value: ``Lambda - 1/2`` with the coupling's effective index.
    """
    if wf.spec.family is not Family.COULOMB:
        raise UsageError("small-r exponent is defined for Coulomb problems")
    r_in = wf.turning_points.inner
    if r_in <= 0.0:
        raise NoBoundRegionError("no inner barrier: the inner turning point sits at the origin")
    r = r_in * np.geomspace(1e-6, 1e-4, fit_points)
    radial = wkb_radial_wavefunction(r, wf) / r
    x, y = np.log(r), np.log(np.abs(radial))
    slope, intercept = np.polyfit(x, y, 1)
    misfit = np.max(np.abs(y - (slope * x + intercept)))
    if not np.isfinite(slope) or misfit > 1e-3 * max(1.0, abs(intercept)):
        raise ConvergenceError(f"small-r behaviour is not a power law (misfit {misfit:.2e})")
    return float(slope)


def expected_small_r_exponent(spec: PotentialSpec, l: int) -> float:
    aux = coulomb_aux(l, spec.alpha)
    lam = aux.lambda_scalar if spec.coupling.value == "scalar" else aux.lambda_vector
    return lam - 0.5
