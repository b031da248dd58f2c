"""Turning points and phase-space integrals.

The radial integrand ``sqrt(p^2)`` vanishes like a square root at each
turning point.  :func:`sqrt_endpoint_quad` removes that behaviour with the
substitution ``r = a + (b - a) sin^2 t`` which turns it into a smooth
periodic-like integrand on ``[0, pi/2]``; Gauss-Legendre then converges
spectrally.  The same substitution also absorbs the ``r^(-1/2)`` behaviour
of a turning point that degenerates onto the origin.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.optimize import brentq, minimize_scalar
from scipy.special import roots_legendre

from .errors import ConvergenceError, NoBoundRegionError, SemiWkbError, UsageError
from .model import (
    Coupling,
    Family,
    PotentialSpec,
    QuantumNumbers,
    coulomb_coefficients,
    coulomb_p_squared,
    kinetic_energy_sq,
    p_squared_unchecked,
)

DEFAULT_RTOL = 1e-12
MIN_NODES = 16
MAX_NODES = 4096
LOG_MAP_RATIO = 8.0

SCAN_DECADES = (-8.0, 8.0)
SCAN_POINTS_PER_DECADE = 200


@dataclass(frozen=True)
class TurningPoints:
    """Real zeros of p^2, ascending.  ``nonphysical`` holds roots at r < 0."""

    physical: Tuple[float, ...]
    nonphysical: Tuple[float, ...] = ()

    @property
    def inner(self) -> float:
        return self.physical[0]

    @property
    def outer(self) -> float:
        return self.physical[-1]


@dataclass(frozen=True)
class PhaseIntegralReport:
    value: float
    error_estimate: float
    turning_points: Optional[TurningPoints] = None
    # (2 I-, 2 I+): the contour as twice the real integrals over both cuts
    cut_contributions: Optional[Tuple[float, float]] = None
    # (I_0, I_inf): the residues at the origin and at infinity
    residue_parts: Optional[Tuple[float, float]] = None

    @property
    def cut_discrepancy(self) -> Optional[float]:
        """|cut sum - residue sum| for contour reports, else None."""
        if self.cut_contributions is None:
            return None
        return abs(sum(self.cut_contributions) - self.value)


@functools.lru_cache(maxsize=None)
def _sin2_rule(n: int):
    x, w = roots_legendre(n)
    t = (x + 1.0) * (math.pi / 4.0)
    s, c = np.sin(t), np.cos(t)
    # fractional position u in [0, 1] and du/dt
    return s * s, w * (math.pi / 4.0) * 2.0 * s * c


def sqrt_endpoint_quad(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    rtol: float = DEFAULT_RTOL,
    max_nodes: int = MAX_NODES,
) -> Tuple[float, float]:
    """Integrate ``sqrt(max(f, 0))`` over ``[a, b]`` where f has simple zeros at the ends.

    The interval is parametrised by ``u = sin^2 t``.  When both ends share a
    sign and span more than a factor :data:`LOG_MAP_RATIO`, ``r`` is taken
    geometric in u so that integrands like ``1/r`` near a tiny inner end stay
    resolved.  Node count doubles from :data:`MIN_NODES` until two successive
    rules agree to ``rtol``.  Returns ``(value, error_estimate)``; the
    estimate is the difference between the last two rules.
    """
    width = b - a
    if width <= 0.0:
        return 0.0, 0.0
    log_span = 0.0
    if a * b > 0.0 and b / a > LOG_MAP_RATIO or a * b > 0.0 and a / b > LOG_MAP_RATIO:
        log_span = math.log(b / a)

    def rule(n):
        u, du = _sin2_rule(n)
        if log_span:
            r = a * np.exp(u * log_span)
            jac = du * r * log_span
        else:
            r = a + width * u
            jac = du * width
        vals = np.asarray(f(r), dtype=float)
        return float(np.dot(jac, np.sqrt(np.maximum(vals, 0.0))))

    n = MIN_NODES
    prev = rule(n)
    est = math.inf
    while n < max_nodes:
        n *= 2
        cur = rule(n)
        est = abs(cur - prev)
        if est <= rtol * abs(cur):
            return cur, est
        prev = cur
    raise ConvergenceError(
        f"phase quadrature did not converge with {max_nodes} nodes", estimate=est
    )


def _stable_quadratic_roots(a: float, b: float, c: float):
    """Real roots of ``a x^2 + b x + c`` ascending, or None if complex."""
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        # clamp round-off when the two roots coincide
        if disc > -1e-14 * b * b:
            disc = 0.0
        else:
            return None
    q = -0.5 * (b + math.copysign(math.sqrt(disc), b))
    if q == 0.0:
        return (0.0, 0.0)
    r1, r2 = q / a, c / q
    return (min(r1, r2), max(r1, r2))


def _coulomb_turning_points(energy, spec, l):
    big_a, big_b, big_c = coulomb_coefficients(energy, spec, l)
    if big_a >= 0.0:
        raise NoBoundRegionError(
            f"no bound region at this E: E={energy} is at or above the continuum threshold"
        )
    # -A r^2 - 2B r + C = 0  (p^2 r^2 = A r^2 + 2B r - C)
    roots = _stable_quadratic_roots(-big_a, -2.0 * big_b, big_c)
    if roots is None or roots[1] <= 0.0 or roots[0] < 0.0:
        raise NoBoundRegionError(f"no bound region at this E={energy}")
    return TurningPoints(physical=roots)


def _linear_massless_turning_points(energy, spec, l):
    ek = kinetic_energy_sq(energy, spec)
    kappa_sq = spec.kappa**2
    roots = _stable_quadratic_roots(kappa_sq, -ek, (l + 0.5) ** 2)
    if roots is None or roots[0] <= 0.0:
        raise NoBoundRegionError(f"no bound region at this E={energy}")
    inner, outer = math.sqrt(roots[0]), math.sqrt(roots[1])
    return TurningPoints(physical=(inner, outer), nonphysical=(-outer, -inner))


def _scan_window(spec: PotentialSpec, energy: float) -> Tuple[float, float]:
    """Radii spanned by the scan: every natural length of the problem, padded.

    The padding is :data:`SCAN_DECADES` around the smallest and largest of
    ``1/m``, ``1/sqrt(kappa)``, ``alpha/E`` and ``E/kappa`` (each clipped to the same
    number of decades around ``1/sqrt(kappa)``), so a negligible mass or
    coupling cannot drag the window away from the physical region.
    """
    base = 1.0 / math.sqrt(spec.kappa) if spec.kappa > 0.0 else spec.length_scale(energy)
    scales = [base]
    if spec.mass > 0.0:
        scales.append(1.0 / spec.mass)
    if spec.alpha > 0.0 and energy:
        scales.append(spec.alpha / abs(energy))
    if spec.kappa > 0.0 and energy:
        # outer reach of the linear wall
        scales.append(math.sqrt(kinetic_energy_sq(energy, spec)) / spec.kappa)
    lo, hi = SCAN_DECADES
    # scales far from the confinement length are irrelevant and would blow up the grid
    scales = [min(max(s, base * 10.0**lo), base * 10.0**hi) for s in scales]
    return min(scales) * 10.0**lo, max(scales) * 10.0**hi


def _scan_roots(p2: Callable, window: Tuple[float, float], sign: float):
    """Sign changes of p2 on a log grid along ``sign * r``, refined by Brent."""
    r_lo, r_hi = window
    npts = int(math.log10(r_hi / r_lo) * SCAN_POINTS_PER_DECADE) + 1
    radii = sign * np.geomspace(r_lo, r_hi, npts)
    with np.errstate(over="ignore", invalid="ignore"):
        vals = p2(radii)
    roots = []
    positive = vals > 0.0
    for i in np.nonzero(positive[:-1] != positive[1:])[0]:
        roots.append(brentq(p2, radii[i], radii[i + 1], xtol=1e-300, rtol=1e-15, maxiter=200))
    if not roots and np.all(np.isfinite(vals)):
        # a narrow allowed region can hide between grid points near the maximum
        i = int(np.argmax(vals))
        j0, j1 = max(i - 1, 0), min(i + 1, npts - 1)
        a, b = sorted((abs(radii[j0]), abs(radii[j1])))
        opt = minimize_scalar(
            lambda x: -p2(sign * x), bounds=(a, b), method="bounded", options={"xatol": 1e-14 * b}
        )
        if -opt.fun > 0.0:
            peak = sign * opt.x
            left, right = sorted((radii[j0], radii[j1]))
            for lo_r, hi_r in ((left, peak), (peak, right)):
                if p2(lo_r) * p2(hi_r) < 0.0:
                    roots.append(brentq(p2, lo_r, hi_r, xtol=1e-300, rtol=1e-15, maxiter=200))
    return sorted(roots)


def find_turning_points(energy: float, spec: PotentialSpec, qn: QuantumNumbers) -> TurningPoints:
    """All real zeros of p^2(r) at energy ``energy``.

    Coulomb problems (quadratic in 1/r) and the massless linear problem
    (quadratic in r^2) use closed forms; the rest are found by scanning.
    """
    spec.check_solvable(qn.l)
    l = qn.l
    if spec.family is Family.COULOMB:
        return _coulomb_turning_points(energy, spec, l)
    if spec.family is Family.LINEAR and spec.mass == 0.0:
        return _linear_massless_turning_points(energy, spec, l)

    def p2(r):
        return p_squared_unchecked(r, energy, spec, l)

    window = _scan_window(spec, energy)
    physical = _scan_roots(p2, window, 1.0)
    if len(physical) < 2:
        raise NoBoundRegionError(f"no bound region at this E={energy}")
    if len(physical) > 2:
        raise SemiWkbError(f"more than one classically allowed region at E={energy}")
    nonphysical = _scan_roots(p2, window, -1.0)
    return TurningPoints(physical=tuple(physical), nonphysical=tuple(nonphysical))


def radial_phase_integral(
    energy: float,
    spec: PotentialSpec,
    qn: QuantumNumbers,
    rtol: float = DEFAULT_RTOL,
    turning_points: Optional[TurningPoints] = None,
) -> PhaseIntegralReport:
    """``integral sqrt(p^2) dr`` between the physical turning points."""
    tp = turning_points or find_turning_points(energy, spec, qn)
    l = qn.l
    if spec.family is Family.COULOMB:
        coeffs = coulomb_coefficients(energy, spec, l)

        def p2(r):
            return coulomb_p_squared(r, coeffs)

    else:

        def p2(r):
            return p_squared_unchecked(r, energy, spec, l)

    inner, outer = tp.inner, tp.outer
    if inner == 0.0:
        # degenerate origin endpoint: p^2 ~ 1/r there, evaluate off the pole
        def p2(r, _f=p2):
            return _f(np.maximum(r, np.finfo(float).tiny))

    value, err = sqrt_endpoint_quad(p2, inner, outer, rtol=rtol)
    return PhaseIntegralReport(value=value, error_estimate=err, turning_points=tp)


def contour_phase_linear(
    energy: float,
    spec: PotentialSpec,
    qn: QuantumNumbers,
    rtol: float = DEFAULT_RTOL,
) -> PhaseIntegralReport:
    """Contour integral around the four turning points of the scalar linear problem.

    The contour is evaluated two independent ways: from the residues at the
    origin and at infinity, ``I_0 = -2 pi (l + 1/2)`` and
    ``I_inf = 2 pi E_k / (2 kappa)`` (``E_k = E^2 / 4`` for two bodies), and
    as twice the real-axis integrals over the negative and positive cuts.
    ``value`` is the residue sum.
    """
    if spec.family is not Family.LINEAR or spec.coupling is not Coupling.SCALAR:
        raise UsageError("contour evaluation needs a scalar linear potential")
    tp = find_turning_points(energy, spec, qn)
    if len(tp.nonphysical) != 2:
        raise NoBoundRegionError("the r < 0 cut is absent at this energy")
    l = qn.l

    def p2(r):
        return p_squared_unchecked(r, energy, spec, l)

    neg, neg_err = sqrt_endpoint_quad(p2, tp.nonphysical[0], tp.nonphysical[1], rtol=rtol)
    pos, pos_err = sqrt_endpoint_quad(p2, tp.physical[0], tp.physical[1], rtol=rtol)
    i_zero = -2.0 * math.pi * (l + 0.5)
    i_inf = 2.0 * math.pi * kinetic_energy_sq(energy, spec) / (2.0 * spec.kappa)
    return PhaseIntegralReport(
        value=i_zero + i_inf,
        error_estimate=2.0 * (neg_err + pos_err),
        turning_points=tp,
        cut_contributions=(2.0 * neg, 2.0 * pos),
        residue_parts=(i_zero, i_inf),
    )


def angular_phase_integral(m_total: float, m_z: float, rtol: float = DEFAULT_RTOL) -> float:
    """``integral sqrt(M^2 - M_z^2 / sin^2 theta) d theta`` between its turning points.

    Analytically this is ``pi (M - M_z)``.
    """
    if not m_total > m_z >= 0.0:
        raise NoBoundRegionError(f"no allowed region for M={m_total}, M_z={m_z}")
    theta1 = math.asin(m_z / m_total)
    theta2 = math.pi - theta1
    msq, mzsq = m_total * m_total, m_z * m_z

    def integrand_sq(theta):
        s = np.sin(theta)
        return msq - mzsq / (s * s)

    value, _ = sqrt_endpoint_quad(integrand_sq, theta1, theta2, rtol=rtol)
    return value
