"""Closed-form spectra and the hydrogen comparison table.

Coulomb energies are absolute (0 < E < m); :func:`table1` converts them to
bindings ``E - m``.  Confining spectra are returned as squared energies in
the two-body convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List

from .errors import SupercriticalCouplingError, UnphysicalError
from .model import QuantumNumbers

# Rows (l, n_r) and columns (E_NR, E_KG, E_SC) of the published hydrogen
# comparison, bindings in eV.
REFERENCE_HYDROGEN_TABLE = (
    (0, 0, -13.6155700, -13.6164800, -13.6143000),
    (1, 0, -3.4038930, -3.4039190, -3.4038440),
    (0, 1, -3.4038930, -3.4040400, -3.4037230),
    (1, 1, -1.5128410, -1.5128520, -1.5128250),
    (2, 1, -0.8509732, -0.8509756, -0.8509693),
    (2, 2, -0.5446228, -0.5446243, -0.5446208),
    (3, 2, -0.3782103, -0.3782109, -0.3782095),
    (4, 2, -0.2778688, -0.2778690, -0.2778684),
    (4, 3, -0.2127433, -0.2127435, -0.2127430),
)

# Calibration reproducing the E_NR column: m alpha^2 / 2 in eV and 1/alpha.
RYDBERG_EV = 13.6155700
INV_ALPHA = 137.036


@dataclass(frozen=True)
class SpectrumRow:
    qn: QuantumNumbers
    e_nr: float
    e_kg: float
    e_sc: float


def _binding_from_ratio(mass: float, x: float) -> float:
    """``m (1/sqrt(1 + x) - 1)`` without cancellation for small x."""
    root = math.sqrt(1.0 + x)
    return -mass * x / (root * (1.0 + root))


def _binding_from_sqrt(mass: float, x: float) -> float:
    """``m (sqrt(1 - x) - 1)`` without cancellation for small x."""
    return -mass * x / (1.0 + math.sqrt(1.0 - x))


def _vector_denominator(qn: QuantumNumbers, alpha: float) -> float:
    lam_sq = (qn.l + 0.5) ** 2 - alpha * alpha
    if lam_sq < 0.0:
        raise SupercriticalCouplingError(
            f"supercritical coupling: alpha={alpha} > l + 1/2 = {qn.l + 0.5}"
        )
    return qn.n_r + 0.5 + math.sqrt(lam_sq)


def _scalar_denominator(qn: QuantumNumbers, alpha: float) -> float:
    return qn.n_r + 0.5 + math.sqrt((qn.l + 0.5) ** 2 + alpha * alpha)


def coulomb_vector_energy(qn: QuantumNumbers, mass: float, alpha: float) -> float:
    """Vector Coulomb level ``m / sqrt(1 + alpha^2 / (n_r + 1/2 + Lambda)^2)``.

    Identical to the exact Klein-Gordon Coulomb spectrum.
    """
    denom = _vector_denominator(qn, alpha)
    return mass / math.sqrt(1.0 + (alpha / denom) ** 2)


def coulomb_vector_binding(qn: QuantumNumbers, mass: float, alpha: float) -> float:
    denom = _vector_denominator(qn, alpha)
    return _binding_from_ratio(mass, (alpha / denom) ** 2)


def coulomb_scalar_energy(qn: QuantumNumbers, mass: float, alpha: float) -> float:
    """Scalar Coulomb level ``m sqrt(1 - alpha^2 / (n_r + 1/2 + sqrt((l+1/2)^2 + alpha^2))^2)``."""
    denom = _scalar_denominator(qn, alpha)
    return mass * math.sqrt(1.0 - (alpha / denom) ** 2)


def coulomb_scalar_binding(qn: QuantumNumbers, mass: float, alpha: float) -> float:
    return _binding_from_sqrt(mass, (alpha / _scalar_denominator(qn, alpha)) ** 2)


def coulomb_scalar_momentum(qn: QuantumNumbers, mass: float, alpha: float) -> float:
    """Magnitude of the imaginary momentum p_n, so that ``E^2 = m^2 - |p_n|^2``."""
    return alpha * mass / _scalar_denominator(qn, alpha)


def fine_structure_sc(qn: QuantumNumbers, mass: float, alpha: float) -> float:
    """Leading alpha^4 correction of the scalar Coulomb level over -m alpha^2 / (2 n^2)."""
    n = qn.n
    return mass * alpha**4 / (2.0 * n**3) * (1.0 / (qn.l + 0.5) - 1.0 / (4.0 * n))


def schrodinger_coulomb_energy(qn: QuantumNumbers, mass: float, alpha: float) -> float:
    """Non-relativistic binding ``-m alpha^2 / (2 n^2)``."""
    return -mass * alpha * alpha / (2.0 * qn.n**2)


def linear_scalar_energy_sq(qn: QuantumNumbers, kappa: float) -> float:
    """Two-body scalar linear spectrum ``E^2 = 8 kappa (2 n_r + l + 3/2)``; mass-independent."""
    return 8.0 * kappa * (2 * qn.n_r + qn.l + 1.5)


def funnel_energy_sq(qn: QuantumNumbers, kappa: float, alpha_s: float) -> float:
    """First-order funnel spectrum ``E^2 = 8 kappa (2 n_r + l - alpha_s + 3/2)``."""
    e_sq = 8.0 * kappa * (2 * qn.n_r + qn.l - alpha_s + 1.5)
    if e_sq <= 0.0:
        raise UnphysicalError(f"E^2={e_sq} <= 0: alpha_s={alpha_s} too large for {qn}")
    return e_sq


def funnel_massless_wkb_energy_sq(qn: QuantumNumbers, kappa: float, alpha_s: float) -> float:
    """Exact leading-order WKB level of the massless two-body funnel.

    With ``m = 0`` the funnel radial momentum is again an oscillator in r^2,
    ``p^2 = A - kappa^2 r^2 - B / r^2`` with ``A = E^2/4 + 2 kappa alpha_s`` and
    ``B = alpha_s^2 + (l + 1/2)^2``, whose phase integral is
    ``(pi/2) (A / (2 kappa) - sqrt(B))``.
    """
    root_b = math.sqrt(alpha_s * alpha_s + (qn.l + 0.5) ** 2)
    return 8.0 * kappa * (2 * qn.n_r + 1 - alpha_s + root_b)


def mass_shift(e_sq: float, c_sq: float) -> float:
    """Meson mass squared ``M^2 = E^2 - C^2``."""
    m_sq = e_sq - c_sq
    if m_sq < 0.0:
        raise UnphysicalError(f"negative M^2={m_sq}")
    return m_sq


def shift_constant(kappa: float, alpha_s: float) -> float:
    """C^2 = 8 kappa alpha_s, the shift that turns the linear into the funnel spectrum."""
    return 8.0 * kappa * alpha_s


def hydrogen_calibration(rydberg_ev: float = RYDBERG_EV, inv_alpha: float = INV_ALPHA):
    """Return ``(m_ev, alpha)`` with ``m alpha^2 / 2 = rydberg_ev``."""
    alpha = 1.0 / inv_alpha
    return 2.0 * rydberg_ev / (alpha * alpha), alpha


def table1(mass: float, alpha: float) -> List[SpectrumRow]:
    """The nine hydrogen rows as bindings (NR, KG, SC) in the units of ``mass``."""
    rows = []
    for l, n_r, *_ in REFERENCE_HYDROGEN_TABLE:
        qn = QuantumNumbers(n_r=n_r, l=l)
        rows.append(
            SpectrumRow(
                qn=qn,
                e_nr=schrodinger_coulomb_energy(qn, mass, alpha),
                e_kg=coulomb_vector_binding(qn, mass, alpha),
                e_sc=coulomb_scalar_binding(qn, mass, alpha),
            )
        )
    return rows
