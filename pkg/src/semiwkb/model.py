"""Physical problem definition: potentials, couplings and quantum numbers.

Everything is in natural units (hbar = c = 1).  Two couplings are supported:

* vector-like, where the potential shifts the energy,
  ``p^2 = (E - V)^2 - m^2 - (l + 1/2)^2 / r^2``;
* scalar-like, where it adds to the rest mass, ``W = m + V`` and
  ``p^2 = E^2 - W^2 - (l + 1/2)^2 / r^2``.

For the two-body scalar problem (equal masses bound by a common potential)
the kinetic term ``E^2`` is replaced by ``E^2 / 4``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    DomainError,
    InvalidQuantumNumbers,
    NonNormalizableError,
    SupercriticalCouplingError,
)


class Family(str, enum.Enum):
    COULOMB = "coulomb"
    LINEAR = "linear"
    FUNNEL = "funnel"


class Coupling(str, enum.Enum):
    VECTOR = "vector"
    SCALAR = "scalar"


@dataclass(frozen=True)
class PotentialSpec:
    """A spherically symmetric potential together with its Lorentz coupling.

    ``alpha`` is the Coulomb strength (alpha_s for the funnel), ``kappa`` the
    string tension.  Vector coupling of a confining family is constructible
    but flagged through :attr:`normalizable`; solvers refuse it.
    """

    family: Family
    coupling: Coupling
    mass: float = 0.0
    alpha: float = 0.0
    kappa: float = 0.0
    two_body: bool = False

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "coupling", Coupling(self.coupling))
        if not self.mass >= 0.0:
            raise DomainError(f"mass must be >= 0, got {self.mass}")
        if self.family in (Family.LINEAR, Family.FUNNEL):
            if not self.kappa > 0.0:
                raise DomainError(f"{self.family.value} potential needs kappa > 0")
        elif self.kappa != 0.0:
            raise DomainError("kappa is only meaningful for linear/funnel potentials")
        if self.family in (Family.COULOMB, Family.FUNNEL):
            if not self.alpha >= 0.0:
                raise DomainError(f"alpha must be >= 0, got {self.alpha}")
        elif self.alpha != 0.0:
            raise DomainError("alpha is only meaningful for Coulomb/funnel potentials")

    @property
    def confining(self) -> bool:
        return self.family is not Family.COULOMB

    @property
    def normalizable(self) -> bool:
        return not (self.confining and self.coupling is Coupling.VECTOR)

    def length_scale(self, energy: Optional[float] = None) -> float:
        """Natural length scale ``max(1/m, 1/sqrt(kappa), alpha/E)``."""
        scales = []
        if self.mass > 0:
            scales.append(1.0 / self.mass)
        if self.kappa > 0:
            scales.append(1.0 / math.sqrt(self.kappa))
        if self.alpha > 0 and energy:
            scales.append(self.alpha / abs(energy))
        return max(scales) if scales else 1.0

    def check_solvable(self, l: int) -> None:
        """Raise if no bound-state solver may be applied to this spec."""
        if not self.normalizable:
            raise NonNormalizableError(
                "non-normalizable (vector confinement): "
                f"{self.family.value} potential with vector coupling"
            )
        if (
            self.family is Family.COULOMB
            and self.coupling is Coupling.VECTOR
            and self.alpha > l + 0.5
        ):
            raise SupercriticalCouplingError(
                f"supercritical coupling: alpha={self.alpha} > l + 1/2 = {l + 0.5}"
            )


@dataclass(frozen=True)
class QuantumNumbers:
    n_r: int
    l: int
    m_int: int = 0

    def __post_init__(self):
        for name in ("n_r", "l", "m_int"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < 0:
                raise InvalidQuantumNumbers(f"{name} must be a non-negative integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.m_int > self.l:
            raise InvalidQuantumNumbers(f"m_int={self.m_int} exceeds l={self.l}")

    @property
    def n(self) -> int:
        """Principal quantum number n_r + l + 1."""
        return self.n_r + self.l + 1

    @property
    def n_theta(self) -> int:
        return self.l - self.m_int


@dataclass(frozen=True)
class AngularEigenvalue:
    """Squared angular momentum ``(l + 1/2)^2`` with its azimuthal split."""

    m_squared: float
    m_z: int
    n_theta: int


@dataclass(frozen=True)
class CoulombAux:
    """Effective centrifugal indices for the Coulomb problems.

    ``lambda_vector`` is None when the vector coupling is supercritical.
    """

    lambda_vector: Optional[float]
    lambda_scalar: float


def coulomb_aux(l: int, alpha: float) -> CoulombAux:
    lsq = (l + 0.5) ** 2
    vec_sq = lsq - alpha * alpha
    return CoulombAux(
        lambda_vector=math.sqrt(vec_sq) if vec_sq >= 0.0 else None,
        lambda_scalar=math.sqrt(lsq + alpha * alpha),
    )


def _check_radius(r):
    if np.any(np.asarray(r) <= 0):
        raise DomainError("radius must be strictly positive")


def _potential(r, spec: PotentialSpec):
    if spec.family is Family.COULOMB:
        return -spec.alpha / r
    if spec.family is Family.LINEAR:
        return spec.kappa * r
    return -spec.alpha / r + spec.kappa * r


def potential_value(r, spec: PotentialSpec):
    """V(r) for the spec's family; accepts scalars or arrays of radii."""
    _check_radius(r)
    return _potential(np.asarray(r, dtype=float) if np.ndim(r) else float(r), spec)


def effective_mass(r, spec: PotentialSpec):
    """W(r) = m + V(r), the scalar-coupling effective mass."""
    return spec.mass + potential_value(r, spec)


def kinetic_energy_sq(energy: float, spec: PotentialSpec) -> float:
    """The E^2 term of the radial equation (E^2/4 for the two-body problem)."""
    e_sq = energy * energy
    if spec.coupling is Coupling.SCALAR and spec.two_body:
        return 0.25 * e_sq
    return e_sq


def p_squared_unchecked(r, energy: float, spec: PotentialSpec, l: int):
    """p^2(r) without the r > 0 guard; the contour code needs r < 0 too."""
    centrifugal = (l + 0.5) ** 2 / (r * r)
    v = _potential(r, spec)
    if spec.coupling is Coupling.VECTOR:
        return (energy - v) ** 2 - spec.mass**2 - centrifugal
    w = spec.mass + v
    return kinetic_energy_sq(energy, spec) - w * w - centrifugal


def effective_p_squared(r, energy: float, spec: PotentialSpec, qn: QuantumNumbers):
    """Effective squared radial momentum at radius ``r``.

    The centrifugal coefficient is ``(l + 1/2)^2`` for every l, including 0.
    """
    _check_radius(r)
    r = np.asarray(r, dtype=float) if np.ndim(r) else float(r)
    return p_squared_unchecked(r, energy, spec, qn.l)


def coulomb_coefficients(energy: float, spec: PotentialSpec, l: int):
    """Return ``(A, B, C)`` with ``p^2 = A + 2B/r - C/r^2`` for Coulomb specs.

    ``A`` is formed as a product of sum and difference so it keeps full
    relative precision close to the continuum threshold.
    """
    alpha = spec.alpha
    m = spec.mass
    if spec.coupling is Coupling.VECTOR:
        return (energy - m) * (energy + m), alpha * energy, (l + 0.5) ** 2 - alpha * alpha
    e_kin = 0.5 * energy if spec.two_body else energy
    return (e_kin - m) * (e_kin + m), alpha * m, (l + 0.5) ** 2 + alpha * alpha


def coulomb_p_squared(r, coeffs):
    big_a, big_b, big_c = coeffs
    inv_r = 1.0 / r
    return big_a + inv_r * (2.0 * big_b - big_c * inv_r)
