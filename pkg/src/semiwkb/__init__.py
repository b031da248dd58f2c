"""Relativistic semiclassical (WKB) bound-state solver."""

from .errors import (
    ConvergenceError,
    DegenerateFitError,
    DomainError,
    InvalidQuantumNumbers,
    NoBoundRegionError,
    NoBoundStateError,
    NonNormalizableError,
    SemiWkbError,
    SupercriticalCouplingError,
    UnphysicalError,
    UsageError,
)
from .model import (
    Coupling,
    Family,
    PotentialSpec,
    QuantumNumbers,
    coulomb_aux,
    effective_mass,
    effective_p_squared,
    potential_value,
)
from .phase import (
    PhaseIntegralReport,
    TurningPoints,
    angular_phase_integral,
    contour_phase_linear,
    find_turning_points,
    radial_phase_integral,
)
from .quantize import (
    EigenvalueResult,
    Method,
    angular_eigenvalues,
    closed_form_eigenvalue,
    invert_angular_quantization,
    solve_radial_eigenvalue,
)
from .oracle import RadialGrid, ode_eigenvalue_kg, ode_eigenvalue_nr
from .wavefn import WkbWavefunction, wkb_radial_wavefunction, wkb_wavefunction
from .regge import MesonRecord, ReggeFit, fit_regge, read_records, regge_trajectory

__version__ = "0.1.0"
