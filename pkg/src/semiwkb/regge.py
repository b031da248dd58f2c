"""Regge trajectories of the scalar funnel spectrum and their fit to meson masses.

Squared masses follow ``M^2 = 8 kappa x - 8 kappa alpha_s`` with
``x = 2 n_r + l + 3/2``; a straight-line fit in x therefore recovers the
string tension from the slope and the shift ``C^2 = 8 kappa alpha_s`` from
the intercept.
"""

from __future__ import annotations

import csv
import io
import logging
import os
import warnings
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np

from .closed import funnel_energy_sq
from .errors import DegenerateFitError, DomainError
from .model import QuantumNumbers

logger = logging.getLogger(__name__)

CSV_FIELDS = ("name", "mass_gev", "l", "n_r")


@dataclass(frozen=True)
class MesonRecord:
    name: str
    mass: float
    l: int
    n_r: int
    weight: float = 1.0

    def __post_init__(self):
        if not self.mass > 0.0:
            raise DomainError(f"{self.name}: mass must be positive, got {self.mass}")
        if not self.weight > 0.0:
            raise DomainError(f"{self.name}: weight must be positive, got {self.weight}")
        QuantumNumbers(n_r=self.n_r, l=self.l)

    @property
    def x(self) -> float:
        return 2 * self.n_r + self.l + 1.5


@dataclass(frozen=True)
class ReggeFit:
    kappa: float
    alpha_s: float
    c_sq: float
    rms_residual: float
    per_point_residuals: Tuple[float, ...]


def regge_trajectory(n_r: int, l_max: int, kappa: float, alpha_s: float = 0.0) -> List[Tuple[int, float]]:
    """Points ``(l, E^2)`` for l = 0..l_max; consecutive points differ by 8 kappa."""
    if l_max < 1:
        raise DomainError("l_max must be >= 1")
    return [(l, funnel_energy_sq(QuantumNumbers(n_r=n_r, l=l), kappa, alpha_s)) for l in range(l_max + 1)]


def fit_regge(records: Sequence[MesonRecord]) -> ReggeFit:
    """Weighted least squares of M^2 against ``2 n_r + l + 3/2``."""
    if len(records) < 3:
        raise DegenerateFitError(f"degenerate fit: need at least 3 records, got {len(records)}")
    x = np.array([rec.x for rec in records])
    if np.unique(x).size < 2:
        raise DegenerateFitError("degenerate fit: all records share one value of 2 n_r + l")
    y = np.array([rec.mass for rec in records]) ** 2
    sw = np.sqrt(np.array([rec.weight for rec in records]))
    design = np.column_stack([x, np.ones_like(x)])
    (slope, intercept), *_ = np.linalg.lstsq(design * sw[:, None], y * sw, rcond=None)
    kappa = slope / 8.0
    if not kappa > 0.0:
        raise DegenerateFitError(f"degenerate fit: non-positive slope {slope}")
    alpha_s = -intercept / (8.0 * kappa)
    if alpha_s < 0.0:
        warnings.warn(f"fitted alpha_s={alpha_s:.4g} is negative", RuntimeWarning, stacklevel=2)
    residuals = y - (slope * x + intercept)
    rms = float(np.sqrt(np.mean(residuals**2)))
    logger.debug("regge fit: kappa=%g alpha_s=%g rms=%g", kappa, alpha_s, rms)
    return ReggeFit(
        kappa=float(kappa),
        alpha_s=float(alpha_s),
        c_sq=float(-intercept),
        rms_residual=rms,
        per_point_residuals=tuple(float(v) for v in residuals),
    )


def synthetic_records(
    kappa: float,
    alpha_s: float,
    states: Iterable[Tuple[int, int]],
    noise: float = 0.0,
    rng: Union[np.random.Generator, None] = None,
) -> List[MesonRecord]:
    """Records on the funnel spectrum with optional relative Gaussian mass noise."""
    records = []
    for n_r, l in states:
        mass = float(np.sqrt(funnel_energy_sq(QuantumNumbers(n_r=n_r, l=l), kappa, alpha_s)))
        if noise:
            mass *= 1.0 + noise * rng.standard_normal()
        records.append(MesonRecord(name=f"nr{n_r}_l{l}", mass=mass, l=l, n_r=n_r))
    return records


def read_records(source: Union[str, os.PathLike, io.TextIOBase]) -> List[MesonRecord]:
    """Parse ``name,mass_gev,l,n_r[,weight]`` CSV; blank and ``#`` lines are skipped."""
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8", newline="") as fh:
            return read_records(fh)
    lines = (line for line in source if line.strip() and not line.lstrip().startswith("#"))
    reader = csv.DictReader(lines)
    header = tuple(h.strip() for h in (reader.fieldnames or ()))
    if header[:4] != CSV_FIELDS or len(header) > 5 or (len(header) == 5 and header[4] != "weight"):
        raise DomainError(f"CSV header must be name,mass_gev,l,n_r[,weight], got {','.join(header)}")
    reader.fieldnames = list(header)
    records = []
    for row in reader:
        try:
            weight = row.get("weight")
            records.append(
                MesonRecord(
                    name=row["name"].strip(),
                    mass=float(row["mass_gev"]),
                    l=int(row["l"]),
                    n_r=int(row["n_r"]),
                    weight=float(weight) if weight not in (None, "") else 1.0,
                )
            )
        except (TypeError, ValueError) as exc:
            raise DomainError(f"line {reader.line_num}: {exc}") from exc
    return records
