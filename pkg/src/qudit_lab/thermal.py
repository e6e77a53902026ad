"""Gibbs states of the trapped particle and temperature sweeps of correlations."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .encodings import SweepRecord, information_record
from .errors import QuditLabError

DEFAULT_TMIN = 0.1
DEFAULT_TMAX = 50.0
DEFAULT_POINTS = 200

# Population allowed on a stand-in continuum level at E = 0 before warning.
CONTINUUM_WARN_FRACTION = 0.01


class ContinuumLeakageWarning(UserWarning):
    """Temperature high enough that unbound states would be populated."""


@dataclass(frozen=True)
class GibbsSpec:
    energies: tuple[float, ...]
    T: float
    log_partition_function: float = field(init=False)

    def __post_init__(self):
        e = tuple(float(x) for x in self.energies)
        object.__setattr__(self, "energies", e)
        if not (math.isfinite(self.T) and self.T > 0):
            raise QuditLabError(f"temperature must be positive, got {self.T!r}")
        if any(b <= a for a, b in zip(e, e[1:])):
            raise QuditLabError("energies must be strictly increasing")
        x = -np.asarray(e) / self.T
        top = x.max()
        object.__setattr__(self, "log_partition_function", float(top + np.log(np.exp(x - top).sum())))

    @property
    def partition_function(self) -> float:
        """``Z = Tr exp(-H/T)``; may overflow to ``inf`` for deep wells at low T."""
        with np.errstate(over="ignore"):
            return float(np.exp(self.log_partition_function))

    def populations(self) -> np.ndarray:
        e = np.asarray(self.energies)
        w = np.exp(-(e - e[0]) / self.T)
        return w / w.sum()

    def continuum_fraction(self) -> float:
        """Population a hypothetical extra level at ``E = 0`` would receive."""
        log_w0 = 0.0
        log_z = np.logaddexp(self.log_partition_function, log_w0)
        return float(np.exp(log_w0 - log_z))


def gibbs_state(spec: GibbsSpec) -> np.ndarray:
    """Diagonal thermal state ``exp(-H/T) / Z`` in the energy eigenbasis.

    Emits :class:`ContinuumLeakageWarning` when a stand-in continuum level
    at zero energy would hold more than 1 % of the population.
    """
    frac = spec.continuum_fraction()
    if frac > CONTINUUM_WARN_FRACTION:
        warnings.warn(
            f"T={spec.T:g}: a level at E=0 would hold {100 * frac:.2f}% of the population; "
            "unbound states are not modelled",
            ContinuumLeakageWarning,
            stacklevel=2,
        )
    return np.diag(spec.populations()).astype(complex)


def default_grid(tmin: float = DEFAULT_TMIN, tmax: float = DEFAULT_TMAX, points: int = DEFAULT_POINTS) -> np.ndarray:
    if points < 1 or not (0 < tmin <= tmax) or (points > 1 and tmin == tmax):
        raise QuditLabError(f"invalid temperature grid tmin={tmin}, tmax={tmax}, points={points}")
    return np.linspace(tmin, tmax, points)


def information_sweep(energies: Sequence[float], T_grid: Iterable[float]) -> list[SweepRecord]:
    """Mutual and conditional mutual information across temperatures."""
    grid = [float(t) for t in T_grid]
    if not grid or any(t <= 0 for t in grid) or any(b <= a for a, b in zip(grid, grid[1:])):
        raise QuditLabError("temperature grid must be positive and strictly ascending")
    energies = tuple(energies)
    return [information_record(gibbs_state(GibbsSpec(energies, t)), T=t) for t in grid]
