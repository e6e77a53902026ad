"""Bound states of a particle in a one-dimensional finite square well.

Units: hbar = 1.  The well occupies ``|x| <= width/2`` with potential
``-depth`` inside and zero outside; ``depth`` is stored as a positive
magnitude so bound energies lie in ``(-depth, 0)``.

Wavefunction sign convention: every state is positive on its right-hand
tail (``x > width/2``).  With this choice all adjacent-level dipole moments
come out positive, so resonant pulse durations are positive too.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .errors import NoBoundStates, QuditLabError

# Below this K*a the single bound state's decay length exceeds ~1e4 widths.
MIN_KA = 1e-2
BISECT_TOL = 1e-13


@dataclass(frozen=True)
class WellSpec:
    depth: float = 200.0
    width: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        for name in ("depth", "width", "mass"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise QuditLabError(f"well {name} must be a positive finite number, got {value!r}")

    @property
    def K(self) -> float:
        """Wavenumber ``sqrt(2 m V0)`` setting the number of bound states."""
        return math.sqrt(2.0 * self.mass * self.depth)

    def predicted_count(self) -> int:
        """Bound-state count from ``(N-1) pi / a <= K <= N pi / a``."""
        return max(1, math.ceil(self.K * self.width / math.pi))


@dataclass(frozen=True)
class BoundState:
    """One normalised eigenstate.

    Inside the well the wavefunction is ``inner_amplitude * cos(k x)`` (even)
    or ``inner_amplitude * sin(k x)`` (odd).  Outside it is
    ``outer_amplitude * exp(-kappa (|x| - width/2))``, multiplied by
    ``sign(x)`` for odd states; ``outer_amplitude`` is the value at the wall.
    """

    n: int
    energy: float
    parity: Literal["even", "odd"]
    k: float
    kappa: float
    inner_amplitude: float
    outer_amplitude: float
    width: float
    mass: float

    def residual(self) -> float:
        """Matching-condition residual in the pole-free form, units of k."""
        z = 0.5 * self.k * self.width
        if self.parity == "even":
            return self.k * math.sin(z) - self.kappa * math.cos(z)
        return self.k * math.cos(z) + self.kappa * math.sin(z)


def _branch(z: float, z0: float, even: bool) -> float:
    # z tan z = w (even) and -z cot z = w (odd), multiplied through by cos / sin.
    w = math.sqrt(max(z0 * z0 - z * z, 0.0))
    if even:
        return z * math.sin(z) - w * math.cos(z)
    return z * math.cos(z) + w * math.sin(z)


def _bisect(f, lo: float, hi: float, tol: float) -> float:
    flo = f(lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if (fmid < 0) == (flo < 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _make_state(n: int, z: float, spec: WellSpec) -> BoundState:
    a = spec.width
    half = 0.5 * a
    k = 2.0 * z / a
    kappa = math.sqrt(max(spec.K**2 - k * k, 0.0))
    even = n % 2 == 1
    if even:
        wall = math.cos(k * half)
        norm2 = half + math.sin(k * a) / (2.0 * k) + wall * wall / kappa
    else:
        wall = math.sin(k * half)
        norm2 = half - math.sin(k * a) / (2.0 * k) + wall * wall / kappa
    amp = 1.0 / math.sqrt(norm2)
    if wall < 0:
        amp = -amp
    return BoundState(
        n=n,
        energy=-kappa * kappa / (2.0 * spec.mass),
        parity="even" if even else "odd",
        k=k,
        kappa=kappa,
        inner_amplitude=amp,
        outer_amplitude=abs(amp * wall),
        width=a,
        mass=spec.mass,
    )


def solve_bound_states(spec: WellSpec | None = None) -> list[BoundState]:
    """All bound states of the well, ordered by increasing energy.

    Root ``n`` (1-based) of the matching condition lies in
    ``z = k a / 2 in ((n-1) pi/2, n pi/2)``, capped at ``z0 = K a / 2``; odd
    ``n`` uses the even branch.  Each bracket holds exactly one sign change
    of the pole-free branch function, found by bisection.
    """
    spec = spec or WellSpec()
    ka = spec.K * spec.width
    if ka < MIN_KA:
        raise NoBoundStates(f"K*a = {ka:.3e} is below {MIN_KA}: no resolvable bound state")
    z0 = 0.5 * ka
    tol_z = 0.5 * BISECT_TOL * spec.width

    states = []
    n = 1
    while (n - 1) * math.pi / 2 < z0:
        lo = (n - 1) * math.pi / 2
        hi = min(n * math.pi / 2, z0)
        even = n % 2 == 1
        z = _bisect(lambda t: _branch(t, z0, even), lo, hi, tol_z)
        states.append(_make_state(n, z, spec))
        n += 1
    return states


def wavefunction(state: BoundState, x):
    """Evaluate the normalised real wavefunction at ``x`` (scalar or array)."""
    xs = np.asarray(x, dtype=float)
    half = 0.5 * state.width
    inside = np.abs(xs) <= half
    tail = state.outer_amplitude * np.exp(-state.kappa * (np.abs(xs) - half))
    if state.parity == "even":
        out = np.where(inside, state.inner_amplitude * np.cos(state.k * xs), tail)
    else:
        out = np.where(inside, state.inner_amplitude * np.sin(state.k * xs), np.sign(xs) * tail)
    return float(out) if out.ndim == 0 else out


def _x_sin_integral(q: float, L: float) -> float:
    # int_0^L x sin(q x) dx
    if abs(q * L) < 1e-4:
        return q * L**3 / 3.0 - q**3 * L**5 / 30.0
    return math.sin(q * L) / q**2 - L * math.cos(q * L) / q


def dipole_element(a: BoundState, b: BoundState) -> float:
    """``<psi_a| x |psi_b>`` from exact piecewise antiderivatives."""
    if a.parity == b.parity:
        return 0.0
    even, odd = (a, b) if a.parity == "even" else (b, a)
    L = 0.5 * even.width
    inner = even.inner_amplitude * odd.inner_amplitude * (
        _x_sin_integral(odd.k + even.k, L) + _x_sin_integral(odd.k - even.k, L)
    )
    s = even.kappa + odd.kappa
    outer = 2.0 * even.outer_amplitude * odd.outer_amplitude * (L / s + 1.0 / s**2)
    return inner + outer


def dipole_matrix(states: Sequence[BoundState]) -> np.ndarray:
    """Symmetric real matrix of transition dipoles (charge 1), zero diagonal."""
    n = len(states)
    d = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            d[i, j] = d[j, i] = dipole_element(states[i], states[j])
    return d
