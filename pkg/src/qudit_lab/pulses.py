"""Gate- and pulse-level simulation of the qubit-qutrit parity algorithm.

Levels are 1-based throughout the public API (level ``n`` is row ``n - 1``).
Pulse schedules are stored in time order: the first pulse acts first, so the
composite unitary is ``U_last @ ... @ U_first``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from .errors import AncillaOccupied, BadBitString, BadLevels, ZeroDipole
from .linalg import identity, max_abs_diff
from .well import dipole_matrix, solve_bound_states, wavefunction

DIM = 7
PULSE_PHASE = 3 * math.pi / 2
E0 = 1.0
ZERO_DIPOLE_TOL = 1e-12
ANCILLA_TOL = 1e-9
ORACLE_QUERIES = 3


def _check_levels(n: int, m: int) -> None:
    if not (1 <= n < m <= DIM):
        raise BadLevels(f"need 1 <= n < m <= {DIM}, got n={n}, m={m}")


def rotation(n: int, m: int, theta: float) -> np.ndarray:
    """Real rotation ``[[cos, -sin], [sin, cos]](theta/2)`` on levels ``n, m``."""
    _check_levels(n, m)
    u = identity(DIM)
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    i, j = n - 1, m - 1
    u[i, i], u[i, j] = c, -s
    u[j, i], u[j, j] = s, c
    return u


@dataclass(frozen=True)
class Pulse:
    n: int
    m: int
    theta: float

    def __post_init__(self):
        _check_levels(self.n, self.m)
        if self.m != self.n + 1:
            raise BadLevels(f"only adjacent transitions are addressable, got ({self.n}, {self.m})")

    def dipole(self, dipole: np.ndarray) -> float:
        d = float(dipole[self.n - 1][self.m - 1])
        if abs(d) < ZERO_DIPOLE_TOL:
            raise ZeroDipole(f"d[{self.n}][{self.m}] = {d:.3e}")
        return d

    def duration(self, dipole: np.ndarray, amplitude: float = E0) -> float:
        return self.theta / (2.0 * amplitude * self.dipole(dipole))

    def field(self, amplitude: float = E0) -> complex:
        return amplitude * cmath.exp(1j * PULSE_PHASE)


@dataclass(frozen=True)
class PulseSchedule:
    label: str
    pulses: tuple[Pulse, ...] = field(default_factory=tuple)

    def unitary(self) -> np.ndarray:
        u = identity(DIM)
        for p in self.pulses:
            u = rotation(p.n, p.m, p.theta) @ u
        return u

    def __add__(self, other: "PulseSchedule") -> "PulseSchedule":
        """Run ``self`` first, then ``other``."""
        return PulseSchedule(f"{self.label};{other.label}", self.pulses + other.pulses)


def coupling_block(field_amplitude: complex, d: float, t: float) -> np.ndarray:
    """Closed-form ``exp(-i V t)`` for ``V = [[0, w], [w*, 0]]``, ``w = E d``."""
    w = field_amplitude * d
    r = abs(w)
    if r == 0:
        return np.eye(2, dtype=complex)
    c, s = math.cos(r * t), math.sin(r * t)
    return np.array([[c, -1j * s * w / r], [-1j * s * w.conjugate() / r, c]])


def pulse_unitary(pulse: Pulse, dipole: np.ndarray, amplitude: float = E0) -> np.ndarray:
    """Full 7x7 propagator of one resonant pulse, built from the coupling."""
    d = pulse.dipole(dipole)
    block = coupling_block(pulse.field(amplitude), d, pulse.duration(dipole, amplitude))
    u = identity(DIM)
    i, j = pulse.n - 1, pulse.m - 1
    u[np.ix_([i, j], [i, j])] = block
    return u


def evolve_pulse(state, pulse: Pulse, dipole: np.ndarray, amplitude: float = E0) -> np.ndarray:
    """Apply one pulse to a 7-component state vector via the coupling exponential."""
    psi = np.array(state, dtype=complex)
    d = pulse.dipole(dipole)
    block = coupling_block(pulse.field(amplitude), d, pulse.duration(dipole, amplitude))
    i, j = pulse.n - 1, pulse.m - 1
    psi[[i, j]] = block @ psi[[i, j]]
    return psi


def evolve_schedule(state, schedule: PulseSchedule, dipole: np.ndarray) -> np.ndarray:
    psi = np.array(state, dtype=complex)
    for p in schedule.pulses:
        psi = evolve_pulse(psi, p, dipole)
    return psi


def basis_state(level: int) -> np.ndarray:
    if not 1 <= level <= DIM:
        raise BadLevels(f"level must be in 1..{DIM}, got {level}")
    psi = np.zeros(DIM, dtype=complex)
    psi[level - 1] = 1.0
    return psi


# Schedules in time order (rightmost factor of the operator product first).
def _schedule(label: str, *product: tuple[int, float]) -> PulseSchedule:
    return PulseSchedule(label, tuple(Pulse(n, n + 1, th) for n, th in reversed(product)))


_PI = math.pi
HADAMARD_SCHEDULE = _schedule(
    "H_B", (6, 2 * _PI), (5, 7 * _PI / 2), (3, 5 * _PI / 2), (2, 2 * _PI), (1, 7 * _PI / 2)
)
U01_SCHEDULE = _schedule("U01_A", (2, _PI), (3, _PI), (1, _PI), (2, _PI))
U12_SCHEDULE = _schedule("U12_A", (4, _PI), (5, _PI), (3, _PI), (4, _PI))


def z_schedule(n: int) -> PulseSchedule:
    if not 1 <= n <= 6:
        raise BadLevels(f"Z_n needs n in 1..6, got {n}")
    return _schedule(f"Z_{n}", *[(m, 2 * _PI) for m in range(n, 7)])


_H = math.sqrt(2) / 2
HADAMARD_MATRIX = np.array(
    [
        [_H, _H, 0, 0, 0, 0, 0],
        [_H, -_H, 0, 0, 0, 0, 0],
        [0, 0, _H, _H, 0, 0, 0],
        [0, 0, _H, -_H, 0, 0, 0],
        [0, 0, 0, 0, _H, _H, 0],
        [0, 0, 0, 0, _H, -_H, 0],
        [0, 0, 0, 0, 0, 0, -1],
    ],
    dtype=complex,
)
U01_MATRIX = identity(DIM)[[2, 3, 0, 1, 4, 5, 6]]
U12_MATRIX = identity(DIM)[[0, 1, 4, 5, 2, 3, 6]]
SIGMA_Z_B = np.diag([1, -1, 1, -1, 1, -1, 0]).astype(complex)


def z_matrix(n: int) -> np.ndarray:
    """Exact ``Z_n``: sign flip on level ``n`` and on the ancilla."""
    if not 1 <= n <= 6:
        raise BadLevels(f"Z_n needs n in 1..6, got {n}")
    diag = np.ones(DIM)
    diag[n - 1] = -1
    diag[DIM - 1] = -1
    return np.diag(diag).astype(complex)


@dataclass(frozen=True)
class Gate:
    """A named gate: the explicit matrix and, for unitaries, a pulse schedule.

    ``global_phase`` is the sign ``g`` with ``schedule.unitary() == g * matrix``.
    """

    name: str
    matrix: np.ndarray
    schedule: PulseSchedule | None = None
    global_phase: int = 1

    def schedule_deviation(self) -> float:
        if self.schedule is None:
            return 0.0
        return max_abs_diff(self.schedule.unitary(), self.global_phase * self.matrix)


def _realized_phase(schedule: PulseSchedule, matrix: np.ndarray) -> int:
    u = schedule.unitary()
    return 1 if max_abs_diff(u, matrix) <= max_abs_diff(u, -matrix) else -1


def gate_library() -> dict[str, Gate]:
    """Explicit seven-level gate matrices paired with their pulse schedules.

    ``sigma_z_B`` is the qubit readout observable; it is Hermitian but not
    unitary (zero on the ancilla) and carries no schedule.
    """
    gates = {}
    for name, matrix, sched in (
        ("H_B", HADAMARD_MATRIX, HADAMARD_SCHEDULE),
        ("U01_A", U01_MATRIX, U01_SCHEDULE),
        ("U12_A", U12_MATRIX, U12_SCHEDULE),
        *[(f"Z_{n}", z_matrix(n), z_schedule(n)) for n in range(1, 7)],
    ):
        gates[name] = Gate(name, matrix.copy(), sched, _realized_phase(sched, matrix))
    gates["sigma_z_B"] = Gate("sigma_z_B", SIGMA_Z_B.copy())
    return gates


def parse_bitstring(s) -> tuple[int, ...]:
    """Accept ``"010101"`` or a sequence of six 0/1 integers."""
    if isinstance(s, str):
        bits = s.strip()
        if len(bits) != 6 or any(c not in "01" for c in bits):
            raise BadBitString(f"expected six characters from {{0,1}}, got {s!r}")
        return tuple(int(c) for c in bits)
    bits = tuple(s)
    if len(bits) != 6 or any(b not in (0, 1) or isinstance(b, float) for b in bits):
        raise BadBitString(f"expected six bits, got {s!r}")
    return tuple(int(b) for b in bits)


def parity(s) -> int:
    bits = parse_bitstring(s)
    out = 0
    for b in bits:
        out ^= b
    return out


def oracle(s) -> np.ndarray:
    """Diagonal sign oracle built from the qutrit-qubit labels.

    ``|nm>`` (qutrit ``n``, qubit ``m``) is level ``2n + m + 1`` and picks up
    ``(-1)^{s_{2n+m+1}}``; the ancilla picks up ``(-1)^{sum(s)}``.
    """
    bits = parse_bitstring(s)
    diag = np.ones(DIM)
    for n in range(3):
        for m in range(2):
            diag[2 * n + m] = (-1) ** bits[2 * n + m]
    diag[DIM - 1] = (-1) ** sum(bits)
    return np.diag(diag).astype(complex)


def oracle_from_z(s) -> np.ndarray:
    """The same oracle as the product of ``Z_n`` over the set bits."""
    u = identity(DIM)
    for n, b in enumerate(parse_bitstring(s), start=1):
        if b:
            u = z_matrix(n) @ u
    return u


def oracle_schedule(s) -> PulseSchedule:
    bits = parse_bitstring(s)
    pulses = tuple(p for n, b in enumerate(bits, start=1) if b for p in z_schedule(n).pulses)
    return PulseSchedule("O_" + "".join(map(str, bits)), pulses)


def algorithm_schedule(s) -> PulseSchedule:
    """Full pulse sequence of ``H O U12 O U01 O H`` in time order."""
    o = oracle_schedule(s)
    full = HADAMARD_SCHEDULE + o + U01_SCHEDULE + o + U12_SCHEDULE + o + HADAMARD_SCHEDULE
    return PulseSchedule("G", full.pulses)


@dataclass(frozen=True)
class ParityResult:
    outcome: int
    final_state: np.ndarray
    global_phase: int
    oracle_queries: int
    level: str


def _read_out(psi: np.ndarray) -> tuple[int, int]:
    outcome = 0 if measure_parity_observable(psi) > 0 else 1
    amp = psi[4 + outcome]
    return outcome, 1 if amp.real >= 0 else -1


def run_parity_algorithm(
    s, level: Literal["gate", "pulse"] = "gate", dipole: np.ndarray | None = None
) -> ParityResult:
    """Run the three-query parity algorithm from ``|00>`` (level 1).

    The outcome is read from the qubit observable; the global phase is the
    sign of the amplitude left on the target level.  Pulse mode propagates
    each resonant pulse through the dipole coupling of the well and needs
    ``dipole`` (the default well is solved when omitted).
    """
    bits = parse_bitstring(s)
    psi = basis_state(1)
    if level == "gate":
        o = oracle(bits)
        for u in (HADAMARD_MATRIX, o, U01_MATRIX, o, U12_MATRIX, o, HADAMARD_MATRIX):
            psi = u @ psi
    elif level == "pulse":
        if dipole is None:
            dipole = dipole_matrix(solve_bound_states())
        psi = evolve_schedule(psi, algorithm_schedule(bits), dipole)
    else:
        raise ValueError(f"level must be 'gate' or 'pulse', got {level!r}")
    outcome, phase = _read_out(psi)
    return ParityResult(outcome, psi, phase, ORACLE_QUERIES, level)


def measure_parity_observable(state) -> float:
    """Expectation of the qubit ``sigma_z`` on a seven-level state."""
    psi = np.asarray(state, dtype=complex)
    probs = np.abs(psi) ** 2
    if probs[DIM - 1] > ANCILLA_TOL:
        raise AncillaOccupied(f"ancilla population {probs[DIM - 1]:.3e} exceeds {ANCILLA_TOL}")
    return float(np.sum(probs * np.diag(SIGMA_Z_B).real))


def position_density_readout(state, states: Sequence) -> float:
    """Probability density ``|sum_n c_n psi_n(0)|^2`` at the well centre."""
    psi = np.asarray(state, dtype=complex)
    amp = sum(c * wavefunction(st, 0.0) for c, st in zip(psi, states))
    return float(abs(amp) ** 2)
