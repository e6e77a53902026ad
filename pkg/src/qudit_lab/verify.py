"""Self-check suite behind the ``verify`` subcommand."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .encodings import INFO_TOL
from .linalg import is_unitary, max_abs_diff
from .pulses import gate_library, oracle, oracle_from_z, parity, rotation, run_parity_algorithm
from .thermal import default_grid, information_sweep
from .well import WellSpec, dipole_matrix, solve_bound_states

GATE_TOL = 1e-10
OFF_TARGET_TOL = 1e-10
GATE_PULSE_TOL = 1e-9


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: int
    total: int

    @property
    def ok(self) -> bool:
        return self.passed == self.total


def _unitarity() -> CheckResult:
    rng = np.random.default_rng(2016)
    mats = []
    for _ in range(50):
        n = int(rng.integers(1, 7))
        m = int(rng.integers(n + 1, 8))
        mats.append(rotation(n, m, float(rng.uniform(-4 * np.pi, 4 * np.pi))))
    mats += [g.matrix for g in gate_library().values() if g.schedule is not None]
    mats += [g.schedule.unitary() for g in gate_library().values() if g.schedule is not None]
    mats += [oracle(s) for s in itertools.product((0, 1), repeat=6)]
    return CheckResult("unitarity", sum(is_unitary(m) for m in mats), len(mats))


def _subadditivity(spec: WellSpec) -> CheckResult:
    energies = [s.energy for s in solve_bound_states(spec)][:7]
    records = information_sweep(energies, default_grid())
    ok = sum(all(v >= -INFO_TOL for v in r.values()) for r in records)
    return CheckResult("subadditivity sweep", ok, len(records))


def _parity(dipole: np.ndarray) -> CheckResult:
    ok = 0
    strings = list(itertools.product((0, 1), repeat=6))
    for s in strings:
        gate = run_parity_algorithm(s, "gate")
        pulse = run_parity_algorithm(s, "pulse", dipole)
        p = parity(s)
        target = 4 + p
        phase = (-1) ** (s[0] + s[2] + s[4])
        good = True
        for r in (gate, pulse):
            probs = np.abs(r.final_state) ** 2
            good &= r.outcome == p and r.global_phase == phase and r.oracle_queries == 3
            good &= probs.sum() - probs[target] < OFF_TARGET_TOL
        good &= float(np.max(np.abs(gate.final_state - pulse.final_state))) < GATE_PULSE_TOL
        ok += bool(good)
    return CheckResult("parity exhaustive", ok, len(strings))


def _reference_gates() -> CheckResult:
    lib = gate_library()
    names = ("H_B", "U01_A", "U12_A", "Z_1", "Z_3", "Z_6")
    ok = sum(lib[n].schedule_deviation() < GATE_TOL for n in names)
    return CheckResult("gate vs reference matrix", ok, len(names))


def _oracle_constructions() -> CheckResult:
    strings = list(itertools.product((0, 1), repeat=6))
    ok = sum(np.array_equal(oracle(s), oracle_from_z(s)) for s in strings)
    return CheckResult("oracle constructions", ok, len(strings))


def run_verification(spec: WellSpec | None = None) -> list[CheckResult]:
    spec = spec or WellSpec()
    dipole = dipole_matrix(solve_bound_states(spec))
    return [
        _unitarity(),
        _subadditivity(spec),
        _parity(dipole),
        _reference_gates(),
        _oracle_constructions(),
    ]
