import itertools
import math

import numpy as np
import pytest
from scipy.linalg import expm

from qudit_lab.errors import AncillaOccupied, BadBitString, BadLevels, ZeroDipole
from qudit_lab.linalg import is_hermitian, is_unitary, max_abs_diff
from qudit_lab.pulses import (
    HADAMARD_SCHEDULE,
    Pulse,
    algorithm_schedule,
    basis_state,
    evolve_pulse,
    gate_library,
    measure_parity_observable,
    oracle,
    oracle_from_z,
    oracle_schedule,
    parity,
    parse_bitstring,
    position_density_readout,
    pulse_unitary,
    rotation,
    run_parity_algorithm,
)
from qudit_lab.well import wavefunction

ALL_STRINGS = list(itertools.product((0, 1), repeat=6))


def classical_parity(s):
    return sum(s) % 2


def test_rotation_examples():
    assert np.array_equal(rotation(1, 2, 0.0), np.eye(7))
    u = rotation(1, 2, math.pi)
    np.testing.assert_allclose(u[:2, :2], [[0, -1], [1, 0]], atol=1e-15)
    np.testing.assert_allclose(rotation(3, 4, 2 * math.pi), np.diag([1, 1, -1, -1, 1, 1, 1]), atol=1e-15)


@pytest.mark.parametrize("n,m", [(0, 1), (2, 2), (3, 1), (6, 8)])
def test_rotation_bad_levels(n, m):
    with pytest.raises(BadLevels):
        rotation(n, m, 1.0)


def test_rotations_unitary(rng):
    for _ in range(100):
        n = int(rng.integers(1, 7))
        m = int(rng.integers(n + 1, 8))
        assert is_unitary(rotation(n, m, float(rng.uniform(-20, 20))))


def test_pulse_rejects_non_adjacent():
    with pytest.raises(BadLevels):
        Pulse(1, 3, math.pi)


def test_pulse_timing(dipole):
    p = Pulse(2, 3, math.pi)
    assert p.duration(dipole) == pytest.approx(math.pi / (2 * dipole[1, 2]))
    assert p.duration(dipole) > 0
    assert p.field() == pytest.approx(-1j)


def test_zero_dipole_rejected():
    with pytest.raises(ZeroDipole):
        evolve_pulse(basis_state(1), Pulse(1, 2, 1.0), np.zeros((7, 7)))


def test_evolve_zero_angle(dipole, rng):
    psi = rng.normal(size=7) + 1j * rng.normal(size=7)
    psi /= np.linalg.norm(psi)
    assert np.array_equal(evolve_pulse(psi, Pulse(4, 5, 0.0), dipole), psi)


def test_evolve_pi_pulse_transfers_population(dipole):
    out = evolve_pulse(basis_state(1), Pulse(1, 2, math.pi), dipole)
    np.testing.assert_allclose(out, basis_state(2), atol=1e-15)


def test_exponential_path_matches_rotation(dipole, rng):
    for _ in range(100):
        n = int(rng.integers(1, 7))
        theta = float(rng.uniform(-4 * math.pi, 4 * math.pi))
        psi = rng.normal(size=7) + 1j * rng.normal(size=7)
        psi /= np.linalg.norm(psi)
        got = evolve_pulse(psi, Pulse(n, n + 1, theta), dipole)
        assert np.abs(got - rotation(n, n + 1, theta) @ psi).max() < 1e-12


def test_pulse_unitary_matches_matrix_exponential(dipole):
    for n in range(1, 7):
        pulse = Pulse(n, n + 1, 1.3)
        E = pulse.field()
        d = dipole[n - 1, n]
        v = np.zeros((7, 7), dtype=complex)
        v[n - 1, n] = E * d
        v[n, n - 1] = np.conj(E) * d
        ref = expm(-1j * v * pulse.duration(dipole))
        assert max_abs_diff(pulse_unitary(pulse, dipole), ref) < 1e-12


@pytest.fixture(scope="module")
def library():
    return gate_library()


def test_library_contents(library):
    assert set(library) == {"H_B", "U01_A", "U12_A", "sigma_z_B"} | {f"Z_{n}" for n in range(1, 7)}


def test_u01_is_level_pair_permutation(library):
    expected = np.zeros((7, 7))
    for i, j in [(0, 2), (1, 3), (2, 0), (3, 1), (4, 4), (5, 5), (6, 6)]:
        expected[i, j] = 1
    assert np.array_equal(library["U01_A"].matrix, expected)


def test_u12_is_level_pair_permutation(library):
    expected = np.zeros((7, 7))
    for i, j in [(0, 0), (1, 1), (2, 4), (3, 5), (4, 2), (5, 3), (6, 6)]:
        expected[i, j] = 1
    assert np.array_equal(library["U12_A"].matrix, expected)


def test_z1(library):
    assert np.array_equal(library["Z_1"].matrix, np.diag([-1, 1, 1, 1, 1, 1, -1]))
    np.testing.assert_allclose(library["Z_1"].schedule.unitary(), np.diag([-1, 1, 1, 1, 1, 1, -1]), atol=1e-10)


def test_hadamard_blocks(library):
    h = library["H_B"].matrix
    r = math.sqrt(2) / 2
    for i in (0, 2, 4):
        np.testing.assert_allclose(h[i:i + 2, i:i + 2], [[r, r], [r, -r]], atol=1e-15)
    assert h[6, 6] == -1


def test_schedules_match_matrices(library):
    for gate in library.values():
        assert gate.global_phase in (1, -1)
        assert gate.schedule_deviation() < 1e-10


def test_library_unitarity(library):
    for gate in library.values():
        if gate.schedule is None:
            continue
        assert is_unitary(gate.matrix)
        assert is_unitary(gate.schedule.unitary())


def test_sigma_z_is_observable(library):
    sz = library["sigma_z_B"]
    assert sz.schedule is None
    assert is_hermitian(sz.matrix)
    assert np.array_equal(np.diag(sz.matrix).real, [1, -1, 1, -1, 1, -1, 0])


def test_hadamard_schedule_order():
    # time order: R12 acts first, R67 last
    assert [(p.n, p.m) for p in HADAMARD_SCHEDULE.pulses] == [(1, 2), (2, 3), (3, 4), (5, 6), (6, 7)]


def test_oracle_examples():
    assert np.array_equal(oracle("000000"), np.eye(7))
    assert np.array_equal(oracle("100000"), np.diag([-1, 1, 1, 1, 1, 1, -1]))


@pytest.mark.parametrize("s", ALL_STRINGS)
def test_oracle_properties(s):
    o = oracle(s)
    assert np.array_equal(o @ o, np.eye(7))
    assert np.array_equal(o, oracle_from_z(s))
    assert is_unitary(o)
    assert max_abs_diff(oracle_schedule(s).unitary(), o) < 1e-10


def test_parse_bitstring():
    assert parse_bitstring("010101") == (0, 1, 0, 1, 0, 1)
    assert parse_bitstring([1, 1, 0, 0, 0, 0]) == (1, 1, 0, 0, 0, 0)
    for bad in ("01010", "0101010", "01a101", [0, 1, 2, 0, 0, 0], [0.0] * 6):
        with pytest.raises(BadBitString):
            parse_bitstring(bad)


@pytest.mark.parametrize(
    "s,outcome,phase,level",
    [("000000", 0, 1, 5), ("111111", 0, -1, 5), ("100000", 1, -1, 6)],
)
def test_parity_examples(s, outcome, phase, level):
    res = run_parity_algorithm(s)
    assert res.outcome == outcome and res.global_phase == phase and res.oracle_queries == 3
    np.testing.assert_allclose(res.final_state, phase * basis_state(level), atol=1e-12)


@pytest.mark.parametrize("s", ALL_STRINGS)
def test_parity_exhaustive(s, dipole):
    gate = run_parity_algorithm(s, "gate")
    pulse = run_parity_algorithm(s, "pulse", dipole)
    p = classical_parity(s)
    phase = (-1) ** (s[0] + s[2] + s[4])
    for res in (gate, pulse):
        probs = np.abs(res.final_state) ** 2
        assert res.outcome == p == parity(s)
        assert res.global_phase == phase
        assert probs.sum() - probs[4 + p] < 1e-10
        assert probs[6] < 1e-10
        assert abs(measure_parity_observable(res.final_state) - (1 - 2 * p)) < 1e-10
    assert np.abs(gate.final_state - pulse.final_state).max() < 1e-9


def test_pulse_mode_defaults_to_default_well():
    assert run_parity_algorithm("010101", "pulse").outcome == 1


def test_bad_level_flag():
    with pytest.raises(ValueError):
        run_parity_algorithm("000000", "laser")


def test_algorithm_schedule_reproduces_gate_product(dipole):
    s = (1, 0, 1, 1, 0, 0)
    o = oracle(s)
    lib = gate_library()
    g = lib["H_B"].matrix @ o @ lib["U12_A"].matrix @ o @ lib["U01_A"].matrix @ o @ lib["H_B"].matrix
    assert max_abs_diff(algorithm_schedule(s).unitary(), g) < 1e-10


@pytest.mark.parametrize("s1,s2", list(itertools.product((0, 1), repeat=2)))
def test_two_bit_strings_reduce_to_deutsch(s1, s2):
    # f(0) = s1, f(1) = s2: the answer is whether f is balanced.
    res = run_parity_algorithm((s1, s2, 0, 0, 0, 0))
    assert res.outcome == (s1 ^ s2)


def test_measurement_examples():
    assert measure_parity_observable(basis_state(5)) == 1.0
    assert measure_parity_observable(basis_state(6)) == -1.0
    uniform = np.append(np.ones(6), 0) / math.sqrt(6)
    assert measure_parity_observable(uniform) == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(AncillaOccupied):
        measure_parity_observable(basis_state(7))


def test_position_readout(states):
    odd = run_parity_algorithm("100000").final_state
    even = run_parity_algorithm("000000").final_state
    assert position_density_readout(odd, states) < 1e-12
    assert position_density_readout(even, states) == pytest.approx(wavefunction(states[4], 0.0) ** 2, rel=1e-12)
    assert position_density_readout(even, states) > 0.1
    assert position_density_readout(basis_state(2), states) == 0.0
