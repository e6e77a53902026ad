"""Virtual-subsystem encodings of the seven-level system and entropic measures.

Two encodings are provided:

* three-qubit: levels 1..7 map to ``|000>..|110>`` in binary order, ``|111>``
  is an unoccupied padding level appended as an eighth row/column.
* qubit-qutrit: levels 1..6 map to ``|mk>`` (qutrit ``m``, qubit ``k``) in the
  order ``00, 01, 10, 11, 20, 21``; level 7 is an ancilla that must stay empty.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .errors import AncillaOccupied, NotDensityMatrix, QuditLabError
from .linalg import (
    TRACE_TOL,
    as_matrix,
    check_density_matrix,
    partial_trace,
    von_neumann_entropy,
)

INFO_TOL = 1e-9
ANCILLA_TOL = 1e-9

_FACTOR_INDEX = {"A": 0, "B": 1, "C": 2}
SUBSYSTEMS = ("A", "B", "C", "AB", "AC", "BC", "ABC")
PAIRS = ("AB", "AC", "BC")
CONDITIONALS = (("AB", "C"), ("AC", "B"), ("BC", "A"))


@dataclass(frozen=True)
class EncodingMap:
    name: str
    source_dim: int
    target_factor_dims: tuple[int, ...]
    level_assignment: Mapping[int, str]
    padding: tuple[str, ...]

    def basis_index(self, level: int) -> int:
        """Row index of ``level`` in the composite computational basis."""
        label = self.level_assignment[level]
        idx = 0
        for digit, dim in zip(label, self.target_factor_dims):
            idx = idx * dim + int(digit)
        return idx


THREE_QUBIT = EncodingMap(
    name="three_qubit",
    source_dim=7,
    target_factor_dims=(2, 2, 2),
    level_assignment=MappingProxyType({n: format(n - 1, "03b") for n in range(1, 8)}),
    padding=("111",),
)

QUBIT_QUTRIT = EncodingMap(
    name="qubit_qutrit",
    source_dim=7,
    target_factor_dims=(3, 2),
    level_assignment=MappingProxyType(
        {1: "00", 2: "01", 3: "10", 4: "11", 5: "20", 6: "21", 7: "ancillary"}
    ),
    padding=("ancillary",),
)


@dataclass(frozen=True)
class SweepRecord:
    """Information quantities (bits) of one thermal state."""

    T: float
    I_AB: float
    I_AC: float
    I_BC: float
    I_AB_given_C: float
    I_AC_given_B: float
    I_BC_given_A: float

    def values(self) -> tuple[float, ...]:
        return (
            self.I_AB,
            self.I_AC,
            self.I_BC,
            self.I_AB_given_C,
            self.I_AC_given_B,
            self.I_BC_given_A,
        )


def _validated(rho7) -> np.ndarray:
    rho = as_matrix(rho7)
    if rho.shape != (7, 7):
        raise NotDensityMatrix(f"expected a 7x7 density matrix, got {rho.shape}")
    check_density_matrix(rho)
    return rho


def embed_7_to_8(rho7) -> np.ndarray:
    """Pad a 7-level state with an empty eighth level (``|111>``)."""
    rho = _validated(rho7)
    out = np.zeros((8, 8), dtype=complex)
    out[:7, :7] = rho
    return out


def _normalize_label(which: str) -> str:
    label = "".join(sorted(which.upper()))
    if label not in SUBSYSTEMS:
        raise QuditLabError(f"unknown subsystem {which!r}; expected one of {SUBSYSTEMS}")
    return label


def _reduce(rho8: np.ndarray, label: str) -> np.ndarray:
    if label == "ABC":
        return rho8
    return partial_trace(rho8, THREE_QUBIT.target_factor_dims, [_FACTOR_INDEX[c] for c in label])


def reduced_state(rho7, which: str) -> np.ndarray:
    """Reduced density matrix of subsystem ``which`` under the three-qubit encoding."""
    return _reduce(embed_7_to_8(rho7), _normalize_label(which))


def _closed_form_from(r: np.ndarray, label: str) -> np.ndarray:
    # r is 1-based: r[i, j] == rho_{i,j}; r[i, j] with i > j already holds the conjugate.
    if label == "AB":
        return np.array([
            [r[1, 1] + r[2, 2], r[1, 3] + r[2, 4], r[1, 5] + r[2, 6], r[1, 7]],
            [r[3, 1] + r[4, 2], r[3, 3] + r[4, 4], r[3, 5] + r[4, 6], r[3, 7]],
            [r[5, 1] + r[6, 2], r[5, 3] + r[6, 4], r[5, 5] + r[6, 6], r[5, 7]],
            [r[7, 1], r[7, 3], r[7, 5], r[7, 7]],
        ])
    if label == "AC":
        return np.array([
            [r[1, 1] + r[3, 3], r[1, 2] + r[3, 4], r[1, 5] + r[3, 7], r[1, 6]],
            [r[2, 1] + r[4, 3], r[2, 2] + r[4, 4], r[2, 5] + r[4, 7], r[2, 6]],
            [r[5, 1] + r[7, 3], r[5, 2] + r[7, 4], r[5, 5] + r[7, 7], r[5, 6]],
            [r[6, 1], r[6, 2], r[6, 5], r[6, 6]],
        ])
    if label == "BC":
        return np.array([
            [r[1, 1] + r[5, 5], r[1, 2] + r[5, 6], r[1, 3] + r[5, 7], r[1, 4]],
            [r[2, 1] + r[6, 5], r[2, 2] + r[6, 6], r[2, 3] + r[6, 7], r[2, 4]],
            [r[3, 1] + r[7, 5], r[3, 2] + r[7, 6], r[3, 3] + r[7, 7], r[3, 4]],
            [r[4, 1], r[4, 2], r[4, 3], r[4, 4]],
        ])
    if label == "A":
        off = r[1, 5] + r[2, 6] + r[3, 7]
        return np.array([
            [r[1, 1] + r[2, 2] + r[3, 3] + r[4, 4], off],
            [np.conj(off), r[5, 5] + r[6, 6] + r[7, 7]],
        ])
    if label == "B":
        off = r[1, 3] + r[5, 7] + r[2, 4]
        return np.array([
            [r[1, 1] + r[5, 5] + r[2, 2] + r[6, 6], off],
            [np.conj(off), r[3, 3] + r[7, 7] + r[4, 4]],
        ])
    if label == "C":
        off = r[1, 2] + r[3, 4] + r[5, 6]
        return np.array([
            [r[1, 1] + r[3, 3] + r[5, 5] + r[7, 7], off],
            [np.conj(off), r[2, 2] + r[4, 4] + r[6, 6]],
        ])
    raise QuditLabError(f"no closed form for {label!r}")


def closed_form_reduction(rho7, which: str) -> np.ndarray:
    """Reduced states written out entry by entry in terms of ``rho_{i,j}``.

    Independent of :func:`partial_trace`; kept as a regression oracle for
    :func:`reduced_state`.
    """
    label = _normalize_label(which)
    rho = _validated(rho7)
    if label == "ABC":
        return embed_7_to_8(rho)
    r = np.zeros((8, 8), dtype=complex)
    r[1:, 1:] = rho
    return _closed_form_from(r, label).astype(complex)


def subsystem_entropies(rho7) -> dict[str, float]:
    """Entropy in bits of every subsystem label in ``SUBSYSTEMS``."""
    rho8 = embed_7_to_8(rho7)
    return {label: von_neumann_entropy(_reduce(rho8, label)) for label in SUBSYSTEMS}


def _mutual(s: Mapping[str, float], pair: str) -> float:
    x, y = pair
    return s[x] + s[y] - s[pair]


def _conditional(s: Mapping[str, float], pair: str, given: str) -> float:
    x, y = pair
    xz = "".join(sorted(x + given))
    yz = "".join(sorted(y + given))
    return s[xz] + s[yz] - s[given] - s["ABC"]


def _check_pair(pair: str) -> str:
    label = _normalize_label(pair)
    if label not in PAIRS:
        raise QuditLabError(f"pair must be one of {PAIRS}, got {pair!r}")
    return label


def mutual_information(rho7, pair: str) -> float:
    """``I_XY = S[X] + S[Y] - S[XY]`` in bits."""
    label = _check_pair(pair)
    rho8 = embed_7_to_8(rho7)
    s = {c: von_neumann_entropy(_reduce(rho8, c)) for c in (label[0], label[1], label)}
    return _mutual(s, label)


def conditional_mutual_information(rho7, pair: str, given: str) -> float:
    """``I_XY|Z = S[XZ] + S[YZ] - S[Z] - S[XYZ]`` in bits."""
    label = _check_pair(pair)
    z = _normalize_label(given)
    if len(z) != 1 or z in label:
        raise QuditLabError(f"conditioning subsystem {given!r} must be the one not in {label!r}")
    s = subsystem_entropies(rho7)
    return _conditional(s, label, z)


def information_record(rho7, T: float = float("nan")) -> SweepRecord:
    """All six quantities at once, sharing the seven subsystem entropies."""
    s = subsystem_entropies(rho7)
    return SweepRecord(
        T=T,
        I_AB=_mutual(s, "AB"),
        I_AC=_mutual(s, "AC"),
        I_BC=_mutual(s, "BC"),
        I_AB_given_C=_conditional(s, "AB", "C"),
        I_AC_given_B=_conditional(s, "AC", "B"),
        I_BC_given_A=_conditional(s, "BC", "A"),
    )


def qutrit_qubit_split(rho7) -> tuple[np.ndarray, np.ndarray]:
    """Reduced qutrit (3x3) and qubit (2x2) states of the six-level subspace.

    Raises ``AncillaOccupied`` if level 7 carries population above 1e-9.
    """
    rho = _validated(rho7)
    if abs(rho[6, 6]) > ANCILLA_TOL:
        raise AncillaOccupied(f"ancilla population {rho[6, 6].real:.3e} exceeds {ANCILLA_TOL}")
    sub = rho[:6, :6]
    tr = np.trace(sub).real
    if abs(tr) < TRACE_TOL:
        raise NotDensityMatrix("six-level subspace carries no population")
    sub = sub / tr
    dims = QUBIT_QUTRIT.target_factor_dims
    return partial_trace(sub, dims, [0]), partial_trace(sub, dims, [1])
