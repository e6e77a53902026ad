"""Dense complex-matrix helpers, a Hermitian Jacobi eigensolver and entropies.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.  All
functions are pure; inputs are never modified in place.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import ConvergenceError, DimensionMismatch, NotDensityMatrix, NotHermitian

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-9
CLIP_TOL = 1e-10

JACOBI_OFF_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100


@dataclass(frozen=True)
class Spectrum:
    """Eigen-decomposition ``m = V diag(eigenvalues) V^dagger``.

    ``eigenvalues`` are real and sorted in descending order; column ``j`` of
    ``eigenvectors`` belongs to ``eigenvalues[j]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    return a


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex)


def dagger(m) -> np.ndarray:
    return as_matrix(m).conj().T


def matmul(*ms) -> np.ndarray:
    """Left-to-right product ``ms[0] @ ms[1] @ ...``."""
    if not ms:
        raise DimensionMismatch("matmul needs at least one operand")
    out = as_matrix(ms[0])
    for m in ms[1:]:
        b = as_matrix(m)
        if b.shape[0] != out.shape[1]:
            raise DimensionMismatch(f"cannot multiply {out.shape} by {b.shape}")
        out = out @ b
    return out


def trace(m) -> complex:
    return complex(np.trace(as_matrix(m)))


def max_abs_diff(a, b) -> float:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shape {a.shape} differs from {b.shape}")
    return float(np.max(np.abs(a - b))) if a.size else 0.0


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    a = as_matrix(m)
    return max_abs_diff(a, a.conj().T) <= tol


def is_unitary(m, tol: float = 1e-12) -> bool:
    a = as_matrix(m)
    return max_abs_diff(a @ a.conj().T, identity(a.shape[0])) <= tol


@lru_cache(maxsize=None)
def _round_robin(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    # Circle-method schedule: every pair (p, q) appears once per sweep, and the
    # pairs within a round are disjoint so their rotations commute.
    m = n + n % 2
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = [
            (min(x, y), max(x, y))
            for x, y in zip(players[: m // 2], players[::-1][: m // 2])
            if max(x, y) < n
        ]
        rounds.append(tuple(pairs))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _jacobi_round(a: np.ndarray, v: np.ndarray, pairs: tuple[tuple[int, int], ...]) -> None:
    # Annihilate a[p, q] for disjoint pairs with G = diag(1, e^{-i phi}) @ [[c, s], [-s, c]].
    # Scalar work stays in Python floats: numpy call overhead dominates at this size.
    diag = a.diagonal().real.tolist()
    g = None
    done = []
    for p, q in pairs:
        apq = complex(a[p, q])
        r = abs(apq)
        if r == 0.0:
            continue
        app, aqq = diag[p], diag[q]
        # Below an ulp of both diagonal entries: drop instead of rotating.
        if abs(app) + 1e3 * r == abs(app) and abs(aqq) + 1e3 * r == abs(aqq):
            a[p, q] = a[q, p] = 0.0
            continue
        phase = apq / r
        phase /= abs(phase)
        tau = (aqq - app) / (2.0 * r)
        t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.hypot(1.0, tau))
        c = 1.0 / math.hypot(1.0, t)
        s = t * c
        if g is None:
            g = np.eye(a.shape[0], dtype=complex)
        g[p, p] = c
        g[p, q] = s
        g[q, p] = -s * phase.conjugate()
        g[q, q] = c * phase.conjugate()
        done.append((p, q))
    if g is None:
        return
    a[:] = g.conj().T @ a @ g
    v[:] = v @ g
    p, q = zip(*done)
    a[p, q] = a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real


def eig_hermitian(m) -> Spectrum:
    """Cyclic Jacobi diagonalisation of a Hermitian matrix.

    Each sweep visits every off-diagonal pair once in round-robin order.
    Sweeps stop when the off-diagonal Frobenius norm drops below ``1e-14``
    (scaled by the matrix norm when that exceeds one).

    Raises
    ------
    NotHermitian
        If ``max|m - m^dagger| > 1e-10``.
    ConvergenceError
        If 100 sweeps do not reach the threshold.
    """
    a = as_matrix(m)
    if not is_hermitian(a):
        raise NotHermitian(
            f"matrix is not Hermitian (max deviation {max_abs_diff(a, a.conj().T):.3e})"
        )
    n = a.shape[0]
    a = 0.5 * (a + a.conj().T)
    v = identity(n)
    threshold = JACOBI_OFF_TOL * max(1.0, float(np.linalg.norm(a)))
    offdiag = ~np.eye(n, dtype=bool)

    for _ in range(JACOBI_MAX_SWEEPS + 1):
        off = np.linalg.norm(a[offdiag])
        if off < threshold:
            break
        for pairs in _round_robin(n):
            _jacobi_round(a, v, pairs)
    else:
        raise ConvergenceError(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")

    w = np.diag(a).real.copy()
    order = np.argsort(-w, kind="stable")
    return Spectrum(eigenvalues=w[order], eigenvectors=v[:, order])


def check_density_matrix(sigma, trace_tol: float = TRACE_TOL, clip_tol: float = CLIP_TOL) -> np.ndarray:
    """Return the eigenvalues of ``sigma`` after validating it as a state.

    Eigenvalues inside ``(-clip_tol, 0)`` are clipped to zero; anything more
    negative, or a trace off by more than ``trace_tol``, raises
    ``NotDensityMatrix``.
    """
    a = as_matrix(sigma)
    tr = np.trace(a)
    if abs(tr - 1.0) > trace_tol:
        raise NotDensityMatrix(f"trace is {tr.real:.12g}, expected 1")
    w = eig_hermitian(a).eigenvalues
    if w.size and w.min() < -clip_tol:
        raise NotDensityMatrix(f"negative eigenvalue {w.min():.3e}")
    return np.clip(w, 0.0, None)


def von_neumann_entropy(sigma) -> float:
    """Entropy ``-Tr[sigma log2 sigma]`` in bits, with ``0 log 0 = 0``."""
    w = check_density_matrix(sigma)
    w = w[w > 0]
    return float(-np.sum(w * np.log2(w)))


def partial_trace(m, factor_dims: Sequence[int], kept: Sequence[int]) -> np.ndarray:
    """Reduce ``m`` onto the tensor factors listed in ``kept``.

    Factor 0 is the slowest-varying (leftmost) index.  The kept factors keep
    their original relative order regardless of the order given in ``kept``.
    """
    a = as_matrix(m)
    dims = [int(d) for d in factor_dims]
    if any(d <= 0 for d in dims) or int(np.prod(dims)) != a.shape[0]:
        raise DimensionMismatch(f"factor dims {dims} do not multiply to {a.shape[0]}")
    keep = sorted(set(int(k) for k in kept))
    if any(k < 0 or k >= len(dims) for k in keep):
        raise DimensionMismatch(f"kept factors {list(kept)} out of range for {len(dims)} factors")

    nf = len(dims)
    t = a.reshape(dims + dims)
    # Trace out from the highest factor index down so axis numbers stay valid.
    for f in reversed(range(nf)):
        if f in keep:
            continue
        n_left = t.ndim // 2
        t = np.trace(t, axis1=f, axis2=f + n_left)
    d = int(np.prod([dims[k] for k in keep])) if keep else 1
    return t.reshape(d, d)
