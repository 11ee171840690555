"""Exact 4x4 complex linear algebra.

Matrices are plain ``numpy`` arrays of shape ``(4, 4)`` and dtype
``complex128``; state vectors are arrays of shape ``(4,)``.  The Hermitian
eigensolver is a cyclic Jacobi iteration.  It serves as the numerical
reference that the closed-form results elsewhere in the package are
checked against, so it deliberately does not call LAPACK.
"""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError, NonHermitianInput

DIM = 4

EXACT_TOL = 1e-12
ITER_TOL = 1e-10
HERMITIAN_TOL = 1e-10
DEGENERACY_TOL = 1e-10

JACOBI_OFF_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100


class EigenDecomposition4(NamedTuple):
    """Spectral decomposition of a 4x4 Hermitian matrix.

    ``eigenvalues`` are real and ascending.  ``eigenvectors[:, k]`` is the
    normalised eigenvector for ``eigenvalues[k]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def vector(self, k: int) -> np.ndarray:
        return self.eigenvectors[:, k]

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix4(m) -> np.ndarray:
    """Return ``m`` as a finite complex 4x4 array (copy)."""
    a = np.array(m, dtype=np.complex128)
    if a.shape != (DIM, DIM):
        raise ValueError(f"expected a 4x4 matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix contains NaN or Inf")
    return a


def as_vector4(v) -> np.ndarray:
    a = np.array(v, dtype=np.complex128)
    if a.shape != (DIM,):
        raise ValueError(f"expected a length-4 vector, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("vector contains NaN or Inf")
    return a


def hermiticity_defect(m) -> float:
    """Largest entrywise deviation of ``m`` from ``m^dagger``."""
    a = np.asarray(m)
    return float(np.max(np.abs(a - a.conj().T)))


def is_hermitian(m, tol: float = EXACT_TOL) -> bool:
    return hermiticity_defect(m) <= tol


def matmul(a, b) -> np.ndarray:
    return as_matrix4(a) @ as_matrix4(b)


def projector(v) -> np.ndarray:
    """|v><v| for a (not necessarily normalised) vector."""
    v = as_vector4(v)
    return np.outer(v, v.conj())


def fix_phase(v: np.ndarray) -> np.ndarray:
    """Rotate ``v`` so its largest-magnitude entry is real and positive.

    Among entries whose magnitude ties with the maximum (within
    ``EXACT_TOL``) the first one is used.
    """
    mags = np.abs(v)
    top = mags.max()
    if top == 0.0:
        return v.copy()
    k = int(np.flatnonzero(mags >= top - EXACT_TOL)[0])
    return v * (abs(v[k]) / v[k])


def _off_norm(a: list[list[complex]]) -> float:
    return math.sqrt(sum(abs(a[i][j]) ** 2 for i in range(DIM) for j in range(DIM) if i != j))


def _jacobi(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic complex Jacobi sweeps; returns (diagonal, accumulated unitary).

    Works on nested lists: at this size per-element numpy indexing costs
    more than the arithmetic.
    """
    a = m.tolist()
    v = [[1.0 + 0j if i == j else 0j for j in range(DIM)] for i in range(DIM)]
    threshold = JACOBI_OFF_TOL * max(1.0, float(np.linalg.norm(m)))
    for _ in range(JACOBI_MAX_SWEEPS + 1):
        if _off_norm(a) < threshold:
            return np.array([a[k][k].real for k in range(DIM)]), np.array(v)
        for p in range(DIM - 1):
            for q in range(p + 1, DIM):
                b = a[p][q]
                mag = abs(b)
                if mag == 0.0:
                    continue
                # G = diag(1, e^{-i phi}) @ [[c, -s], [s, c]] acting on the (p, q) plane
                bs = b / max(abs(b.real), abs(b.imag))  # unit phase even for subnormal b
                ph = bs.conjugate() / abs(bs)
                theta = 0.5 * math.atan2(2.0 * mag, a[p][p].real - a[q][q].real)
                c, s = math.cos(theta), math.sin(theta)
                g10, g11 = s * ph, c * ph
                for row in a:
                    xp, xq = row[p], row[q]
                    row[p] = c * xp + g10 * xq
                    row[q] = -s * xp + g11 * xq
                rp, rq = a[p], a[q]
                g10c, g11c = g10.conjugate(), g11.conjugate()
                for j in range(DIM):
                    xp, xq = rp[j], rq[j]
                    rp[j] = c * xp + g10c * xq
                    rq[j] = -s * xp + g11c * xq
                rp[q] = rq[p] = 0j
                rp[p] = complex(rp[p].real)
                rq[q] = complex(rq[q].real)
                for row in v:
                    xp, xq = row[p], row[q]
                    row[p] = c * xp + g10 * xq
                    row[q] = -s * xp + g11 * xq
    raise ConvergenceError(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")


def _orthonormalize(vs: list[np.ndarray]) -> list[np.ndarray]:
    out: list[np.ndarray] = []
    for v in vs:
        w = v.copy()
        for u in out:
            w = w - np.vdot(u, w) * u
        out.append(w / np.linalg.norm(w))
    return out


def _sort_key(v: np.ndarray) -> tuple:
    return tuple(x for z in v for x in (round(z.real, 12), round(z.imag, 12)))


def eigen_hermitian(m) -> EigenDecomposition4:
    """Full eigendecomposition of a Hermitian 4x4 matrix by Jacobi rotations.

    Eigenvalues come back ascending.  Within a degenerate cluster
    (gaps below ``DEGENERACY_TOL``) the vectors are re-orthonormalised and
    ordered lexicographically, so only the cluster's projector is
    meaningful.  Every vector follows the :func:`fix_phase` convention.

    Raises
    ------
    NonHermitianInput
        If ``m`` differs from its adjoint by more than ``HERMITIAN_TOL``.
    """
    a = as_matrix4(m)
    defect = hermiticity_defect(a)
    if defect > HERMITIAN_TOL:
        raise NonHermitianInput(f"matrix is not Hermitian (max |m - m^dagger| = {defect:.3e})")
    a = 0.5 * (a + a.conj().T)

    evals, evecs = _jacobi(a)
    order = np.argsort(evals, kind="stable")
    evals = evals[order]
    vecs = [evecs[:, k] for k in order]

    values: list[float] = []
    ordered: list[np.ndarray] = []
    start = 0
    while start < DIM:
        stop = start + 1
        while stop < DIM and evals[stop] - evals[stop - 1] < DEGENERACY_TOL:
            stop += 1
        cluster = vecs[start:stop]
        if len(cluster) > 1:
            cluster = sorted((fix_phase(w) for w in _orthonormalize(cluster)), key=_sort_key)
        else:
            cluster = [fix_phase(cluster[0] / np.linalg.norm(cluster[0]))]
        ordered.extend(cluster)
        values.extend(evals[start:stop])
        start = stop

    return EigenDecomposition4(np.array(values), np.column_stack(ordered))


def eigvals_hermitian(m) -> np.ndarray:
    return eigen_hermitian(m).eigenvalues


def is_positive_semidefinite(m, tol: float = ITER_TOL) -> bool:
    return bool(eigvals_hermitian(m)[0] >= -tol)
