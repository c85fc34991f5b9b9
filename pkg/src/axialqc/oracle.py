"""Brute-force reference evaluation of LQU and LQFI.

Everything here works on dense 6x6 matrices and the defining trace/pair-sum
formulas.  Nothing in this module imports :mod:`axialqc.closed_form`; the two
routes are meant to be compared, not shared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import NotDensityMatrix, NotHermitian
from .state import ASDensityMatrix, ASSpectrum, block_basis

__all__ = [
    "PAULI",
    "LOCAL_SPINS",
    "BasisTransforms",
    "eig_hermitian",
    "sqrtm_psd",
    "max_eig_sym3",
    "jacobi_eig_sym",
    "w_matrix",
    "m_matrix",
    "lqu_oracle",
    "lqfi_oracle",
    "basis_transforms",
    "explicit_local_spins",
    "P34",
]

PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}
#: sigma_mu (x) I_3 for mu = x, y, z
LOCAL_SPINS = tuple(np.kron(PAULI[k], np.eye(3)) for k in "xyz")

P34 = np.eye(6)[[0, 1, 3, 2, 4, 5]]

HERMITIAN_TOL = 1e-12
NEG_EIG_TOL = 1e-10
PAIR_EPS = 1e-14


def _as_hermitian(A) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NotHermitian(f"expected a square matrix, got shape {A.shape}")
    dev = np.max(np.abs(A - A.conj().T)) if A.size else 0.0
    if dev > HERMITIAN_TOL:
        raise NotHermitian(f"max |A - A^H| = {dev:.3e}")
    return 0.5 * (A + A.conj().T)


def eig_hermitian(A) -> tuple[np.ndarray, np.ndarray]:
    """Ascending eigenvalues and unitary eigenvectors of a Hermitian matrix."""
    return np.linalg.eigh(_as_hermitian(A))


def _density_eig(rho) -> tuple[np.ndarray, np.ndarray]:
    evals, evecs = eig_hermitian(rho)
    if evals[0] < -NEG_EIG_TOL:
        raise NotDensityMatrix(f"negative eigenvalue {evals[0]:.3e}")
    tr = evals.sum()
    if abs(tr - 1.0) > 1e-9:
        raise NotDensityMatrix(f"trace {tr!r} != 1")
    return np.clip(evals, 0.0, None), evecs


def sqrtm_psd(rho) -> np.ndarray:
    """Square root of a positive semidefinite Hermitian matrix."""
    evals, evecs = eig_hermitian(rho)
    if evals[0] < -NEG_EIG_TOL:
        raise NotDensityMatrix(f"negative eigenvalue {evals[0]:.3e}")
    root = np.sqrt(np.clip(evals, 0.0, None))
    return (evecs * root) @ evecs.conj().T


def jacobi_eig_sym(A, tol: float = 1e-15, max_sweeps: int = 50) -> np.ndarray:
    """Eigenvalues of a small real symmetric matrix by cyclic Jacobi rotations."""
    A = np.array(A, dtype=float)
    n = A.shape[0]
    for _ in range(max_sweeps):
        off = math.sqrt(sum(A[i, j] ** 2 for i in range(n) for j in range(n) if i != j))
        if off <= tol * max(1.0, np.abs(A).max()):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if A[p, q] == 0.0:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * A[p, q])
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                J = np.eye(n)
                J[p, p] = J[q, q] = c
                J[p, q] = s
                J[q, p] = -s
                A = J.T @ A @ J
    return np.sort(np.diag(A))


def max_eig_sym3(A) -> float:
    """Largest eigenvalue of a real symmetric 3x3 matrix.

    Uses the trigonometric solution of the characteristic cubic; near a
    repeated root the arccos is ill-conditioned and Jacobi is used instead.
    """
    A = np.asarray(A, dtype=float)
    off2 = A[0, 1] ** 2 + A[0, 2] ** 2 + A[1, 2] ** 2
    if off2 == 0.0:
        return float(np.max(np.diag(A)))
    mean = np.trace(A) / 3.0
    dev2 = ((A[0, 0] - mean) ** 2 + (A[1, 1] - mean) ** 2 + (A[2, 2] - mean) ** 2
            + 2.0 * off2)
    scale = math.sqrt(dev2 / 6.0)
    B = (A - mean * np.eye(3)) / scale
    r = np.linalg.det(B) / 2.0
    if 1.0 - abs(r) < 1e-12:
        return float(jacobi_eig_sym(A)[-1])
    phi = math.acos(r) / 3.0
    return float(mean + 2.0 * scale * math.cos(phi))


def w_matrix(rho) -> np.ndarray:
    """Skew-information matrix ``W[mu, nu] = Tr(sqrt(rho) s_mu sqrt(rho) s_nu)``."""
    evals, evecs = _density_eig(rho)
    root = (evecs * np.sqrt(evals)) @ evecs.conj().T
    W = np.empty((3, 3))
    for i, s_i in enumerate(LOCAL_SPINS):
        left = root @ s_i @ root
        for j, s_j in enumerate(LOCAL_SPINS):
            W[i, j] = np.trace(left @ s_j).real
    return 0.5 * (W + W.T)


def m_matrix(rho, pair_eps: float = PAIR_EPS) -> np.ndarray:
    """Fisher-information matrix summed over eigenpairs of ``rho``.

    Pairs with ``p_m + p_n < pair_eps`` are skipped.
    """
    evals, evecs = _density_eig(rho)
    total = evals[:, None] + evals[None, :]
    keep = total >= pair_eps
    weight = np.zeros_like(total)
    weight[keep] = 2.0 * np.outer(evals, evals)[keep] / total[keep]
    local = [evecs.conj().T @ s @ evecs for s in LOCAL_SPINS]
    M = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            M[i, j] = np.sum(weight * local[i] * local[j].T).real
    return 0.5 * (M + M.T)


def lqu_oracle(rho) -> float:
    return 1.0 - max_eig_sym3(w_matrix(rho))


def lqfi_oracle(rho, pair_eps: float = PAIR_EPS) -> float:
    return 1.0 - max_eig_sym3(m_matrix(rho, pair_eps))


@dataclass(frozen=True)
class BasisTransforms:
    """Permutation and block rotation that diagonalize an AS matrix, and the
    local Pauli operators expressed in the resulting eigenbasis."""

    P34: np.ndarray
    R: np.ndarray
    Sx: np.ndarray
    Sy: np.ndarray
    Sz: np.ndarray
    degenerate: bool = False


def _block_entries(m: ASDensityMatrix, s: ASSpectrum):
    alpha, beta = block_basis(m.a, m.c, m.u, s.q1)
    gamma, delta = block_basis(m.b, m.d, m.v, s.q2)
    return alpha, beta, gamma, delta


def basis_transforms(m: ASDensityMatrix, s: ASSpectrum) -> BasisTransforms:
    """Build ``P34`` and ``R`` and conjugate the local Pauli operators."""
    alpha, beta, gamma, delta = _block_entries(m, s)
    R = np.zeros((6, 6), dtype=complex)
    R[0, 0] = R[5, 5] = 1.0
    R[1:3, 1:3] = [[alpha, beta], [np.conj(beta), -alpha]]
    R[3:5, 3:5] = [[gamma, delta], [np.conj(delta), -gamma]]
    T = R @ P34
    Sx, Sy, Sz = (T @ op @ T.conj().T for op in LOCAL_SPINS)
    return BasisTransforms(P34=P34.copy(), R=R, Sx=Sx, Sy=Sy, Sz=Sz,
                           degenerate=s.deg_block1 or s.deg_block2)


def explicit_local_spins(m: ASDensityMatrix, s: ASSpectrum) -> tuple[np.ndarray, ...]:
    """Entry-by-entry formulas for the local Pauli operators in the eigenbasis.

    Independent of :func:`basis_transforms`'s matrix products; the two must
    agree.
    """
    al, be, ga, de = _block_entries(m, s)
    bc, dc = np.conj(be), np.conj(de)
    Sx = np.zeros((6, 6), dtype=complex)
    Sy = np.zeros((6, 6), dtype=complex)
    Sz = np.zeros((6, 6), dtype=complex)
    x_entries = {
        (0, 1): bc, (0, 2): -al,
        (1, 3): al * dc, (1, 4): -al * ga,
        (2, 3): bc * dc, (2, 4): -ga * bc,
        (3, 5): ga, (4, 5): dc,
    }
    y_entries = {
        (0, 1): -1j * bc, (0, 2): 1j * al,
        (1, 3): -1j * al * dc, (1, 4): 1j * al * ga,
        (2, 3): -1j * bc * dc, (2, 4): 1j * ga * bc,
        (3, 5): -1j * ga, (4, 5): -1j * dc,
    }
    for S, entries in ((Sx, x_entries), (Sy, y_entries)):
        for (i, j), val in entries.items():
            S[i, j] = val
            S[j, i] = np.conj(val)
    Sz[0, 0] = 1.0
    Sz[5, 5] = -1.0
    Sz[1, 1] = al * al - abs(be) ** 2
    Sz[2, 2] = -Sz[1, 1]
    Sz[1, 2] = 2 * al * be
    Sz[2, 1] = 2 * al * bc
    Sz[3, 3] = ga * ga - abs(de) ** 2
    Sz[4, 4] = -Sz[3, 3]
    Sz[3, 4] = 2 * ga * de
    Sz[4, 3] = 2 * ga * dc
    return Sx, Sy, Sz
