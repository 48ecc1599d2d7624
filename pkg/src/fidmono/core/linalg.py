"""Dense complex linear algebra kernels.

Every routine accepts a single matrix of shape ``(n, n)`` or a stack of
shape ``(..., n, n)`` and works on the whole stack at once. Campaigns
rely on this to process thousands of small reduced states in one call.
"""

from typing import NamedTuple

import numpy as np

from .. import config
from ..errors import InputError, NotPSDError, NumericalError, SizeError


class HermitianEigen(NamedTuple):
    """Eigenvalues in ascending order and orthonormal eigenvectors as columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2] or a.shape[-1] < 1:
        raise InputError(f"{name} must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InputError(f"{name} has non-finite entries")
    return a


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(a, -1, -2))


def frobenius(a: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(np.abs(a) ** 2, axis=(-2, -1)))


def hermitian_deviation(a: np.ndarray) -> np.ndarray:
    """Largest entrywise ``|a - a^H|`` per matrix."""
    return np.max(np.abs(a - dagger(a)), axis=(-2, -1))


def kron(a, b) -> np.ndarray:
    """Kronecker product ``a ⊗ b`` of two square matrices."""
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    if a.ndim != 2 or b.ndim != 2:
        raise InputError("kron takes two single matrices")
    dim = a.shape[0] * b.shape[0]
    if dim * dim > config.max_entries():
        raise SizeError(f"kron result of dimension {dim} exceeds {config.max_entries()} entries")
    return np.kron(a, b)


_TINY = 1e-280


def _rotate(a, v, p, q):
    """One complex Jacobi rotation annihilating ``a[..., p, q]`` in place."""
    b = a[:, p, q]
    app = a[:, p, p].real
    aqq = a[:, q, q].real
    absb = np.abs(b)
    # subnormal off-diagonals would overflow the phase and tau divisions
    nonzero = absb > _TINY
    safe = np.where(nonzero, absb, 1.0)
    phase = np.where(nonzero, b.real / safe + 1j * (b.imag / safe), 1.0)
    with np.errstate(over="ignore", invalid="ignore"):
        tau = (aqq - app) / (2.0 * safe)
        sign = np.where(tau >= 0.0, 1.0, -1.0)
        t = sign / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
    t = np.where(nonzero & np.isfinite(t), t, 0.0)
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    # G = diag(1, e^{-i phi}) @ [[c, s], [-s, c]]
    g00 = c
    g01 = s
    g10 = -s * np.conj(phase)
    g11 = c * np.conj(phase)

    col_p = a[:, :, p].copy()
    col_q = a[:, :, q]
    a[:, :, p] = col_p * g00[:, None] + col_q * g10[:, None]
    a[:, :, q] = col_p * g01[:, None] + col_q * g11[:, None]
    row_p = a[:, p, :].copy()
    row_q = a[:, q, :]
    a[:, p, :] = np.conj(g00)[:, None] * row_p + np.conj(g10)[:, None] * row_q
    a[:, q, :] = np.conj(g01)[:, None] * row_p + np.conj(g11)[:, None] * row_q
    a[:, p, q] = 0.0
    a[:, q, p] = 0.0
    a[:, p, p] = a[:, p, p].real
    a[:, q, q] = a[:, q, q].real

    if v is not None:
        vp = v[:, :, p].copy()
        vq = v[:, :, q]
        v[:, :, p] = vp * g00[:, None] + vq * g10[:, None]
        v[:, :, q] = vp * g01[:, None] + vq * g11[:, None]


def _jacobi(h, want_vectors, tol, max_sweeps):
    h = as_matrix(h, "h")
    dev = hermitian_deviation(h)
    scale = np.maximum(1.0, np.max(np.abs(h), axis=(-2, -1)))
    if np.any(dev > config.HERMITIAN_TOL * scale):
        raise InputError(f"matrix is not Hermitian (deviation {np.max(dev):.3e})")
    batch_shape = h.shape[:-2]
    n = h.shape[-1]
    a = (0.5 * (h + dagger(h))).reshape(-1, n, n).copy()
    v = None
    if want_vectors:
        v = np.broadcast_to(np.eye(n, dtype=np.complex128), a.shape).copy()
    norm = np.maximum(1.0, frobenius(a))
    offdiag = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps + 1):
        off = np.sqrt(np.sum(np.abs(a[:, offdiag]) ** 2, axis=-1))
        # sweep only the unconverged members, so each result is independent of its batch
        active = np.flatnonzero(off > tol * norm)
        if active.size == 0:
            break
        sub = a[active]
        sub_v = None if v is None else v[active]
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(sub, sub_v, p, q)
        a[active] = sub
        if v is not None:
            v[active] = sub_v
    else:
        raise NumericalError(f"Jacobi eigensolver did not converge in {max_sweeps} sweeps")

    w = np.diagonal(a, axis1=-2, axis2=-1).real
    order = np.argsort(w, axis=-1, kind="stable")
    w = np.take_along_axis(w, order, axis=-1).reshape(*batch_shape, n)
    if v is not None:
        v = np.take_along_axis(v, order[:, None, :], axis=-1).reshape(*batch_shape, n, n)
    return w, v


def eigh(h, *, tol: float = config.JACOBI_TOL, max_sweeps: int = config.JACOBI_MAX_SWEEPS) -> HermitianEigen:
    """Eigendecomposition of a Hermitian matrix (or stack) by cyclic complex Jacobi.

    Sweeps run over all index pairs ``(p, q)`` in row order until the
    off-diagonal Frobenius norm drops below ``tol * max(1, ||h||_F)``.

    Raises:
        InputError: if ``h`` is not Hermitian within 1e-10.
        NumericalError: if ``max_sweeps`` sweeps do not converge.
    """
    w, v = _jacobi(h, True, tol, max_sweeps)
    return HermitianEigen(w, v)


def eigvalsh(h, *, tol: float = config.JACOBI_TOL, max_sweeps: int = config.JACOBI_MAX_SWEEPS) -> np.ndarray:
    """Ascending eigenvalues only; skips eigenvector accumulation."""
    w, _ = _jacobi(h, False, tol, max_sweeps)
    return w


def clamp_psd(w: np.ndarray, tol: float = config.PSD_CLAMP) -> np.ndarray:
    if np.any(w < -tol):
        raise NotPSDError(f"matrix has eigenvalue {np.min(w):.3e} below -{tol:g}")
    return np.maximum(w, 0.0)


def _drop_roundoff(w: np.ndarray) -> np.ndarray:
    """Zero eigenvalues that are round-off relative to the largest one.

    Square roots turn 1e-17 noise on a null space into 3e-9 errors, so
    eigenvalues at or below ``ZERO_EIG_RTOL * max|w|`` are treated as exact zeros.
    """
    cut = config.ZERO_EIG_RTOL * np.max(np.abs(w), axis=-1, keepdims=True)
    return np.where(w <= cut, 0.0, w)


def sqrtm_psd(rho) -> np.ndarray:
    """Principal square root of a Hermitian positive semidefinite matrix.

    Eigenvalues in ``[-1e-10, 0)`` are treated as round-off and set to 0;
    anything more negative raises :class:`NotPSDError`.
    """
    w, v = eigh(rho)
    w = np.sqrt(_drop_roundoff(clamp_psd(w)))
    return (v * w[..., None, :]) @ dagger(v)


def fidelity_matrices(rho, sigma) -> np.ndarray:
    """Uhlmann fidelity ``(tr sqrt(sqrt(rho) sigma sqrt(rho)))**2`` on raw matrices."""
    rho = as_matrix(rho, "rho")
    sigma = as_matrix(sigma, "sigma")
    if rho.shape[-1] != sigma.shape[-1]:
        raise InputError(f"dimension mismatch: {rho.shape[-1]} vs {sigma.shape[-1]}")
    s = sqrtm_psd(rho)
    m = s @ sigma @ s
    m = 0.5 * (m + dagger(m))
    w = eigvalsh(m)
    f = np.sum(np.sqrt(_drop_roundoff(clamp_psd(w))), axis=-1) ** 2
    if np.any(f > 1.0 + 1e-10) or np.any(f < -1e-10):
        raise NumericalError(f"fidelity {f} outside [0, 1]; inputs are not normalized states")
    return np.clip(f, 0.0, 1.0)


def _check_keep(keep, n_qubits):
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise InputError("keep set must be nonempty")
    if keep[0] < 0 or keep[-1] >= n_qubits:
        raise InputError(f"keep set {keep} out of range for {n_qubits} qubits")
    return keep


def partial_trace_matrix(rho: np.ndarray, n_qubits: int, keep) -> np.ndarray:
    """Trace out every qubit not in ``keep``; the kept qubits stay in ascending order.

    Qubit 0 is the most significant tensor factor. Leading batch axes of
    ``rho`` are preserved.
    """
    keep = _check_keep(keep, n_qubits)
    batch = rho.shape[:-2]
    t = rho.reshape(*batch, *([2] * (2 * n_qubits)))
    nb = len(batch)
    letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    bl = letters[:nb]
    rows = list(letters[nb : nb + n_qubits])
    cols = list(letters[nb + n_qubits : nb + 2 * n_qubits])
    for k in range(n_qubits):
        if k not in keep:
            cols[k] = rows[k]
    out = bl + "".join(rows[k] for k in keep) + "".join(cols[k] for k in keep)
    r = np.einsum(f"{bl}{''.join(rows)}{''.join(cols)}->{out}", t)
    d = 2 ** len(keep)
    return r.reshape(*batch, d, d)


def permute_qubits_matrix(rho: np.ndarray, n_qubits: int, order) -> np.ndarray:
    """Reorder tensor factors so that new qubit ``i`` is old qubit ``order[i]``."""
    batch = rho.shape[:-2]
    nb = len(batch)
    t = rho.reshape(*batch, *([2] * (2 * n_qubits)))
    axes = list(range(nb)) + [nb + k for k in order] + [nb + n_qubits + k for k in order]
    d = 2**n_qubits
    return np.transpose(t, axes).reshape(*batch, d, d)


def permute_qubits_vector(psi: np.ndarray, n_qubits: int, order) -> np.ndarray:
    batch = psi.shape[:-1]
    nb = len(batch)
    t = psi.reshape(*batch, *([2] * n_qubits))
    axes = list(range(nb)) + [nb + k for k in order]
    return np.transpose(t, axes).reshape(*batch, 2**n_qubits)
