"""Separable ensembles, ensemble decompositions and their real parametrizations."""

from dataclasses import dataclass

import numpy as np

from ..config import STATE_TOL
from ..core import linalg
from ..core.states import DensityMatrix
from ..errors import InputError
from ..measures import Bipartition


def unit_vectors(theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Unit vectors in C^d from ``d - 1`` hyperspherical angles and ``d - 1`` relative phases.

    ``theta`` and ``phi`` have shape ``(..., d - 1)``; component 0 is real.
    """
    theta = np.asarray(theta, dtype=float)
    if theta.shape[-1] == 1:
        phase = np.exp(1j * np.asarray(phi, dtype=float))
        return np.concatenate([np.cos(theta) + 0j, np.sin(theta) * phase], axis=-1)
    sin = np.sin(theta)
    cos = np.cos(theta)
    # r_k = sin(t_1)...sin(t_k) cos(t_{k+1}), last one without the cosine
    lead = np.cumprod(np.concatenate([np.ones(theta.shape[:-1] + (1,)), sin], axis=-1), axis=-1)
    tail = np.concatenate([cos, np.ones(theta.shape[:-1] + (1,))], axis=-1)
    r = lead * tail
    phases = np.concatenate([np.ones(theta.shape[:-1] + (1,)), np.exp(1j * np.asarray(phi, dtype=float))], axis=-1)
    return r * phases


def weights_from_params(x: np.ndarray) -> np.ndarray:
    sq = np.asarray(x, dtype=float) ** 2
    total = sq.sum(axis=-1, keepdims=True)
    uniform = np.full_like(sq, 1.0 / sq.shape[-1])
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(total > 0, sq / np.where(total > 0, total, 1.0), uniform)


def _inverse(order):
    inv = [0] * len(order)
    for i, k in enumerate(order):
        inv[k] = i
    return inv


@dataclass(frozen=True, eq=False)
class SeparableEnsemble:
    """``sigma = sum_k w_k |a_k><a_k| (x) |b_k><b_k|`` with A first, then the rest.

    ``a_states`` is ``(m, 2)``, ``b_states`` is ``(m, d)``.
    """

    weights: np.ndarray
    a_states: np.ndarray
    b_states: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        a = np.asarray(self.a_states, dtype=complex)
        b = np.asarray(self.b_states, dtype=complex)
        if w.ndim != 1 or a.shape != (w.size, 2) or b.ndim != 2 or b.shape[0] != w.size:
            raise InputError("inconsistent ensemble shapes")
        if np.any(w < 0) or abs(w.sum() - 1) > STATE_TOL:
            raise InputError("ensemble weights must be a probability vector")
        for name, f in (("a", a), ("b", b)):
            if np.max(np.abs(np.linalg.norm(f, axis=1) - 1)) > STATE_TOL:
                raise InputError(f"{name} factors must be unit vectors")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "a_states", a)
        object.__setattr__(self, "b_states", b)

    @property
    def m(self) -> int:
        return self.weights.size

    def factor_matrix(self) -> np.ndarray:
        """``B`` with ``sigma = B B^H``: columns ``sqrt(w_k) a_k (x) b_k``."""
        prod = (self.a_states[:, :, None] * self.b_states[:, None, :]).reshape(self.m, -1)
        return (np.sqrt(self.weights)[:, None] * prod).T

    def matrix(self) -> np.ndarray:
        b = self.factor_matrix()
        return b @ b.conj().T

    def density(self, part: Bipartition) -> DensityMatrix:
        """The ensemble as a density matrix in the original qubit order of ``part``."""
        m = linalg.permute_qubits_matrix(self.matrix(), part.n_qubits, _inverse(part.order))
        m = 0.5 * (m + m.conj().T)
        return DensityMatrix(m / np.trace(m).real)

    def to_dict(self) -> dict:
        def enc(z):
            return [[float(v.real), float(v.imag)] for v in z]

        return {
            "weights": [float(w) for w in self.weights],
            "a_states": [enc(a) for a in self.a_states],
            "b_states": [enc(b) for b in self.b_states],
        }


def ensemble_n_params(m: int, d: int) -> int:
    return m * (1 + 2 * d)


def decode_ensemble(x: np.ndarray, m: int, d: int):
    """Map parameters ``(..., m (1 + 2d))`` to weights, A factors and B factors."""
    x = np.asarray(x, dtype=float)
    w = weights_from_params(x[..., :m])
    per = x[..., m:].reshape(*x.shape[:-1], m, 2 * d)
    a = unit_vectors(per[..., 0:1], per[..., 1:2])
    b = unit_vectors(per[..., 2 : d + 1], per[..., d + 1 : 2 * d])
    return w, a, b


def ensemble_factor(x: np.ndarray, m: int, d: int) -> np.ndarray:
    """``B`` of shape ``(..., 2d, m)`` with ``sigma = B B^H``."""
    w, a, b = decode_ensemble(x, m, d)
    prod = (a[..., :, :, None] * b[..., :, None, :]).reshape(*w.shape, 2 * d)
    return np.swapaxes(np.sqrt(w)[..., None] * prod, -1, -2)


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Pure-state decomposition ``rho = sum_j p_j |psi_j><psi_j|``; ``states`` is ``(m, D)``."""

    weights: np.ndarray
    states: np.ndarray

    def matrix(self) -> np.ndarray:
        return np.einsum("j,ja,jb->ab", self.weights, self.states, self.states.conj())

    def to_dict(self) -> dict:
        return {
            "weights": [float(w) for w in self.weights],
            "states": [[[float(v.real), float(v.imag)] for v in s] for s in self.states],
        }


def unitary_n_params(m: int) -> int:
    return m * m


def unitary_from_params(x: np.ndarray, m: int) -> np.ndarray:
    """``U(m)`` element from Givens rotations over all pairs (angle, phase) and ``m`` column phases."""
    x = np.asarray(x, dtype=float)
    batch = x.shape[:-1]
    u = np.broadcast_to(np.eye(m, dtype=complex), batch + (m, m)).copy()
    k = 0
    for p in range(m - 1):
        for q in range(p + 1, m):
            c = np.cos(x[..., k])[..., None]
            s = np.sin(x[..., k])[..., None]
            e = np.exp(1j * x[..., k + 1])[..., None]
            up = u[..., :, p].copy()
            uq = u[..., :, q]
            u[..., :, p] = c * up + s * e * uq
            u[..., :, q] = -s * np.conj(e) * up + c * uq
            k += 2
    return u * np.exp(1j * x[..., k : k + m])[..., None, :]
