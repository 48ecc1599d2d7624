"""Variational bounds used to cross-check the closed forms.

``max_product_fidelity_pure`` and ``max_separable_fidelity_mixed`` return
fidelities of explicit separable states, so they bound the fidelity of
separability from below. ``convex_roof_concurrence_upper`` returns the
average concurrence of an explicit decomposition, an upper bound on the
convex roof. These routines use LAPACK (through numpy) rather than the
Jacobi kernel so that they stay independent of the closed-form path.
"""

from dataclasses import dataclass
from typing import Any, Optional

import numpy as np

from ..config import ZERO_EIG_RTOL
from ..core.linalg import permute_qubits_matrix, permute_qubits_vector
from ..core.rng import make_rng
from ..core.states import DensityMatrix, PureState, as_density
from ..errors import InputError
from ..measures import PartLike, as_bipartition
from . import ensembles as ens
from .search import coordinate_search


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 16
    max_iterations: int = 2000
    step_tolerance: float = 1e-8
    seed: int = 0

    def __post_init__(self):
        if int(self.restarts) != self.restarts or self.restarts < 1:
            raise InputError(f"restarts must be a positive integer, got {self.restarts!r}")
        if int(self.max_iterations) != self.max_iterations or self.max_iterations < 1:
            raise InputError(f"max_iterations must be a positive integer, got {self.max_iterations!r}")
        if not self.step_tolerance > 0:
            raise InputError(f"step_tolerance must be > 0, got {self.step_tolerance!r}")
        if int(self.seed) != self.seed or self.seed < 0:
            raise InputError(f"seed must be a non-negative integer, got {self.seed!r}")


@dataclass(frozen=True)
class OracleResult:
    value: float
    certificate: Any
    converged_fraction: float
    restart_values: Optional[np.ndarray] = None

    def to_dict(self) -> dict:
        return {
            "value": float(self.value),
            "converged_fraction": float(self.converged_fraction),
            "certificate": self.certificate.to_dict(),
        }


# Smoothing schedule for the convex roof: sqrt(det) has kinks at product
# states, so the search first runs on sqrt(det + eps^2) and tightens eps,
# warm-starting each stage with a smaller initial step.
ROOF_SMOOTHING = (1e-2, 1e-4, 0.0)
ROOF_REFINE_STEP = 0.1

def _restart_rngs(config: OptimizerConfig):
    return [make_rng(config.seed, i) for i in range(config.restarts)]


def _bipartite_amplitudes(psi: PureState, part) -> np.ndarray:
    """Amplitudes reshaped to ``(2, d)`` with qubit A as the row index."""
    return permute_qubits_vector(psi.amplitudes, psi.n_qubits, part.order).reshape(2, -1)


def _bipartite_matrix(rho: DensityMatrix, part) -> np.ndarray:
    return permute_qubits_matrix(rho.matrix, rho.n_qubits, part.order)


def max_product_fidelity_pure(psi: PureState, part: PartLike = 0, config: OptimizerConfig = OptimizerConfig()) -> OracleResult:
    """Best ``|<psi|a (x) b>|^2`` over product states, by alternating optimal-factor updates.

    For fixed ``a`` the best ``b`` is the normalized contraction ``(<a| (x) 1)|psi>``
    and symmetrically for ``a``. Each restart starts from a random ``a``.
    """
    if not isinstance(psi, PureState):
        raise InputError("max_product_fidelity_pure needs a PureState")
    part = as_bipartition(part, psi.n_qubits)
    mat = _bipartite_amplitudes(psi, part)
    values, a_best, b_best, converged = [], [], [], []
    for rng in _restart_rngs(config):
        a = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        a /= np.linalg.norm(a)
        ok = False
        for _ in range(config.max_iterations):
            b = mat.T @ a.conj()
            b /= np.linalg.norm(b)
            a_new = mat @ b.conj()
            a_new /= np.linalg.norm(a_new)
            step = np.linalg.norm(a_new - a)
            a = a_new
            if step < config.step_tolerance:
                ok = True
                break
        b = mat.T @ a.conj()
        b /= np.linalg.norm(b)
        values.append(abs(a.conj() @ mat @ b.conj()) ** 2)
        a_best.append(a)
        b_best.append(b)
        converged.append(ok)
    i = int(np.argmax(values))
    cert = ens.SeparableEnsemble(np.ones(1), a_best[i][None, :], b_best[i][None, :])
    return OracleResult(float(values[i]), cert, float(np.mean(converged)), np.array(values))


def _sqrt_psd_lapack(m: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(m)
    w = np.where(w <= ZERO_EIG_RTOL * np.max(np.abs(w)), 0.0, w)
    return (v * np.sqrt(w)) @ v.conj().T


def default_ensemble_size(rho, part: PartLike = 0) -> int:
    d = as_density(rho).dim // 2
    return d * d


def max_separable_fidelity_mixed(
    rho, part: PartLike = 0, m: Optional[int] = None, config: OptimizerConfig = OptimizerConfig()
) -> OracleResult:
    """Best ``F(rho, sigma)`` over ``m``-term separable ensembles ``sigma``, by coordinate search.

    With ``sigma = B B^H`` the fidelity is ``||sqrt(rho) B||_tr^2``, evaluated
    from singular values, which avoids square roots of round-off eigenvalues.
    """
    rho = as_density(rho)
    part = as_bipartition(part, rho.n_qubits)
    d = rho.dim // 2
    if m is None:
        m = d * d
    if int(m) != m or m < 1:
        raise InputError(f"ensemble size m must be a positive integer, got {m!r}")
    m = int(m)
    s = _sqrt_psd_lapack(_bipartite_matrix(rho, part))

    def objective(x):
        # search scoring only; square roots of the Gram spectrum lose accuracy near zero
        y = s @ ens.ensemble_factor(x, m, d)
        gram = np.swapaxes(y.conj(), -1, -2) @ y
        return np.sum(np.sqrt(np.maximum(np.linalg.eigvalsh(gram), 0.0)), axis=-1) ** 2

    def exact(x):
        y = s @ ens.ensemble_factor(x, m, d)
        return np.sum(np.linalg.svd(y, compute_uv=False), axis=-1) ** 2

    n_params = ens.ensemble_n_params(m, d)
    x0 = np.stack([rng.uniform(0.0, 2 * np.pi, n_params) for rng in _restart_rngs(config)])
    res = coordinate_search(
        objective, x0, step_tolerance=config.step_tolerance, max_iterations=config.max_iterations
    )
    i = int(np.argmax(res.f))
    w, a, b = ens.decode_ensemble(res.x[i], m, d)
    cert = ens.SeparableEnsemble(w / w.sum(), a, b)
    value = float(exact(res.x[i][None, :])[0])
    return OracleResult(min(value, 1.0), cert, float(np.mean(res.converged)), res.f)


def _decomposition_factor(rho: np.ndarray):
    """``A = V sqrt(Lambda)`` restricted to the numerical support of ``rho``."""
    w, v = np.linalg.eigh(rho)
    keep = w > ZERO_EIG_RTOL * np.max(np.abs(w))
    return v[:, keep] * np.sqrt(w[keep])


def _pure_concurrences(psi_cols: np.ndarray, eps: float = 0.0) -> np.ndarray:
    """Unnormalized concurrences ``2 sqrt(det tr_B |psi><psi|)`` (``= p_j C(psi_j)``) of columns ``(..., D, m)``.

    ``eps > 0`` gives the smoothed ``2 sqrt(det + eps^2)``.
    """
    mats = np.swapaxes(psi_cols, -1, -2).reshape(*psi_cols.shape[:-2], psi_cols.shape[-1], 2, -1)
    if mats.shape[-1] == 2:
        det = np.abs(mats[..., 0, 0] * mats[..., 1, 1] - mats[..., 0, 1] * mats[..., 1, 0]) ** 2
    else:
        r0 = np.sum(np.abs(mats[..., 0, :]) ** 2, axis=-1)
        r1 = np.sum(np.abs(mats[..., 1, :]) ** 2, axis=-1)
        cross = np.abs(np.sum(mats[..., 0, :] * np.conj(mats[..., 1, :]), axis=-1)) ** 2
        det = np.maximum(r0 * r1 - cross, 0.0)
    return 2.0 * np.sqrt(det + eps * eps)


def convex_roof_concurrence_upper(
    rho, part: PartLike = 0, m: Optional[int] = None, config: OptimizerConfig = OptimizerConfig()
) -> OracleResult:
    """Smallest found ``sum_j p_j C(psi_j)`` over ``m``-term decompositions of ``rho``.

    Decompositions are ``psi_j = sum_k U_jk sqrt(lambda_k) |e_k>`` for ``U``
    an ``m x m`` unitary (its first ``rank`` columns form the isometry), which
    reaches every ``m``-term decomposition.
    """
    rho = as_density(rho)
    part = as_bipartition(part, rho.n_qubits)
    a = _decomposition_factor(_bipartite_matrix(rho, part))
    rank = a.shape[1]
    if m is None:
        m = max(rank, rho.dim)
    if int(m) != m or m < rank:
        raise InputError(f"ensemble size m must be an integer >= rank {rank}, got {m!r}")
    m = int(m)

    def columns(x):
        u = ens.unitary_from_params(x, m)[..., :, :rank]
        return a @ np.swapaxes(u, -1, -2)  # (..., D, m)

    n_params = ens.unitary_n_params(m)
    x = np.stack([rng.uniform(0.0, 2 * np.pi, n_params) for rng in _restart_rngs(config)])
    step = 0.5
    for eps in ROOF_SMOOTHING:
        res = coordinate_search(
            lambda y: -np.sum(_pure_concurrences(columns(y), eps), axis=-1),
            x,
            step=step,
            step_tolerance=config.step_tolerance,
            max_iterations=config.max_iterations,
        )
        x = res.x
        step = ROOF_REFINE_STEP
    res.f = -np.sum(_pure_concurrences(columns(x)), axis=-1)
    i = int(np.argmax(res.f))
    cols = columns(res.x[i])
    p = np.sum(np.abs(cols) ** 2, axis=0)
    nz = p > 0
    states = np.zeros_like(cols.T)
    states[nz] = (cols[:, nz] / np.sqrt(p[nz])).T
    cert = ens.Decomposition(p / p.sum(), states)
    return OracleResult(float(-res.f[i]), cert, float(np.mean(res.converged)), -res.f)
