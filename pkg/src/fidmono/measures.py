"""Closed-form concurrence, fidelity of separability and the Bures/geometric measures.

The scalar functions take floats or arrays. The ``*_array`` helpers work on
stacks of states and back the verification campaigns; the public
single-state functions are thin wrappers over them.
"""

import enum
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import config
from .core import linalg
from .core.states import DensityMatrix, PureState, as_density
from .errors import DomainError, InputError


class MeasureKind(str, enum.Enum):
    BURES = "bures"
    GEOMETRIC = "geometric"

    @classmethod
    def parse(cls, value) -> "MeasureKind":
        if isinstance(value, str) and not isinstance(value, cls):
            value = value.strip().lower()
        try:
            return cls(value)
        except ValueError:
            raise InputError(f"measure must be 'bures' or 'geometric', got {value!r}") from None


def check_alpha(alpha) -> float:
    try:
        a = float(alpha)
    except (TypeError, ValueError):
        raise InputError(f"alpha must be a number, got {alpha!r}") from None
    if not np.isfinite(a) or a < 1.0:
        raise InputError(f"alpha must be >= 1, got {alpha!r}")
    return a


@dataclass(frozen=True)
class Bipartition:
    """Single qubit ``a_qubit`` against the ordered complement ``rest``."""

    n_qubits: int
    a_qubit: int = 0

    def __post_init__(self):
        if self.n_qubits < 2:
            raise InputError(f"a bipartition needs at least 2 qubits, got {self.n_qubits}")
        if isinstance(self.a_qubit, (list, tuple, set)):
            raise InputError("A must be a single qubit")
        if not 0 <= self.a_qubit < self.n_qubits:
            raise InputError(f"a_qubit {self.a_qubit} out of range for {self.n_qubits} qubits")

    @property
    def rest(self) -> tuple:
        return tuple(k for k in range(self.n_qubits) if k != self.a_qubit)

    @property
    def order(self) -> tuple:
        """Qubit order placing A first, then the rest."""
        return (self.a_qubit, *self.rest)


PartLike = Union[Bipartition, int]


def as_bipartition(part: PartLike, n_qubits: int) -> Bipartition:
    if isinstance(part, Bipartition):
        if part.n_qubits != n_qubits:
            raise InputError(f"bipartition is for {part.n_qubits} qubits, state has {n_qubits}")
        return part
    if isinstance(part, (int, np.integer)) and not isinstance(part, bool):
        return Bipartition(n_qubits, int(part))
    raise InputError(f"A must be a single qubit index, got {part!r}")


def _clamp_unit(x):
    x = np.asarray(x, dtype=float)
    tol = config.RADICAND_CLAMP
    if np.any(~np.isfinite(x)) or np.any(x < -tol) or np.any(x > 1 + tol):
        raise DomainError(f"argument must lie in [0, 1], got {x}")
    return np.clip(x, 0.0, 1.0)


def _scalar_or_array(out, like):
    return float(out) if np.ndim(like) == 0 else out


def _sqrt_one_minus_square(x):
    # clamps the radicand from round-off near x = 1
    return np.sqrt(np.maximum(1.0 - x * x, 0.0))


def b_func(x):
    """``2 - 2 sqrt((1 + sqrt(1 - x^2)) / 2)``, increasing from 0 to ``2 - sqrt(2)`` on [0, 1]."""
    c = _clamp_unit(x)
    out = 2.0 - 2.0 * np.sqrt((1.0 + _sqrt_one_minus_square(c)) / 2.0)
    return _scalar_or_array(np.maximum(out, 0.0), x)


def g_func(x):
    """``(1 - sqrt(1 - x^2)) / 2``, increasing from 0 to 1/2 on [0, 1]."""
    c = _clamp_unit(x)
    out = (1.0 - _sqrt_one_minus_square(c)) / 2.0
    return _scalar_or_array(out, x)


def measure_function(kind):
    return b_func if MeasureKind.parse(kind) is MeasureKind.BURES else g_func


def fs_upper_bound(c):
    """Upper bound ``(1 + sqrt(1 - c^2)) / 2`` on the fidelity of separability of a 2 x d state."""
    c = _clamp_unit(c)
    return _scalar_or_array((1.0 + _sqrt_one_minus_square(c)) / 2.0, c)


def measure_from_fs(fs, kind):
    """Bures ``2 - 2 sqrt(F_s)`` or geometric ``1 - F_s``."""
    fs = np.clip(np.asarray(fs, dtype=float), 0.0, 1.0)
    if MeasureKind.parse(kind) is MeasureKind.BURES:
        out = 2.0 - 2.0 * np.sqrt(fs)
    else:
        out = 1.0 - fs
    return _scalar_or_array(np.maximum(out, 0.0), fs)


# --- array paths -----------------------------------------------------------


def qubit_reduced_from_pure(psi: np.ndarray, n_qubits: int, a_qubit: int) -> np.ndarray:
    """Reduced 2x2 state of ``a_qubit`` for a stack of amplitude vectors ``(..., 2^n)``."""
    order = (a_qubit, *(k for k in range(n_qubits) if k != a_qubit))
    m = linalg.permute_qubits_vector(psi, n_qubits, order).reshape(*psi.shape[:-1], 2, -1)
    r = m @ linalg.dagger(m)
    return 0.5 * (r + linalg.dagger(r))


def pair_reduced_from_pure(psi: np.ndarray, n_qubits: int, a_qubit: int, other: int) -> np.ndarray:
    """Reduced 4x4 state of qubits ``(a_qubit, other)`` for a stack of amplitude vectors."""
    order = (a_qubit, other, *(k for k in range(n_qubits) if k not in (a_qubit, other)))
    m = linalg.permute_qubits_vector(psi, n_qubits, order).reshape(*psi.shape[:-1], 4, -1)
    r = m @ linalg.dagger(m)
    return 0.5 * (r + linalg.dagger(r))


def pair_reduced_from_mixed(rho: np.ndarray, n_qubits: int, a_qubit: int, other: int) -> np.ndarray:
    order = (a_qubit, other, *(k for k in range(n_qubits) if k not in (a_qubit, other)))
    r = linalg.partial_trace_matrix(linalg.permute_qubits_matrix(rho, n_qubits, order), n_qubits, (0, 1))
    return 0.5 * (r + linalg.dagger(r))


def qubit_spectrum_array(r2: np.ndarray) -> np.ndarray:
    """Clamped ascending eigenvalues of a stack of 2x2 reduced states."""
    return linalg.clamp_psd(linalg.eigvalsh(r2))


def concurrence_from_spectrum(lam: np.ndarray) -> np.ndarray:
    c = 2.0 * np.sqrt(np.maximum(lam[..., 0] * lam[..., 1], 0.0))
    return np.clip(c, 0.0, 1.0)


_YY = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))


def wootters_array(rho: np.ndarray) -> np.ndarray:
    """Wootters concurrence for a stack of 4x4 density matrices.

    With ``rho = A A^H`` (``A = V sqrt(Lambda)``), the ``mu_i`` (square roots
    of the spectrum of ``rho rho_tilde``) are the singular values of the
    complex-symmetric ``T = A^T (Y x Y) A``. They are read off as the positive
    half of the spectrum of the Hermitian ``[[0, T], [T^H, 0]]``; squaring and
    re-rooting would turn 1e-17 round-off into 1e-9 errors on rank-1 inputs.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    w, v = linalg.eigh(rho)
    a = v * np.sqrt(linalg.clamp_psd(w))[..., None, :]
    t = np.swapaxes(a, -1, -2) @ _YY @ a
    h = np.zeros(rho.shape[:-2] + (8, 8), dtype=np.complex128)
    h[..., :4, 4:] = t
    h[..., 4:, :4] = linalg.dagger(t)
    mu = linalg.eigvalsh(h)[..., 4:]
    c = mu[..., 3] - mu[..., 2] - mu[..., 1] - mu[..., 0]
    return np.clip(c, 0.0, 1.0)


# --- single-state API ------------------------------------------------------


def _pure(psi) -> PureState:
    if not isinstance(psi, PureState):
        raise InputError(f"expected a PureState, got {type(psi).__name__}")
    return psi


def _two_qubit(rho) -> DensityMatrix:
    if isinstance(rho, np.ndarray):
        rho = DensityMatrix(rho)
    rho = as_density(rho)
    if rho.n_qubits != 2:
        raise InputError(f"expected a two-qubit state, got {rho.n_qubits} qubits")
    return rho


def reduced_qubit_spectrum(psi: PureState, part: PartLike = 0) -> np.ndarray:
    """Schmidt weights ``(lambda_min, lambda_max)`` of ``psi`` across ``A | rest``."""
    psi = _pure(psi)
    part = as_bipartition(part, psi.n_qubits)
    r = qubit_reduced_from_pure(psi.amplitudes, psi.n_qubits, part.a_qubit)
    return qubit_spectrum_array(r)


def concurrence_pure(psi: PureState, part: PartLike = 0) -> float:
    """``2 sqrt(lambda_1 lambda_2)`` from the reduced state of qubit A."""
    return float(concurrence_from_spectrum(reduced_qubit_spectrum(psi, part)))


def fs_pure(psi: PureState, part: PartLike = 0) -> float:
    """Fidelity of separability of a pure state: the largest Schmidt weight."""
    return float(reduced_qubit_spectrum(psi, part)[-1])


def concurrence_wootters(rho) -> float:
    """Two-qubit concurrence ``max(0, mu_1 - mu_2 - mu_3 - mu_4)``."""
    return float(wootters_array(_two_qubit(rho).matrix))


def _two_qubit_pure(psi: PureState) -> PureState:
    if psi.n_qubits != 2:
        raise InputError(f"expected a two-qubit state, got {psi.n_qubits} qubits")
    return psi


def _as_pure(rho):
    """``rho`` as a PureState when it is rank one up to round-off, else None."""
    if isinstance(rho, PureState):
        return rho
    w, v = linalg.eigh(rho.matrix)
    if w[-2] > config.ZERO_EIG_RTOL * w[-1]:
        return None
    return PureState.normalized(v[:, -1])


def entanglement_two_qubit(rho, kind) -> float:
    """Bures or geometric measure of a two-qubit state through its concurrence.

    Both measures have infinite slope at ``C = 1``, so ulp-level error in a
    concurrence near one shows up at the 1e-8 level. Rank-one inputs therefore
    go through the exact Schmidt-weight route instead.
    """
    if not isinstance(rho, PureState):
        rho = _two_qubit(rho)
    psi = _as_pure(rho)
    if psi is not None:
        return float(measure_from_fs(fs_pure(_two_qubit_pure(psi)), kind))
    return float(measure_function(kind)(concurrence_wootters(rho)))



def entanglement_pure_bipartition(psi: PureState, part: PartLike, kind) -> float:
    """Exact Bures or geometric measure of a pure state across ``A | rest``."""
    return float(measure_from_fs(fs_pure(psi, part), kind))
