"""Multiqubit pure and mixed states, random sampling and named families.

Qubit 0 is the leftmost (most significant) tensor factor, so bit ``k``
of a basis index counted from the left addresses qubit ``k``.
"""

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .. import config
from ..errors import InputError, NotPSDError, SizeError
from . import linalg
from .rng import make_rng


def _n_qubits_for(dim: int) -> int:
    n = int(dim).bit_length() - 1
    if dim < 2 or 2**n != dim:
        raise InputError(f"dimension {dim} is not a power of two >= 2")
    if n > config.max_qubits():
        raise SizeError(f"{n} qubits exceeds the cap of {config.max_qubits()}")
    return n


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized amplitude vector over ``n_qubits`` qubits."""

    amplitudes: np.ndarray

    def __post_init__(self):
        psi = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        _n_qubits_for(psi.size)
        if not np.all(np.isfinite(psi)):
            raise InputError("amplitudes must be finite")
        norm = np.sum(np.abs(psi) ** 2)
        if abs(norm - 1.0) > config.STATE_TOL:
            raise InputError(f"state is not normalized (norm^2 = {norm!r})")
        psi.flags.writeable = False
        object.__setattr__(self, "amplitudes", psi)

    @classmethod
    def normalized(cls, amplitudes) -> "PureState":
        psi = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        norm = np.linalg.norm(psi)
        if norm == 0:
            raise InputError("cannot normalize the zero vector")
        return cls(psi / norm)

    @property
    def n_qubits(self) -> int:
        return _n_qubits_for(self.amplitudes.size)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def density(self) -> "DensityMatrix":
        psi = self.amplitudes
        return DensityMatrix(np.outer(psi, psi.conj()))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite matrix over ``n_qubits`` qubits.

    Hermiticity and trace are checked on construction. Positivity needs an
    eigensolve and is checked by :meth:`validated` (used for untrusted input).
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = linalg.as_matrix(self.matrix)
        if m.ndim != 2:
            raise InputError(f"expected a single matrix, got shape {m.shape}")
        _n_qubits_for(m.shape[0])
        dev = linalg.hermitian_deviation(m)
        if dev > config.STATE_TOL:
            raise InputError(f"matrix is not Hermitian (deviation {dev:.3e})")
        tr = np.trace(m).real
        if abs(tr - 1.0) > config.STATE_TOL:
            raise InputError(f"trace is {tr!r}, expected 1")
        m = np.array(m)
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @classmethod
    def validated(cls, matrix) -> "DensityMatrix":
        rho = cls(matrix)
        w = linalg.eigvalsh(rho.matrix)
        if w[0] < -config.PSD_CLAMP:
            raise NotPSDError(f"density matrix has eigenvalue {w[0]:.3e}")
        return rho

    @property
    def n_qubits(self) -> int:
        return _n_qubits_for(self.matrix.shape[0])

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def purity(self) -> float:
        return float(np.sum(np.abs(self.matrix) ** 2))


State = Union[PureState, DensityMatrix]


def as_density(state: State) -> DensityMatrix:
    if isinstance(state, PureState):
        return state.density()
    if isinstance(state, DensityMatrix):
        return state
    raise InputError(f"expected PureState or DensityMatrix, got {type(state).__name__}")


def partial_trace(rho: State, keep) -> DensityMatrix:
    """Reduced state on the qubits in ``keep`` (kept in ascending order)."""
    rho = as_density(rho)
    r = linalg.partial_trace_matrix(rho.matrix, rho.n_qubits, keep)
    return DensityMatrix(0.5 * (r + r.conj().T))


def fidelity(rho: State, sigma: State) -> float:
    """Uhlmann fidelity ``(tr sqrt(sqrt(rho) sigma sqrt(rho)))**2`` in [0, 1]."""
    rho = as_density(rho)
    sigma = as_density(sigma)
    if rho.dim != sigma.dim:
        raise InputError(f"dimension mismatch: {rho.dim} vs {sigma.dim}")
    return float(linalg.fidelity_matrices(rho.matrix, sigma.matrix))


def _check_size(n_qubits):
    if int(n_qubits) != n_qubits or n_qubits < 1:
        raise InputError(f"n_qubits must be a positive integer, got {n_qubits!r}")
    if n_qubits > config.max_qubits():
        raise SizeError(f"{n_qubits} qubits exceeds the cap of {config.max_qubits()}")


def haar_random_pure(n_qubits: int, seed: int) -> PureState:
    """Haar-random pure state: normalized vector of i.i.d. standard complex Gaussians."""
    _check_size(n_qubits)
    rng = make_rng(seed)
    d = 2**n_qubits
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return PureState(z / np.linalg.norm(z))


def ginibre_random_mixed(n_qubits: int, rank: int, seed: int) -> DensityMatrix:
    """Random mixed state ``G G^H / tr(G G^H)`` with ``G`` a ``2^n x rank`` Ginibre matrix."""
    _check_size(n_qubits)
    d = 2**n_qubits
    if int(rank) != rank or not 1 <= rank <= d:
        raise InputError(f"rank must be in [1, {d}], got {rank!r}")
    rng = make_rng(seed)
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    m = g @ g.conj().T
    m = 0.5 * (m + m.conj().T)
    return DensityMatrix(m / np.trace(m).real)


_SINGLE_QUBIT = {
    "0": np.array([1, 0], dtype=complex),
    "1": np.array([0, 1], dtype=complex),
    "+": np.array([1, 1], dtype=complex) / np.sqrt(2),
    "-": np.array([1, -1], dtype=complex) / np.sqrt(2),
    "+i": np.array([1, 1j], dtype=complex) / np.sqrt(2),
    "-i": np.array([1, -1j], dtype=complex) / np.sqrt(2),
}


def ghz(n_qubits: int = 3) -> PureState:
    _check_size(n_qubits)
    if n_qubits < 2:
        raise InputError("ghz needs at least 2 qubits")
    psi = np.zeros(2**n_qubits, dtype=complex)
    psi[0] = psi[-1] = 1 / np.sqrt(2)
    return PureState(psi)


def w_state(n_qubits: int = 3) -> PureState:
    _check_size(n_qubits)
    if n_qubits < 2:
        raise InputError("w needs at least 2 qubits")
    psi = np.zeros(2**n_qubits, dtype=complex)
    for k in range(n_qubits):
        psi[1 << (n_qubits - 1 - k)] = 1 / np.sqrt(n_qubits)
    return PureState(psi)


def bell() -> PureState:
    """``|Phi+> = (|00> + |11>)/sqrt(2)``."""
    return ghz(2)


def werner(p: float) -> DensityMatrix:
    """``p |Phi+><Phi+| + (1 - p) I/4``."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise InputError(f"werner parameter must be in [0, 1], got {p}")
    return DensityMatrix(p * bell().density().matrix + (1 - p) * np.eye(4) / 4)


def product(factors: Sequence) -> PureState:
    """Tensor product of single-qubit states given as labels (``0 1 + - +i -i``) or 2-vectors."""
    if len(factors) == 0:
        raise InputError("product needs at least one factor")
    _check_size(len(factors))
    psi = np.ones(1, dtype=complex)
    for f in factors:
        if isinstance(f, str):
            if f not in _SINGLE_QUBIT:
                raise InputError(f"unknown single-qubit label {f!r}")
            v = _SINGLE_QUBIT[f]
        else:
            v = np.asarray(f, dtype=complex).reshape(-1)
            if v.size != 2 or np.linalg.norm(v) == 0:
                raise InputError(f"single-qubit factor must be a nonzero 2-vector, got {f!r}")
            v = v / np.linalg.norm(v)
        psi = np.kron(psi, v)
    return PureState(psi)


def named_state(family: str, *params) -> State:
    """Build a named state: ``ghz(n)``, ``w(n)``, ``bell``, ``werner(p)``, ``product(factors)``."""
    family = family.lower()
    try:
        if family == "ghz":
            return ghz(*(int(p) for p in params))
        if family == "w":
            return w_state(*(int(p) for p in params))
        if family == "bell":
            if params:
                raise InputError("bell takes no parameters")
            return bell()
        if family == "werner":
            (p,) = params
            return werner(float(p))
        if family == "product":
            if len(params) == 1 and not isinstance(params[0], str):
                params = tuple(params[0])
            return product(list(params))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"bad parameters for {family}: {params!r}") from exc
    raise InputError(f"unknown state family {family!r}")


def parse_named(spec: str) -> State:
    """Parse the CLI shorthand ``family[:arg[,arg...]]``, e.g. ``ghz:4``, ``werner:0.5``, ``product:0,+,1``."""
    family, _, rest = spec.partition(":")
    params = [p for p in rest.split(",") if p] if rest else []
    if family.lower() == "product":
        return product(params)
    return named_state(family, *params)
