"""Global numerical tolerances and size limits."""

import os

DEFAULT_MAX_QUBITS = 10
MAX_QUBITS_ENV = "MONOGAMY_MAX_QUBITS"

# eigenvalues in [-PSD_CLAMP, 0) are round-off and become 0
PSD_CLAMP = 1e-10
# eigenvalues below this fraction of the largest are numerical zeros
ZERO_EIG_RTOL = 1e-14
HERMITIAN_TOL = 1e-10
STATE_TOL = 1e-12
RADICAND_CLAMP = 1e-12
VIOLATION_THRESHOLD = -1e-9

JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


def max_qubits() -> int:
    """Size cap in qubits, overridable through ``MONOGAMY_MAX_QUBITS``."""
    raw = os.environ.get(MAX_QUBITS_ENV)
    if raw is None:
        return DEFAULT_MAX_QUBITS
    try:
        value = int(raw)
    except ValueError:
        from .errors import InputError

        raise InputError(f"{MAX_QUBITS_ENV} must be an integer, got {raw!r}")
    if value < 1:
        from .errors import InputError

        raise InputError(f"{MAX_QUBITS_ENV} must be >= 1, got {value}")
    return value


def max_entries() -> int:
    """Largest number of matrix entries allowed (square of the max dimension)."""
    return (2 ** max_qubits()) ** 2
