"""Fidelity-based entanglement measures (Bures and geometric) and their monogamy."""

from .errors import DomainError, FidmonoError, InputError, NotPSDError, NumericalError, SizeError
from .measures import (
    Bipartition,
    MeasureKind,
    b_func,
    concurrence_pure,
    concurrence_wootters,
    entanglement_pure_bipartition,
    entanglement_two_qubit,
    fs_pure,
    fs_upper_bound,
    g_func,
)
from .core import DensityMatrix, PureState, fidelity, ghz, haar_random_pure, ginibre_random_mixed, partial_trace, w_state

__version__ = "0.1.0"
