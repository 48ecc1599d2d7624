from .linalg import HermitianEigen, eigh, eigvalsh, fidelity_matrices, kron, partial_trace_matrix, sqrtm_psd
from .rng import derive_seed, make_rng
from .serialization import dumps_state, load_state, loads_state, save_state, state_from_dict, state_to_dict
from .states import (
    DensityMatrix,
    PureState,
    State,
    as_density,
    bell,
    fidelity,
    ghz,
    ginibre_random_mixed,
    haar_random_pure,
    named_state,
    parse_named,
    partial_trace,
    product,
    w_state,
    werner,
)

__all__ = [
    "HermitianEigen",
    "eigh",
    "eigvalsh",
    "fidelity_matrices",
    "kron",
    "partial_trace_matrix",
    "sqrtm_psd",
    "derive_seed",
    "make_rng",
    "dumps_state",
    "load_state",
    "loads_state",
    "save_state",
    "state_from_dict",
    "state_to_dict",
    "DensityMatrix",
    "PureState",
    "State",
    "as_density",
    "bell",
    "fidelity",
    "ghz",
    "ginibre_random_mixed",
    "haar_random_pure",
    "named_state",
    "parse_named",
    "partial_trace",
    "product",
    "w_state",
    "werner",
]
