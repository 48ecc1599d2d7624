from .ensembles import Decomposition, SeparableEnsemble
from .oracles import (
    OptimizerConfig,
    OracleResult,
    convex_roof_concurrence_upper,
    default_ensemble_size,
    max_product_fidelity_pure,
    max_separable_fidelity_mixed,
)
from .search import SearchResult, coordinate_search

__all__ = [
    "Decomposition",
    "SeparableEnsemble",
    "OptimizerConfig",
    "OracleResult",
    "convex_roof_concurrence_upper",
    "default_ensemble_size",
    "max_product_fidelity_pure",
    "max_separable_fidelity_mixed",
    "SearchResult",
    "coordinate_search",
]
