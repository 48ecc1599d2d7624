"""Monogamy checks: the scalar power inequalities, CKW, and the alpha-power
inequalities for the Bures and geometric measures, plus seeded campaigns.

Reports carry ``residual = lhs - sum(rhs_terms)``; a residual below
``VIOLATION_THRESHOLD`` (-1e-9) counts as a violation.
"""

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from . import config as cfg
from .core.rng import derive_seed
from .core.states import DensityMatrix, PureState, ghz, ginibre_random_mixed, haar_random_pure, w_state
from .errors import DomainError, InputError
from .measures import (
    MeasureKind,
    as_bipartition,
    check_alpha,
    concurrence_from_spectrum,
    measure_from_fs,
    measure_function,
    pair_reduced_from_mixed,
    pair_reduced_from_pure,
    qubit_reduced_from_pure,
    qubit_spectrum_array,
    wootters_array,
)

DEFAULT_ALPHAS = (1.0, 1.5, 2.0, 3.0)


@dataclass
class MonogamyReport:
    measure: str
    alpha: float
    lhs: float
    rhs_terms: List[float]
    residual: float
    state_id: str = ""
    diagnostics: Optional[dict] = None

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["diagnostics"] is None:
            del d["diagnostics"]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "MonogamyReport":
        try:
            return cls(
                measure=MeasureKind.parse(d["measure"]).value,
                alpha=float(d["alpha"]),
                lhs=float(d["lhs"]),
                rhs_terms=[float(t) for t in d["rhs_terms"]],
                residual=float(d["residual"]),
                state_id=str(d.get("state_id", "")),
                diagnostics=d.get("diagnostics"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed report: {exc}") from exc

    @property
    def violated(self) -> bool:
        return self.residual < cfg.VIOLATION_THRESHOLD


def _report(kind, alpha, lhs, rhs, state_id="", diagnostics=None) -> MonogamyReport:
    rhs = [float(t) for t in rhs]
    lhs = float(lhs)
    return MonogamyReport(MeasureKind.parse(kind).value, float(alpha), lhs, rhs, lhs - sum(rhs), state_id, diagnostics)


def check_scalar_lemma(x: float, y: float, alpha: float, kind) -> float:
    """``F^a(sqrt(x^2 + y^2)) - F^a(x) - F^a(y)`` for ``F`` = B or G."""
    alpha = check_alpha(alpha)
    x, y = float(x), float(y)
    if x < 0 or y < 0:
        raise DomainError(f"x and y must be non-negative, got {x}, {y}")
    r2 = x * x + y * y
    if r2 > 1 + cfg.RADICAND_CLAMP:
        raise DomainError(f"x^2 + y^2 = {r2} exceeds 1")
    fn = measure_function(kind)
    return fn(np.sqrt(min(r2, 1.0))) ** alpha - fn(x) ** alpha - fn(y) ** alpha


def _need_three(n):
    if n < 3:
        raise InputError(f"monogamy checks need at least 3 qubits, got {n}")


# --- batched kernels -------------------------------------------------------


def pure_terms(psi: np.ndarray, n_qubits: int, a_qubit: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """For amplitude stacks ``(B, 2^n)``: ``F_s`` and concurrence across ``A | rest`` and
    the pairwise Wootters concurrences ``(B, n - 1)`` with each other qubit."""
    lam = qubit_spectrum_array(qubit_reduced_from_pure(psi, n_qubits, a_qubit))
    pairs = [pair_reduced_from_pure(psi, n_qubits, a_qubit, k) for k in range(n_qubits) if k != a_qubit]
    conc = wootters_array(np.stack(pairs, axis=-3)) if pairs else np.zeros(psi.shape[:-1] + (0,))
    return lam[..., -1], concurrence_from_spectrum(lam), conc


def mixed_pair_concurrences(rho: np.ndarray, n_qubits: int, a_qubit: int) -> np.ndarray:
    pairs = [pair_reduced_from_mixed(rho, n_qubits, a_qubit, k) for k in range(n_qubits) if k != a_qubit]
    return wootters_array(np.stack(pairs, axis=-3))


# --- single-state checks ---------------------------------------------------


def ckw_residuals(psi: np.ndarray, n_qubits: int, a_qubit: int = 0) -> np.ndarray:
    """CKW residuals for an amplitude stack ``(B, 2^n)``."""
    _need_three(n_qubits)
    part = as_bipartition(a_qubit, n_qubits)
    _, c_a, conc = pure_terms(np.asarray(psi), n_qubits, part.a_qubit)
    return c_a**2 - np.sum(conc**2, axis=-1)


def check_ckw_pure(psi: PureState, a_qubit: int = 0) -> float:
    """``C^2(A | rest) - sum_i C^2(rho_{A B_i})``."""
    if not isinstance(psi, PureState):
        raise InputError("check_ckw_pure needs a PureState")
    return float(ckw_residuals(psi.amplitudes, psi.n_qubits, a_qubit))


def check_theorem_pure(psi: PureState, a_qubit: int, alpha: float, kind, state_id: str = "") -> MonogamyReport:
    """``E^a(A | rest)`` against ``sum_i E^a(rho_{A B_i})`` with everything in closed form."""
    if not isinstance(psi, PureState):
        raise InputError("check_theorem_pure needs a PureState")
    _need_three(psi.n_qubits)
    alpha = check_alpha(alpha)
    part = as_bipartition(a_qubit, psi.n_qubits)
    fs, _, conc = pure_terms(psi.amplitudes, psi.n_qubits, part.a_qubit)
    lhs = measure_from_fs(fs, kind) ** alpha
    rhs = measure_function(kind)(conc) ** alpha
    return _report(kind, alpha, lhs, rhs, state_id)


def check_chain_mixed(
    rho,
    a_qubit: int,
    alpha: float,
    kind,
    state_id: str = "",
    diagnostic_config=None,
) -> MonogamyReport:
    """Computable tail of the chain: ``F^a(sqrt(sum_i C_i^2)) >= sum_i F^a(C_i)``, ``C_i = C(rho_{A B_i})``.

    With ``diagnostic_config`` (an ``OptimizerConfig``) the report also
    carries a variational convex-roof estimate of ``C(A | rest)``. That
    estimate is an upper bound on the concurrence, so ``F^a`` of it is
    only indicative and is never used for the residual.
    """
    if isinstance(rho, PureState):
        rho = rho.density()
    if not isinstance(rho, DensityMatrix):
        raise InputError("check_chain_mixed needs a state")
    _need_three(rho.n_qubits)
    alpha = check_alpha(alpha)
    part = as_bipartition(a_qubit, rho.n_qubits)
    conc = mixed_pair_concurrences(rho.matrix, rho.n_qubits, part.a_qubit)
    fn = measure_function(kind)
    lhs = fn(np.sqrt(min(float(np.sum(conc**2)), 1.0))) ** alpha
    rhs = fn(conc) ** alpha
    diagnostics = {"pair_concurrences": [float(c) for c in conc]}
    if diagnostic_config is not None:
        from .variational import convex_roof_concurrence_upper

        est = convex_roof_concurrence_upper(rho, part, config=diagnostic_config)
        diagnostics.update(
            {
                "convex_roof_upper_estimate": est.value,
                "estimated_lhs_from_upper_estimate": float(fn(min(est.value, 1.0)) ** alpha),
                "estimate_converged_fraction": est.converged_fraction,
                "note": "variational upper bound on C(A|rest); not a certified lower bound on the measure",
            }
        )
    return _report(kind, alpha, lhs, rhs, state_id, diagnostics)


# --- campaigns -------------------------------------------------------------


@dataclass(frozen=True)
class CampaignConfig:
    n_samples: int
    n_qubits: int = 3
    alphas: Tuple[float, ...] = DEFAULT_ALPHAS
    state_class: str = "haar_pure"  # haar_pure | ginibre:<rank> | ghz | w
    seed: int = 0
    measures: Tuple[str, ...] = ("bures", "geometric")
    sweep_a: bool = False
    chunk_size: int = 2000

    def __post_init__(self):
        if isinstance(self.n_samples, bool) or int(self.n_samples) != self.n_samples or self.n_samples < 1:
            raise InputError(f"n_samples must be a positive integer, got {self.n_samples!r}")
        if int(self.n_qubits) != self.n_qubits or self.n_qubits < 3:
            raise InputError(f"n_qubits must be an integer >= 3, got {self.n_qubits!r}")
        if self.n_qubits > cfg.max_qubits():
            raise InputError(f"n_qubits {self.n_qubits} exceeds the cap of {cfg.max_qubits()}")
        if not self.alphas:
            raise InputError("at least one alpha is required")
        object.__setattr__(self, "alphas", tuple(check_alpha(a) for a in self.alphas))
        if not self.measures:
            raise InputError("at least one measure is required")
        object.__setattr__(self, "measures", tuple(MeasureKind.parse(m).value for m in self.measures))
        if int(self.seed) != self.seed or self.seed < 0:
            raise InputError(f"seed must be a non-negative integer, got {self.seed!r}")
        if self.chunk_size < 1:
            raise InputError("chunk_size must be positive")
        self.parsed_class()

    def parsed_class(self) -> Tuple[str, int]:
        name, _, arg = self.state_class.partition(":")
        if name == "haar_pure" and not arg:
            return name, 0
        if name in ("ghz", "w") and not arg:
            return name, 0
        if name == "ginibre":
            try:
                rank = int(arg)
            except ValueError:
                raise InputError(f"ginibre class needs an integer rank, got {arg!r}") from None
            if not 1 <= rank <= 2**self.n_qubits:
                raise InputError(f"ginibre rank must be in [1, {2 ** self.n_qubits}], got {rank}")
            return name, rank
        raise InputError(f"unknown state class {self.state_class!r}")

    @property
    def a_qubits(self) -> Tuple[int, ...]:
        return tuple(range(self.n_qubits)) if self.sweep_a else (0,)


@dataclass
class CampaignSummary:
    total_checks: int = 0
    violations: int = 0
    min_residual: float = float("inf")
    residual_quantiles: List[float] = field(default_factory=lambda: [float("nan")] * 3)
    runtime_seconds: float = 0.0

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_residuals(cls, residuals: np.ndarray, runtime_seconds: float = 0.0) -> "CampaignSummary":
        residuals = np.asarray(residuals, dtype=float)
        if residuals.size == 0:
            return cls(runtime_seconds=runtime_seconds)
        q = np.quantile(residuals, [0.05, 0.5, 0.95])
        return cls(
            total_checks=int(residuals.size),
            violations=int(np.sum(residuals < cfg.VIOLATION_THRESHOLD)),
            min_residual=float(residuals.min()),
            residual_quantiles=[float(v) for v in q],
            runtime_seconds=runtime_seconds,
        )


def _sample_states(config: CampaignConfig, indices: Sequence[int]) -> Tuple[str, np.ndarray]:
    name, rank = config.parsed_class()
    n = config.n_qubits
    if name == "haar_pure":
        return "pure", np.stack([haar_random_pure(n, derive_seed(config.seed, i)).amplitudes for i in indices])
    if name == "ghz":
        return "pure", np.repeat(ghz(n).amplitudes[None, :], len(indices), axis=0)
    if name == "w":
        return "pure", np.repeat(w_state(n).amplitudes[None, :], len(indices), axis=0)
    return "mixed", np.stack([ginibre_random_mixed(n, rank, derive_seed(config.seed, i)).matrix for i in indices])


def _chunk_reports(config: CampaignConfig, start: int, stop: int) -> List[MonogamyReport]:
    indices = range(start, stop)
    kind_of_state, states = _sample_states(config, indices)
    n = config.n_qubits
    per_a = {}
    for a in config.a_qubits:
        if kind_of_state == "pure":
            fs, _, conc = pure_terms(states, n, a)
            per_a[a] = ("pure", fs, conc)
        else:
            per_a[a] = ("mixed", None, mixed_pair_concurrences(states, n, a))

    reports = []
    for j, i in enumerate(indices):
        for a in config.a_qubits:
            mode, fs, conc = per_a[a]
            sid = f"{config.seed}/{i}/a{a}"
            for alpha in config.alphas:
                for kind in config.measures:
                    fn = measure_function(kind)
                    if mode == "pure":
                        lhs = measure_from_fs(fs[j], kind) ** alpha
                    else:
                        lhs = fn(np.sqrt(min(float(np.sum(conc[j] ** 2)), 1.0))) ** alpha
                    rhs = fn(conc[j]) ** alpha
                    reports.append(_report(kind, alpha, lhs, rhs, sid))
    return reports


def _chunk_job(args):
    config, start, stop = args
    return _chunk_reports(config, start, stop)


def iter_reports(config: CampaignConfig, workers: int = 1) -> Iterator[MonogamyReport]:
    """Reports in canonical order: sample index, then A, alpha and measure."""
    bounds = [(s, min(s + config.chunk_size, config.n_samples)) for s in range(0, config.n_samples, config.chunk_size)]
    if workers <= 1 or len(bounds) == 1:
        for s, e in bounds:
            yield from _chunk_reports(config, s, e)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map preserves submission order, so output order is independent of scheduling
        for chunk in pool.map(_chunk_job, [(config, s, e) for s, e in bounds]):
            yield from chunk


def run_campaign(
    config: CampaignConfig,
    on_report: Optional[Callable[[MonogamyReport], None]] = None,
    workers: int = 1,
) -> CampaignSummary:
    """Run every sample x alpha x measure check; pure classes use the exact
    inequality, Ginibre classes the computable chain segment."""
    if int(workers) != workers or workers < 1:
        raise InputError(f"workers must be a positive integer, got {workers!r}")
    t0 = time.perf_counter()
    residuals = []
    for rep in iter_reports(config, workers):
        residuals.append(rep.residual)
        if on_report is not None:
            on_report(rep)
    return CampaignSummary.from_residuals(np.array(residuals), time.perf_counter() - t0)
