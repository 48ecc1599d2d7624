"""Gradient-free multi-start coordinate search.

All restarts advance in lockstep. One iteration scores every ``x +/- h e_i``
for every restart in a single batched objective call, so the objective
only has to be vectorized over its first axis.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np


@dataclass
class SearchResult:
    x: np.ndarray  # (restarts, n_params)
    f: np.ndarray  # (restarts,)
    converged: np.ndarray  # (restarts,) step fell below tolerance
    iterations: int


def coordinate_search(
    fun: Callable[[np.ndarray], np.ndarray],
    x0: np.ndarray,
    *,
    step: float = 0.5,
    step_tolerance: float = 1e-8,
    max_iterations: int = 2000,
    grow: float = 1.5,
    max_step: float = 1.0,
    sufficient_increase: float = 1e-2,
    random_directions: int = 0,
    rng: Optional[np.random.Generator] = None,
) -> SearchResult:
    """Maximize ``fun`` from each row of ``x0`` by compass moves along coordinate axes.

    Besides the ``2n`` axis moves of size ``h``, each iteration scores a
    pattern move that repeats the last accepted displacement twice over
    (Hooke-Jeeves style), which lets the search follow curved valleys where
    single-axis moves stall. ``random_directions`` adds that many moves
    (and their negatives) along a freshly drawn orthonormal basis, which gets
    past kinks of nonsmooth objectives that are not axis aligned. A candidate
    is accepted only if it gains more than ``sufficient_increase * h**2``; then ``h`` grows by ``grow``,
    otherwise it halves. A restart stops once ``h < step_tolerance``.
    """
    x = np.array(x0, dtype=float)
    r, n = x.shape
    f = np.asarray(fun(x), dtype=float)
    h = np.full(r, float(step))
    last = np.zeros_like(x)
    active = np.ones(r, dtype=bool)
    axes = np.concatenate([np.eye(n), -np.eye(n)])
    if random_directions and rng is None:
        rng = np.random.default_rng(0)
    it = 0
    while it < max_iterations and active.any():
        it += 1
        idx = np.flatnonzero(active)
        k = idx.size
        xa, fa, ha = x[idx], f[idx], h[idx]
        moves = axes
        if random_directions:
            q, _ = np.linalg.qr(rng.standard_normal((n, n)))
            extra = q.T[: min(random_directions, n)]
            moves = np.concatenate([axes, extra, -extra])
        axis = xa[:, None, :] + ha[:, None, None] * moves[None, :, :]
        pattern = (xa + 2.0 * last[idx])[:, None, :]
        cand = np.concatenate([axis, pattern], axis=1)
        fc = np.asarray(fun(cand.reshape(-1, n)), dtype=float).reshape(k, -1)

        best = np.argmax(fc, axis=1)
        fbest = fc[np.arange(k), best]
        xbest = cand[np.arange(k), best]
        ok = fbest > fa + sufficient_increase * ha**2
        last[idx] = np.where(ok[:, None], xbest - xa, 0.0)
        x[idx] = np.where(ok[:, None], xbest, xa)
        f[idx] = np.where(ok, fbest, fa)
        h[idx] = np.where(ok, np.minimum(ha * grow, max_step), ha * 0.5)
        active[idx] = h[idx] >= step_tolerance
    return SearchResult(x=x, f=f, converged=h < step_tolerance, iterations=it)
