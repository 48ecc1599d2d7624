"""Experiment: does maximizing sum_k p_k F_s(psi_k) over decompositions reproduce F_s?

This runs the decomposition-average formula for the fidelity of separability
as an experiment only. Its maximum over m-term decompositions is compared
with the separable-ensemble oracle and, for two qubits, with the closed form
(1 + sqrt(1 - C^2)) / 2.

    python3 scripts/decomposition_fs_experiment.py --states 10
"""

import argparse

import numpy as np

from fidmono.core import ginibre_random_mixed
from fidmono.measures import concurrence_wootters, fs_upper_bound
from fidmono.variational import OptimizerConfig, max_separable_fidelity_mixed
from fidmono.variational import ensembles as ens
from fidmono.variational.search import coordinate_search


def decomposition_fs(rho, m, restarts, seed):
    w, v = np.linalg.eigh(rho)
    keep = w > 1e-14 * w.max()
    a = v[:, keep] * np.sqrt(w[keep])
    rank = a.shape[1]

    def objective(x):
        u = ens.unitary_from_params(x, m)[..., :, :rank]
        cols = a @ np.swapaxes(u, -1, -2)  # (..., 4, m) unnormalized psi_j
        mats = np.swapaxes(cols, -1, -2).reshape(*cols.shape[:-2], m, 2, 2)
        # p_j lambda_max(psi_j) = largest eigenvalue of the unnormalized reduced state
        r = mats @ np.conj(np.swapaxes(mats, -1, -2))
        return np.sum(np.linalg.eigvalsh(r)[..., -1], axis=-1)

    rng = np.random.default_rng(seed)
    x0 = rng.uniform(0, 2 * np.pi, (restarts, ens.unitary_n_params(m)))
    res = coordinate_search(objective, x0)
    return float(res.f.max())


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--states", type=int, default=10)
    p.add_argument("--rank", type=int, default=4)
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--restarts", type=int, default=8)
    args = p.parse_args()

    print(f"{'state':>5} {'closed_form':>12} {'separable':>12} {'decomposition':>14}")
    for i in range(args.states):
        rho = ginibre_random_mixed(2, args.rank, 5000 + i)
        closed = fs_upper_bound(concurrence_wootters(rho))
        sep = max_separable_fidelity_mixed(rho, 0, args.m, OptimizerConfig(restarts=args.restarts, seed=i)).value
        dec = decomposition_fs(rho.matrix, args.m, args.restarts, i)
        print(f"{i:>5} {closed:>12.8f} {sep:>12.8f} {dec:>14.8f}")


if __name__ == "__main__":
    main()
