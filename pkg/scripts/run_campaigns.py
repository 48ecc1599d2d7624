"""Run the monogamy campaigns over qubit counts and state classes.

Writes one summary JSON per campaign plus an index table to stdout.

    python3 scripts/run_campaigns.py --samples 10000 --out results/campaigns
"""

import argparse
import json
from pathlib import Path

from fidmono.monogamy import CampaignConfig, run_campaign


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--sweep-a", action="store_true")
    p.add_argument("--out", default="results/campaigns")
    args = p.parse_args()

    plan = [(n, "haar_pure") for n in (3, 4, 5)]
    plan += [(3, f"ginibre:{r}") for r in (1, 2, 4, 8)]
    plan += [(4, f"ginibre:{r}") for r in (2, 16)]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    print(f"{'n':>2} {'class':<12} {'checks':>8} {'violations':>10} {'min_residual':>14} {'median':>10} {'time_s':>7}")
    for n, cls in plan:
        cfg = CampaignConfig(n_samples=args.samples, n_qubits=n, state_class=cls, seed=args.seed, sweep_a=args.sweep_a)
        s = run_campaign(cfg, workers=args.workers)
        name = f"n{n}_{cls.replace(':', '')}.json"
        (out / name).write_text(json.dumps({"config": {"n_qubits": n, "state_class": cls, "seed": args.seed}, **s.to_dict()}) + "\n")
        print(
            f"{n:>2} {cls:<12} {s.total_checks:>8} {s.violations:>10} {s.min_residual:>14.3e} "
            f"{s.residual_quantiles[1]:>10.4f} {s.runtime_seconds:>7.1f}"
        )


if __name__ == "__main__":
    main()
