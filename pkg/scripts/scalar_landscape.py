"""Scalar power inequalities on a fine grid: where are they tightest?

For each alpha and measure, reports the minimum of the residual
F^a(sqrt(x^2 + y^2)) - F^a(x) - F^a(y) relative to F^a(sqrt(x^2 + y^2)) over
the quarter disk (axes excluded, where it vanishes identically), the point
attaining it, and the smallest absolute residual.

    python3 scripts/scalar_landscape.py --points 400
"""

import argparse

import numpy as np

from fidmono.measures import measure_function


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--points", type=int, default=400)
    p.add_argument("--alphas", default="1,1.25,1.5,2,3,5")
    args = p.parse_args()

    g = np.linspace(0, 1, args.points + 1)[1:]
    x, y = np.meshgrid(g, g)
    inside = x * x + y * y <= 1
    x, y = x[inside], y[inside]
    r = np.sqrt(np.minimum(x * x + y * y, 1.0))
    print(f"{'measure':<10} {'alpha':>6} {'min_rel':>10} {'x':>7} {'y':>7} {'min_abs':>12}")
    for kind in ("bures", "geometric"):
        f = measure_function(kind)
        fx, fy, fr = f(x), f(y), f(r)
        for a in (float(v) for v in args.alphas.split(",")):
            res = fr**a - fx**a - fy**a
            rel = res / np.maximum(fr**a, 1e-300)
            k = int(np.argmin(rel))
            print(f"{kind:<10} {a:>6g} {rel[k]:>10.6f} {x[k]:>7.4f} {y[k]:>7.4f} {res.min():>12.3e}")


if __name__ == "__main__":
    main()
