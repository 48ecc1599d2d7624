"""Command-line entry point.

Exit status: 0 success / no violations, 1 at least one violation,
2 input or configuration error, 3 numerical failure. Diagnostics go to
stderr; results go to stdout (or the requested output files).
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import config as cfg
from .core.serialization import load_state
from .core.states import DensityMatrix, PureState, parse_named
from .errors import InputError, NumericalError
from .measures import (
    MeasureKind,
    as_bipartition,
    check_alpha,
    concurrence_pure,
    concurrence_wootters,
    entanglement_pure_bipartition,
    entanglement_two_qubit,
    fs_pure,
    fs_upper_bound,
    measure_function,
)
from .monogamy import (
    DEFAULT_ALPHAS,
    CampaignConfig,
    MonogamyReport,
    check_scalar_lemma,
    mixed_pair_concurrences,
    pure_terms,
    run_campaign,
)
from .variational import (
    OptimizerConfig,
    convex_roof_concurrence_upper,
    max_product_fidelity_pure,
    max_separable_fidelity_mixed,
)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_NUMERICAL = 0, 1, 2, 3
SCALAR_TOL = -1e-12


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _dump(obj) -> str:
    # repr-precision floats round-trip exactly
    return json.dumps(obj, sort_keys=False)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _split_list(values, conv):
    out = []
    for v in values or []:
        out.extend(conv(p) for p in str(v).split(",") if p.strip())
    return out


def _float(s):
    try:
        return float(s)
    except ValueError:
        raise InputError(f"not a number: {s!r}") from None


def _load(spec: str):
    if Path(spec).exists():
        return load_state(spec)
    if "/" in spec or spec.endswith(".json"):
        raise InputError(f"no such state file: {spec}")
    return parse_named(spec)


# --- measure ---------------------------------------------------------------


def cmd_measure(args, out):
    state = _load(args.state)
    kind = MeasureKind.parse(args.kind).value
    alpha = check_alpha(args.alpha)
    n = state.n_qubits
    part = as_bipartition(args.a, n)
    fn = measure_function(kind)
    result = {"n_qubits": n, "a_qubit": part.a_qubit, "measure": kind, "alpha": alpha}

    if isinstance(state, PureState):
        result["mode"] = "pure"
        result["fs"] = fs_pure(state, part)
        result["concurrence"] = concurrence_pure(state, part)
        result["lhs"] = entanglement_pure_bipartition(state, part, kind) ** alpha
        if n >= 3:
            _, _, conc = pure_terms(state.amplitudes, n, part.a_qubit)
            conc = [float(c) for c in conc]
        else:
            conc = [result["concurrence"]]
    elif n == 2:
        result["mode"] = "two_qubit"
        c = concurrence_wootters(state)
        result["concurrence"] = c
        result["fs"] = fs_upper_bound(c)
        result["lhs"] = entanglement_two_qubit(state, kind) ** alpha
        conc = [c]
    else:
        # no closed form for the A|rest measure of a mixed state: report the chain quantities
        result["mode"] = "chain"
        conc = [float(c) for c in mixed_pair_concurrences(state.matrix, n, part.a_qubit)]
        result["lhs"] = float(fn(np.sqrt(min(sum(c * c for c in conc), 1.0))) ** alpha)
    result["pair_concurrences"] = conc
    if n == 2:
        # the pair is the whole state; reuse the route that is exact at rank one
        result["pair_measures"] = [entanglement_two_qubit(state, kind) ** alpha]
    else:
        result["pair_measures"] = [float(fn(c)) ** alpha for c in conc]
    if result["mode"] != "two_qubit":
        result["residual"] = result["lhs"] - sum(result["pair_measures"])
    print(_dump(result), file=out)
    return EXIT_OK


# --- verify ----------------------------------------------------------------


def cmd_verify(args, out):
    alphas = _split_list(args.alpha, _float) or list(DEFAULT_ALPHAS)
    measures = _split_list(args.measure, str) or ["bures", "geometric"]
    config = CampaignConfig(
        n_samples=args.samples,
        n_qubits=args.n,
        alphas=tuple(alphas),
        state_class=args.state_class,
        seed=args.seed,
        measures=tuple(measures),
        sweep_a=args.sweep_a,
    )
    sink = open(args.reports, "w") if args.reports else None
    try:
        summary = run_campaign(
            config,
            on_report=(lambda r: sink.write(_dump(r.to_dict()) + "\n")) if sink else None,
            workers=args.workers,
        )
    finally:
        if sink:
            sink.close()
    if args.no_runtime:
        summary.runtime_seconds = 0.0
    text = _dump(summary.to_dict())
    if args.summary:
        Path(args.summary).write_text(text + "\n")
    print(text, file=out)
    print(f"{summary.violations} violations in {summary.total_checks} checks", file=sys.stderr)
    return EXIT_VIOLATION if summary.violations else EXIT_OK


# --- oracle ----------------------------------------------------------------


def cmd_oracle(args, out):
    state = _load(args.state)
    opt = OptimizerConfig(
        restarts=args.restarts, max_iterations=args.max_iterations, step_tolerance=args.step_tolerance, seed=args.seed
    )
    part = as_bipartition(args.a, state.n_qubits)
    closed = None
    if args.mode == "product-pure":
        if not isinstance(state, PureState):
            raise InputError("product-pure mode needs a pure state")
        res = max_product_fidelity_pure(state, part, opt)
        closed = fs_pure(state, part)
        gap = closed - res.value
    elif args.mode == "separable-mixed":
        res = max_separable_fidelity_mixed(state, part, args.m, opt)
        if isinstance(state, PureState):
            closed = fs_pure(state, part)
        elif state.n_qubits == 2:
            closed = fs_upper_bound(concurrence_wootters(state))
        gap = None if closed is None else closed - res.value
    elif args.mode == "convex-roof":
        res = convex_roof_concurrence_upper(state, part, args.m, opt)
        if isinstance(state, PureState):
            closed = concurrence_pure(state, part)
        elif state.n_qubits == 2:
            closed = concurrence_wootters(state)
        gap = None if closed is None else res.value - closed
    else:
        raise InputError(f"unknown oracle mode {args.mode!r}")
    doc = {"mode": args.mode, "a_qubit": part.a_qubit, **res.to_dict()}
    if closed is not None:
        doc["closed_form"] = closed
        doc["gap"] = gap
    print(_dump(doc), file=out)
    return EXIT_OK


# --- scalar-sweep ----------------------------------------------------------


def scalar_grid(step: float):
    k = int(np.floor(1.0 / step + 1e-9))
    pts = [round(i * step, 12) for i in range(k + 1)]
    for x in pts:
        for y in pts:
            if x * x + y * y <= 1 + cfg.RADICAND_CLAMP:
                yield x, y


def cmd_scalar_sweep(args, out):
    step = args.step
    if not 0 < step <= 0.5:
        raise InputError(f"grid step must be in (0, 0.5], got {step}")
    alphas = [check_alpha(a) for a in (_split_list(args.alpha, _float) or [1.0])]
    kind = MeasureKind.parse(args.kind).value
    worst = 0.0
    print("x,y,alpha,residual", file=out)
    for alpha in alphas:
        for x, y in scalar_grid(step):
            r = check_scalar_lemma(x, y, alpha, kind)
            worst = min(worst, r)
            print(f"{_fmt(x)},{_fmt(y)},{_fmt(alpha)},{_fmt(r)}", file=out)
    return EXIT_VIOLATION if worst < SCALAR_TOL else EXIT_OK


# --- report ----------------------------------------------------------------


def _histogram(values, bins=10, width=40):
    counts, edges = np.histogram(values, bins=bins)
    top = max(int(counts.max()), 1)
    lines = []
    for c, lo, hi in zip(counts, edges[:-1], edges[1:]):
        lines.append(f"  [{lo: .3e}, {hi: .3e})  {'#' * int(round(width * c / top)):<{width}} {c}")
    return lines


def cmd_report(args, out):
    records = []
    try:
        lines = Path(args.path).read_text().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read {args.path}: {exc}") from exc
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            records.append(MonogamyReport.from_dict(json.loads(line)))
        except (json.JSONDecodeError, InputError, AttributeError) as exc:
            raise InputError(f"line {lineno}: {exc}") from exc
    if not records:
        print("no records", file=out)
        return EXIT_OK
    groups = {}
    for r in records:
        groups.setdefault((r.measure, r.alpha), []).append(r.residual)
    overall_min = min(r.residual for r in records)
    print(f"{'measure':<10} {'alpha':>6} {'checks':>8} {'violations':>10} {'min_residual':>24} {'median':>24}", file=out)
    for (measure, alpha), res in sorted(groups.items()):
        res = np.array(res)
        viol = int(np.sum(res < cfg.VIOLATION_THRESHOLD))
        mark = "  <-- min" if res.min() == overall_min else ""
        print(
            f"{measure:<10} {alpha:>6g} {res.size:>8} {viol:>10} {_fmt(res.min()):>24} {_fmt(np.median(res)):>24}{mark}",
            file=out,
        )
    n_viol = sum(r.violated for r in records)
    print("", file=out)
    print("residual histogram:", file=out)
    for line in _histogram(np.array([r.residual for r in records])):
        print(line, file=out)
    if n_viol:
        print(f"VIOLATION: {n_viol} record(s) with residual < {cfg.VIOLATION_THRESHOLD:g}", file=out)
        return EXIT_VIOLATION
    return EXIT_OK


# --- wiring ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fidmono", description="Fidelity-based entanglement measures and their monogamy.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    m = sub.add_parser("measure", help="evaluate measures of a state")
    m.add_argument("state", nargs="?", help="state file or named family (ghz:3, w:3, bell, werner:0.5, product:0,+)")
    m.add_argument("--state", dest="state_opt")
    m.add_argument("--a", type=int, default=0, help="index of the single qubit A")
    m.add_argument("--kind", default="bures", help="bures or geometric")
    m.add_argument("--alpha", type=float, default=1.0)
    m.set_defaults(func=cmd_measure)

    v = sub.add_parser("verify", help="randomized monogamy campaign")
    v.add_argument("--n", type=int, default=3, help="number of qubits")
    v.add_argument("--samples", type=int, default=1000)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--alpha", action="append", help="exponent(s); repeatable or comma separated")
    v.add_argument("--measure", action="append", help="bures and/or geometric")
    v.add_argument("--state-class", default="haar_pure", help="haar_pure, ginibre:<rank>, ghz or w")
    v.add_argument("--sweep-a", action="store_true", help="check every choice of A, not just qubit 0")
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--reports", help="write per-check reports as JSON lines")
    v.add_argument("--summary", help="also write the summary JSON here")
    v.add_argument("--no-runtime", action="store_true", help="report runtime_seconds as 0 for byte-stable output")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="run a variational oracle")
    o.add_argument("state", nargs="?")
    o.add_argument("--state", dest="state_opt")
    o.add_argument("--mode", required=True, choices=["product-pure", "separable-mixed", "convex-roof"])
    o.add_argument("--m", type=int, default=None, help="ensemble size")
    o.add_argument("--a", type=int, default=0)
    o.add_argument("--restarts", type=int, default=16)
    o.add_argument("--max-iterations", type=int, default=2000)
    o.add_argument("--step-tolerance", type=float, default=1e-8)
    o.add_argument("--seed", type=int, default=0)
    o.set_defaults(func=cmd_oracle)

    s = sub.add_parser("scalar-sweep", help="grid check of the scalar power inequalities")
    s.add_argument("--step", type=float, default=0.05)
    s.add_argument("--alpha", action="append")
    s.add_argument("--kind", default="bures")
    s.set_defaults(func=cmd_scalar_sweep)

    r = sub.add_parser("report", help="summarize a JSONL report file")
    r.add_argument("path")
    r.set_defaults(func=cmd_report)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        if hasattr(args, "state_opt"):
            args.state = args.state_opt or args.state
            if not args.state:
                raise InputError("a state (file or named family) is required")
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
