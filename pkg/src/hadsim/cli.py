"""Command-line entry point.

Every subcommand takes --seed (default 0; all randomness flows from it),
--format {csv,json} and --out, and writes structured tables only.  Exit
codes: 0 success, 1 usage error, 2 experiment failure.
"""

from __future__ import annotations

import argparse
import io
import json
import sys

import numpy as np

from . import depth2, eigenest, gadgets, grover, orderfind, statevec
from .circuit import CircuitError, catalog_perm, input_desugar, metrics, parse
from .statevec import DEFAULT_MAX_WIDTH

USAGE_ERROR = 1
EXPERIMENT_FAILURE = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; we reserve that
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def _emit(rows: list[dict], args, meta: dict | None = None) -> None:
    """Write rows (plus optional meta mapping) as CSV or JSON, canonically ordered."""
    buf = io.StringIO()
    if args.format == "json":
        payload = {"rows": rows}
        if meta:
            payload.update(meta)
        json.dump(payload, buf, sort_keys=True, default=_fmt)
        buf.write("\n")
    else:
        if meta:
            for key in sorted(meta):
                buf.write(f"# {key} = {_fmt(meta[key])}\n")
        if rows:
            cols = list(rows[0].keys())
            buf.write(",".join(cols) + "\n")
            for row in rows:
                buf.write(",".join(_fmt(row[c]) for c in cols) + "\n")
    text = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    sub.add_argument("--out", default=None, help="output path (default stdout)")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")


# ---------------------------------------------------------------------------


def _cmd_simulate(args) -> int:
    with open(args.circuit, encoding="utf-8") as fh:
        circ = parse(fh.read())
    state = statevec.run(circ, max_width=args.max_width)
    m = metrics(circ)
    _, extra_depth, note = input_desugar(circ)
    meta = {
        "width": m.width,
        "size": m.size,
        "quantum_depth": m.quantum_depth,
        "oracle_calls": m.oracle_calls,
        "blackbox_gates": m.blackbox_gates,
        "input_desugar_depth": extra_depth,
        "input_desugar_note": note,
    }
    if args.shots:
        counts = state.sample(args.shots, seed=args.seed)
        rows = [{"label": k, "count": counts[k]} for k in sorted(counts)]
    else:
        dist = state.distribution()
        rows = [
            {"label": int(z), "probability": float(p)}
            for z, p in enumerate(dist)
            if p > args.prob_floor
        ]
    _emit(rows, args, meta)
    return 0


def _cmd_gadget_verify(args) -> int:
    checks: list[tuple[str, bool, str]] = []
    rng = np.random.default_rng(args.seed)

    sym = "01+-"
    dual = dict(zip(sym, "+-01"))
    failures = 0
    worst = 0.0
    for cs in sym:
        for ds in sym:
            circ = gadgets.local_hadamard_gadget(4, 0, 1, 2, 3).with_input("1-" + cs + ds)
            got = statevec.run(circ)
            want = statevec.init(4, "1-" + dual[cs] + dual[ds])
            err = float(np.max(np.abs(got.amps - want.amps)))
            worst = max(worst, err)
            failures += err > 1e-12
    checks.append(
        ("local-hadamard-gadget-16-inputs", failures == 0, f"max amplitude error {worst:.3e}")
    )

    core_maps = {"00": "++", "01": "-+", "10": "+-", "11": "--"}
    ok = True
    for cd, want_cd in core_maps.items():
        circ = gadgets.local_hadamard_core(4, 0, 1, 2, 3).with_input("1-" + cd)
        got = statevec.run(circ)
        want = statevec.init(4, "1-" + want_cd)
        ok &= float(np.max(np.abs(got.amps - want.amps))) <= 1e-12
    checks.append(("core-four-listed-mappings", ok, "|1-cd> -> |1-(Hd)(Hc)>"))

    ok = True
    for trial in range(8):
        amps = rng.normal(size=64) + 1j * rng.normal(size=64)
        amps /= np.linalg.norm(amps)
        st1 = statevec.StateVector(6, amps.copy())
        statevec.run(gadgets.swap_from_cnots(6, 1, 4), st1)
        view = amps.reshape([2] * 6).swapaxes(1, 4).reshape(-1)
        ok &= float(np.max(np.abs(st1.amps - view))) <= 1e-12
    checks.append(("swap-from-three-cnots", ok, "matches index transposition"))

    ok = True
    for c_set, t_set in (({0, 1}, {2}), ({2}, {0, 1}), (set(), {1})):
        circ = gadgets.conjugated_toffoli(3, c_set, t_set)
        twice = circ + gadgets.conjugated_toffoli(3, c_set, t_set)
        st = statevec.run(twice.with_input("000"))
        want = statevec.init(3, "000")
        ok &= float(np.max(np.abs(st.amps - want.amps))) <= 1e-12
    checks.append(("conjugated-toffoli-involution", ok, "two applications = identity"))

    rows = [{"check": name, "status": "pass" if good else "FAIL", "detail": detail}
            for name, good, detail in checks]
    _emit(rows, args)
    return 0 if all(good for _, good, _ in checks) else EXPERIMENT_FAILURE


def _cmd_depth2(args) -> int:
    n = args.width
    try:
        a = int(args.input, 2) if set(args.input) <= {"0", "1"} and len(args.input) == n else int(args.input)
    except ValueError:
        raise CircuitError(f"bad input label {args.input!r}") from None
    tokens = args.perm.split()
    perm = catalog_perm(tokens[0].upper(), tokens[1:], n)
    inst = depth2.Depth2Instance(n, a, perm)
    dist = depth2.depth2_distribution(inst)
    rows = [
        {"label": int(z), "probability": float(p)}
        for z, p in enumerate(dist)
        if p > args.prob_floor
    ]
    meta = {"width": n, "input": a, "perm": perm.name}
    if args.compare_sim:
        meta["max_deviation_vs_sim"] = depth2.max_deviation(inst)
    _emit(rows, args, meta)
    return 0


def _cmd_order_find(args) -> int:
    spec = orderfind.GroupSpec(args.modulus, args.generator)
    if args.schedule == "auto":
        K = orderfind.resolution_target(args.modulus)
        sched = eigenest.make_schedule(K)
        c_js = sched.c_js
        b = args.b if args.b else sched.b
    else:
        c_js = tuple(int(tok) for tok in args.schedule.split(","))
        b = args.b if args.b else 3
    if args.a:
        c_js = c_js[: args.a]
    plan = orderfind.OrderFindingPlan(c_js, b, args.ancilla, args.ancilla_label)
    sample_sets = orderfind.run_order_finding(
        spec, plan, seed=args.seed, trials=args.trials, method=args.method,
        max_width=args.max_width,
    )
    if args.format == "json":
        # one JSON line per trial (each line is one SampleSet)
        lines = [
            json.dumps(
                {
                    "trial": t,
                    "samples": [{"b": r.b, "c": r.c, "x": r.x} for r in records],
                },
                sort_keys=True,
            )
            for t, records in enumerate(sample_sets)
        ]
        text = "\n".join(lines) + "\n"
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return 0
    rows = [
        {"trial": t, "c": rec.c, "x": rec.x, "b": rec.b}
        for t, records in enumerate(sample_sets)
        for rec in records
    ]
    meta = {"modulus": args.modulus, "generator": args.generator, "a": plan.a, "b": plan.b}
    _emit(rows, args, meta)
    return 0


def _cmd_factor(args) -> int:
    report = orderfind.factor(args.modulus, seed=args.seed, max_attempts=args.max_attempts)
    rows = [
        {
            "g": a.g,
            "outcome": a.outcome,
            "theta_hat": a.theta_hat if a.theta_hat is not None else "",
            "rational": a.rational or "",
            "candidate_order": a.candidate_order if a.candidate_order is not None else "",
        }
        for a in report.attempts
    ]
    meta = {
        "modulus": report.modulus,
        "factor": report.factor if report.factor is not None else "",
        "success": report.success,
        "method": report.method,
        "trials_used": report.trials_used,
    }
    _emit(rows, args, meta)
    return 0 if report.success else EXPERIMENT_FAILURE


def _cmd_eigenest(args) -> int:
    if not 0 <= args.theta < 1:
        raise CircuitError("--theta is theta/pi and must lie in [0, 1)")
    schedule = eigenest.make_schedule(args.K)
    rng = np.random.default_rng(args.seed)
    rows = []
    hits = 0
    abs_errors = []
    truth = eigenest.fold(args.theta)
    for trial in range(args.trials):
        samples = eigenest.simulate_samples(args.theta, schedule, seed=int(rng.integers(2**32)))
        est = eigenest.estimate_theta(samples, args.K)
        err = abs(est.theta_hat - truth)
        ok = err <= 1.0 / args.K
        hits += ok
        abs_errors.append(err)
        rows.append(
            {
                "trial": trial,
                "theta_hat": est.theta_hat,
                "rational": str(est.rational),
                "abs_error": err,
                "within_resolution": ok,
                "low_confidence": est.low_confidence,
            }
        )
    meta = {
        "K": args.K,
        "b": schedule.b,
        "a": schedule.a,
        "theta": args.theta,
        "success_rate": hits / args.trials,
        "mean_abs_error": float(np.mean(abs_errors)),
    }
    _emit(rows, args, meta)
    return 0


def _cmd_grover(args) -> int:
    schedule = grover.parse_schedule(args.schedule, args.policy, args.seed)
    probs = grover.batched_success(args.n, schedule)
    rows = [{"x": int(x), "success": float(p)} for x, p in enumerate(probs)]
    meta = {
        "n": args.n,
        "N": 1 << args.n,
        "schedule": schedule.describe(),
        "sum_sqrt_k": schedule.sum_sqrt_k,
        "oracle_calls": schedule.oracle_calls,
        "interior_depth": schedule.interior_depth,
        "success_avg": float(probs.mean()),
        "success_min": float(probs.min()),
    }
    _emit(rows, args, meta)
    return 0


def _cmd_grover_tradeoff(args) -> int:
    if args.fit:
        lo, _, hi = args.fit_range.partition(":")
        fit = grover.depth0_fit(tuple(range(int(lo), int(hi) + 1)))
        rows = [
            {"n": n, "N": 1 << n, "k_half": k}
            for n, k in zip(fit.n_values, fit.k_half)
        ]
        _emit(rows, args, {"family": "depth0", "fit_exponent": fit.exponent})
        return 0
    report = grover.tradeoff_experiment(args.n, args.family, seed=args.seed)
    rows = [
        {
            "schedule": r.schedule,
            "T": r.T,
            "sum_sqrt_k": r.sum_sqrt_k,
            "sum_k": r.sum_k,
            "interior_depth": r.interior_depth,
            "success_avg": r.success_avg,
            "success_min": r.success_min,
        }
        for r in report.rows
    ]
    _emit(rows, args, {"n": report.n, "N": report.N, "family": report.family})
    return 0


def _cmd_lemmas(args) -> int:
    rng = np.random.default_rng(args.seed)
    tol = 1e-9
    v1 = v2 = v3 = 0
    for _ in range(args.trials):
        w = rng.uniform(0.0, 1.0, size=(8, 8))
        R, C = grover.lemma1_check(w)
        v1 += R < C - tol
    for _ in range(args.trials):
        dim = int(rng.integers(2, 11))
        u, v, w = (x / np.linalg.norm(x) for x in rng.normal(size=(3, dim)))
        lhs, rhs = grover.lemma2_check(u, v, w)
        v2 += lhs < rhs - tol
    for _ in range(args.trials):
        N = int(rng.integers(1, 64))
        t = rng.normal(size=N)
        p = float((t**2).sum() / N + abs(rng.normal()))
        lhs, rhs = grover.lemma3_check(t, p)
        v3 += lhs > rhs + tol
    rows = [
        {"lemma": "row-column-norms", "trials": args.trials, "violations": int(v1)},
        {"lemma": "sine-triangle", "trials": args.trials, "violations": int(v2)},
        {"lemma": "sum-of-reals", "trials": args.trials, "violations": int(v3)},
    ]
    total = int(v1 + v2 + v3)
    _emit(rows, args, {"violations": total})
    return 0 if total == 0 else EXPERIMENT_FAILURE


# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="hadsim", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("simulate", help="run a circuit file and report counts or the distribution")
    p.add_argument("circuit", help="circuit file path")
    p.add_argument("--shots", type=int, default=0, help="sample count (0 = exact distribution)")
    p.add_argument("--max-width", type=int, default=DEFAULT_MAX_WIDTH)
    p.add_argument("--prob-floor", type=float, default=1e-15, help="suppress labels below this probability")
    _add_common(p)
    p.set_defaults(func=_cmd_simulate)

    p = subs.add_parser("gadget-verify", help="run the gadget equivalence checks")
    _add_common(p)
    p.set_defaults(func=_cmd_gadget_verify)

    p = subs.add_parser("depth2", help="closed-form depth-2 output distribution")
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--input", required=True, help="nonzero input label (int or bits)")
    p.add_argument("--perm", required=True, help="catalog permutation, e.g. 'MODMUL 2 15'")
    p.add_argument("--compare-sim", action="store_true")
    p.add_argument("--prob-floor", type=float, default=1e-15)
    _add_common(p)
    p.set_defaults(func=_cmd_depth2)

    p = subs.add_parser("order-find", help="run order-finding trials and emit the samples")
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--generator", type=int, required=True)
    p.add_argument("--a", type=int, default=0, help="truncate the schedule to this many powers")
    p.add_argument("--b", type=int, default=0, help="wires per power (default: schedule rule)")
    p.add_argument("--schedule", default="auto", help="'auto' or comma-separated powers")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--ancilla", choices=("basis", "mixed"), default="basis")
    p.add_argument("--ancilla-label", type=int, default=1)
    p.add_argument("--method", choices=("auto", "dense", "mixture"), default="auto")
    p.add_argument("--max-width", type=int, default=DEFAULT_MAX_WIDTH)
    _add_common(p)
    p.set_defaults(func=_cmd_order_find)

    p = subs.add_parser("factor", help="factor an integer via order finding")
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--max-attempts", type=int, default=16)
    _add_common(p)
    p.set_defaults(func=_cmd_factor)

    p = subs.add_parser("eigenest", help="Monte-Carlo phase estimation at a known theta")
    p.add_argument("--K", type=int, required=True, help="resolution target")
    p.add_argument("--theta", type=float, required=True, help="true theta/pi in [0, 1)")
    p.add_argument("--trials", type=int, default=100)
    _add_common(p)
    p.set_defaults(func=_cmd_eigenest)

    p = subs.add_parser("grover", help="exact success of one search schedule for every hidden datum")
    p.add_argument("--n", type=int, required=True, help="search wires")
    p.add_argument("--schedule", required=True, help="TxK terms joined by '|', e.g. '1x32|4x8'")
    p.add_argument("--policy", choices=("diffusion", "alternating", "random", "identity", "matched"), default="diffusion")
    _add_common(p)
    p.set_defaults(func=_cmd_grover)

    p = subs.add_parser("grover-tradeoff", help="schedule family sweeps (exact averages)")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--family", choices=("serial", "frontier", "depth0"), default="frontier")
    p.add_argument("--fit", action="store_true", help="fit the depth-0 family's k*(N) exponent")
    p.add_argument("--fit-range", default="6:12", help="n range lo:hi for --fit")
    _add_common(p)
    p.set_defaults(func=_cmd_grover_tradeoff)

    p = subs.add_parser("lemmas", help="randomized property suites for the three lemmas")
    p.add_argument("--trials", type=int, default=10000)
    _add_common(p)
    p.set_defaults(func=_cmd_lemmas)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CircuitError, OSError, ValueError) as exc:
        print(f"hadsim: error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
