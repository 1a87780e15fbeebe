"""Command-line interface: one binary, one subcommand per capability.

Every run emits a single JSON or CSV document with a header (the
resolved configuration, wall time, timestamp) and a payload.  Payloads
are deterministic: identical argv and seeds give byte-identical payload
bytes, and --threads never changes results (computations use
deterministic merge orders regardless of the knob).

Exit codes: 0 success, 2 parameter errors, 3 resource/numeric errors.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .circle import (
    arc_decomposition,
    complete_sum,
    major_arc_moment,
    minor_arc_sup_sample,
    oscillatory_integral,
    weyl_sum,
)
from .congruencing import (
    aggregate_mixed_moment,
    audit_T_split,
    box_cardinality_audit,
    class_profile,
    select_prime,
    well_conditioned_tuples,
)
from .constants import (
    exponent_fit,
    extremal_search,
    restriction_constant,
    strichartz_constant,
)
from .errors import MomentCurveError, NumericError, ParameterError, ResourceError
from .meanvalue import (
    BRUTE_CAP_DEFAULT,
    ENTRY_CAP_DEFAULT,
    brute_force_mean_value,
    mean_value,
    normalize_exponents,
)
from .rowconv import DEFAULT_CELL_CAP
from .serialize import render_document, write_output
from .weights import weights_from_spec, write_weight_file


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated int list: {text!r}") from exc


def _fraction_list(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(tok) for tok in text.split(",") if tok.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated rational list: {text!r}") from exc


def _resolve_exponents(args) -> tuple[int, ...]:
    if getattr(args, "exponents", None):
        return normalize_exponents(args.exponents)
    return normalize_exponents(getattr(args, "k", 2))


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", "-o", default="-", help="output path, - for stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                   help="parallelism knob; results never depend on it")
    p.add_argument("--config", default=None,
                   help="key = value file merged under explicit flags")
    p.add_argument("--dry-run", action="store_true",
                   help="print the resolved configuration without computing")


def _add_exponent_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, default=2, help="degree: exponents 1..k")
    p.add_argument("--exponents", type=_int_list, default=None,
                   help="explicit exponent set, e.g. 1,2,4 (overrides --k)")


def _add_weights_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--weights", default="unit",
                   help="unit | spike[:AT] | geometric:RATIO | random:SEED | file:PATH")


def build_parser() -> argparse.ArgumentParser:
    root = argparse.ArgumentParser(
        prog="momentcurve",
        description="Exact mean values, congruence conditioning, and "
                    "circle-method diagnostics for moment-curve sums.",
    )
    root.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = root.add_subparsers(dest="command", required=True, metavar="SUBCOMMAND")

    p = sub.add_parser("mean-value", help="even moment of a weighted curve sum")
    _add_common(p)
    _add_exponent_args(p)
    _add_weights_arg(p)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--N", type=int, required=True, dest="n_max")
    p.add_argument("--strategy", choices=("auto", "map", "dense"), default="auto")
    p.add_argument("--entry-cap", type=int, default=ENTRY_CAP_DEFAULT)
    p.add_argument("--cell-cap", type=int, default=DEFAULT_CELL_CAP)
    p.set_defaults(handler=_cmd_mean_value)

    p = sub.add_parser("brute-check", help="oracle equivalence: map vs direct count")
    _add_common(p)
    _add_exponent_args(p)
    _add_weights_arg(p)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--N", type=int, required=True, dest="n_max")
    p.add_argument("--cap", type=int, default=BRUTE_CAP_DEFAULT)
    p.set_defaults(handler=_cmd_brute_check)

    p = sub.add_parser("exponent-fit", help="log-log growth fit over an N sweep")
    _add_common(p)
    _add_exponent_args(p)
    _add_weights_arg(p)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--N-list", type=_int_list, required=True, dest="n_list")
    p.set_defaults(handler=_cmd_exponent_fit)

    p = sub.add_parser("extremal-search", help="coordinate ascent over weights")
    _add_common(p)
    _add_exponent_args(p)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--N", type=int, required=True, dest="n_max")
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument("--iters", type=int, default=4)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--save-weights", default=None,
                   help="write the best witness as a weight file")
    p.set_defaults(handler=_cmd_extremal_search)

    p = sub.add_parser("strichartz", help="extension-constant lower bound")
    _add_common(p)
    _add_exponent_args(p)
    p.add_argument("--p", type=int, required=True, help="even moment exponent")
    p.add_argument("--N", type=int, required=True, dest="n_max")
    p.add_argument("--budget", type=int, default=0, help="ascent sweeps")
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(handler=_cmd_strichartz)

    p = sub.add_parser("restriction", help="restriction-constant lower bound")
    _add_common(p)
    _add_exponent_args(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--N", type=int, required=True, dest="n_max")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--quad-tol", type=float, default=1e-6)
    p.set_defaults(handler=_cmd_restriction)

    ca = sub.add_parser("congruence-audit", help="congruence-conditioning diagnostics")
    casub = ca.add_subparsers(dest="audit", required=True, metavar="AUDIT")

    p = casub.add_parser("classes", help="per-class energy profile")
    _add_common(p)
    _add_weights_arg(p)
    p.add_argument("--N", type=int, required=True, dest="n_max")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--level", type=int, default=1)
    p.set_defaults(handler=_cmd_classes)

    p = casub.add_parser("xi-count", help="well-conditioned tuple census")
    _add_common(p)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--level", type=int, default=0)
    p.add_argument("--xi", type=int, default=1)
    p.add_argument("--k", type=int, default=2)
    p.set_defaults(handler=_cmd_xi_count)

    p = casub.add_parser("lemma51", help="congruence box cardinality audit")
    _add_common(p)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--cap", type=int, default=20_000_000)
    p.set_defaults(handler=_cmd_lemma51)

    p = casub.add_parser("t-split", help="clustered/spread split of a mixed moment")
    _add_common(p)
    _add_weights_arg(p)
    p.add_argument("--N", type=int, required=True, dest="n_max")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--xi", type=int, default=1)
    p.add_argument("--eta", type=int, default=1)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    p.set_defaults(handler=_cmd_t_split)

    p = casub.add_parser("mixed-moments", help="energy-weighted I or K aggregate")
    _add_common(p)
    _add_weights_arg(p)
    p.add_argument("--N", type=int, required=True, dest="n_max")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--kind", choices=("I", "K"), default="I")
    p.add_argument("--s", type=int, required=True,
                   help="plain-block power for I, conditioned power u for K")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--theta", type=_fraction, default=None,
                   help="rational scale exponent for bracket normalization")
    p.set_defaults(handler=_cmd_mixed_moments)

    ci = sub.add_parser("circle", help="Hardy-Littlewood diagnostics")
    cisub = ci.add_subparsers(dest="analysis", required=True, metavar="ANALYSIS")

    p = cisub.add_parser("weyl", help="one exponential sum value")
    _add_common(p)
    p.add_argument("--alpha", type=_fraction_list, required=True,
                   help="phase vector, e.g. 1/2,0")
    p.add_argument("--X", type=int, required=True, dest="x")
    p.set_defaults(handler=_cmd_weyl)

    p = cisub.add_parser("complete-sum", help="rational-point complete sum")
    _add_common(p)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--a", type=_int_list, required=True, help="residues, e.g. 1,1")
    p.set_defaults(handler=_cmd_complete_sum)

    p = cisub.add_parser("arcs", help="major-arc decomposition")
    _add_common(p)
    p.add_argument("--X", type=int, required=True, dest="x")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--skip-disjointness", action="store_true")
    p.set_defaults(handler=_cmd_arcs)

    p = cisub.add_parser("minor-sup", help="sampled minor-arc supremum")
    _add_common(p)
    p.add_argument("--X", type=int, required=True, dest="x")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--grid-density", type=int, default=64)
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(handler=_cmd_minor_sup)

    p = cisub.add_parser("major-moment", help="integral of |V|^u over the arcs")
    _add_common(p)
    p.add_argument("--X", type=int, required=True, dest="x")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(handler=_cmd_major_moment)

    p = sub.add_parser("primes", help="candidate auxiliary primes above X^theta")
    _add_common(p)
    p.add_argument("--X", type=int, required=True, dest="x")
    p.add_argument("--theta", type=_fraction, default=Fraction(1, 4))
    p.add_argument("--k", type=int, default=2)
    p.set_defaults(handler=_cmd_primes)

    return root


# ---------------------------------------------------------------------------
# handlers: each returns a JSON-able payload dict


def _cmd_mean_value(args) -> dict:
    es = _resolve_exponents(args)
    w = weights_from_spec(args.weights, args.n_max)
    res = mean_value(w, args.s, es, strategy=args.strategy,
                     entry_cap=args.entry_cap, cell_cap=args.cell_cap)
    return {
        "s": res.s,
        "k": res.k,
        "exponents": list(res.exponents),
        "N": res.n_max,
        "mode": res.mode,
        "raw_moment": res.raw_moment,
        "normalized": res.normalized,
        "distinct_keys": res.distinct_keys,
        "strategy": res.strategy,
        "weights_spec": args.weights,
    }


def _cmd_brute_check(args) -> dict:
    es = _resolve_exponents(args)
    w = weights_from_spec(args.weights, args.n_max)
    res = mean_value(w, args.s, es)
    brute = brute_force_mean_value(w, args.s, es, enumeration_cap=args.cap)
    return {
        "s": args.s,
        "exponents": list(es),
        "N": args.n_max,
        "weights_spec": args.weights,
        "raw_map": res.raw_moment,
        "raw_brute": brute.raw_moment,
        "equal": res.raw_moment == brute.raw_moment,
    }


def _fit_rows(report) -> dict:
    rows = []
    for n, raw, normalized in report.samples:
        target_power = float(n) ** report.theorem_target
        rows.append([n, raw, normalized, target_power, float(normalized) / target_power])
    return {
        "columns": ["N", "raw", "normalized", "target_power", "ratio"],
        "rows": rows,
        "fitted_slope": report.fitted_slope,
        "theorem_target": report.theorem_target,
        "conjecture_target": report.conjecture_target,
        "slope_gap": report.slope_gap,
        "r_squared": report.r_squared,
        "loo_slope_min": report.loo_slope_min,
        "loo_slope_max": report.loo_slope_max,
        "lambda_hat": report.lambda_hat,
        "big_lambda_hat": report.big_lambda_hat,
    }


def _cmd_exponent_fit(args) -> dict:
    es = _resolve_exponents(args)
    report = exponent_fit(args.weights, args.s, es, list(args.n_list))
    payload = _fit_rows(report)
    payload["s"] = args.s
    payload["exponents"] = list(es)
    payload["weights_spec"] = args.weights
    return payload


def _cmd_extremal_search(args) -> dict:
    es = _resolve_exponents(args)
    state = extremal_search(args.s, es, args.n_max, restarts=args.restarts,
                            iters=args.iters, seed=args.seed)
    if args.save_weights:
        write_weight_file(state.weights, args.save_weights)
    return {
        "s": args.s,
        "exponents": list(es),
        "N": args.n_max,
        "objective": state.objective,
        "objective_float": float(state.objective),
        "iterations": state.iterations,
        "restart_seed": state.restart_seed,
        "evaluations": state.evaluations,
        "weights": state.weights,
    }


def _cmd_strichartz(args) -> dict:
    es = _resolve_exponents(args)
    k_hat, witness = strichartz_constant(args.p, args.n_max, es,
                                         search_budget=args.budget, seed=args.seed)
    return {
        "p": args.p,
        "N": args.n_max,
        "exponents": list(es),
        "k_hat": k_hat,
        "witness": witness,
    }


def _cmd_restriction(args) -> dict:
    es = _resolve_exponents(args)
    report = restriction_constant(args.p, args.n_max, args.trials, args.seed,
                                  es, quad_tol=args.quad_tol)
    return {
        "p": report.p,
        "N": report.n_max,
        "trials": report.trials,
        "seed": report.seed,
        "a_hat": report.a_hat,
        "worst_slack": report.worst_slack,
        "k_hat_reference": report.k_hat_reference,
        "duality_gap": report.duality_gap,
    }


def _cmd_classes(args) -> dict:
    w = weights_from_spec(args.weights, args.n_max)
    prof = class_profile(w, args.prime, args.level)
    rows = [[xi, prof.energies[xi]] for xi in sorted(prof.energies)]
    return {
        "columns": ["class", "energy"],
        "rows": rows,
        "prime": prof.prime,
        "level": prof.level,
        "N": args.n_max,
        "mode": prof.mode,
        "total_energy": prof.total(),
    }


def _cmd_xi_count(args) -> dict:
    res = well_conditioned_tuples(args.prime, args.level, args.xi, args.k)
    payload = {
        "prime": res.prime,
        "level": res.level,
        "xi": res.xi,
        "k": res.k,
        "count": res.count,
    }
    if res.count <= 1000:
        payload["tuples"] = [list(t) for t in res.tuples]
    return payload


def _cmd_lemma51(args) -> dict:
    audit = box_cardinality_audit(args.prime, args.a, args.b, args.k, cap=args.cap)
    return {
        "prime": audit.prime,
        "a": audit.a,
        "b": audit.b,
        "k": audit.k,
        "bound": audit.bound,
        "max_cardinality": audit.max_card,
        "witness_xi": audit.witness_xi,
        "witness_eta": audit.witness_eta,
        "witness_target": list(audit.witness_target),
        "passed": audit.passed,
    }


def _cmd_t_split(args) -> dict:
    w = weights_from_spec(args.weights, args.n_max)
    split = audit_T_split(w, args.prime, args.a, args.b, args.xi, args.eta,
                          args.s, args.k)
    return {
        "prime": args.prime,
        "a": args.a,
        "b": args.b,
        "xi": args.xi,
        "eta": args.eta,
        "s": args.s,
        "k": args.k,
        "t1": split.t1,
        "t2": split.t2,
        "total": split.total,
        "identity_holds": split.t1 + split.t2 == split.total,
    }


def _cmd_mixed_moments(args) -> dict:
    w = weights_from_spec(args.weights, args.n_max)
    agg, per_class = aggregate_mixed_moment(args.kind, w, args.prime, args.a,
                                            args.b, args.s, args.k, theta=args.theta)
    rows = [[m.xi, m.eta, m.value, m.bracket] for m in per_class]
    return {
        "columns": ["xi", "eta", "value", "bracket"],
        "rows": rows,
        "kind": args.kind,
        "prime": args.prime,
        "a": args.a,
        "b": args.b,
        "s_or_u": args.s,
        "k": args.k,
        "aggregate": agg.value,
        "aggregate_bracket": agg.bracket,
    }


def _cmd_weyl(args) -> dict:
    val = weyl_sum(args.alpha, args.x)
    return {
        "alpha": [str(a) for a in args.alpha],
        "X": args.x,
        "value": val,
        "abs": abs(val),
    }


def _cmd_complete_sum(args) -> dict:
    val = complete_sum(args.q, args.a)
    return {
        "q": args.q,
        "a": list(args.a),
        "value": val,
        "abs": abs(val),
    }


def _cmd_arcs(args) -> dict:
    decomp = arc_decomposition(args.x, args.k,
                               check_disjoint=not args.skip_disjointness)
    rows = [[q, ",".join(map(str, a))] for q, a in decomp.arcs]
    return {
        "columns": ["q", "a"],
        "rows": rows,
        "X": decomp.x,
        "k": decomp.k,
        "cutoff": decomp.cutoff,
        "arc_count": len(decomp.arcs),
        "disjointness_checked": not args.skip_disjointness,
    }


def _cmd_minor_sup(args) -> dict:
    res = minor_arc_sup_sample(args.x, args.k, args.grid_density, args.seed)
    return {
        "X": res.x,
        "k": res.k,
        "seed": res.seed,
        "points_tested": res.points_tested,
        "points_kept": res.points_kept,
        "max_abs": res.max_abs,
        "argmax": [str(c) for c in res.argmax],
        "trivial_bound": 2 * res.x + 1,
    }


def _cmd_major_moment(args) -> dict:
    res = major_arc_moment(args.x, args.k, args.u, tol=args.tol)
    rows = [[q, ",".join(map(str, a)), integral] for q, a, integral in res.per_arc]
    return {
        "columns": ["q", "a", "arc_integral"],
        "rows": rows,
        "X": res.x,
        "k": res.k,
        "u": res.u,
        "q_max": res.q_max,
        "singular": res.singular,
        "arc_integral_common": res.arc_integral,
        "value": res.value,
        "reference_power": res.reference_power,
        "ratio": res.value / res.reference_power,
    }


def _cmd_primes(args) -> dict:
    sel = select_prime(args.x, args.theta, args.k)
    return {
        "X": sel.x,
        "theta": sel.theta,
        "k": sel.k,
        "prime": sel.prime,
        "candidates": list(sel.candidates),
        "m_value": sel.m_value,
        "exceeds_two_m": sel.exceeds_two_m,
    }


# ---------------------------------------------------------------------------
# config merging and entry point


def _load_config(path: str) -> dict[str, str]:
    pairs: dict[str, str] = {}
    try:
        with open(path, "r", encoding="ascii") as fh:
            for lineno, line in enumerate(fh, start=1):
                stripped = line.strip()
                if not stripped or stripped.startswith("#"):
                    continue
                if "=" not in stripped:
                    raise ParameterError(
                        f"config {path}:{lineno}: expected 'key = value'"
                    )
                key, _, value = stripped.partition("=")
                pairs[key.strip()] = value.strip()
    except OSError as exc:
        raise ParameterError(f"cannot read config {path}: {exc}") from exc
    return pairs


def _merge_config_argv(argv: list[str]) -> list[str]:
    """Inject config pairs as flags before user flags, so flags win."""
    path = None
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif tok.startswith("--config="):
            path = tok.split("=", 1)[1]
    if path is None:
        return argv
    pairs = _load_config(path)
    lead = []
    rest = list(argv)
    while rest and not rest[0].startswith("-"):
        lead.append(rest.pop(0))
    injected = []
    for key, value in pairs.items():
        flag = "--" + key.replace("_", "-")
        injected.extend([flag, value])
    return lead + injected + rest


def _config_echo(args) -> dict:
    skip = {"handler", "config"}
    out = {}
    for key, value in sorted(vars(args).items()):
        if key in skip:
            continue
        if isinstance(value, Fraction):
            value = str(value)
        elif isinstance(value, tuple):
            value = list(value)
        out[key] = value
    return out


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    try:
        merged = _merge_config_argv(list(argv))
        args = parser.parse_args(merged)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return int(exc.code or 0)

    command = args.command
    for attr in ("audit", "analysis"):
        if getattr(args, attr, None):
            command += " " + getattr(args, attr)
    header = {
        "command": command,
        "version": __version__,
        "options": _config_echo(args),
    }

    if args.dry_run:
        header["generated_ms"] = int(time.time() * 1000)
        text = render_document(header, {"dry_run": True}, args.format)
        write_output(text, args.output)
        return 0

    started = time.monotonic()
    try:
        payload = args.handler(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ResourceError, NumericError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except MomentCurveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    header["wall_ms"] = int((time.monotonic() - started) * 1000)
    header["generated_ms"] = int(time.time() * 1000)
    text = render_document(header, payload, args.format)
    write_output(text, args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
