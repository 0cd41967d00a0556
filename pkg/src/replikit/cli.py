"""Command-line front end.

Every subcommand is a thin adapter over the library.  Output is text by
default, or a JSON envelope ``{command, inputs, outputs, version}`` with
``--format json``.  Exit codes: 0 success, 1 domain error, 2 usage error.
"""

import argparse
import json
import math
import os
import sys

from . import __version__
from ._checks import DomainError
from .combine import COMBINE_MODES, combination_report
from .curves import DEFAULT_MARKERS, plot_rows, rows_to_csv
from .inference import (
    RangeOfInterest,
    StudySummary,
    confidence_limits,
    p_value_one_sided,
    p_value_two_sided,
    posterior_from,
    prob_true_beyond,
    prob_true_within,
)
from .mc import MODELS, PORTFOLIO_COLUMNS, SimConfig, portfolio_csv, simulate, simulate_osc_portfolio
from .replication import ReplicationQuery, power_consistency_check, replication_probability, required_sample_size
from .repro import reproduce

SEED_ENV = "REPLIKIT_SEED"


def sig9(x):
    """Round a float to 9 significant digits for serialisation."""
    if isinstance(x, float) and math.isfinite(x):
        return float(f"{x:.9g}")
    return x


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, float):
        if math.isnan(obj):
            return "nan"
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return sig9(obj)
    return obj


def envelope(command, inputs, outputs):
    doc = {"command": command, "inputs": inputs, "outputs": outputs, "version": __version__}
    return json.dumps(_jsonable(doc), indent=2) + "\n"


def _csv_pairs(outputs, prefix=""):
    lines = []
    for key, value in outputs.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            lines.extend(_csv_pairs(value, name + "."))
        elif isinstance(value, list):
            for i, item in enumerate(value):
                lines.extend(_csv_pairs(item, f"{name}.{i}."))
        else:
            value = _jsonable(value)
            lines.append(f"{name},{'' if value is None else value}")
    return lines


def _key_value_csv(outputs):
    return "\n".join(["field,value"] + _csv_pairs(outputs)) + "\n"


def _f6(x):
    return f"{x:.6f}"


# ---------------------------------------------------------------- argument types


def _count(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not value.is_integer():
        raise argparse.ArgumentTypeError(f"not a whole number: {text!r}")
    return int(value)


def _pair(text):
    try:
        lo, hi = (float(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LOWER,UPPER, got {text!r}")
    return lo, hi


def _summary(text):
    try:
        n, sd, mean = text.split(",")
        return StudySummary(_count(n), float(sd), float(mean))
    except (ValueError, argparse.ArgumentTypeError, DomainError) as exc:
        raise argparse.ArgumentTypeError(f"expected N,SD,MEAN, got {text!r} ({exc})")


def _alpha(args):
    if args.two_sided is not None:
        return args.two_sided / 2.0
    return args.alpha


def _add_alpha(p):
    group = p.add_mutually_exclusive_group()
    group.add_argument("--alpha", type=float, default=0.025, help="one-sided significance level (default 0.025)")
    group.add_argument(
        "--two-sided",
        type=float,
        metavar="ALPHA2",
        help="two-sided level, halved to a one-sided alpha (0.05 -> 0.025)",
    )


# ---------------------------------------------------------------- commands


def cmd_posterior(args):
    study = StudySummary(args.n, args.sd, args.mean)
    post = posterior_from(study)
    cl = confidence_limits(post, args.level)
    outputs = {
        "sem": post.sem,
        "beyond": [{"threshold": t, "probability": prob_true_beyond(post, t)} for t in args.beyond],
        "within": [
            {"lower": lo, "upper": hi, "probability": prob_true_within(post, RangeOfInterest(lo, hi))}
            for lo, hi in args.within
        ],
        "null": args.null,
        "p_value_one_sided": p_value_one_sided(post, args.null),
        "p_value_two_sided": p_value_two_sided(post, args.null),
        "confidence_limits": {"level": args.level, "lower": cl.lower, "upper": cl.upper},
    }
    inputs = {
        "mean": args.mean,
        "sd": args.sd,
        "n": args.n,
        "beyond": args.beyond,
        "within": [list(w) for w in args.within],
        "null": args.null,
        "level": args.level,
    }
    if args.format == "json":
        return envelope("posterior", inputs, outputs)
    if args.format == "csv":
        return _key_value_csv(outputs)
    lines = [f"{'sem':<32}{_f6(post.sem)}"]
    rows = [(f"P(true mean > {b['threshold']:g})", b["probability"]) for b in outputs["beyond"]]
    rows += [(f"P({w['lower']:g} < true mean < {w['upper']:g})", w["probability"]) for w in outputs["within"]]
    rows.append((f"one-sided P vs {args.null:g}", outputs["p_value_one_sided"]))
    rows.append((f"two-sided P vs {args.null:g}", outputs["p_value_two_sided"]))
    lines += [f"{label:<32}{_f6(value)}" for label, value in rows]
    ci_label = f"{args.level * 100:g}% confidence limits"
    lines.append(f"{ci_label:<32}{_f6(cl.lower)} .. {_f6(cl.upper)}")
    return "\n".join(lines) + "\n"


def cmd_replication(args):
    q = ReplicationQuery(args.effect, args.sd, args.n, args.k, _alpha(args))
    prob = replication_probability(q)
    inputs = {"effect": q.effect, "sd": q.sd, "n": q.n, "k": q.k, "alpha": q.alpha}
    outputs = {"sem": q.sem, "replication_probability": prob}
    if args.format == "json":
        return envelope("replication", inputs, outputs)
    if args.format == "csv":
        return _key_value_csv(outputs)
    return f"replication probability {_f6(prob)}\n"


def cmd_sample_size(args):
    plan = required_sample_size(args.effect, args.sd, _alpha(args), args.power, args.k, args.allow_low_power)
    achieved = power_consistency_check(plan)
    inputs = {"effect": plan.effect, "sd": plan.sd, "alpha": plan.alpha, "power": plan.power, "k": plan.k}
    outputs = {"raw_n": plan.raw_n, "required_n": plan.required_n, "achieved_probability": achieved}
    if args.format == "json":
        return envelope("sample-size", inputs, outputs)
    if args.format == "csv":
        return _key_value_csv(outputs)
    return (
        f"raw n          {plan.raw_n:.2f}\n"
        f"required n     {plan.required_n}\n"
        f"achieved prob  {_f6(achieved)}\n"
    )


_TABLE_ROWS = (
    ("No of observations", "n"),
    ("Standard deviation", "sd"),
    ("Variance", "variance_of_mean"),
    ("SEM", "sem"),
    ("Mean Difference", "mean_diff"),
    ("Upper CL", "upper_cl"),
    ("Lower CL", "lower_cl"),
    ("P value", "p_value"),
    ("Prob of replication", "replication_probability"),
    ("k", "k"),
)


def cmd_combine(args):
    report = combination_report(
        args.prior,
        args.study,
        alpha=_alpha(args),
        k_prior=args.k_prior,
        k_other=args.k_other,
        level=args.level,
        mode=args.mode,
        paper_swap=args.paper_swap,
    )
    inputs = {
        "prior": vars(args.prior),
        "study": vars(args.study),
        "alpha": report.alpha,
        "k_prior": args.k_prior,
        "k_other": args.k_other,
        "level": args.level,
        "mode": args.mode,
        "paper_swap": args.paper_swap,
    }
    outputs = {c.label: {f: getattr(c, f) for _, f in _TABLE_ROWS} for c in report.columns}
    if args.format == "json":
        return envelope("combine", inputs, outputs)
    if args.format == "csv":
        lines = ["row,prior,study,posterior"]
        for label, f in _TABLE_ROWS:
            lines.append(",".join([label] + [str(_jsonable(getattr(c, f))) for c in report.columns]))
        return "\n".join(lines) + "\n"

    def cell(v):
        return f"{v}" if isinstance(v, int) else f"{v:.9g}"

    lines = [f"{'':<22}{'Prior':>16}{'Study':>16}{'Posterior':>16}"]
    for label, f in _TABLE_ROWS:
        lines.append(f"{label:<22}" + "".join(f"{cell(getattr(c, f)):>16}" for c in report.columns))
    if args.paper_swap:
        lines.append("note: --paper-swap transposes the Variance and SEM rows; limits are mean +/- 1.96 x the SEM row")
    else:
        lines.append(
            f"note: limits are mean +/- z x SEM ({args.level * 100:g}%); "
            "use --paper-swap to reproduce the transposed published layout"
        )
    return "\n".join(lines) + "\n"


def _sim_csv_row(r, fmt):
    cfg = r.config
    return [
        r.seed,
        r.model,
        cfg["n"],
        fmt(cfg["effect"]),
        fmt(cfg["sd"]),
        fmt(cfg["alpha"]),
        "" if r.k is None else fmt(r.k),
        r.trials,
        fmt(r.empirical_rate),
        fmt(r.analytic_prediction),
        fmt(r.z_discrepancy),
    ]


def cmd_simulate(args, parser):
    seed = args.seed
    if seed is None:
        env = os.environ.get(SEED_ENV)
        try:
            seed = int(env) if env else 0
        except ValueError:
            parser.error(f"{SEED_ENV} must be an integer, got {env!r}")

    if args.portfolio is not None:
        effect = 2.2 if args.effect is None else args.effect
        n = 163 if args.n is None else args.n
        reports = [
            simulate_osc_portfolio(
                seed + i,
                studies=args.portfolio,
                effect=effect,
                sd=args.sd,
                n=n,
                alpha=_alpha(args),
                condition_on_original=args.condition_on_original,
            )
            for i in range(args.seeds)
        ]
        inputs = {
            "seed": seed,
            "seeds": args.seeds,
            "studies": args.portfolio,
            "effect": effect,
            "sd": args.sd,
            "n": n,
            "alpha": _alpha(args),
            "condition_on_original": args.condition_on_original,
        }
        if args.format == "json":
            return envelope("simulate", inputs, {"portfolios": [r.to_dict() for r in reports]})
        if args.format == "csv":
            return portfolio_csv(reports, fmt=sig9)
        lines = []
        for r in reports:
            pred = "n/a" if r.analytic is None else _f6(r.analytic)
            lines.append(
                f"seed {r.seed}: {r.successes}/{r.studies} replicated = {_f6(r.rate)} "
                f"(95% CI {_f6(r.ci_low)} .. {_f6(r.ci_high)}), analytic {pred}"
            )
        if len(reports) > 1:
            mean_rate = sum(r.rate for r in reports) / len(reports)
            lines.append(f"mean rate over {len(reports)} seeds {_f6(mean_rate)}")
        return "\n".join(lines) + "\n"

    if args.effect is None:
        parser.error("simulate: --effect is required unless --portfolio is given")
    cfg = SimConfig(
        seed=seed,
        model=args.model,
        trials=args.trials,
        effect=args.effect,
        sd=args.sd,
        n=100 if args.n is None else args.n,
        alpha=_alpha(args),
        threshold=args.threshold,
    )
    report = simulate(cfg, workers=args.workers)
    if args.format == "json":
        outputs = report.to_dict()
        inputs = outputs.pop("config")
        return envelope("simulate", inputs, outputs)
    if args.format == "csv":
        return ",".join(PORTFOLIO_COLUMNS) + "\n" + ",".join(str(v) for v in _sim_csv_row(report, sig9)) + "\n"
    lines = [
        f"model            {report.model} (seed {report.seed}, {report.generator})",
        f"trials           {report.trials}",
        f"empirical rate   {_f6(report.empirical_rate)} +/- {_f6(report.binomial_se)}",
        f"analytic         {_f6(report.analytic_prediction)}",
        f"z                {report.z_discrepancy:.3f}",
    ]
    if report.predictive_variance is not None:
        lines.append(f"variance         {_f6(report.predictive_variance)} (expected {_f6(report.expected_variance)})")
    return "\n".join(lines) + "\n"


def cmd_paper_repro(args):
    rows, notes = reproduce()
    ok = all(r.ok for r in rows)
    if args.format == "json":
        text = envelope("paper-repro", {}, {"rows": [r.to_dict() for r in rows], "notes": notes, "ok": ok})
    elif args.format == "csv":
        lines = ["key,quantity,printed,computed,diff,flag,target,tolerance,ok"]
        for r in rows:
            vals = [r.key, r.quantity, r.printed, r.computed, r.diff, r.flag, r.target, r.tolerance, r.ok]
            lines.append(",".join(str(_jsonable(v)) if not isinstance(v, str) else v for v in vals))
        text = "\n".join(lines) + "\n"
    else:
        head = f"{'key':<42}{'printed':>14}{'computed':>16}{'|diff|':>11}  flag  check  remark"
        lines = [f"replikit {__version__} reproduction report", head]
        for r in rows:
            lines.append(
                f"{r.key:<42}{r.printed:>14.10g}{r.computed:>16.9g}{r.diff:>11.2e}  {r.flag:<4}  "
                f"{'ok' if r.ok else 'FAIL':<5}  {r.remark}".rstrip()
            )
        lines += [f"note: {n}" for n in notes]
        lines.append(f"overall: {'ok' if ok else 'FAIL'}")
        text = "\n".join(lines) + "\n"
    return text, (0 if ok else 1)


def cmd_plot_data(args):
    markers = DEFAULT_MARKERS if not args.marker else tuple((f"M{i + 1}", x) for i, x in enumerate(args.marker))
    rows = plot_rows(args.mean, args.sd, args.n, figure=args.figure, points=args.points, k=args.k, markers=markers)
    if args.format == "json":
        inputs = {"mean": args.mean, "sd": args.sd, "n": args.n, "figure": args.figure, "points": args.points, "k": args.k}
        return envelope("plot-data", inputs, {"rows": rows})
    return rows_to_csv(rows, fmt=lambda v: repr(sig9(v)))


# ---------------------------------------------------------------- parser


def build_parser():
    parser = argparse.ArgumentParser(
        prog="replikit",
        description="Posterior probabilities, replication probabilities and k-variance sample sizes.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, default_format="text"):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--format", choices=("text", "json", "csv"), default=default_format)
        return p

    p = add("posterior", "probabilities for the true mean of one study")
    p.add_argument("--mean", type=float, required=True, help="observed mean difference (e.g. mmHg)")
    p.add_argument("--sd", type=float, default=10.0, help="SD of paired differences (default 10)")
    p.add_argument("--n", type=_count, default=100, help="number of pairs (default 100)")
    p.add_argument("--beyond", type=float, action="append", default=[], metavar="X", help="report P(true mean > X)")
    p.add_argument(
        "--within",
        type=_pair,
        action="append",
        default=[],
        metavar="LO,HI",
        help="report P(LO < true mean < HI); write --within=-1,3 for a negative bound",
    )
    p.add_argument("--null", type=float, default=0.0, help="null value for P values (default 0)")
    p.add_argument("--level", type=float, default=0.95, help="confidence level (default 0.95)")

    p = add("replication", "probability that a repeat study reaches one-sided P <= alpha")
    p.add_argument("--effect", type=float, required=True)
    p.add_argument("--sd", type=float, default=10.0)
    p.add_argument("--n", type=_count, required=True)
    p.add_argument("--k", type=float, default=2.0, help="variance multiplier (1, 2 or 3; default 2)")
    _add_alpha(p)

    p = add("sample-size", "pairs needed for a target replication probability")
    p.add_argument("--effect", type=float, required=True)
    p.add_argument("--sd", type=float, default=10.0)
    p.add_argument("--power", type=float, default=0.8)
    p.add_argument("--k", type=float, default=1.0, help="variance multiplier (default 1, classical power)")
    p.add_argument("--allow-low-power", action="store_true", help="accept power targets <= 0.5")
    _add_alpha(p)

    p = add("combine", "prior / study / posterior table")
    p.add_argument("--prior", type=_summary, required=True, metavar="N,SD,MEAN")
    p.add_argument("--study", type=_summary, required=True, metavar="N,SD,MEAN")
    p.add_argument("--k-prior", type=float, default=3.0)
    p.add_argument("--k-other", type=float, default=2.0)
    p.add_argument("--level", type=float, default=0.95)
    p.add_argument("--mode", choices=COMBINE_MODES, default="n-weighted")
    p.add_argument(
        "--paper-swap",
        action="store_true",
        help="transpose the Variance and SEM rows and build limits from the transposed SEM row",
    )
    _add_alpha(p)

    p = add("simulate", "Monte Carlo check of an analytic probability")
    p.add_argument("--model", choices=tuple(MODELS), default="posterior-predictive")
    p.add_argument("--effect", type=float, default=None)
    p.add_argument("--sd", type=float, default=10.0)
    p.add_argument("--n", type=_count, default=None)
    p.add_argument("--threshold", type=float, default=0.0, help="cut-off for the individuals model")
    p.add_argument("--trials", type=_count, default=1_000_000)
    p.add_argument("--seed", type=_count, default=None, help=f"RNG seed (default ${SEED_ENV}, else 0)")
    p.add_argument("--workers", type=_count, default=1)
    p.add_argument("--portfolio", type=_count, default=None, metavar="STUDIES", help="simulate a portfolio of studies")
    p.add_argument("--seeds", type=_count, default=1, help="portfolio sweep over this many consecutive seeds")
    p.add_argument("--condition-on-original", action="store_true", help="portfolio: keep only significant originals")
    _add_alpha(p)

    add("paper-repro", "recompute every worked number and compare with the published value")

    p = add("plot-data", "density curves as CSV", default_format="csv")
    p.add_argument("--figure", type=int, choices=(1, 2), default=1)
    p.add_argument("--mean", "--effect", dest="mean", type=float, default=2.0)
    p.add_argument("--sd", type=float, default=10.0)
    p.add_argument("--n", type=_count, default=100)
    p.add_argument("--points", type=_count, default=801)
    p.add_argument("--k", type=float, default=2.0, help="widening of the predictive curve (figure 2)")
    p.add_argument("--marker", type=float, action="append", default=[], help="marker position (repeatable)")
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        code = 0
        if args.command == "posterior":
            text = cmd_posterior(args)
        elif args.command == "replication":
            text = cmd_replication(args)
        elif args.command == "sample-size":
            text = cmd_sample_size(args)
        elif args.command == "combine":
            text = cmd_combine(args)
        elif args.command == "simulate":
            text = cmd_simulate(args, parser)
        elif args.command == "paper-repro":
            text, code = cmd_paper_repro(args)
        else:
            if args.points < 2:
                parser.error("--points must be at least 2")
            text = cmd_plot_data(args)
    except SystemExit as exc:
        return exc.code
    except DomainError as exc:
        print(f"replikit: error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
