"""Command line interface: ``supcal {calibrate,map,bf-curve,design,simulate}``.

Exit codes: 0 success, 2 usage error, 3 well-formed request without a result
(interval does not exist, level mapping undefined, width infeasible).
Human-readable numbers are rounded to two decimals; ``--json`` output keeps
full precision and follows the schemas in ``supcal/schemas``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from typing import Optional, Sequence

from . import __version__
from .bayes_factors import bf_curve
from .calibration import ci_level_to_min_support, min_support_to_ci_level
from .coverage import FixedN, OptionalStopping, SimConfig, simulate_coverage
from .design import DesignSpec, JeffreysApprox, design
from .errors import MappingUndefinedError, SupcalError
from .intervals import multiplier, support_interval
from .labels import SCHEMES, evidence_label
from .model import (
    ConfidenceInterval,
    LocalNormalPrior,
    MinFamily,
    MinSupportInterval,
    NonlocalMomentPrior,
    NormalPrior,
    SummaryData,
    SupportInterval,
    resolve_summary,
)
from .numerics import Bracket

SCHEMA_VERSION = "1.0"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NO_RESULT = 3

METHODS = ("ci", "si-normal", "si-local-normal", "si-nonlocal",
           "minsi-all", "minsi-local-normal", "minsi-eplogp")
_MIN_FAMILIES = {
    "minsi-all": MinFamily.ALL_PRIORS,
    "minsi-local-normal": MinFamily.LOCAL_NORMAL,
    "minsi-eplogp": MinFamily.EPLOGP,
}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument helpers


def _add_data_args(p):
    g = p.add_argument_group("data (estimate and se, or a confidence interval)")
    g.add_argument("--estimate", type=float, help="parameter estimate")
    g.add_argument("--se", type=float, help="standard error of the estimate")
    g.add_argument("--ci-lower", type=float, help="lower limit of a reported confidence interval")
    g.add_argument("--ci-upper", type=float, help="upper limit of a reported confidence interval")
    g.add_argument("--ci-level", type=float, default=0.95, help="level of that interval (default 0.95)")


def _add_prior_args(p):
    g = p.add_argument_group("prior under the alternative")
    g.add_argument("--prior-mean", type=float, help="mean of the normal prior")
    g.add_argument("--prior-sd", type=float, help="sd of the normal or local normal prior")
    g.add_argument("--prior-scale", type=float, help="scale of the nonlocal normal moment prior")


def _add_common(p):
    p.add_argument("--json", action="store_true", help="emit one JSON object on stdout")
    p.add_argument("--config", help="JSON job file supplying option values; flags win")


def _data(args) -> SummaryData:
    have_direct = args.estimate is not None or args.se is not None
    have_ci = args.ci_lower is not None or args.ci_upper is not None
    if have_direct and (args.estimate is None or args.se is None):
        raise UsageError("--estimate and --se must be given together")
    if have_ci and (args.ci_lower is None or args.ci_upper is None):
        raise UsageError("--ci-lower and --ci-upper must be given together")
    if not (have_direct or have_ci):
        raise UsageError("give --estimate and --se, or --ci-lower and --ci-upper")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        data = resolve_summary(args.estimate, args.se, args.ci_lower, args.ci_upper, args.ci_level)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return data


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise UsageError(f"method {args.method} requires {flags}")


def _prior(args, kind: str):
    if kind == "normal":
        _need(args, "prior_mean", "prior_sd")
        return NormalPrior(args.prior_mean, args.prior_sd)
    if kind == "local-normal":
        _need(args, "prior_sd")
        return LocalNormalPrior(args.prior_sd)
    _need(args, "prior_scale")
    return NonlocalMomentPrior(args.prior_scale)


def _method(args, level: float):
    name = args.method
    if name == "ci":
        return ConfidenceInterval(level)
    if name in _MIN_FAMILIES:
        return MinSupportInterval(level, _MIN_FAMILIES[name])
    return SupportInterval(level, _prior(args, name[len("si-"):]))


def _method_dict(method) -> dict:
    if isinstance(method, ConfidenceInterval):
        return {"type": "ci", "level": method.level}
    if isinstance(method, MinSupportInterval):
        return {"type": "minsi", "k": method.k, "family": method.family.value}
    prior = method.prior
    if isinstance(prior, NormalPrior):
        p = {"family": "normal", "mean": prior.mean, "sd": prior.sd}
    elif isinstance(prior, LocalNormalPrior):
        p = {"family": "local-normal", "sd": prior.sd}
    else:
        p = {"family": "nonlocal", "scale": prior.scale}
    return {"type": "si", "k": method.k, "prior": p}


def _fmt(x: float) -> str:
    r = round(x, 2)
    return f"{0.0 if r == 0 else r:.2f}"


def _emit(obj):
    print(json.dumps(obj, indent=2, allow_nan=False))


# ---------------------------------------------------------------------------
# subcommands


def cmd_calibrate(args) -> int:
    if args.method is None or args.level is None:
        raise UsageError("--method and --level are required")
    data = _data(args)
    method = _method(args, args.level)
    mres = multiplier(method, data)
    interval = support_interval(data, method)
    from_ci = args.ci_lower is not None and args.estimate is None

    if args.json:
        _emit({
            "schema_version": SCHEMA_VERSION,
            "estimate": data.estimate,
            "se": data.se,
            "method": args.method,
            "level": args.level,
            "prior": _method_dict(method).get("prior"),
            "input_ci": ({"lower": args.ci_lower, "upper": args.ci_upper, "level": args.ci_level}
                         if from_ci else None),
            "interval": interval.to_dict(),
            "multiplier": mres.multiplier,
            "existence_condition": mres.condition,
        })
    else:
        if from_ci:
            print(f"Point Estimate [{100 * args.ci_level:g}% CI]")
            print(f"{_fmt(data.estimate)} [{_fmt(args.ci_lower)},{_fmt(args.ci_upper)}]")
        else:
            print("Point Estimate (Standard Error)")
            print(f"{_fmt(data.estimate)} ({_fmt(data.se)})")
        print()
        print("Calibration Method")
        print(method.describe())
        print()
        title = method.title()
        if args.label and not isinstance(method, ConfidenceInterval):
            label = evidence_label(method.k, args.label)
            title += f" ({label or 'unclassified'}, {args.label})"
        print(title)
        print(interval.format(2))
        if interval.is_empty:
            print(f"existence requires {mres.condition}")
    return EXIT_NO_RESULT if interval.is_empty else EXIT_OK


def _k_fraction(k: float) -> str:
    return f"1/{round(1 / k, 1):g}" if k < 1 else f"{k:g}"


def cmd_map(args) -> int:
    if args.family is None:
        raise UsageError("--family is required")
    family = MinFamily(args.family)
    if (args.ci_level is None) == (args.k is None):
        raise UsageError("give exactly one of --ci-level or --k")
    try:
        if args.ci_level is not None:
            ci_level = args.ci_level
            k = ci_level_to_min_support(ci_level, family)
        else:
            k = args.k
            ci_level = min_support_to_ci_level(k, family)
    except MappingUndefinedError as exc:
        if args.json:
            _emit({"schema_version": SCHEMA_VERSION, "family": family.value,
                   "ci_level": args.ci_level, "k": None, "error": str(exc)})
        print(f"mapping undefined: {exc}", file=sys.stderr)
        return EXIT_NO_RESULT
    if args.json:
        _emit({"schema_version": SCHEMA_VERSION, "family": family.value,
               "ci_level": ci_level, "k": k})
    else:
        print(f"family: {family.describe()}")
        print(f"ci_level = {100 * ci_level:.2f}%")
        print(f"k = {k:.4f} ({_k_fraction(k)})")
    return EXIT_OK


def cmd_bf_curve(args) -> int:
    if args.method is None:
        raise UsageError("--method is required")
    if args.method == "ci":
        raise UsageError("confidence intervals have no Bayes factor curve")
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    data = _data(args)
    k = args.cut if args.cut is not None else (args.level if args.level is not None else 1.0)
    method = _method(args, k)
    lo = args.lo if args.lo is not None else data.estimate - 6 * data.se
    hi = args.hi if args.hi is not None else data.estimate + 6 * data.se
    try:
        rng = Bracket(lo, hi)
    except SupcalError as exc:
        raise UsageError(str(exc)) from exc
    curve = bf_curve(data, method, rng, args.points)
    in_si = [bool(b >= args.cut) for b in curve.bf01] if args.cut is not None else None

    out = open(args.out, "w", newline="\n") if args.out else sys.stdout
    try:
        if args.format == "json":
            obj = {
                "schema_version": SCHEMA_VERSION,
                "estimate": data.estimate,
                "se": data.se,
                "method": args.method,
                "cut": args.cut,
                "theta0": [float(t) for t in curve.theta0],
                "bf01": [float(b) for b in curve.bf01],
                "in_si": in_si,
            }
            out.write(json.dumps(obj, allow_nan=False) + "\n")
        else:
            out.write("theta0,bf01" + (",in_si" if in_si is not None else "") + "\n")
            for i, (t, b) in enumerate(zip(curve.theta0, curve.bf01)):
                row = f"{t:.17g},{b:.17g}"
                if in_si is not None:
                    row += f",{int(in_si[i])}"
                out.write(row + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def cmd_design(args) -> int:
    if args.k is None:
        raise UsageError("--k is required")
    if args.k <= 1:
        raise UsageError(f"design needs a support level k > 1, got {args.k:g}")
    if args.jeffreys and args.prior:
        raise UsageError("--jeffreys and --prior are mutually exclusive")
    if args.prior:
        args.method = f"prior {args.prior}"
        prior = _prior(args, args.prior)
    else:
        prior = JeffreysApprox()
    spec = DesignSpec(args.k, args.unit_var, prior, args.planning_estimate, args.width, args.exact)
    result = design(spec)
    infeasible = result.width_feasible is False

    if args.json:
        _emit({
            "schema_version": SCHEMA_VERSION,
            "k": spec.k,
            "unit_var": spec.unit_var,
            "prior": "jeffreys" if spec.is_jeffreys else args.prior,
            "width": spec.target_width,
            "n_exists": result.n_exists,
            "n_width": list(result.n_width) if result.n_width else None,
            "feasible": result.width_feasible,
            "max_width": result.max_width,
            "notes": list(result.notes),
        })
    else:
        print(f"n_exists = {result.n_exists}")
        if result.n_width:
            n1, n2 = result.n_width
            print(f"n1 = {n1}, n2 = {n2}")
        elif infeasible:
            bound = "2 lambda / (k sqrt(e))" if spec.is_jeffreys and not spec.exact else "max width"
            print(f"INFEASIBLE: width must satisfy width <= {bound} = {result.max_width:.4g}")
        for note in result.notes:
            print(f"note: {note}")
    return EXIT_NO_RESULT if infeasible else EXIT_OK


def cmd_simulate(args) -> int:
    if args.method is None or args.k is None:
        raise UsageError("--method and --k are required")
    if args.method in _MIN_FAMILIES:
        raise UsageError(
            "minimum support intervals have no coverage guarantee: their prior is chosen "
            "after seeing the data, so the universal bound does not apply"
        )
    if args.method == "ci":
        raise UsageError("simulate needs a support interval method (si-*)")
    method = _method(args, args.k)
    if args.regime == "fixed":
        if args.n is None:
            raise UsageError("--regime fixed requires --n")
        regime = FixedN(args.n)
    else:
        if args.max_looks is None:
            raise UsageError("--regime sequential requires --max-looks")
        looks = None
        if args.looks:
            looks = tuple(int(x) for x in args.looks.split(","))
        regime = OptionalStopping(args.max_looks, looks)
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("SUPCAL_SEED", "0"))
    config = SimConfig(args.true_theta, args.unit_var, method, regime, args.reps, seed)
    result = simulate_coverage(config)
    passed = result.coverage_ok() and result.bound_ok()

    if args.json:
        obj = {"schema_version": SCHEMA_VERSION, "seed": seed, "regime": args.regime,
               "method": args.method}
        obj.update(result.to_dict())
        obj["pass"] = passed
        _emit(obj)
    else:
        print(f"coverage = {result.coverage_estimate:.4f} +/- {result.mc_stderr:.4f}")
        print(f"stop_fraction = {result.stop_fraction:.4f} (bound k = {result.k:g})")
        print(f"{'PASS' if passed else 'FAIL'}: coverage >= 1 - k = {1 - result.k:.4f} "
              f"within 3 Monte Carlo standard errors")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> tuple[argparse.ArgumentParser, dict]:
    parser = argparse.ArgumentParser(
        prog="supcal",
        description="Support intervals and minimum support intervals from an estimate and standard error.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    subs = {}

    p = sub.add_parser("calibrate", help="compute a confidence, support or minimum support interval")
    _add_data_args(p)
    p.add_argument("--method", choices=METHODS)
    _add_prior_args(p)
    p.add_argument("--level", type=float, help="support level k, or 1 - alpha for --method ci")
    p.add_argument("--label", choices=SCHEMES, help="annotate k with a verbal evidence category")
    _add_common(p)
    p.set_defaults(func=cmd_calibrate)
    subs["calibrate"] = p

    p = sub.add_parser("map", help="map confidence levels to minimum support levels and back")
    p.add_argument("--family", choices=[f.value for f in MinFamily])
    p.add_argument("--ci-level", type=float)
    p.add_argument("--k", type=float)
    _add_common(p)
    p.set_defaults(func=cmd_map)
    subs["map"] = p

    p = sub.add_parser("bf-curve", help="tabulate BF01 as a function of the null value")
    _add_data_args(p)
    p.add_argument("--method", choices=METHODS)
    _add_prior_args(p)
    p.add_argument("--level", type=float, help="support level carried by the method (default 1)")
    p.add_argument("--from", dest="lo", type=float, help="first null value (default estimate - 6 se)")
    p.add_argument("--to", dest="hi", type=float, help="last null value (default estimate + 6 se)")
    p.add_argument("--points", type=int, default=401)
    p.add_argument("--cut", type=float, help="add an in_si column flagging BF01 >= cut")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--config", help="JSON job file supplying option values; flags win")
    p.set_defaults(func=cmd_bf_curve)
    subs["bf-curve"] = p

    p = sub.add_parser("design", help="sample size for a target support level")
    p.add_argument("--k", type=float, help="target support level (> 1)")
    p.add_argument("--unit-var", type=float, default=1.0, help="variance of one effective observation")
    p.add_argument("--width", type=float, help="target width of the support interval")
    p.add_argument("--jeffreys", action="store_true", help="Jeffreys's approximate Bayes factor (default)")
    p.add_argument("--prior", choices=("normal", "local-normal", "nonlocal"))
    _add_prior_args(p)
    p.add_argument("--planning-estimate", type=float,
                   help="anticipated estimate for a normal prior (default: prior mean)")
    p.add_argument("--exact", action="store_true", help="solve widths with log(1 + n) instead of log(n)")
    _add_common(p)
    p.set_defaults(func=cmd_design)
    subs["design"] = p

    p = sub.add_parser("simulate", help="Monte Carlo coverage of a k < 1 support interval")
    p.add_argument("--true-theta", type=float, default=0.0)
    p.add_argument("--unit-var", type=float, default=1.0)
    p.add_argument("--method", choices=METHODS)
    _add_prior_args(p)
    p.add_argument("--k", type=float)
    p.add_argument("--regime", choices=("fixed", "sequential"), default="fixed")
    p.add_argument("--n", type=int, help="sample size for --regime fixed")
    p.add_argument("--max-looks", type=int, help="horizon for --regime sequential")
    p.add_argument("--looks", help="comma-separated look schedule (default every observation)")
    p.add_argument("--reps", type=int, default=10_000)
    p.add_argument("--seed", type=int, help="RNG seed (default $SUPCAL_SEED or 0)")
    _add_common(p)
    p.set_defaults(func=cmd_simulate)
    subs["simulate"] = p
    return parser, subs


def _apply_config(argv: list[str], parser, subs):
    """Re-parse with a --config job file installed as subcommand defaults."""
    args = parser.parse_args(argv)
    if not args.config:
        return args
    sub = subs[args.command]
    try:
        with open(args.config) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        sub.error(f"cannot read config {args.config}: {exc}")
    if not isinstance(cfg, dict):
        sub.error("config file must hold a JSON object")
    known = {a.dest for a in sub._actions}
    defaults = {}
    for key, value in cfg.items():
        dest = {"from": "lo", "to": "hi"}.get(key, key.replace("-", "_"))
        if dest not in known or dest in ("config", "help"):
            sub.error(f"unknown config key {key!r}")
        defaults[dest] = value
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser, subs = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = _apply_config(argv, parser, subs)
    sub = subs[args.command]
    try:
        return args.func(args)
    except UsageError as exc:
        sub.print_usage(sys.stderr)
        print(f"supcal {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MappingUndefinedError as exc:
        print(f"supcal {args.command}: {exc}", file=sys.stderr)
        return EXIT_NO_RESULT
    except SupcalError as exc:
        print(f"supcal {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
