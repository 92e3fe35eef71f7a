"""Experiment runner: deterministic execution and machine-readable reports.

Exit codes: 0 success, 2 configuration error, 3 runtime/budget error.
Reports are never overwritten unless --force is passed.  JSON reports are
a single object with stable key order; CSV reports start with '#'-prefixed
metadata lines followed by an RFC-4180-style table.
"""

import argparse
import csv
import json
import math
import os
import sys

from . import __version__, splittypes, stats
from .errors import SplitstatError
from .family import FamilySpec, fiber_probability, generate
from .fppoly import FieldPolynomial
from .primes import sieve_primes

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3


class ConfigError(Exception):
    pass


def _parse_type(text, n):
    try:
        r = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise ConfigError("field r: entries must be integers, got %r" % text)
    if len(r) != n or sum((i + 1) * m for i, m in enumerate(r)) != n:
        raise ConfigError(
            "field r: %s is not a splitting type of degree %d (sum i*r_i != n)"
            % (text, n)
        )
    return r


def _parse_target(text, n):
    try:
        head, tail = text.split(":", 1)
        p = int(head)
        coeffs = [int(tok) for tok in tail.split(",")]
    except ValueError:
        raise ConfigError("field target: expected p:a_0,...,a_{n-1}, got %r" % text)
    if len(coeffs) != n:
        raise ConfigError("field target: need %d coefficients" % n)
    return p, FieldPolynomial.from_list(coeffs + [1], p)


def _family_spec(args):
    try:
        big_n = int(args.N)
    except (TypeError, ValueError):
        raise ConfigError("field N: expected a decimal integer string")
    try:
        return FamilySpec(
            n=args.n,
            height_bound=big_n,
            mode=args.mode,
            sample_size=args.sample_size,
            seed=args.seed,
            certifier_prime_budget=args.budget,
        )
    except (ValueError, SplitstatError) as exc:
        raise ConfigError("family configuration: %s" % exc)


def _regime_warning(x, big_n):
    if big_n < 16:
        return
    threshold = float(big_n) ** (1.0 / math.log(math.log(float(big_n))))
    if x > threshold:
        sys.stderr.write(
            "warning: x=%g exceeds N^(1/loglog N)=%.1f; outside the stated regime\n"
            % (x, threshold)
        )


def _write_report(args, experiment, config, results, table_header=None, rows=None):
    """Write the report file; returns the path written."""
    meta = {"experiment": experiment, "version": __version__, "workers": args.workers}
    path = args.out
    if path is None:
        raise ConfigError("field out: an output path is required")
    mode = "w"
    if os.path.exists(path) and not args.force:
        raise ConfigError("output %s exists; pass --force to overwrite" % path)
    if args.format == "json":
        document = {"meta": meta, "config": config, "results": results}
        with open(path, mode, encoding="utf-8", newline="\n") as fh:
            fh.write(json.dumps(document, sort_keys=True) + "\n")
    else:
        with open(path, mode, encoding="utf-8", newline="") as fh:
            for key in sorted(meta):
                fh.write("# %s=%s\n" % (key, meta[key]))
            for key in sorted(config):
                fh.write("# %s=%s\n" % (key, config[key]))
            writer = csv.writer(fh, lineterminator="\n")
            if table_header is None:
                writer.writerow(["key", "value"])
                for key in sorted(results):
                    writer.writerow([key, results[key]])
            else:
                writer.writerow(table_header)
                for row in rows:
                    writer.writerow(row)
    return path


def _summary(experiment, fields):
    print(
        experiment
        + " "
        + " ".join("%s=%s" % (key, value) for key, value in fields)
    )


# ---------------------------------------------------------------------------
# Experiments

def run_counts(args):
    config = {"n": args.n, "p": args.p, "pmin": args.pmin, "pmax": args.pmax}
    rows = []
    results = []
    for r in splittypes.enumerate_types(args.n):
        empirical = splittypes.empirical_second_order(r, args.pmin, args.pmax)
        row = {
            "r": ",".join(map(str, r)),
            "class_count": splittypes.class_count(args.n, r, args.p),
            "delta": str(splittypes.delta(r)),
            "paper_second_order": str(splittypes.paper_second_order(r)),
            "empirical_second_order": str(empirical),
        }
        results.append(row)
        rows.append(list(row.values()))
    path = _write_report(
        args,
        "counts",
        config,
        results,
        table_header=[
            "r",
            "class_count",
            "delta",
            "paper_second_order",
            "empirical_second_order",
        ],
        rows=rows,
    )
    _summary("counts", [("n", args.n), ("p", args.p), ("types", len(rows)), ("out", path)])
    return EXIT_OK


def run_fibers(args):
    spec = _family_spec(args)
    targets = [_parse_target(t, args.n) for t in args.target]
    empirical, reference = fiber_probability(spec, targets)
    config = _spec_config(spec)
    config["targets"] = ";".join(args.target)
    results = {
        "empirical": empirical,
        "reference": reference,
        "deviation": empirical - reference,
    }
    path = _write_report(args, "fibers", config, results)
    _summary(
        "fibers",
        [("family", spec.size), ("empirical", "%.6g" % empirical), ("out", path)],
    )
    return EXIT_OK


def _spec_config(spec):
    return {
        "n": spec.n,
        "N": str(spec.height_bound),
        "mode": spec.mode,
        "sample_size": spec.sample_size,
        "seed": spec.seed,
        "budget": spec.certifier_prime_budget,
    }


def _certified(args, spec):
    table = sieve_primes(1000)
    return stats.certify_family(
        generate(spec),
        table=table,
        budget=spec.certifier_prime_budget,
        description="P0(n=%d, N=%s, %s)" % (spec.n, spec.height_bound, spec.mode),
    )


def run_chebotarev(args):
    spec = _family_spec(args)
    r = _parse_type(args.r, args.n)
    _regime_warning(args.x, spec.height_bound)
    cf = _certified(args, spec)
    table = sieve_primes(int(args.x))
    mean, reference = stats.family_chebotarev_mean(cf, r, args.x, table)
    config = _spec_config(spec)
    config.update({"r": args.r, "x": args.x})
    results = {
        "empirical_mean": mean,
        "exact_reference": reference,
        "pi_x": stats.prime_count(args.x, table),
        "excluded": cf.excluded,
        "family_size": len(cf),
    }
    path = _write_report(args, "chebotarev", config, results)
    _summary(
        "chebotarev",
        [
            ("family", len(cf)),
            ("excluded", cf.excluded),
            ("mean", "%.6g" % mean),
            ("out", path),
        ],
    )
    return EXIT_OK


def run_moments(args):
    spec = _family_spec(args)
    r = _parse_type(args.r, args.n)
    _regime_warning(args.x, spec.height_bound)
    cf = _certified(args, spec)
    table = sieve_primes(int(args.x))
    config = _spec_config(spec)
    config.update({"r": args.r, "x": args.x, "k_max": args.k_max})
    rows = []
    results = []
    for k in range(1, args.k_max + 1):
        moment, reference = stats.family_centered_moment(
            cf, r, args.x, k, table, k_max=args.k_max
        )
        results.append({"k": k, "moment": moment, "reference": reference})
        rows.append([k, repr(moment), repr(reference)])
    path = _write_report(
        args,
        "moments",
        config,
        results,
        table_header=["k", "moment", "reference"],
        rows=rows,
    )
    _summary(
        "moments",
        [("family", len(cf)), ("excluded", cf.excluded), ("out", path)],
    )
    return EXIT_OK


def run_clt(args):
    spec = _family_spec(args)
    r = _parse_type(args.r, args.n)
    _regime_warning(args.x, spec.height_bound)
    cf = _certified(args, spec)
    table = sieve_primes(int(args.x))
    report = stats.clt_report(cf, r, args.x, table, k_max=args.k_max)
    config = _spec_config(spec)
    config.update({"r": args.r, "x": args.x, "k_max": args.k_max})
    results = report.to_json_dict()
    path = _write_report(args, "clt", config, results)
    sample_path = path + ".sample.csv"
    if os.path.exists(sample_path) and not args.force:
        raise ConfigError("output %s exists; pass --force to overwrite" % sample_path)
    with open(sample_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(report.sample_csv())
    _summary(
        "clt",
        [
            ("family", report.family_size),
            ("excluded", report.excluded),
            ("ks", "%.4f" % report.ks_distance),
            ("out", path),
        ],
    )
    return EXIT_OK


def run_ramified(args):
    spec = _family_spec(args)
    cf = _certified(args, spec)
    average, reference = stats.ramified_average(cf, args.bound)
    config = _spec_config(spec)
    config["bound"] = args.bound
    results = {
        "average": average,
        "reference": reference,
        "excluded": cf.excluded,
        "family_size": len(cf),
    }
    path = _write_report(args, "ramified", config, results)
    _summary(
        "ramified",
        [
            ("family", len(cf)),
            ("excluded", cf.excluded),
            ("avg", "%.4f" % average),
            ("out", path),
        ],
    )
    return EXIT_OK


def run_index(args):
    spec = _family_spec(args)
    cf = _certified(args, spec)
    average, reference = stats.index_prime_average(cf, args.bound)
    config = _spec_config(spec)
    config["bound"] = args.bound
    results = {
        "average": average,
        "reference": reference,
        "excluded": cf.excluded,
        "family_size": len(cf),
    }
    path = _write_report(args, "index", config, results)
    _summary(
        "index",
        [
            ("family", len(cf)),
            ("excluded", cf.excluded),
            ("avg", "%.4f" % average),
            ("out", path),
        ],
    )
    return EXIT_OK


def run_ansplit(args):
    config = {"n": args.n}
    rows = []
    results = []
    for r in splittypes.enumerate_types(args.n):
        par = splittypes.parity(r)
        splits = splittypes.splits_in_alternating(r) if par == "even" else ""
        results.append(
            {"r": ",".join(map(str, r)), "parity": par, "splits": str(splits)}
        )
        rows.append([",".join(map(str, r)), par, str(splits)])
    path = _write_report(
        args,
        "ansplit",
        config,
        results,
        table_header=["r", "parity", "splits"],
        rows=rows,
    )
    _summary("ansplit", [("n", args.n), ("types", len(rows)), ("out", path)])
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argument handling

def _load_config_file(path):
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError("%s:%d: expected key = value" % (path, lineno))
            key, value = (part.strip() for part in line.split("=", 1))
            values[key.replace("-", "_")] = value
    return values


def _add_common(sub):
    sub.add_argument("--out", help="report output path")
    sub.add_argument("--format", choices=["json", "csv"], default="json")
    sub.add_argument("--force", action="store_true", help="overwrite existing reports")
    sub.add_argument("--workers", type=int, default=1)
    sub.add_argument("--config", help="key = value configuration file")


def _add_family(sub):
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--N", dest="N", default="0", help="height bound, decimal string")
    sub.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    sub.add_argument("--sample-size", type=int, default=0)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--budget", type=int, default=25, help="certifier prime budget")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="splitstat", description="splitting-type statistics experiment runner"
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("counts", help="exact class counts per splitting type")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--p", type=int, required=True)
    sub.add_argument("--pmin", type=int, default=101)
    sub.add_argument("--pmax", type=int, default=199)
    _add_common(sub)
    sub.set_defaults(func=run_counts)

    sub = subs.add_parser("fibers", help="congruence-fiber probabilities")
    _add_family(sub)
    sub.add_argument(
        "--target",
        action="append",
        required=True,
        help="fiber as p:a_0,...,a_{n-1}; repeatable",
    )
    _add_common(sub)
    sub.set_defaults(func=run_fibers)

    for name, runner in [
        ("chebotarev", run_chebotarev),
        ("moments", run_moments),
        ("clt", run_clt),
    ]:
        sub = subs.add_parser(name)
        _add_family(sub)
        sub.add_argument("--x", type=float, required=True)
        sub.add_argument("--r", required=True, help="splitting type, comma-separated")
        sub.add_argument("--k-max", type=int, default=6)
        _add_common(sub)
        sub.set_defaults(func=runner)

    for name, runner in [("ramified", run_ramified), ("index", run_index)]:
        sub = subs.add_parser(name)
        _add_family(sub)
        sub.add_argument("--bound", type=int, required=True)
        _add_common(sub)
        sub.set_defaults(func=runner)

    sub = subs.add_parser("ansplit", help="A_n class splitting table")
    sub.add_argument("--n", type=int, required=True)
    _add_common(sub)
    sub.set_defaults(func=run_ansplit)
    return parser


def _apply_config_file(args, argv):
    """Fill in config-file values; explicit command-line flags take priority."""
    if not getattr(args, "config", None):
        return
    values = _load_config_file(args.config)
    for key, value in values.items():
        if not hasattr(args, key) or key in ("config", "func", "command"):
            raise ConfigError("config file: unknown key %r" % key)
        flag = "--" + key.replace("_", "-")
        if flag in argv:
            continue
        current = getattr(args, key)
        if isinstance(current, bool):
            setattr(args, key, value.lower() in ("1", "true", "yes"))
        elif isinstance(current, int):
            setattr(args, key, int(value))
        elif isinstance(current, float):
            setattr(args, key, float(value))
        else:
            setattr(args, key, value)


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config_file(args, argv)
        return args.func(args)
    except ConfigError as exc:
        sys.stderr.write("configuration error: %s\n" % exc)
        return EXIT_CONFIG
    except SplitstatError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
