"""Command-line front end.

    rscover bound random-hamming --q 7 --n 6 --M 16807
    rscover sim grs-cover --q 7 --n 6 --k 3 --mode list --trials 500 --seed 1
    rscover repro table1 --q 7 --n 6 --trials 500 --seed 1

Every command writes one CSV (default) or JSON document to stdout or --out.
CSV output starts with a ``# config`` line holding the full run config as
JSON; JSON output carries it under "params".  Exit status: 0 ok, 1 internal
error, 2 usage or validation error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from fractions import Fraction

from . import __version__, bounds, repro
from .code import crs_code, crs_size, grs_code, weight_distribution
from .decoder import DecodeConfig, tau_gs
from .gf import GF, is_prime
from .sim import estimate_avg_covering

COMMANDS = {
    "bound": ["random-hamming", "random-chordal", "punctures-unique", "punctures-list",
              "coverage", "tau-max", "crs-upper", "crs-min-snr"],
    "sim": ["grs-cover", "crs-cover", "exhaustive"],
    "code": ["crs-size", "weights"],
    "repro": ["table1", "fig1", "fig2", "fig5", "fig6-property"],
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _int_list(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}")


def _add_common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("parameters")
    g.add_argument("--q", type=int, help="field size")
    g.add_argument("--p", type=int, help="prime (CRS commands)")
    g.add_argument("--m", type=int, help="extension degree; q = p^m")
    g.add_argument("--n", type=int, help="code length")
    g.add_argument("--k", type=int, help="code dimension")
    g.add_argument("--M", type=int, help="codebook size")
    g.add_argument("--logM", type=float, help="natural log of the codebook size")
    g.add_argument("--R", type=float, help="rate (crs-min-snr)")
    g.add_argument("--tau", type=int, help="radius")
    g.add_argument("--w", type=int, help="weight (code weights)")
    g.add_argument("--trials", type=int, help="Monte Carlo trials (default 500; fig2 300)")
    g.add_argument("--seed", type=int, default=0, help="master seed")
    g.add_argument("--mode", help="unique|list for covering; finite-n|asymptotic|rate-to-1 for crs-min-snr")
    g.add_argument("--best-of-n", type=int, default=1, dest="best_of_n")
    g.add_argument("--mu", type=float, help="mean amplitude")
    g.add_argument("--sigma", type=float, help="amplitude standard deviation")
    g.add_argument("--max-multiplicity", type=int, dest="max_multiplicity",
                   help="cap on the list decoder's interpolation multiplicity")
    g.add_argument("--raw-bw", action="store_true", dest="raw_bw",
                   help="accept the unverified key-equation quotient in unique mode")
    g.add_argument("--fields", type=_int_list, help="fig2 field sizes, comma separated")
    g.add_argument("--primes", type=_int_list, help="fig6-property primes, comma separated")
    g.add_argument("--full-sweep", action="store_true", dest="full_sweep",
                   help=f"fig6-property over all primes 31..{repro.FIG6_FULL_MAX}")
    g.add_argument("--map", action="store_true", dest="with_map", help="fig1: add the exhaustive series")
    g.add_argument("--oracle", action="store_true", help="sim: also run the exhaustive search per trial")
    g.add_argument("--log", action="store_true", help="sim: emit the per-trial log instead of the summary")
    g.add_argument("--exact", action="store_true", help="rational arithmetic where supported")
    o = p.add_argument_group("output")
    o.add_argument("--format", choices=("csv", "json"), default="csv")
    o.add_argument("--out", help="output path (default stdout)")
    o.add_argument("--workers", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="rscover", description="Covering with Reed-Solomon and character-RS codes.")
    top.add_argument("--version", action="version", version=f"rscover {__version__}")
    groups = top.add_subparsers(dest="group", required=True, parser_class=_Parser)
    for group, names in COMMANDS.items():
        gp = groups.add_parser(group)
        sub = gp.add_subparsers(dest="command", required=True, parser_class=_Parser)
        for name in names:
            _add_common(sub.add_parser(name))
    return top


# -- validation helpers ---------------------------------------------------------

def _need(a, *names):
    missing = [f"--{n}" for n in names if getattr(a, n) is None]
    if missing:
        raise UsageError(f"{a.group} {a.command} requires {', '.join(missing)}")


def _field_q(a) -> int:
    if a.q is not None:
        q = a.q
    elif a.p is not None:
        q = a.p ** (a.m or 1)
    else:
        raise UsageError(f"{a.group} {a.command} requires --q (or --p with --m)")
    try:
        GF(q)
    except ValueError as e:
        raise UsageError(str(e))
    return q


def _mds(a, q: int) -> None:
    _need(a, "n", "k")
    if not 1 <= a.k <= a.n:
        raise UsageError(f"need 1 <= k <= n, got k={a.k}, n={a.n}")
    if a.n > q - 1:
        raise UsageError(f"need n <= q - 1 = {q - 1} for the default evaluation points, got n={a.n}")


def _prime(a) -> int:
    _need(a, "p")
    if not is_prime(a.p):
        raise UsageError(f"--p must be prime, got {a.p}")
    return a.p


def _trials(a, default: int = 500) -> int:
    t = default if a.trials is None else a.trials
    if t < 1:
        raise UsageError("--trials must be >= 1")
    return t


def _cover_mode(a) -> str:
    mode = a.mode or "unique"
    if mode not in ("unique", "list"):
        raise UsageError(f"--mode must be unique or list here, got {mode!r}")
    return mode


def _config(a) -> DecodeConfig:
    kw = {"raw_bw": a.raw_bw}
    if a.max_multiplicity is not None:
        kw["max_multiplicity"] = a.max_multiplicity
    if a.tau is not None:
        kw["radius"] = a.tau
    return DecodeConfig(**kw)


def _num(x):
    if isinstance(x, Fraction):
        return float(x)
    return x


# -- commands -------------------------------------------------------------------
# each returns (columns, rows)

def _bound(a):
    c = a.command
    if c == "random-hamming":
        q = _field_q(a)
        _need(a, "n")
        if a.M is None:
            _need(a, "k")
            M = q**a.k
        else:
            M = a.M
        if M < 2:
            raise UsageError("--M must be >= 2")
        v = bounds.random_hamming_bound(q, a.n, M, exact=a.exact)
        row = [q, a.n, M, _num(v)] + ([str(v)] if a.exact else [])
        return ["q", "n", "M", "value"] + (["exact"] if a.exact else []), [row]
    if c == "random-chordal":
        _need(a, "n")
        if a.M is None and a.logM is None:
            if a.p is None or a.k is None:
                raise UsageError("random-chordal requires --M, --logM, or --p with --k")
            logM = a.k * math.log(a.p)
            v = bounds.random_chordal_bound(a.n, log_M=logM)
        elif a.M is not None and a.logM is not None:
            raise UsageError("give only one of --M and --logM")
        elif a.M is not None:
            if a.M < 2:
                raise UsageError("--M must be >= 2")
            logM = math.log(a.M)
            v = bounds.random_chordal_bound(a.n, M=a.M)
        else:
            logM = a.logM
            v = bounds.random_chordal_bound(a.n, log_M=logM)
        return ["n", "logM", "value"], [[a.n, logM, v]]
    if c == "punctures-unique":
        q = _field_q(a)
        _mds(a, q)
        v = bounds.avg_punctures_unique(q, a.n, a.k, exact=a.exact)
        return (["q", "n", "k", "value"] + (["exact"] if a.exact else []),
                [[q, a.n, a.k, _num(v)] + ([str(v)] if a.exact else [])])
    if c == "punctures-list":
        q = _field_q(a)
        _mds(a, q)
        lo, hi = bounds.avg_punctures_list_bounds(q, a.n, a.k, exact=a.exact)
        return ["q", "n", "k", "lower", "upper"], [[q, a.n, a.k, _num(lo), _num(hi)]]
    if c == "coverage":
        q = _field_q(a)
        _mds(a, q)
        taus = [a.tau] if a.tau is not None else range(0, a.n + 1)
        rows = []
        for t in taus:
            v = bounds.coverage_fraction_lower_bound(q, a.n, a.k, t, exact=a.exact)
            rows.append([q, a.n, a.k, t, _num(v)] + ([str(v)] if a.exact else []))
        return ["q", "n", "k", "tau", "value"] + (["exact"] if a.exact else []), rows
    if c == "tau-max":
        q = _field_q(a)
        _mds(a, q)
        return (["q", "n", "k", "tau_max", "tau_gs"],
                [[q, a.n, a.k, bounds.tau_max_search(q, a.n, a.k), tau_gs(a.n, a.k)]])
    if c == "crs-upper":
        p = _prime(a)
        _need(a, "n", "k", "mu", "sigma")
        b = bounds.crs_upper_bound(p, a.n, a.k, a.mu, a.sigma)
        v = b.values
        return (["p", "n", "k", "mu", "sigma", "gooty", "improved", "min", "valid", "reason"],
                [[p, a.n, a.k, a.mu, a.sigma, v["gooty"], v["improved"], v["min"], b.valid, b.reason]])
    if c == "crs-min-snr":
        p = _prime(a)
        mode = a.mode or "finite-n"
        if mode not in bounds.SNR_MODES:
            raise UsageError(f"--mode must be one of {', '.join(bounds.SNR_MODES)}, got {mode!r}")
        R = a.R
        if R is None and a.n is not None and a.k is not None:
            R = a.k / a.n
        v = bounds.crs_min_snr(p, a.n, R, mode)
        return ["p", "n", "R", "mode", "value"], [[p, a.n, R, mode, v]]
    raise UsageError(f"unknown bound {c!r}")


def _sim(a):
    c = a.command
    trials = _trials(a)
    if c == "crs-cover":
        p = _prime(a)
        q = p ** (a.m or 1)
        _mds(a, q)
        code = crs_code(GF(q), a.n, a.k)
        rep = estimate_avg_covering("chordal", code, _cover_mode(a), trials, a.seed, _config(a),
                                    a.best_of_n, oracle=a.oracle, workers=a.workers)
    else:
        q = _field_q(a)
        _mds(a, q)
        code = grs_code(GF(q), a.n, a.k)
        algorithm = "exhaustive" if c == "exhaustive" else "cover"
        mode = "unique" if algorithm == "exhaustive" else _cover_mode(a)
        rep = estimate_avg_covering("hamming", code, mode, trials, a.seed, _config(a),
                                    algorithm=algorithm, oracle=a.oracle, workers=a.workers)
    if a.log:
        cols = ["trial", "distance", "punctures", "oracle_distance", "seed_offset"]
        return cols, [r.row() for r in rep.records]
    cols = ["estimator", "mean", "stderr", "trials", "mean_punctures", "stderr_punctures",
            "oracle_agreement"]
    return cols, [[rep.estimator, rep.mean, rep.stderr, rep.trials, rep.mean_punctures,
                   rep.stderr_punctures, rep.oracle_agreement]]


def _code(a):
    if a.command == "crs-size":
        if a.q is None and a.p is None:
            raise UsageError("code crs-size requires --q or --p")
        q = _field_q(a)
        _mds(a, q)
        r = crs_size(crs_code(GF(q), a.n, a.k))
        return (["q", "n", "k", "rank", "size", "lower_bound", "upper_bound"],
                [[q, a.n, a.k, r.rank, r.size, r.lower_bound, r.upper_bound]])
    q = _field_q(a)
    _need(a, "n", "k")
    if not 1 <= a.k <= a.n:
        raise UsageError(f"need 1 <= k <= n, got k={a.k}, n={a.n}")
    ws = [a.w] if a.w is not None else range(a.n + 1)
    return ["q", "n", "k", "w", "count"], [[q, a.n, a.k, w, weight_distribution(a.n, a.k, q, w)]
                                          for w in ws]


def _repro(a):
    c = a.command
    if a.workers < 1:
        raise UsageError("--workers must be >= 1")
    if c == "table1":
        t = repro.table1(a.q or 7, a.n or 6, _trials(a), a.seed, a.workers)
    elif c == "fig1":
        t = repro.fig1(a.q or 7, a.n or 6, _trials(a), a.seed, a.workers, a.with_map)
    elif c == "fig2":
        t = repro.fig2(a.fields or repro.FIG2_FIELDS, trials=_trials(a, 300), seed=a.seed,
                       workers=a.workers,
                       max_multiplicity=a.max_multiplicity or repro.FIG2_MAX_MULTIPLICITY)
    elif c == "fig5":
        p = a.p or 7
        if not is_prime(p):
            raise UsageError(f"--p must be prime, got {p}")
        t = repro.fig5(p, a.n or 6, _trials(a), a.seed, a.workers,
                       1.0 if a.mu is None else a.mu, a.sigma, a.best_of_n)
    else:
        if a.full_sweep:
            primes = repro.primes_up_to(repro.FIG6_FULL_MAX, 31)
        else:
            primes = a.primes or repro.FIG6_PRIMES
        t = repro.fig6_property(primes)
    return t.columns, t.rows


# -- output ---------------------------------------------------------------------

def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _jsonable(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None if math.isnan(v) else ("inf" if v > 0 else "-inf")
    return v


def run_config(a) -> dict:
    # workers never changes results, so it stays out of the echo
    d = {k: v for k, v in vars(a).items()
         if k not in ("out", "format", "group", "command", "workers")
         and v is not None and v is not False}
    return {"command": f"{a.group} {a.command}", **d}


def render(a, columns, rows) -> str:
    cfg = run_config(a)
    if a.format == "json":
        doc = {"command": cfg["command"], "params": cfg,
               "results": [{c: _jsonable(v) for c, v in zip(columns, r)} for r in rows],
               "meta": {"seed": a.seed, "version": __version__,
                        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())}}
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    buf.write("# config " + json.dumps(cfg, sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(v) for v in r])
    return buf.getvalue()


def dispatch(argv=None) -> int:
    try:
        a = build_parser().parse_args(argv)
        if a.workers < 1:
            raise UsageError("--workers must be >= 1")
        if a.best_of_n < 1:
            raise UsageError("--best-of-n must be >= 1")
        handler = {"bound": _bound, "sim": _sim, "code": _code, "repro": _repro}[a.group]
        try:
            columns, rows = handler(a)
        except (ValueError, TypeError) as e:
            raise UsageError(str(e))
        text = render(a, columns, rows)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except SystemExit as e:  # --help / --version
        return int(e.code or 0)
    except Exception as e:  # noqa: BLE001
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    try:
        if a.out:
            with open(a.out, "w", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as e:
        print(f"error: cannot write output: {e}", file=sys.stderr)
        return 1
    return 0


def main(argv=None) -> None:
    sys.exit(dispatch(argv))
