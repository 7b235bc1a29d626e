"""Data behind the published tables and figures, as plain rows.

Each function returns a ``Table``: fixed column names, one row per plotted
point, and the parameters that produced it.  Simulated columns come from
``estimate_avg_covering`` with the given seed, so reruns are bit-identical at
any worker count.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .bounds import crs_upper_bound, random_chordal_bound, random_hamming_bound
from .code import crs_code, grs_code
from .decoder import DecodeConfig
from .gf import GF, is_prime
from .sim import estimate_avg_covering

__all__ = ["Table", "table1", "fig1", "fig2", "fig5", "fig6_property", "FIG2_FIELDS",
           "FIG2_RATES", "FIG6_PRIMES", "FIG2_MAX_MULTIPLICITY", "primes_up_to"]

FIG2_FIELDS = (5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31)
FIG2_RATES = ("1/3", "1/2", "2/3")
# full-radius list decoding at these lengths needs multiplicities in the tens
FIG2_MAX_MULTIPLICITY = 8
FIG6_PRIMES = (31, 101, 1009)
FIG6_FULL_MAX = 70571


@dataclass
class Table:
    name: str
    columns: list[str]
    rows: list[list] = field(default_factory=list)
    params: dict = field(default_factory=dict)

    def records(self) -> list[dict]:
        return [dict(zip(self.columns, r)) for r in self.rows]


def _est(experiment, code, mode, trials, seed, workers, config=None, algorithm="cover"):
    return estimate_avg_covering(experiment, code, mode, trials=trials, master_seed=seed,
                                 config=config, algorithm=algorithm, workers=workers)


def table1(q: int = 7, n: int = 6, trials: int = 500, seed: int = 0, workers: int = 1) -> Table:
    """Mean punctures before the covering algorithm succeeds, unique vs list decoding."""
    F = GF(q)
    t = Table("table1", ["k", "bw_punctures", "gs_punctures"],
              params={"q": q, "n": n, "trials": trials, "seed": seed})
    for k in range(1, n):
        code = grs_code(F, n, k)
        bw = _est("hamming", code, "unique", trials, seed, workers)
        gs = _est("hamming", code, "list", trials, seed, workers)
        t.rows.append([k, bw.mean_punctures, gs.mean_punctures])
    return t


def fig1(q: int = 7, n: int = 6, trials: int = 500, seed: int = 0, workers: int = 1,
         with_map: bool = False) -> Table:
    """Average Hamming covering radius against k: n - k, random codes, cover with BW and GS."""
    F = GF(q)
    cols = ["k", "upper_bound", "random_thm1", "alg1_bw", "alg1_gs"] + (["alg1_map"] if with_map else [])
    t = Table("fig1", cols, params={"q": q, "n": n, "trials": trials, "seed": seed,
                                    "map": with_map})
    for k in range(1, n):
        code = grs_code(F, n, k)
        row = [k, n - k, float(random_hamming_bound(q, n, q**k)),
               _est("hamming", code, "unique", trials, seed, workers).mean,
               _est("hamming", code, "list", trials, seed, workers).mean]
        if with_map:
            row.append(_est("hamming", code, "unique", trials, seed, workers,
                            algorithm="exhaustive").mean)
        t.rows.append(row)
    return t


def _rate(r) -> tuple[int, int]:
    a, b = str(r).split("/") if "/" in str(r) else (str(r), "1")
    return int(a), int(b)


def fig2(fields=FIG2_FIELDS, rates=FIG2_RATES, trials: int = 300, seed: int = 0,
         workers: int = 1, max_multiplicity: int = FIG2_MAX_MULTIPLICITY) -> Table:
    """List-mode cover of [q-1, floor((q-1) R)]_q codes: mean distance and punctures.

    The list radius at each puncture level is the largest one reachable with
    interpolation multiplicity at most ``max_multiplicity``.
    """
    config = DecodeConfig(max_multiplicity=max_multiplicity)
    t = Table("fig2", ["R", "q", "n", "k", "avg_distance", "stderr_distance",
                       "avg_punctures", "stderr_punctures"],
              params={"fields": list(fields), "rates": [str(r) for r in rates], "trials": trials,
                      "seed": seed, "max_multiplicity": max_multiplicity})
    for r in rates:
        a, b = _rate(r)
        for q in fields:
            n = q - 1
            k = n * a // b
            if k < 1:
                continue
            est = _est("hamming", grs_code(GF(q), n, k), "list", trials, seed, workers, config)
            t.rows.append([f"{a}/{b}", q, n, k, est.mean, est.stderr, est.mean_punctures,
                           est.stderr_punctures])
    return t


def fig5(p: int = 7, n: int = 6, trials: int = 500, seed: int = 0, workers: int = 1,
         mu: float = 1.0, sigma: float | None = None, best_of_n: int = 1) -> Table:
    """Average chordal covering radius of (n, k)_p CRS codes against bounds.

    ``sigma`` defaults to the std of a mean-1 Rayleigh amplitude, sqrt(4/pi - 1).
    """
    if sigma is None:
        sigma = math.sqrt(4 / math.pi - 1)
    t = Table("fig5", ["k", "random_chordal", "crs_bw", "crs_gs", "gooty_bound", "improved_bound",
                       "min_bound", "valid"],
              params={"p": p, "n": n, "trials": trials, "seed": seed, "mu": mu, "sigma": sigma,
                      "best_of_n": best_of_n})
    F = GF(p)
    for k in range(1, n):
        code = crs_code(F, n, k)
        runs = [estimate_avg_covering("chordal", code, m, trials=trials, master_seed=seed,
                                      best_of_n=best_of_n, workers=workers).mean
                for m in ("unique", "list")]
        b = crs_upper_bound(p, n, k, mu, sigma)
        t.rows.append([k, random_chordal_bound(n, p**k), runs[0], runs[1],
                       b.values["gooty"], b.values["improved"], b.values["min"], b.valid])
    return t


def primes_up_to(hi: int, lo: int = 5) -> list[int]:
    return [p for p in range(lo, hi + 1) if is_prime(p)]


def fig6_property(primes=FIG6_PRIMES) -> Table:
    """CRS upper bound vs random-coding chordal bound at n = p - 1, k = n - 1, mu = n, sigma = 1.

    The ``decreasing`` column compares each row with the previous prime.
    """
    t = Table("fig6-property", ["p", "n", "k", "crs_upper", "random_chordal", "ratio",
                                "valid", "decreasing"], params={"primes": list(primes)})
    prev = None
    for p in primes:
        if not is_prime(p) or p < 5:
            raise ValueError(f"fig6 primes must be primes >= 5, got {p}")
        n = p - 1
        k = n - 1
        b = crs_upper_bound(p, n, k, float(n), 1.0)
        rc = random_chordal_bound(n, log_M=k * math.log(p))
        up = b.values["min"]
        dec = prev is None or (up < prev[0] and rc < prev[1])
        t.rows.append([p, n, k, up, rc, up / rc, b.valid, dec])
        prev = (up, rc)
    return t
