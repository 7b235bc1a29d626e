"""Monte Carlo harness: samplers, exhaustive nearest codeword, estimators.

Trial t draws from its own counter-based stream keyed by (master_seed, t),
so results do not depend on how trials are spread over worker processes.
"""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .code import CrsCode, GrsCode
from .cover import chordal_distance, crs_cover, grs_cover
from .decoder import DecodeConfig
from .poly import Poly

__all__ = [
    "trial_rng",
    "sample_uniform_hamming",
    "sample_complex_gaussian",
    "nearest_codeword_exhaustive",
    "TrialRecord",
    "EstimateReport",
    "estimate_avg_covering",
    "write_trial_log",
    "RAYLEIGH_SCALE",
    "EXHAUSTIVE_CAP",
]

# per-component std giving E|y_i| = 1 for a circular complex Gaussian
RAYLEIGH_SCALE = math.sqrt(2 / math.pi)
EXHAUSTIVE_CAP = 10**6
LOG_HEADER = ["trial", "distance", "punctures", "oracle_distance", "seed_offset"]


def trial_rng(master_seed: int, t: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([master_seed, t])))


def sample_uniform_hamming(q: int, n: int, rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, q, size=n, dtype=np.int64)


def sample_complex_gaussian(n: int, rng: np.random.Generator) -> np.ndarray:
    """Circular complex Gaussian with Rayleigh amplitudes of mean 1 (variance 4/pi - 1)."""
    z = rng.normal(0.0, RAYLEIGH_SCALE, size=(n, 2))
    return z[:, 0] + 1j * z[:, 1]


def nearest_codeword_exhaustive(code, y, cap: int = EXHAUSTIVE_CAP):
    """(message, distance) of the nearest codeword by full enumeration.

    Hamming distance for a GrsCode, chordal distance for a CrsCode.  Ties go to
    the first message in canonical order.  Refuses when q^k exceeds ``cap``.
    """
    if not isinstance(code, (GrsCode, CrsCode)):
        raise TypeError("expected a GrsCode or CrsCode")
    q, k = code.field.q, code.k
    work = q**k
    if work > cap:
        raise ValueError(f"exhaustive search needs q^k = {work} codewords, above the cap {cap}")
    if isinstance(code, CrsCode):
        y = np.asarray(y, dtype=complex).ravel()
        if y.shape[0] != code.n:
            raise ValueError(f"received word has length {y.shape[0]}, expected {code.n}")
        cb = code.codebook
        ip = cb.conj() @ y
        scores = ip.real**2 + ip.imag**2
        idx = int(np.argmax(scores))
        dist = chordal_distance(y, cb[idx])
    else:
        y = np.asarray([code.field.check(a) for a in y], dtype=np.int64)
        if y.shape[0] != code.n:
            raise ValueError(f"received word has length {y.shape[0]}, expected {code.n}")
        idx, dist = kernels.nearest_hamming(code.codebook, y)
    msg = Poly(code.field, code.base.message_array[idx].tolist() if isinstance(code, CrsCode)
               else code.message_array[idx].tolist())
    return msg, dist


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    distance: float
    punctures: int
    oracle_distance: float | None
    seed_offset: int

    def row(self) -> list:
        return [self.trial, self.distance, self.punctures, self.oracle_distance, self.seed_offset]


@dataclass
class EstimateReport:
    estimator: str
    mean: float
    stderr: float
    trials: int
    mean_punctures: float
    stderr_punctures: float
    params: dict = field(default_factory=dict)
    records: list = field(default_factory=list, repr=False)
    oracle_agreement: float | None = None

    def to_dict(self, with_records: bool = False) -> dict:
        d = asdict(self)
        if not with_records:
            d.pop("records")
        else:
            d["records"] = [asdict(r) for r in self.records]
        return d


def _mean_stderr(xs: Sequence[float]) -> tuple[float, float]:
    a = np.asarray(xs, dtype=float)
    if a.size == 0:
        raise ValueError("no trials")
    if a.size == 1:
        return float(a[0]), 0.0
    return float(a.mean()), float(a.std(ddof=1) / math.sqrt(a.size))


@dataclass(frozen=True)
class _Job:
    experiment: str
    algorithm: str
    code: object
    mode: str
    config: DecodeConfig
    best_of_n: int
    master_seed: int
    oracle: bool


def _run_trial(job: _Job, t: int) -> TrialRecord:
    rng = trial_rng(job.master_seed, t)
    code = job.code
    if job.experiment == "hamming":
        y = sample_uniform_hamming(code.field.q, code.n, rng).tolist()
    else:
        y = sample_complex_gaussian(code.n, rng)
    oracle = None
    if job.algorithm == "exhaustive":
        _, dist = nearest_codeword_exhaustive(code, y)
        punc = 0
        oracle = dist
    else:
        if job.experiment == "hamming":
            res = grs_cover(code, y, job.mode, job.config)
        else:
            res = crs_cover(code, y, job.mode, job.config, job.best_of_n, rng)
        dist, punc = res.distance, res.punctures
        if job.oracle:
            _, oracle = nearest_codeword_exhaustive(code, y)
    return TrialRecord(t, dist, punc, oracle, t)


def _run_chunk(job: _Job, ts: Sequence[int]) -> list[TrialRecord]:
    return [_run_trial(job, t) for t in ts]


def estimate_avg_covering(experiment: str, code, mode: str = "unique", trials: int = 500,
                          master_seed: int = 0, config: DecodeConfig | None = None,
                          best_of_n: int = 1, algorithm: str = "cover", oracle: bool = False,
                          workers: int = 1) -> EstimateReport:
    """Average distance and puncture count over ``trials`` fresh inputs.

    ``experiment`` is "hamming" (uniform inputs, GrsCode) or "chordal"
    (complex Gaussian inputs, CrsCode).  ``algorithm`` is "cover" for the
    covering algorithm or "exhaustive" for the nearest codeword.  With
    ``oracle`` the exhaustive distance is logged next to every cover result.
    Records are merged in trial order whatever the worker count.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if experiment == "hamming":
        if not isinstance(code, GrsCode):
            raise TypeError("hamming experiments need a GrsCode")
    elif experiment == "chordal":
        if not isinstance(code, CrsCode):
            raise TypeError("chordal experiments need a CrsCode")
    else:
        raise ValueError("experiment must be 'hamming' or 'chordal'")
    if algorithm not in ("cover", "exhaustive"):
        raise ValueError("algorithm must be 'cover' or 'exhaustive'")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    job = _Job(experiment, algorithm, code, mode, config or DecodeConfig(), best_of_n,
               int(master_seed), oracle)
    ts = list(range(trials))
    if workers == 1 or trials == 1:
        records = _run_chunk(job, ts)
    else:
        chunks = [ts[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_run_chunk, [job] * len(chunks), chunks))
        records = sorted((r for part in parts for r in part), key=lambda r: r.trial)
    mean, se = _mean_stderr([r.distance for r in records])
    pmean, pse = _mean_stderr([r.punctures for r in records])
    agree = None
    if oracle and algorithm == "cover":
        agree = sum(math.isclose(r.distance, r.oracle_distance, abs_tol=1e-12)
                    for r in records) / trials
    name = f"{experiment}-{algorithm}" + (f"-{mode}" if algorithm == "cover" else "")
    params = {"experiment": experiment, "algorithm": algorithm, "mode": mode,
              "trials": trials, "master_seed": int(master_seed), "best_of_n": best_of_n,
              "code": code.to_dict()}
    return EstimateReport(name, mean, se, trials, pmean, pse, params, records, agree)


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def write_trial_log(records: Sequence[TrialRecord], out=None) -> str:
    """Per-trial CSV (trial,distance,punctures,oracle_distance,seed_offset); returns the text."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(LOG_HEADER)
    for r in records:
        w.writerow([_fmt(v) for v in r.row()])
    text = buf.getvalue()
    if out is not None:
        if hasattr(out, "write"):
            out.write(text)
        else:
            with open(out, "w", newline="") as fh:
                fh.write(text)
    return text
