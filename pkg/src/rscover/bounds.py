"""Closed-form bounds and averages.

Exact integer/rational arithmetic is used wherever terms cancel badly; the
gamma-function ratios go through mpmath.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import mpmath

from .code import weight_distribution
from .decoder import tau_gs

__all__ = [
    "BoundReport",
    "hamming_ball_volume",
    "random_hamming_bound",
    "random_chordal_bound",
    "avg_punctures_unique",
    "avg_punctures_list_bounds",
    "intersection_distribution",
    "coverage_fraction_lower_bound",
    "tau_max_search",
    "crs_upper_bound",
    "crs_min_snr",
    "SNR_MODES",
]

# above this size the chordal bound switches to the asymptotic gamma ratio
HUGE_M = 1e12


@dataclass(frozen=True)
class BoundReport:
    name: str
    values: dict
    valid: bool = True
    reason: str = ""
    params: dict = field(default_factory=dict)

    @property
    def value(self):
        return self.values.get("value", self.values.get("min"))

    def to_dict(self) -> dict:
        return {"name": self.name, "values": dict(self.values), "valid": self.valid,
                "reason": self.reason, "params": dict(self.params)}


def _check_mds(q: int, n: int, k: int) -> None:
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if q < 2:
        raise ValueError("q must be at least 2")


def hamming_ball_volume(tau, n: int, q: int) -> int:
    """Points within distance floor(tau) of a fixed word of length n over q symbols."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    t = math.floor(tau)
    if t < 0:
        return 0
    return sum(comb(n, i) * (q - 1) ** i for i in range(min(t, n) + 1))


# -- random coding ---------------------------------------------------------------

def random_hamming_bound(q: int, n: int, M, exact: bool = False):
    """Expected average covering radius of M independent uniform codewords in GF(q)^n.

    With V_j the normalized ball volume and
    A_{i,j} = ((1 - V_j)^i - (1 - V_{j-1})^i) / i the value is
    M (M - 1) sum_j [ j (A_{M,j} - A_{M-1,j}) + A_{M-1,j} sum_{t<j} V_t ].
    The power differences are formed as (1 - V_{j-1})^i expm1(i log((1 - V_j) / (1 - V_{j-1})))
    at a working precision that grows with the number of digits of M, so
    nothing cancels catastrophically.  ``exact=True`` returns a Fraction
    (integer M only).
    """
    if n < 1:
        raise ValueError("n must be positive")
    if q < 2:
        raise ValueError("q must be at least 2")
    if M < 2:
        raise ValueError("random-coding formula needs M >= 2")
    total = q**n
    vols = [hamming_ball_volume(j, n, q) for j in range(n + 1)]
    if exact:
        if int(M) != M:
            raise ValueError("exact mode needs an integer M")
        M = int(M)
        V = [Fraction(v, total) for v in vols]
        acc = Fraction(0)
        prefix = Fraction(0)
        for j in range(1, n + 1):
            prefix += V[j - 1]
            a_m = ((1 - V[j]) ** M - (1 - V[j - 1]) ** M) / M
            a_m1 = ((1 - V[j]) ** (M - 1) - (1 - V[j - 1]) ** (M - 1)) / (M - 1)
            acc += j * (a_m - a_m1) + a_m1 * prefix
        return M * (M - 1) * acc
    digits = len(str(int(M))) if M < 1e300 else 300
    with mpmath.workdps(30 + 2 * digits):
        Mm = mpmath.mpf(M)
        V = [mpmath.mpf(v) / total for v in vols]
        L = [mpmath.log1p(-v) if v < 1 else None for v in V]

        def A(i, j):
            lo = (i * L[j - 1]) if L[j - 1] is not None else None
            if L[j] is None:
                return -mpmath.exp(lo) / i
            return mpmath.exp(lo) * mpmath.expm1(i * (L[j] - L[j - 1])) / i

        acc = mpmath.mpf(0)
        prefix = mpmath.mpf(0)
        for j in range(1, n + 1):
            prefix += V[j - 1]
            a_m = A(Mm, j)
            a_m1 = A(Mm - 1, j)
            acc += j * (a_m - a_m1) + a_m1 * prefix
        return float(Mm * (Mm - 1) * acc)


def _log_gamma_ratio(log_m, eps, M=None):
    """log(Gamma(M + 1) / Gamma(M + 1 + eps)) for huge M, clamped to Wendel's sandwich."""
    # Gamma(M+1)/Gamma(M+1+eps) = M^-eps (1 - eps (1 + eps) / (2 M) + O(M^-2))
    inv_m = mpmath.exp(-log_m)
    approx = -eps * log_m + mpmath.log1p(-eps * (1 + eps) / 2 * inv_m)
    upper = -eps * log_m
    lower = upper - mpmath.log1p(eps * inv_m)
    return min(max(approx, lower), upper)


def random_chordal_bound(n: int, M=None, log_M=None, method: str = "auto") -> float:
    """Expected average chordal covering radius of M random lines in C^n.

    Equals Gamma(a - 1) Gamma(M + 1) / Gamma(M + a - 1), a = 2 + 1/(2(n - 1)).
    Give either M or its natural log ``log_M``.  ``method`` is "direct"
    (log-gamma), "asymptotic" (large-M expansion of the gamma ratio) or
    "auto" (asymptotic once M exceeds 1e12).
    """
    if n < 2:
        raise ValueError("chordal bound needs n >= 2")
    if (M is None) == (log_M is None):
        raise ValueError("give exactly one of M and log_M")
    if method not in ("auto", "direct", "asymptotic"):
        raise ValueError(f"unknown method {method!r}")
    with mpmath.workdps(40):
        if M is not None:
            if M < 2:
                raise ValueError("random-coding formula needs M >= 2")
            Mm = mpmath.mpf(M)
            lm = mpmath.log(Mm)
        else:
            lm = mpmath.mpf(log_M)
            if lm < math.log(2):
                raise ValueError("random-coding formula needs M >= 2")
            Mm = None
        eps = mpmath.mpf(1) / (2 * (n - 1))
        if method == "auto":
            method = "asymptotic" if lm > math.log(HUGE_M) else "direct"
        if method == "direct":
            if Mm is None:
                Mm = mpmath.exp(lm)
            ratio = mpmath.loggamma(Mm + 1) - mpmath.loggamma(Mm + 1 + eps)
        else:
            ratio = _log_gamma_ratio(lm, eps)
        return float(mpmath.exp(mpmath.loggamma(1 + eps) + ratio))


# -- puncture counts ---------------------------------------------------------------

def _puncture_average(q, n, k, radii, caps, exact):
    d = n - k + 1
    one = Fraction(1) if exact else 1.0
    s = 0 * one
    for i in range(d - 1):
        term = q**i * hamming_ball_volume(radii[i], n - i, q)
        s += Fraction(term, caps[i]) if exact else term / caps[i]
    if exact:
        return (d - 1) - s / q ** (d - 1)
    return (d - 1) - s / float(q ** (d - 1))


def avg_punctures_unique(q: int, n: int, k: int, exact: bool = False):
    """Average puncture count of puncture-and-decode with a bounded-distance unique decoder.

    (d - 1) - q^-(d-1) sum_{i=0}^{d-2} q^i Vol_q(floor((n - k - i)/2), n - i),
    averaged over all inputs.
    """
    _check_mds(q, n, k)
    if k >= n:
        raise ValueError("need k < n")
    d = n - k + 1
    radii = [(n - k - i) // 2 for i in range(d - 1)]
    return _puncture_average(q, n, k, radii, [1] * (d - 1), exact)


def avg_punctures_list_bounds(q: int, n: int, k: int, radii=None, caps=None,
                              exact: bool = False) -> tuple:
    """(lower, upper) on the average puncture count with a list decoder.

    ``radii[i]`` is the decoding radius and ``caps[i]`` the list size bound
    after i punctures (i = 0 .. d-2).  Defaults: the maximal list decoding
    radius and list size n - i.
    """
    _check_mds(q, n, k)
    if k >= n:
        raise ValueError("need k < n")
    d = n - k + 1
    if radii is None:
        radii = [tau_gs(n - i, k) for i in range(d - 1)]
    if caps is None:
        caps = [n - i for i in range(d - 1)]
    radii, caps = list(radii), list(caps)
    if len(radii) != d - 1 or len(caps) != d - 1:
        raise ValueError(f"need {d - 1} radii and list caps, got {len(radii)} and {len(caps)}")
    if any(c < 1 for c in caps):
        raise ValueError("list caps must be positive")
    lower = _puncture_average(q, n, k, radii, [1] * (d - 1), exact)
    upper = _puncture_average(q, n, k, radii, caps, exact)
    return lower, upper


# -- coverage ------------------------------------------------------------------------

def intersection_distribution(q: int, n: int, w: int, tau: int) -> int:
    """|B(c1, tau) & B(c2, tau)| for two words at Hamming distance w (exact).

    z counts agreements with both words off their difference support, u and
    v the agreements with c1 and c2 on it.
    """
    if not 0 <= w <= n:
        raise ValueError("w must lie in [0, n]")
    total = 0
    for z in range(n - w + 1):
        outside = comb(n - w, z) * (q - 1) ** (n - w - z)
        lo = max(0, n - tau - z)
        inner = 0
        for u in range(lo, w + 1):
            for v in range(lo, w - u + 1):
                inner += comb(w, u) * comb(w - u, v) * (q - 2) ** (w - u - v)
        total += outside * inner
    return total


def coverage_fraction_lower_bound(q: int, n: int, k: int, tau: int, exact: bool = False):
    """Second-order inclusion-exclusion lower bound on the fraction of GF(q)^n
    within distance tau of an [n, k] MDS code.  May be negative or exceed 1;
    callers clamp if they need a probability.
    """
    _check_mds(q, n, k)
    if not 0 <= tau <= n:
        raise ValueError("tau must lie in [0, n]")
    d = n - k + 1
    pair = 0
    for w in range(d, min(2 * tau, n) + 1):
        pair += weight_distribution(n, k, q, w) * intersection_distribution(q, n, w, tau)
    val = Fraction(2 * hamming_ball_volume(tau, n, q) - pair, 2 * q ** (d - 1))
    return val if exact else float(val)


def tau_max_search(q: int, n: int, k: int) -> int:
    """Radius strictly between d/2 and d with the largest coverage lower bound (smallest on ties)."""
    _check_mds(q, n, k)
    d = n - k + 1
    taus = range(d // 2 + 1, d)
    if not taus:
        raise ValueError(f"no radius strictly between d/2 and d for d={d}")
    vals = [coverage_fraction_lower_bound(q, n, k, t, exact=True) for t in taus]
    best = max(vals)
    return taus[vals.index(best)]


# -- CRS bounds ------------------------------------------------------------------------

def _c_of(p: int) -> float:
    cosv = math.cos(2 * math.pi / p)
    if cosv <= 0:
        raise ValueError(f"sqrt(cos(2 pi / p)) is undefined for p={p}; need p >= 5")
    return math.sqrt(cosv)


def crs_upper_bound(p: int, n: int, k: int, mu: float, sigma: float) -> BoundReport:
    """Upper bound on the average chordal covering radius of an [n, k] CRS code over GF(p)
    for inputs with i.i.d. amplitudes of mean mu and std sigma, independent of phases.

    Reports both terms of the bound and their minimum.  The report is marked
    invalid when R = k/n misses the rate condition
    R >= 1/(c+1) + (1-c) sigma^2 / (2 (1+c) n mu^2), c = sqrt(cos(2 pi / p)).
    """
    if p < 2 or any(p % f == 0 for f in range(2, math.isqrt(p) + 1)):
        raise ValueError(f"p={p} is not prime")
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if mu <= 0:
        raise ValueError("mean amplitude mu must be positive")
    if sigma < 0:
        raise ValueError("sigma must be nonnegative")
    c = _c_of(p)
    R = k / n
    mu2, s2 = mu * mu, sigma * sigma
    g = c * R + R - 1
    params = {"p": p, "n": n, "k": k, "mu": mu, "sigma": sigma, "R": R, "c": c}

    def root(x):
        return math.sqrt(x) if 0 <= x else math.nan

    gooty = root(1 - g * g * mu2 / (mu2 + s2))
    improved = root(1 - g / c * (g * g * mu2 + (c * c * R - R + 1) * s2 / n) / (mu2 + s2))
    finite = [v for v in (gooty, improved) if not math.isnan(v)]
    vals = {"gooty": gooty, "improved": improved, "min": min(finite) if finite else math.nan}
    need = 1 / (c + 1) + (1 - c) * s2 / (2 * (1 + c) * n * mu2)
    if R < need:
        return BoundReport("crs-upper", vals, False,
                           f"rate condition R >= {need:.17g} fails (R = {R:.17g})", params)
    if not finite:
        return BoundReport("crs-upper", vals, False, "both terms have negative radicands", params)
    return BoundReport("crs-upper", vals, True, "", params)


SNR_MODES = ("finite-n", "asymptotic", "rate-to-1")


def crs_min_snr(p: int, n: int | None = None, R: float | None = None,
                mode: str = "finite-n") -> float:
    """Amplitude SNR above which CRS codes beat the random-coding chordal average.

    finite-n: threshold on mu^2 / (mu^2 + sigma^2) for length n and rate R;
    asymptotic: threshold on mu^2 / sigma^2 for large n;
    rate-to-1: the R -> 1 limit p - 1 + 2 pi^2.
    """
    if mode not in SNR_MODES:
        raise ValueError(f"mode must be one of {SNR_MODES}, got {mode!r}")
    if p < 2 or any(p % f == 0 for f in range(2, math.isqrt(p) + 1)):
        raise ValueError(f"p={p} is not prime")
    if mode == "rate-to-1":
        return p - 1 + 2 * math.pi**2
    if R is None or not 0 < R <= 1:
        raise ValueError("rate R must lie in (0, 1]")
    c = _c_of(p)
    g = c * R + R - 1
    if g <= 0:
        raise ValueError(f"need c R + R - 1 > 0 (R > 1/(c+1) = {1 / (c + 1):.6g})")
    if mode == "asymptotic":
        t = 1 - p ** (-R)
        need = (1 + math.sqrt(t)) / (c + 1)
        if not R > need:
            raise ValueError(f"need R > (1 + sqrt(1 - p^-R)) / (c + 1) = {need:.17g}")
        return t / (g * g - t)
    if n is None or n < 2:
        raise ValueError("finite-n mode needs n >= 2")
    first = (1 - c) / (1 - c + 2 * n * g)
    h = 1 / (2 * (n - 1))
    log_p = math.log(p)
    num = math.exp(-R * (1 + 1 / (n - 1)) * log_p + 2 * math.lgamma(1 + h))
    den = (1 + h * math.exp(-n * R * log_p)) ** 2
    second = (1 - num / den) / (g * g)
    return max(first, second)
