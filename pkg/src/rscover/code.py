"""GRS and CRS codes: encoding, puncturing, weight distribution, CRS size."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Sequence

import numpy as np

from .gf import GF, Character, FieldSpec
from .poly import Poly, peval

__all__ = [
    "GrsCode",
    "CrsCode",
    "CrsSizeReport",
    "grs_code",
    "crs_code",
    "grs_encode",
    "puncture_last",
    "weight_distribution",
    "crs_encode",
    "crs_size",
    "gfp_rank",
]


def _coeffs(f, field: FieldSpec) -> tuple[int, ...]:
    if isinstance(f, Poly):
        if f.field != field:
            raise ValueError("message polynomial over a different field")
        return f.coeffs
    return Poly(field, f).coeffs


@dataclass(frozen=True)
class GrsCode:
    """An [n, k] generalized Reed-Solomon code.

    Coordinate i of the codeword of f is ``multipliers[i] * f(eval_points[i])``.
    """

    field: FieldSpec
    n: int
    k: int
    eval_points: tuple[int, ...]
    multipliers: tuple[int, ...]

    def __post_init__(self):
        F = self.field
        if not 1 <= self.k <= self.n <= F.q:
            raise ValueError(f"need 1 <= k <= n <= q, got k={self.k}, n={self.n}, q={F.q}")
        if len(self.eval_points) != self.n or len(self.multipliers) != self.n:
            raise ValueError("need exactly n evaluation points and multipliers")
        for a in self.eval_points + self.multipliers:
            F.check(a)
        if len(set(self.eval_points)) != self.n:
            raise ValueError("evaluation points must be distinct")
        if any(v == 0 for v in self.multipliers):
            raise ValueError("column multipliers must be nonzero")

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def d(self) -> int:
        return self.n - self.k + 1

    @property
    def covering_radius(self) -> int:
        return self.d - 1

    @property
    def is_rs(self) -> bool:
        return all(v == 1 for v in self.multipliers)

    def encode(self, f) -> tuple[int, ...]:
        return grs_encode(self, f)

    def puncture_last(self) -> "GrsCode":
        return puncture_last(self)

    def punctured(self, i: int) -> "GrsCode":
        """The code punctured at its last i coordinates."""
        if not 0 <= i <= self.n - self.k:
            raise ValueError("cannot puncture below the dimension")
        return GrsCode(self.field, self.n - i, self.k, self.eval_points[: self.n - i],
                       self.multipliers[: self.n - i])

    def messages(self):
        """All messages as coefficient tuples, in canonical (lexicographic) order."""
        return itertools.product(range(self.q), repeat=self.k)

    @cached_property
    def message_array(self) -> np.ndarray:
        q, k = self.q, self.k
        idx = np.arange(q**k, dtype=np.int64)
        cols = [(idx // q ** (k - 1 - j)) % q for j in range(k)]
        return np.stack(cols, axis=1)

    @cached_property
    def codebook(self) -> np.ndarray:
        """All q^k codewords as an int array, rows in canonical message order."""
        F = self.field
        msgs = self.message_array
        if F.m == 1:
            p = F.p
            V = np.array([[pow(a, j, p) for a in self.eval_points] for j in range(self.k)],
                         dtype=np.int64)
            cb = np.zeros((msgs.shape[0], self.n), dtype=np.int64)
            for j in range(self.k):
                cb = (cb + np.outer(msgs[:, j], V[j])) % p
            return cb * np.array(self.multipliers, dtype=np.int64) % p
        return np.array([self.encode(m) for m in msgs.tolist()], dtype=np.int64)

    def to_dict(self) -> dict:
        F = self.field
        return {"q": F.q, "p": F.p, "m": F.m, "n": self.n, "k": self.k,
                "evalPoints": list(self.eval_points), "multipliers": list(self.multipliers)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "GrsCode":
        F = GF(int(d["q"]))
        if "p" in d and int(d["p"]) != F.p or "m" in d and int(d["m"]) != F.m:
            raise ValueError("inconsistent q, p, m")
        return grs_code(F, int(d["n"]), int(d["k"]), d.get("evalPoints"), d.get("multipliers"))


def grs_code(field, n: int, k: int, eval_points: Sequence[int] | None = None,
             multipliers: Sequence[int] | None = None) -> GrsCode:
    """Build a GRS code; ``field`` may be a FieldSpec or a field size q.

    Defaults: the first n nonzero elements as evaluation points and unit
    multipliers (an RS code).  Raises ValueError when n >= q and no points are
    given, since the default uses nonzero points only.
    """
    F = field if isinstance(field, FieldSpec) else GF(int(field))
    if eval_points is None:
        if n > F.q - 1:
            raise ValueError("default evaluation points need n <= q - 1; pass eval_points")
        eval_points = range(1, n + 1)
    if multipliers is None:
        multipliers = [1] * n
    return GrsCode(F, n, k, tuple(int(a) for a in eval_points), tuple(int(v) for v in multipliers))


def grs_encode(code: GrsCode, f) -> tuple[int, ...]:
    F = code.field
    c = _coeffs(f, F)
    if len(c) > code.k:
        raise ValueError(f"message degree {len(c) - 1} >= k = {code.k}")
    return tuple(F.mul(v, peval(F, c, a)) for a, v in zip(code.eval_points, code.multipliers))


def puncture_last(code: GrsCode) -> GrsCode:
    if code.n == code.k:
        raise ValueError("cannot puncture an [k, k] code")
    return code.punctured(1)


def weight_distribution(n: int, k: int, q: int, w: int) -> int:
    """Number of weight-w codewords of an [n, k] MDS code over GF(q) (exact)."""
    if not 0 <= w <= n:
        raise ValueError(f"weight {w} outside [0, {n}]")
    d = n - k + 1
    if w == 0:
        return 1
    if w < d:
        return 0
    return comb(n, w) * sum((-1) ** j * comb(w, j) * (q ** (w - d + 1 - j) - 1)
                            for j in range(w - d + 1))


@dataclass(frozen=True)
class CrsCode:
    """Character-RS code: the RS codeword of f pushed through chi coordinatewise."""

    base: GrsCode
    chi: Character

    def __post_init__(self):
        if not self.base.is_rs:
            raise ValueError("CRS base code must have unit multipliers")
        if self.chi.field != self.base.field:
            raise ValueError("character and code over different fields")
        if self.chi.trivial:
            raise ValueError("CRS codes need a non-trivial character")
        if self.base.n >= self.base.q:
            raise ValueError("CRS codes need n < q")

    @property
    def field(self) -> FieldSpec:
        return self.base.field

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def k(self) -> int:
        return self.base.k

    @property
    def beta(self) -> int:
        return self.chi.beta

    def encode(self, f) -> np.ndarray:
        return crs_encode(self, f)

    @cached_property
    def codebook(self) -> np.ndarray:
        """Complex codewords (rows) in canonical message order."""
        return self.chi.table[self.base.codebook]

    def to_dict(self) -> dict:
        d = self.base.to_dict()
        d["beta"] = self.beta
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CrsCode":
        base = GrsCode.from_dict(d)
        return cls(base, Character(base.field, int(d.get("beta", 1))))


def crs_code(field, n: int, k: int, beta: int = 1,
             eval_points: Sequence[int] | None = None) -> CrsCode:
    base = grs_code(field, n, k, eval_points)
    return CrsCode(base, Character(base.field, beta))


def crs_encode(code: CrsCode, f) -> np.ndarray:
    word = grs_encode(code.base, f)
    return code.chi.table[np.asarray(word, dtype=np.int64)]


@dataclass(frozen=True)
class CrsSizeReport:
    rank: int
    size: int
    lower_bound: float
    upper_bound: int

    def to_dict(self) -> dict:
        return {"rank": self.rank, "size": self.size, "lowerBound": self.lower_bound,
                "upperBound": self.upper_bound}


def gfp_rank(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank of an integer matrix over GF(p) by Gaussian elimination."""
    A = [list(int(x) % p for x in r) for r in rows]
    if not A:
        return 0
    ncols = len(A[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(A)) if A[r][col]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][col], p - 2, p)
        A[rank] = [x * inv % p for x in A[rank]]
        for r in range(len(A)):
            if r != rank and A[r][col]:
                c = A[r][col]
                A[r] = [(x - c * y) % p for x, y in zip(A[r], A[rank])]
        rank += 1
        if rank == len(A):
            break
    return rank


def crs_size(code: CrsCode) -> CrsSizeReport:
    """Size of a CRS code as p^rank(T), T: f -> (Tr(beta f(alpha_j)))_j over GF(p)."""
    F = code.field
    p, m, q = F.p, F.m, F.q
    n, k = code.n, code.k
    omega = p if m > 1 else 1  # element "x" of the polynomial basis
    rows = []
    for j in range(k):
        for a in range(m):
            w = F.pow(omega, a)
            rows.append([code.chi.phase(F.mul(w, F.pow(alpha, j))) for alpha in code.base.eval_points])
    r = gfp_rank(rows, p)
    return CrsSizeReport(rank=r, size=p**r, lower_bound=p**n / q ** (n - k),
                         upper_bound=min(p**n, q**k))
