"""Covering algorithms: puncture-and-decode for GRS codes and its CRS lift.

``grs_cover`` decodes the input on ever shorter punctured codes until the
decoder succeeds, then re-encodes the message in the full code.  Because a
punctured [k, k] code contains every vector, this always succeeds within
d - 1 punctures with distance at most d - 1.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .code import CrsCode, GrsCode
from .decoder import (DecodeConfig, _bw, _gs_list, _min_degree, _padded, gs_max_radius,
                      strip_multipliers, tau_gs)
from .gf import Character
from .poly import Poly, peval

__all__ = ["CoverResult", "chordal_distance", "psi_beta", "round_to_classes", "grs_cover",
           "crs_cover", "hamming_distance", "puncture_radius"]

MODES = ("unique", "list")


@dataclass(frozen=True)
class CoverResult:
    message: Poly
    codeword: tuple | np.ndarray
    distance: int | float
    punctures: int
    mode: str

    def to_dict(self) -> dict:
        cw = self.codeword
        if isinstance(cw, np.ndarray) and np.iscomplexobj(cw):
            cw = [[float(z.real), float(z.imag)] for z in cw]
        else:
            cw = [int(c) for c in cw]
        return {"message": list(self.message.coeffs), "codeword": cw,
                "distance": self.distance, "punctures": self.punctures, "mode": self.mode}


def hamming_distance(a: Sequence[int], b: Sequence[int]) -> int:
    if len(a) != len(b):
        raise ValueError("vectors of different length")
    return sum(x != y for x, y in zip(a, b))


def chordal_distance(u, v) -> float:
    """sqrt(1 - |<u, v>|^2 / (|u|^2 |v|^2)): the sine of the angle between two lines."""
    u = np.asarray(u, dtype=complex).ravel()
    v = np.asarray(v, dtype=complex).ravel()
    if u.shape != v.shape:
        raise ValueError("vectors of different length")
    nu = np.vdot(u, u).real
    nv = np.vdot(v, v).real
    if nu == 0 or nv == 0:
        raise ValueError("a line needs a nonzero representative")
    ip = np.vdot(u, v)
    c = (ip.real * ip.real + ip.imag * ip.imag) / (nu * nv)
    return math.sqrt(max(0.0, 1.0 - c))


def _phase_class(z: complex, p: int) -> int:
    ang = cmath.phase(z) % (2 * math.pi)
    return int(math.floor(p * ang / (2 * math.pi) + 0.5)) % p


def round_to_classes(y, p: int) -> np.ndarray:
    """Index r of the p-th root of unity exp(2 pi i r / p) nearest to each y_i / |y_i|."""
    y = np.asarray(y, dtype=complex)
    if np.any(y == 0):
        raise ValueError("zero coordinate has no phase")
    ang = np.mod(np.angle(y), 2 * np.pi)
    return (np.floor(p * ang / (2 * np.pi) + 0.5).astype(np.int64)) % p


def psi_beta(chi: Character, z: complex) -> frozenset:
    """Field elements a with chi(a) the p-th root of unity nearest to z's phase.

    The result has q / p elements (a single one when q = p).
    """
    if z == 0:
        raise ValueError("zero has no phase")
    return frozenset(chi.preimages[_phase_class(complex(z), chi.field.p)])


def puncture_radius(n: int, k: int, i: int, mode: str, config: DecodeConfig | None = None) -> int:
    """Decoding radius used after i punctures of an [n, k] code."""
    m = n - i
    if mode == "unique":
        tau = (n - k - i) // 2
    elif mode == "list":
        tau = tau_gs(m, k)
        if config is not None and k > 1:
            if config.multiplicity is not None:
                s = config.multiplicity
                tau = min(tau, max(0, m - _min_degree(m, k, s) // s - 1))
            else:
                tau = min(tau, gs_max_radius(m, k, config.max_multiplicity))
    else:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if config is not None and config.radius is not None:
        tau = min(tau, config.radius)
    return tau


def grs_cover(code: GrsCode, y: Sequence[int], mode: str = "unique",
              config: DecodeConfig | None = None) -> CoverResult:
    """Puncture-and-decode covering of y by ``code``.

    Tries i = 0, 1, ... punctures of the last coordinates.  Unique mode runs
    the bounded-distance decoder at radius floor((n-k-i)/2); list mode runs
    the list decoder at its maximal radius for length n - i and keeps the
    candidate closest to the punctured word (ties go to the smallest
    coefficient vector).
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    config = config or DecodeConfig()
    F, n, k = code.field, code.n, code.k
    z = strip_multipliers(code, y)
    xs = code.eval_points
    f = None
    i = 0
    for i in range(n - k + 1):
        m = n - i
        tau = puncture_radius(n, k, i, mode, config)
        zi, xi = z[:m], xs[:m]
        if mode == "unique":
            f = _bw(F, xi, zi, k, tau, config.raw_bw, config.backend)
        else:
            cands = _gs_list(F, xi, k, zi, tau, config)
            if cands:
                f = min(cands, key=lambda c: sum(peval(F, c, x) != a for x, a in zip(xi, zi)))
        if f is not None:
            break
    if f is None:  # pragma: no cover - the [k, k] code always decodes
        raise RuntimeError("covering failed after d - 1 punctures")
    msg = Poly(F, f)
    cw = code.encode(_padded(msg.coeffs, k))
    return CoverResult(msg, cw, hamming_distance(cw, [int(a) for a in y]), i, mode)


def crs_cover(code: CrsCode, y, mode: str = "unique", config: DecodeConfig | None = None,
              best_of_n: int = 1, rng: np.random.Generator | None = None) -> CoverResult:
    """Cover the line spanned by y with a CRS code.

    Each coordinate is rounded to the nearest p-th root of unity, a random
    preimage under the character is drawn (one draw per coordinate per
    attempt, even when the preimage is a single element), and the resulting
    field vector is covered by ``grs_cover``.  The best of ``best_of_n``
    attempts by chordal distance is kept; earlier attempts win ties.
    """
    if best_of_n < 1:
        raise ValueError("best_of_n must be >= 1")
    y = np.asarray(y, dtype=complex).ravel()
    if y.shape[0] != code.n:
        raise ValueError(f"received word has length {y.shape[0]}, expected {code.n}")
    if rng is None:
        rng = np.random.default_rng()
    chi = code.chi
    classes = round_to_classes(y, code.field.p)
    pre = chi.preimages
    sizes = np.array([len(pre[r]) for r in classes.tolist()], dtype=np.int64)
    best = None
    for _ in range(best_of_n):
        picks = rng.integers(0, sizes)
        v = [pre[r][j] for r, j in zip(classes.tolist(), picks.tolist())]
        res = grs_cover(code.base, v, mode, config)
        cw = chi.table[np.asarray(res.codeword, dtype=np.int64)]
        dist = chordal_distance(y, cw)
        if best is None or dist < best.distance:
            best = CoverResult(res.message, cw, dist, res.punctures, mode)
    return best
