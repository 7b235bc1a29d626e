"""Bounded-distance unique decoding and list decoding for GRS codes.

Both decoders first strip the column multipliers, so internally they work
on the plain RS code with the same evaluation points.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Sequence

from . import kernels
from .code import GrsCode
from .gf import FieldSpec
from .poly import Poly, interpolate_coeffs, pdivmod, peval, trim

__all__ = [
    "DecodeConfig",
    "tau_gs",
    "gs_parameters",
    "gs_max_radius",
    "bw_unique_decode",
    "gs_list_decode",
    "strip_multipliers",
]

MAX_MULTIPLICITY = 20


def tau_gs(n: int, k: int) -> int:
    """Largest radius the list decoder reaches: n - 1 - floor(sqrt((k-1) n))."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    return n - 1 - isqrt((k - 1) * n)


@dataclass(frozen=True)
class DecodeConfig:
    """Decoder knobs.

    ``multiplicity`` pins s for list decoding (None picks the smallest that
    works); ``max_multiplicity`` bounds the search; ``max_list`` truncates the
    returned list in canonical order.  ``radius`` overrides the per-puncture
    default used by the covering algorithm.
    """

    radius: int | None = None
    multiplicity: int | None = None
    max_multiplicity: int = MAX_MULTIPLICITY
    max_list: int | None = None
    raw_bw: bool = False
    backend: str | None = None

    def __post_init__(self):
        if self.radius is not None and self.radius < 0:
            raise ValueError("radius must be nonnegative")
        if self.multiplicity is not None and self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")
        if self.max_multiplicity < 1:
            raise ValueError("max_multiplicity must be positive")
        if self.max_list is not None and self.max_list < 1:
            raise ValueError("max_list must be positive")


def _num_monomials(k: int, D: int) -> int:
    return sum(D - (k - 1) * b + 1 for b in range(D // (k - 1) + 1))


@lru_cache(maxsize=None)
def _min_degree(n: int, k: int, s: int) -> int:
    """Smallest weighted degree D with more monomials than interpolation constraints."""
    constraints = n * s * (s + 1) // 2
    D = 0
    while _num_monomials(k, D) <= constraints:
        D += 1
    return D


def gs_parameters(n: int, k: int, tau: int, multiplicity: int | None = None,
                  max_multiplicity: int = MAX_MULTIPLICITY) -> tuple[int, int]:
    """(s, D) for list decoding radius tau; requires 2 <= k.

    A codeword agreeing with y in n - tau places is a Y-root of Q as soon as
    (n - tau) s > D, so we take the first s meeting that.
    """
    if k < 2:
        raise ValueError("interpolation parameters need k >= 2")
    if not 0 <= tau <= tau_gs(n, k):
        raise ValueError(f"radius {tau} outside [0, tau_GS={tau_gs(n, k)}]")
    choices = [multiplicity] if multiplicity is not None else range(1, max_multiplicity + 1)
    for s in choices:
        D = _min_degree(n, k, s)
        if (n - tau) * s > D:
            return s, D
    raise ValueError(f"no multiplicity <= {max_multiplicity} reaches radius {tau} "
                     f"for n={n}, k={k}")


@lru_cache(maxsize=None)
def gs_max_radius(n: int, k: int, max_multiplicity: int = MAX_MULTIPLICITY) -> int:
    """Largest radius reachable with multiplicity at most ``max_multiplicity``."""
    if k == 1:
        return n - 1
    best = -1
    for s in range(1, max_multiplicity + 1):
        D = _min_degree(n, k, s)
        best = max(best, n - D // s - 1)
    return min(best, tau_gs(n, k))


def strip_multipliers(code: GrsCode, y: Sequence[int]) -> list[int]:
    if len(y) != code.n:
        raise ValueError(f"received word has length {len(y)}, expected {code.n}")
    F = code.field
    y = [F.check(v) for v in y]
    if code.is_rs:
        return y
    return [F.div(a, v) for a, v in zip(y, code.multipliers)]


def _distance(F: FieldSpec, xs, z, f) -> int:
    return sum(peval(F, f, x) != zi for x, zi in zip(xs, z))


def _padded(c: Sequence[int], k: int) -> tuple[int, ...]:
    return tuple(c) + (0,) * (k - len(c))


# -- unique decoding -----------------------------------------------------------

def _bw(F: FieldSpec, xs, z, k: int, tau: int, raw: bool, backend=None) -> tuple[int, ...] | None:
    if tau == 0:
        # nothing to correct: the word is a codeword or it is not
        g, r = _split(F, tuple(xs), k, z)
        return None if any(r) else g
    # homogeneous key equation N(x_i) = z_i E(x_i), deg E <= tau, deg N < tau + k
    rows = []
    for x, zi in zip(xs, z):
        nz = F.neg(zi)
        pw = [F.pow(x, j) for j in range(tau + k)]
        rows.append([F.mul(nz, pw[j]) for j in range(tau + 1)] + pw)
    v = kernels.nullspace_vector(rows, F, backend)
    if v is None:
        return None
    v = v.tolist()
    E = trim(v[: tau + 1])
    N = trim(v[tau + 1:])
    if not E:
        return None
    f, rem = pdivmod(F, N, E)
    if len(f) > k:
        return None
    if not raw and (rem or _distance(F, xs, z, f) > tau):
        return None
    return _padded(f, k)


def bw_unique_decode(code: GrsCode, y: Sequence[int], tau: int, raw: bool = False,
                     backend: str | None = None) -> Poly | None:
    """Message within distance tau of y, or None.

    The default is bounded-distance: the key-equation solution is accepted
    only if E divides N and the result is really within tau.  ``raw=True``
    returns the quotient N div E unchecked, as a textbook implementation
    without verification would.
    """
    n, k = code.n, code.k
    if not 0 <= tau <= (n - k) // 2:
        raise ValueError(f"unique decoding radius must be in [0, {(n - k) // 2}], got {tau}")
    z = strip_multipliers(code, y)
    f = _bw(code.field, list(code.eval_points), z, k, tau, raw, backend)
    return None if f is None else Poly(code.field, f)


# -- list decoding ---------------------------------------------------------------

@lru_cache(maxsize=1 << 14)
def _gs_core(F: FieldSpec, xs: tuple[int, ...], k: int, tau: int, z: tuple[int, ...],
             multiplicity: int | None, max_multiplicity: int,
             backend: str | None) -> tuple[tuple[int, ...], ...]:
    n = len(xs)
    if k == 1:
        # constants: count agreements directly
        out = []
        for c in F.elements():
            if sum(zi != c for zi in z) <= tau:
                out.append((c,))
        return tuple(out)
    s, D = gs_parameters(n, k, tau, multiplicity, max_multiplicity)
    Q = kernels.gs_interpolate(xs, z, s, k, D, F, backend)
    if Q is None:  # pragma: no cover - more unknowns than constraints
        raise RuntimeError("interpolation system has only the trivial solution")
    cands = kernels.rr_roots(Q, k, F, backend)
    return tuple(f for f in cands if _distance(F, xs, z, f) <= tau)


@lru_cache(maxsize=256)
def _lagrange(F: FieldSpec, xs: tuple[int, ...], k: int):
    """Coefficients of the Lagrange basis on xs[:k] and its values on all of xs."""
    basis = []
    for i in range(k):
        unit = [0] * k
        unit[i] = 1
        basis.append(_padded(trim(interpolate_coeffs(F, xs[:k], unit)), k))
    values = [[peval(F, b, x) for x in xs] for b in basis]
    return basis, values


def _split(F: FieldSpec, xs: tuple[int, ...], k: int, z) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(g, r) with z = C(g) + r and r zero on the first k points."""
    basis, values = _lagrange(F, xs, k)
    head = z[:k]
    if F.m == 1:
        p = F.p
        g = tuple(sum(c * b[j] for c, b in zip(head, basis)) % p for j in range(k))
        r = tuple((zj - sum(c * v[j] for c, v in zip(head, values))) % p
                  for j, zj in enumerate(z))
        return g, r
    g = [0] * k
    cz = list(z)
    for c, b, v in zip(head, basis, values):
        if c:
            for j in range(k):
                g[j] = F.add(g[j], F.mul(c, b[j]))
            for j in range(len(cz)):
                cz[j] = F.sub(cz[j], F.mul(c, v[j]))
    return tuple(g), tuple(cz)


def _gs_list(F: FieldSpec, xs: tuple[int, ...], k: int, z, tau: int,
             config: DecodeConfig) -> list[tuple[int, ...]]:
    """Sorted messages within tau of the stripped word z.

    The ball around z is the ball around z - C(g) shifted by g, for any g of
    degree < k.  With g interpolating z on the first k points the shifted word
    vanishes there, so the interpolation work is shared across each coset.
    """
    g, r = _split(F, xs, k, z)
    if tau == 0:
        return [g] if not any(r) else []
    base = _gs_core(F, xs, k, tau, r, config.multiplicity, config.max_multiplicity,
                    config.backend)
    out = sorted(tuple(F.add(a, b) for a, b in zip(f, g)) for f in base)
    if config.max_list is not None:
        out = out[: config.max_list]
    return out


def gs_list_decode(code: GrsCode, y: Sequence[int], tau: int,
                   config: DecodeConfig | None = None) -> list[Poly]:
    """All messages f with d_H(y, C(f)) <= tau, in canonical order.

    Interpolation with multiplicities, Roth-Ruckenstein root extraction, then
    a distance filter.  Raises ValueError for tau above the list decoding
    radius or when no allowed multiplicity reaches tau.
    """
    config = config or DecodeConfig()
    n, k = code.n, code.k
    if not 0 <= tau <= tau_gs(n, k):
        raise ValueError(f"list decoding radius must be in [0, {tau_gs(n, k)}], got {tau}")
    z = strip_multipliers(code, y)
    return [Poly(code.field, f) for f in _gs_list(code.field, code.eval_points, k, z, tau, config)]


def clear_cache() -> None:
    _gs_core.cache_clear()
    _lagrange.cache_clear()
