"""Dense univariate polynomials over a finite field.

The list-level helpers (``padd``, ``pmul``, ...) work on plain coefficient
lists, low degree first, and are what the decoders use internally.  ``Poly``
wraps a trimmed tuple of coefficients together with its field.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .gf import FieldSpec

__all__ = ["Poly", "poly_eval", "interpolate", "peval", "padd", "psub", "pmul", "pdivmod"]


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def peval(F: FieldSpec, coeffs: Sequence[int], x: int) -> int:
    if F.m == 1:
        p = F.p
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % p
        return acc
    acc = 0
    for c in reversed(coeffs):
        acc = F.add(F.mul(acc, x), c)
    return acc


def padd(F: FieldSpec, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return trim(out)


def psub(F: FieldSpec, a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = F.sub(out[i], c)
    return trim(out)


def pscale(F: FieldSpec, a: Sequence[int], c: int) -> list[int]:
    if c == 0:
        return []
    return trim([F.mul(x, c) for x in a])


def pmul(F: FieldSpec, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] = F.add(out[i + j], F.mul(ai, bj))
    return trim(out)


def pdivmod(F: FieldSpec, a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    b = trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim(list(a))
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], r
    inv_lead = F.inv(b[-1])
    quot = [0] * (len(r) - db)
    while r and len(r) - 1 >= db:
        shift = len(r) - 1 - db
        c = F.mul(r[-1], inv_lead)
        quot[shift] = c
        for i, bi in enumerate(b):
            r[shift + i] = F.sub(r[shift + i], F.mul(c, bi))
        r[-1] = 0
        trim(r)
    return trim(quot), r


class Poly:
    """Immutable polynomial; ``coeffs[j]`` is the coefficient of X^j."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: Iterable[int] = ()):
        c = trim([field.check(x) for x in coeffs])
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def zero(cls, field: FieldSpec) -> "Poly":
        return cls(field, ())

    @classmethod
    def x(cls, field: FieldSpec) -> "Poly":
        return cls(field, (0, 1))

    @property
    def degree(self) -> float | int:
        """Index of the last nonzero coefficient; ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def is_zero(self) -> bool:
        return not self.coeffs

    def padded(self, k: int) -> tuple[int, ...]:
        """Coefficient vector of length k (requires deg < k)."""
        if len(self.coeffs) > k:
            raise ValueError("degree too large to pad")
        return self.coeffs + (0,) * (k - len(self.coeffs))

    def __call__(self, a: int) -> int:
        return peval(self.field, self.coeffs, a)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field != self.field:
                raise ValueError("polynomials over different fields")
            return other
        if isinstance(other, int):
            return Poly(self.field, (self.field.check(other),))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly(self.field, padd(self.field, self.coeffs, other.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly(self.field, psub(self.field, self.coeffs, other.coeffs))

    def __neg__(self):
        return Poly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly(self.field, pmul(self.field, self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._coerce(other)
        q, r = pdivmod(self.field, self.coeffs, other.coeffs)
        return Poly(self.field, q), Poly(self.field, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __lt__(self, other: "Poly") -> bool:
        # canonical order: by degree-padded coefficient vector, low degree first
        n = max(len(self.coeffs), len(other.coeffs))
        return self.padded(n) < other.padded(n)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)} over {self.field!r})"

    def to_list(self) -> list[int]:
        return list(self.coeffs)


def poly_eval(f: Poly, a: int) -> int:
    return f(f.field.check(a))


def interpolate(field: FieldSpec, points: Sequence[tuple[int, int]]) -> Poly:
    """Lagrange interpolation through ``points``; O(n^2) field operations."""
    if not points:
        raise ValueError("need at least one point")
    xs = [field.check(x) for x, _ in points]
    ys = [field.check(y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation x-values must be distinct")
    return Poly(field, interpolate_coeffs(field, xs, ys))


def interpolate_coeffs(F: FieldSpec, xs: Sequence[int], ys: Sequence[int]) -> list[int]:
    n = len(xs)
    # master polynomial prod (X - x_j)
    master = [1]
    for x in xs:
        master = pmul(F, master, [F.neg(x), 1])
    out: list[int] = []
    for i in range(n):
        if ys[i] == 0:
            continue
        # master / (X - x_i) by synthetic division
        num = [0] * n
        carry = 0
        for j in range(n, 0, -1):
            carry = F.add(master[j], F.mul(carry, xs[i])) if j < n else master[j]
            num[j - 1] = carry
        denom = peval(F, num, xs[i])
        out = padd(F, out, pscale(F, num, F.div(ys[i], denom)))
    return out
