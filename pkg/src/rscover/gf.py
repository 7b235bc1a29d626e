"""Finite fields GF(p^m), the absolute trace and additive characters.

Elements are plain ints in ``range(q)``.  The base-p digits of an element are
its coefficients in the polynomial basis ``1, x, ..., x^(m-1)`` modulo the
field's defining polynomial, so ``0`` and ``1`` are the additive and
multiplicative identities and elements of the prime subfield are the ints
``0..p-1``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

__all__ = [
    "FieldSpec",
    "Character",
    "GF",
    "field_arith",
    "trace",
    "character_eval",
    "is_prime",
]

_LOG_TABLE_LIMIT = 1 << 16
_ADD_TABLE_LIMIT = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    f = 3
    while f <= r:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q = p**m``; raises ValueError if q is not a prime power."""
    if q < 2:
        raise ValueError(f"q={q} is not a prime power")
    for p in range(2, math.isqrt(q) + 1):
        if q % p == 0:
            m, r = 0, q
            while r % p == 0:
                r //= p
                m += 1
            if r != 1 or not is_prime(p):
                raise ValueError(f"q={q} is not a prime power")
            return p, m
    return q, 1


# -- polynomials over GF(p) as coefficient lists, low degree first ----------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _trim(a)
    return a


def _pmulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pmod(out, f, p)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _is_irreducible(f: list[int], p: int) -> bool:
    """Rabin-style test: f of degree m has no factor of degree <= m // 2."""
    m = len(f) - 1
    x = [0, 1]
    h = x
    for _ in range(m // 2):
        # h <- h^p mod f
        r = [1]
        base, e = h, p
        while e:
            if e & 1:
                r = _pmulmod(r, base, f, p)
            base = _pmulmod(base, base, f, p)
            e >>= 1
        h = r
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(f, diff, p)) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m over GF(p).

    Coefficients are compared from the highest non-leading one down, which is
    the same as the natural order of the base-p integer ``sum c_i p^i``.
    Returned low degree first, including the leading 1.
    """
    if m == 1:
        return (0, 1)
    for r in range(p**m):
        low = [(r // p**i) % p for i in range(m)]
        if low[0] == 0:
            continue
        f = low + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FieldSpec:
    """The field GF(p^m) with int-encoded elements.

    Instances are effectively immutable; obtain them through :func:`GF` so
    that lookup tables are built once per field.
    """

    def __init__(self, p: int, m: int = 1, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise ValueError(f"characteristic p={p} is not prime")
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        if p**m > 2**31:
            raise ValueError("fields with q > 2^31 are not supported")
        self.p = p
        self.m = m
        self.q = p**m
        if modulus is None:
            modulus = smallest_irreducible(p, m)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        if m > 1 and not _is_irreducible(list(modulus), p):
            raise ValueError("modulus is reducible")
        self.modulus = modulus
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._add: list[list[int]] | None = None
        if m > 1:
            if self.q <= _LOG_TABLE_LIMIT:
                self._build_log_tables()
            if p != 2 and self.q <= _ADD_TABLE_LIMIT:
                self._add = [[self._add_digits(a, b) for b in range(self.q)] for a in range(self.q)]

    def __repr__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={list(self.modulus)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and (self.p, self.m, self.modulus) == (
            other.p, other.m, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    @property
    def is_prime_field(self) -> bool:
        return self.m == 1

    def to_dict(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    # -- digit helpers ----------------------------------------------------

    def digits(self, a: int) -> list[int]:
        p = self.p
        return [(a // p**i) % p for i in range(self.m)]

    def from_digits(self, d) -> int:
        out = 0
        for c in reversed(list(d)):
            out = out * self.p + int(c)
        return out

    def _add_digits(self, a: int, b: int) -> int:
        p = self.p
        out, scale = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    def _mul_schoolbook(self, a: int, b: int) -> int:
        f = list(self.modulus)
        return self.from_digits(_pmulmod(_trim(self.digits(a)), _trim(self.digits(b)), f, self.p))

    def _build_log_tables(self) -> None:
        q = self.q
        order = q - 1
        for g in range(2, q):
            exp = [1] * order
            x = 1
            ok = True
            for i in range(1, order):
                x = self._mul_schoolbook(x, g)
                if x == 1:
                    ok = False
                    break
                exp[i] = x
            if ok:
                break
        else:  # pragma: no cover - every finite field has a generator
            raise AssertionError("no primitive element")
        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        self._exp, self._log = exp, log

    # -- arithmetic -------------------------------------------------------

    def check(self, a: int) -> int:
        a = int(a)
        if not 0 <= a < self.q:
            raise ValueError(f"{a} is not an element of {self!r}")
        return a

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add is not None:
            return self._add[a][b]
        return self._add_digits(a, b)

    def neg(self, a: int) -> int:
        if self.m == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return self.from_digits((-d) % self.p for d in self.digits(a))

    def sub(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return self._mul_schoolbook(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        if self._exp is not None:
            return self._exp[(-self._log[a]) % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            raise ValueError("negative exponent")
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.m == 1:
            return pow(a, e, self.p)
        if self._exp is not None:
            return self._exp[(self._log[a] * e) % (self.q - 1)]
        r, base = 1, a
        while e:
            if e & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            e >>= 1
        return r

    def scalar(self, c: int) -> int:
        """Image of the integer c in the prime subfield."""
        return c % self.p

    def elements(self) -> range:
        return range(self.q)

    @cached_property
    def trace_table(self) -> np.ndarray:
        """Absolute trace of every element, as an int array of length q."""
        if self.q > _LOG_TABLE_LIMIT:
            raise ValueError("trace table only built for q <= 2^16")
        return np.array([self.trace(a) for a in range(self.q)], dtype=np.int64)

    def trace(self, a: int) -> int:
        if self.m == 1:
            return a
        t, x = 0, a
        for _ in range(self.m):
            t = self.add(t, x)
            x = self.pow(x, self.p)
        # lies in GF(p), hence a single digit
        return t

    @cached_property
    def mul_table(self) -> np.ndarray:
        q = self.q
        if q > 1024:
            raise ValueError("mul table only built for q <= 1024")
        return np.array([[self.mul(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)


@lru_cache(maxsize=64)
def GF(q: int) -> FieldSpec:
    """Cached constructor: ``GF(7)``, ``GF(8)``, ..."""
    p, m = prime_power(q)
    return FieldSpec(p, m)


_OPS = {"add", "sub", "mul", "div", "inv", "pow", "neg"}


def field_arith(field: FieldSpec, a: int, b: int | None = None, op: str = "add") -> int:
    """Dispatch a single field operation by name.

    ``inv`` and ``neg`` ignore b; ``pow`` treats b as a nonnegative integer
    exponent rather than a field element.
    """
    if op not in _OPS:
        raise ValueError(f"unknown op {op!r}")
    a = field.check(a)
    if op == "inv":
        return field.inv(a)
    if op == "neg":
        return field.neg(a)
    if op == "pow":
        return field.pow(a, int(b))
    b = field.check(b)
    return getattr(field, op)(a, b)


def trace(field: FieldSpec, a: int) -> int:
    return field.trace(field.check(a))


@dataclass(frozen=True)
class Character:
    """Additive character x -> exp(2 pi i Tr(beta x) / p)."""

    field: FieldSpec
    beta: int

    def __post_init__(self):
        self.field.check(self.beta)

    @property
    def trivial(self) -> bool:
        return self.beta == 0

    def phase(self, a: int) -> int:
        """Tr(beta * a) as an int in [0, p)."""
        return self.field.trace(self.field.mul(self.beta, a))

    def __call__(self, a: int) -> complex:
        return cmath.exp(2j * math.pi * self.phase(a) / self.field.p)

    @cached_property
    def phase_table(self) -> np.ndarray:
        F = self.field
        return np.array([self.phase(a) for a in range(F.q)], dtype=np.int64)

    @cached_property
    def table(self) -> np.ndarray:
        return np.exp(2j * np.pi * self.phase_table / self.field.p)

    @cached_property
    def preimages(self) -> tuple[tuple[int, ...], ...]:
        """``preimages[r]`` lists the elements a with Tr(beta a) = r, ascending."""
        if self.trivial:
            raise ValueError("trivial character has no proper preimage classes")
        buckets: list[list[int]] = [[] for _ in range(self.field.p)]
        for a, r in enumerate(self.phase_table.tolist()):
            buckets[r].append(a)
        return tuple(tuple(b) for b in buckets)


def character_eval(chi: Character, a: int) -> complex:
    return chi(chi.field.check(a))
