"""Pure-Python reference kernels.

These work over any :class:`~rscover.gf.FieldSpec`.  ``_ckernels`` mirrors
them for prime fields with identical pivoting rules, so both backends return
bit-identical results.
"""
from __future__ import annotations

from math import comb

import numpy as np

from .gf import FieldSpec


def nullspace_vector(mat, F: FieldSpec):
    """A nonzero solution of ``mat @ v = 0`` or None if the kernel is trivial.

    Forward elimination takes the first nonzero entry at or below the current
    row as pivot.  The returned vector has the first free column set to 1 and
    every other free column set to 0.
    """
    A = [[int(x) for x in row] for row in mat]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if A[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = F.inv(A[r][c])
        Ar = A[r]
        for j in range(c, cols):
            Ar[j] = F.mul(Ar[j], inv)
        for i in range(r + 1, rows):
            f = A[i][c]
            if f:
                Ai = A[i]
                for j in range(c, cols):
                    if Ar[j]:
                        Ai[j] = F.sub(Ai[j], F.mul(f, Ar[j]))
        pivots.append(c)
        r += 1
    pivset = set(pivots)
    free = next((c for c in range(cols) if c not in pivset), None)
    if free is None:
        return None
    v = [0] * cols
    v[free] = 1
    for row in range(len(pivots) - 1, -1, -1):
        pc = pivots[row]
        acc = 0
        Ar = A[row]
        for j in range(pc + 1, cols):
            if Ar[j] and v[j]:
                acc = F.add(acc, F.mul(Ar[j], v[j]))
        v[pc] = F.neg(acc)
    return np.array(v, dtype=np.int64)


def monomials(k: int, D: int) -> list[tuple[int, int]]:
    """(a, b) with a + (k-1) b <= D, ordered by b then a."""
    if k < 2:
        raise ValueError("weighted degree needs k >= 2")
    return [(a, b) for b in range(D // (k - 1) + 1) for a in range(D - (k - 1) * b + 1)]


def gs_interpolate(xs, ys, s: int, k: int, D: int, F: FieldSpec):
    """Bivariate Q with (1, k-1)-weighted degree <= D and multiplicity s at each point.

    Returns an int array of shape (l + 1, D + 1) with ``Q[b, a]`` the
    coefficient of X^a Y^b, or None if the system has only the zero solution.
    """
    mons = monomials(k, D)
    ell = D // (k - 1)
    binom = [[F.scalar(comb(a, r)) for r in range(s)] for a in range(D + 1)]
    rows = []
    for x, y in zip(xs, ys):
        xp = [F.pow(x, e) for e in range(D + 1)]
        yp = [F.pow(y, e) for e in range(ell + 1)]
        for r in range(s):
            for t in range(s - r):
                row = []
                for a, b in mons:
                    if a < r or b < t:
                        row.append(0)
                        continue
                    c = F.mul(binom[a][r], binom[b][t])
                    row.append(F.mul(c, F.mul(xp[a - r], yp[b - t])))
                rows.append(row)
    v = nullspace_vector(rows, F)
    if v is None:
        return None
    Q = np.zeros((ell + 1, D + 1), dtype=np.int64)
    for (a, b), c in zip(mons, v.tolist()):
        Q[b, a] = c
    return Q


def _shift_x(rows):
    """Divide Q(X, Y) by the largest power of X dividing all coefficients."""
    low = None
    for r in rows:
        for i, c in enumerate(r):
            if c:
                low = i if low is None else min(low, i)
                break
    if not low:
        return rows
    return [r[low:] for r in rows]


def rr_roots(Q, k: int, F: FieldSpec) -> list[tuple[int, ...]]:
    """Roth-Ruckenstein: all f, deg f < k, with Y - f(X) dividing Q(X, Y).

    ``Q[b][a]`` is the coefficient of X^a Y^b.  Candidates are returned as
    length-k coefficient tuples, deduplicated and sorted.  The caller
    re-checks candidates against the received word.
    """
    rows = [list(map(int, r)) for r in Q]
    while rows and not any(rows[-1]):
        rows.pop()
    out: set[tuple[int, ...]] = set()
    if not rows:
        return []

    def rec(rows, prefix):
        rows = _shift_x(rows)
        q0 = [r[0] if r else 0 for r in rows]
        while q0 and q0[-1] == 0:
            q0.pop()
        if len(q0) <= 1:
            return
        for g in range(F.q):
            acc = 0
            for c in reversed(q0):
                acc = F.add(F.mul(acc, g), c)
            if acc:
                continue
            f = prefix + (g,)
            if len(f) == k:
                out.add(f)
                continue
            # Q(X, X Y + g): coefficient of Y^j is X^j sum_{b >= j} C(b, j) g^(b-j) Q_b(X)
            ell = len(rows) - 1
            new = []
            for j in range(ell + 1):
                acc_row: list[int] = []
                for b in range(j, ell + 1):
                    cb = F.mul(F.scalar(comb(b, j)), F.pow(g, b - j))
                    if cb == 0 or not rows[b]:
                        continue
                    src = rows[b]
                    if len(acc_row) < len(src):
                        acc_row.extend([0] * (len(src) - len(acc_row)))
                    for i, c in enumerate(src):
                        if c:
                            acc_row[i] = F.add(acc_row[i], F.mul(cb, c))
                new.append([0] * j + acc_row if any(acc_row) else [])
            while new and not any(new[-1]):
                new.pop()
            rec(new, f)

    rec(rows, ())
    return sorted(out)


def nearest_hamming(codebook, y) -> tuple[int, int]:
    """Row index and distance of the first codeword nearest to y."""
    cb = np.asarray(codebook)
    y = np.asarray(y)
    best, best_d = -1, cb.shape[1] + 1
    for idx, row in enumerate(cb.tolist()):
        d = 0
        for a, b in zip(row, y.tolist()):
            if a != b:
                d += 1
                if d >= best_d:
                    break
        if d < best_d:
            best, best_d = idx, d
            if d == 0:
                break
    return best, best_d
