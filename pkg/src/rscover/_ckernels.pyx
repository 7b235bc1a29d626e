# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Prime-field kernels in C.

Same algorithms and pivot rules as ``_pykernels`` restricted to GF(p), so the
two backends agree exactly.  Elements are int64 residues in [0, p).
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport floor

ctypedef long long ll

cnp.import_array()


cdef inline ll _inv(ll a, ll p):
    cdef ll t = 0, nt = 1, r = p, nr = a % p, qq, tmp
    while nr:
        qq = r // nr
        tmp = t - qq * nt
        t = nt
        nt = tmp
        tmp = r - qq * nr
        r = nr
        nr = tmp
    if t < 0:
        t += p
    return t


cdef inline ll _mod(ll a, ll p):
    a = a % p
    if a < 0:
        a += p
    return a


# Below this bound residues are reduced through a floating reciprocal instead of
# a hardware division; products of two residues then stay under 2^32 and lazily
# accumulated sums under 2^51, where the double quotient is off by at most one.
DEF FAST_P = 65536


cdef inline ll _red(ll x, ll p, double invp):
    cdef ll r
    if p >= FAST_P:
        return _mod(x, p)
    r = x - (<ll>(<double>x * invp)) * p
    while r < 0:
        r += p
    while r >= p:
        r -= p
    return r


cdef object _nullspace(ll[:, ::1] A, ll p):
    cdef Py_ssize_t rows = A.shape[0], cols = A.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv, npiv = 0, free, row
    cdef ll inv, f, g, x, acc
    cdef double invp = 1.0 / p
    cdef ll *ar
    cdef ll *ai
    # non-pivot entries grow by at most (p-1)^2 per elimination step
    cdef bint lazy = p < FAST_P and rows < (1 << 18)
    pivots = np.full(cols, -1, dtype=np.int64)
    is_piv = np.zeros(cols, dtype=np.uint8)
    cdef ll[::1] pc = pivots
    cdef unsigned char[::1] ip = is_piv
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            x = _red(A[i, c], p, invp)
            A[i, c] = x
            if x != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                x = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = x
        ar = &A[r, 0]
        inv = _inv(ar[c], p)
        for j in range(c, cols):
            ar[j] = _red(_red(ar[j], p, invp) * inv, p, invp)
        for i in range(r + 1, rows):
            ai = &A[i, 0]
            f = _red(ai[c], p, invp)
            ai[c] = 0
            if f == 0:
                continue
            g = p - f
            if lazy:
                for j in range(c + 1, cols):
                    ai[j] += g * ar[j]
            else:
                for j in range(c + 1, cols):
                    ai[j] = (_mod(ai[j], p) + g * ar[j]) % p
        pc[npiv] = c
        ip[c] = 1
        npiv += 1
        r += 1
    free = -1
    for c in range(cols):
        if not ip[c]:
            free = c
            break
    if free < 0:
        return None
    v = np.zeros(cols, dtype=np.int64)
    cdef ll[::1] vv = v
    vv[free] = 1
    for row in range(npiv - 1, -1, -1):
        c = pc[row]
        acc = 0
        for j in range(c + 1, cols):
            if vv[j]:
                acc = _red(acc + A[row, j] * vv[j], p, invp)
        vv[c] = (p - acc) % p
    return v


cdef inline double _redd(double x, double p, double invp):
    cdef double r = x - floor(x * invp) * p
    if r < 0:
        r += p
    elif r >= p:
        r -= p
    return r


cdef object _nullspace_d(double[:, ::1] A, ll p):
    # Same elimination as _nullspace on exact small integers held in doubles,
    # which vectorizes where 64-bit integer multiplies do not.
    cdef Py_ssize_t rows = A.shape[0], cols = A.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv, npiv = 0, free, row
    cdef double dp = <double>p, invp = 1.0 / p, x, f, g, inv
    cdef ll acc
    cdef double *ar
    cdef double *ai
    pivots = np.full(cols, -1, dtype=np.int64)
    is_piv = np.zeros(cols, dtype=np.uint8)
    cdef ll[::1] pc = pivots
    cdef unsigned char[::1] ip = is_piv
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            x = _redd(A[i, c], dp, invp)
            A[i, c] = x
            if x != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                x = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = x
        ar = &A[r, 0]
        inv = <double>_inv(<ll>ar[c], p)
        for j in range(c, cols):
            ar[j] = _redd(_redd(ar[j], dp, invp) * inv, dp, invp)
        for i in range(r + 1, rows):
            ai = &A[i, 0]
            f = _redd(ai[c], dp, invp)
            ai[c] = 0
            if f == 0:
                continue
            g = dp - f
            for j in range(c + 1, cols):
                ai[j] += g * ar[j]
        pc[npiv] = c
        ip[c] = 1
        npiv += 1
        r += 1
    free = -1
    for c in range(cols):
        if not ip[c]:
            free = c
            break
    if free < 0:
        return None
    v = np.zeros(cols, dtype=np.int64)
    cdef ll[::1] vv = v
    vv[free] = 1
    for row in range(npiv - 1, -1, -1):
        c = pc[row]
        acc = 0
        for j in range(c + 1, cols):
            if vv[j]:
                acc = (acc + (<ll>A[row, j]) * vv[j]) % p
        vv[c] = (p - acc) % p
    return v


cdef object _solve(cnp.ndarray A, ll p):
    if p < FAST_P and A.shape[0] < (1 << 18):
        return _nullspace_d(A.astype(np.float64), p)
    return _nullspace(A, p)


def nullspace_vector(mat, ll p):
    A = np.ascontiguousarray(mat, dtype=np.int64) % p
    if A.ndim != 2 or A.shape[0] == 0:
        raise ValueError("need a non-empty 2-D matrix")
    return _solve(A, p)


cdef ll[:, ::1] _binom_table(Py_ssize_t n, ll p):
    t = np.zeros((n + 1, n + 1), dtype=np.int64)
    cdef ll[:, ::1] b = t
    cdef Py_ssize_t i, j
    for i in range(n + 1):
        b[i, 0] = 1 % p
        for j in range(1, i + 1):
            b[i, j] = (b[i - 1, j - 1] + b[i - 1, j]) % p
    return b


def gs_interpolate(xs, ys, int s, int k, int D, ll p):
    """Interpolation polynomial Q[b, a] (coefficient of X^a Y^b) or None."""
    if k < 2:
        raise ValueError("weighted degree needs k >= 2")
    cdef Py_ssize_t n = len(xs)
    cdef Py_ssize_t ell = D // (k - 1)
    cdef Py_ssize_t nmon = 0, b, a, i, r, t, row, col, b0
    cdef double invp = 1.0 / p
    cdef ll cbt
    cdef ll *mrow
    for b in range(ell + 1):
        nmon += D - (k - 1) * b + 1
    cdef Py_ssize_t nrows = n * s * (s + 1) // 2
    mona_arr = np.empty(nmon, dtype=np.int64)
    monb_arr = np.empty(nmon, dtype=np.int64)
    # first column of each Y-degree block
    start_arr = np.empty(ell + 2, dtype=np.int64)
    cdef ll[::1] mona = mona_arr
    cdef ll[::1] monb = monb_arr
    cdef ll[::1] start = start_arr
    col = 0
    for b in range(ell + 1):
        start[b] = col
        for a in range(D - (k - 1) * b + 1):
            mona[col] = a
            monb[col] = b
            col += 1
    start[ell + 1] = col
    cdef ll[:, ::1] bn = _binom_table(D, p)
    xarr = np.asarray(xs, dtype=np.int64) % p
    yarr = np.asarray(ys, dtype=np.int64) % p
    cdef ll[::1] xv = xarr
    cdef ll[::1] yv = yarr
    # bx[i, r, a] = C(a + r, r) x_i^a : the r-th Hasse derivative factor in X
    bx_arr = np.empty((n, s, D + 1), dtype=np.int64)
    xp_arr = np.empty(D + 1, dtype=np.int64)
    yp_arr = np.empty((n, ell + 1), dtype=np.int64)
    cdef ll[:, :, ::1] bx = bx_arr
    cdef ll[::1] xp = xp_arr
    cdef ll[:, ::1] yp = yp_arr
    for i in range(n):
        xp[0] = 1
        for a in range(1, D + 1):
            xp[a] = _red(xp[a - 1] * xv[i], p, invp)
        for r in range(s):
            for a in range(D + 1 - r):
                bx[i, r, a] = _red(bn[a + r, r] * xp[a], p, invp)
        yp[i, 0] = 1
        for b in range(1, ell + 1):
            yp[i, b] = _red(yp[i, b - 1] * yv[i], p, invp)
    M = np.zeros((nrows, nmon), dtype=np.int64)
    cdef ll[:, ::1] mm = M
    row = 0
    for i in range(n):
        for r in range(s):
            for t in range(s - r):
                mrow = &mm[row, 0]
                for b in range(t, ell + 1):
                    cbt = _red(bn[b, t] * yp[i, b - t], p, invp)
                    if cbt == 0:
                        continue
                    b0 = start[b]
                    for a in range(r, D - (k - 1) * b + 1):
                        mrow[b0 + a] = _red(cbt * bx[i, r, a - r], p, invp)
                row += 1
    v = _solve(M, p)
    if v is None:
        return None
    Q = np.zeros((ell + 1, D + 1), dtype=np.int64)
    Q[monb_arr, mona_arr] = v
    return Q


cdef void _rr(cnp.ndarray Qarr, int k, ll p, double invp, tuple prefix, set out, ll[:, ::1] bn):
    cdef ll[:, ::1] Q = Qarr
    cdef Py_ssize_t nr = Q.shape[0], w = Q.shape[1]
    cdef Py_ssize_t low = w, hi_row = -1, b, a, j, top, nw, hi_col = -1
    cdef ll g, acc, cb
    cdef ll *nrow
    cdef ll *qrow
    for b in range(nr):
        for a in range(w):
            if Q[b, a]:
                if a < low:
                    low = a
                hi_row = b
                break
    if hi_row < 0:
        return
    for b in range(hi_row + 1):
        for a in range(w - 1, -1, -1):
            if Q[b, a]:
                if a > hi_col:
                    hi_col = a
                break
    # q0(Y) = Q(0, Y) after removing X^low
    top = -1
    for b in range(hi_row + 1):
        if Q[b, low]:
            top = b
    if top < 1:
        return
    gpow = np.empty(hi_row + 1, dtype=np.int64)
    cdef ll[::1] gw = gpow
    cdef ll[:, ::1] N
    for g in range(p):
        acc = 0
        for b in range(top, -1, -1):
            acc = _red(acc * g + Q[b, low], p, invp)
        if acc:
            continue
        f = prefix + (int(g),)
        if len(f) == k:
            out.add(f)
            continue
        gw[0] = 1
        for b in range(1, hi_row + 1):
            gw[b] = _red(gw[b - 1] * g, p, invp)
        # Q(X, X Y + g): coefficient of Y^j is X^j sum_{b >= j} C(b, j) g^(b-j) Q_b(X)
        nw = hi_col - low + 1 + hi_row
        new = np.zeros((hi_row + 1, nw), dtype=np.int64)
        N = new
        for j in range(hi_row + 1):
            nrow = &N[j, j - low]
            for b in range(j, hi_row + 1):
                cb = _red(bn[b, j] * gw[b - j], p, invp)
                if cb == 0:
                    continue
                qrow = &Q[b, 0]
                for a in range(low, hi_col + 1):
                    nrow[a] = _red(nrow[a] + cb * qrow[a], p, invp)
        _rr(new, k, p, invp, f, out, bn)


def rr_roots(Q, int k, ll p):
    """Y-roots of degree < k as sorted coefficient tuples (candidates only)."""
    Qa = np.ascontiguousarray(Q, dtype=np.int64) % p
    cdef set out = set()
    if Qa.shape[0] == 0:
        return []
    cdef ll[:, ::1] bn = _binom_table(Qa.shape[0], p)
    _rr(Qa, k, p, 1.0 / p, (), out, bn)
    return sorted(out)


def nearest_hamming(codebook, y):
    """Row index and distance of the first codeword nearest to y."""
    cb_arr = np.ascontiguousarray(codebook, dtype=np.int64)
    y_arr = np.ascontiguousarray(y, dtype=np.int64)
    cdef ll[:, ::1] cb = cb_arr
    cdef ll[::1] yv = y_arr
    cdef Py_ssize_t M = cb.shape[0], n = cb.shape[1], i, j
    cdef Py_ssize_t best = -1, best_d = n + 1, d
    for i in range(M):
        d = 0
        for j in range(n):
            if cb[i, j] != yv[j]:
                d += 1
                if d >= best_d:
                    break
        if d < best_d:
            best = i
            best_d = d
            if d == 0:
                break
    return int(best), int(best_d)


# -- table-driven kernels for small extension fields ------------------------------
#
# Elements keep the int encoding of FieldSpec.  Multiplication goes through
# log/antilog tables (antilog doubled so no reduction is needed), addition
# through XOR in characteristic 2 and a q x q table otherwise.

cdef struct Tab:
    ll q
    ll p
    bint xor
    ll *exp
    ll *log
    ll *add
    ll *neg


cdef inline ll t_add(Tab *T, ll a, ll b):
    if T.xor:
        return a ^ b
    return T.add[a * T.q + b]


cdef inline ll t_mul(Tab *T, ll a, ll b):
    if a == 0 or b == 0:
        return 0
    return T.exp[T.log[a] + T.log[b]]


cdef inline ll t_inv(Tab *T, ll a):
    return T.exp[T.q - 1 - T.log[a]]


cdef class FieldTables:
    """Lookup tables for one field, built once and shared by all kernels."""
    cdef readonly object exp_arr, log_arr, add_arr, neg_arr
    cdef readonly ll q, p
    cdef bint xor

    def __init__(self, ll p, ll q, exp, log, add, neg):
        self.p = p
        self.q = q
        self.xor = p == 2
        e = np.asarray(exp, dtype=np.int64)
        self.exp_arr = np.ascontiguousarray(np.concatenate([e, e]))
        self.log_arr = np.ascontiguousarray(np.asarray(log, dtype=np.int64))
        self.add_arr = np.ascontiguousarray(np.asarray(add, dtype=np.int64).ravel())
        self.neg_arr = np.ascontiguousarray(np.asarray(neg, dtype=np.int64))

    cdef Tab tab(self):
        cdef Tab T
        cdef ll[::1] e = self.exp_arr
        cdef ll[::1] l = self.log_arr
        cdef ll[::1] n = self.neg_arr
        cdef ll[::1] a
        T.q = self.q
        T.p = self.p
        T.xor = self.xor
        T.exp = &e[0]
        T.log = &l[0]
        T.neg = &n[0]
        if self.xor:
            T.add = NULL
        else:
            a = self.add_arr
            T.add = &a[0]
        return T


cdef object _nullspace_t(ll[:, ::1] A, FieldTables F):
    cdef Tab T = F.tab()
    cdef Py_ssize_t rows = A.shape[0], cols = A.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv, npiv = 0, free, row
    cdef ll inv, f, x, acc
    cdef ll *ar
    cdef ll *ai
    pivots = np.full(cols, -1, dtype=np.int64)
    is_piv = np.zeros(cols, dtype=np.uint8)
    cdef ll[::1] pc = pivots
    cdef unsigned char[::1] ip = is_piv
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                x = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = x
        ar = &A[r, 0]
        inv = t_inv(&T, ar[c])
        for j in range(c, cols):
            ar[j] = t_mul(&T, ar[j], inv)
        for i in range(r + 1, rows):
            ai = &A[i, 0]
            f = ai[c]
            if f == 0:
                continue
            f = T.neg[f]
            ai[c] = 0
            for j in range(c + 1, cols):
                if ar[j]:
                    ai[j] = t_add(&T, ai[j], t_mul(&T, f, ar[j]))
        pc[npiv] = c
        ip[c] = 1
        npiv += 1
        r += 1
    free = -1
    for c in range(cols):
        if not ip[c]:
            free = c
            break
    if free < 0:
        return None
    v = np.zeros(cols, dtype=np.int64)
    cdef ll[::1] vv = v
    vv[free] = 1
    for row in range(npiv - 1, -1, -1):
        c = pc[row]
        acc = 0
        for j in range(c + 1, cols):
            if vv[j] and A[row, j]:
                acc = t_add(&T, acc, t_mul(&T, A[row, j], vv[j]))
        vv[c] = T.neg[acc]
    return v


def nullspace_vector_tab(mat, FieldTables F):
    A = np.array(mat, dtype=np.int64, order="C")
    if A.ndim != 2 or A.shape[0] == 0:
        raise ValueError("need a non-empty 2-D matrix")
    return _nullspace_t(A, F)


cdef inline ll t_pow(Tab *T, ll a, ll e):
    if e == 0:
        return 1
    if a == 0:
        return 0
    return T.exp[(T.log[a] * e) % (T.q - 1)]


def gs_interpolate_tab(xs, ys, int s, int k, int D, FieldTables F):
    if k < 2:
        raise ValueError("weighted degree needs k >= 2")
    cdef Tab T = F.tab()
    cdef ll p = F.p
    cdef Py_ssize_t n = len(xs)
    cdef Py_ssize_t ell = D // (k - 1)
    cdef Py_ssize_t nmon = 0, b, a, i, r, t, row, col, b0
    cdef ll cbt
    cdef ll *mrow
    for b in range(ell + 1):
        nmon += D - (k - 1) * b + 1
    cdef Py_ssize_t nrows = n * s * (s + 1) // 2
    mona_arr = np.empty(nmon, dtype=np.int64)
    monb_arr = np.empty(nmon, dtype=np.int64)
    start_arr = np.empty(ell + 2, dtype=np.int64)
    cdef ll[::1] mona = mona_arr
    cdef ll[::1] monb = monb_arr
    cdef ll[::1] start = start_arr
    col = 0
    for b in range(ell + 1):
        start[b] = col
        for a in range(D - (k - 1) * b + 1):
            mona[col] = a
            monb[col] = b
            col += 1
    start[ell + 1] = col
    # binomials reduced mod p are elements of the prime subfield
    cdef ll[:, ::1] bn = _binom_table(D, p)
    cdef ll[::1] xv = np.asarray(xs, dtype=np.int64)
    cdef ll[::1] yv = np.asarray(ys, dtype=np.int64)
    bx_arr = np.zeros((n, s, D + 1), dtype=np.int64)
    yp_arr = np.empty((n, ell + 1), dtype=np.int64)
    cdef ll[:, :, ::1] bx = bx_arr
    cdef ll[:, ::1] yp = yp_arr
    for i in range(n):
        for r in range(s):
            for a in range(D + 1 - r):
                bx[i, r, a] = t_mul(&T, bn[a + r, r], t_pow(&T, xv[i], a))
        for b in range(ell + 1):
            yp[i, b] = t_pow(&T, yv[i], b)
    M = np.zeros((nrows, nmon), dtype=np.int64)
    cdef ll[:, ::1] mm = M
    row = 0
    for i in range(n):
        for r in range(s):
            for t in range(s - r):
                mrow = &mm[row, 0]
                for b in range(t, ell + 1):
                    cbt = t_mul(&T, bn[b, t], yp[i, b - t])
                    if cbt == 0:
                        continue
                    b0 = start[b]
                    for a in range(r, D - (k - 1) * b + 1):
                        mrow[b0 + a] = t_mul(&T, cbt, bx[i, r, a - r])
                row += 1
    v = _nullspace_t(mm, F)
    if v is None:
        return None
    Q = np.zeros((ell + 1, D + 1), dtype=np.int64)
    Q[monb_arr, mona_arr] = v
    return Q


cdef void _rr_t(cnp.ndarray Qarr, int k, FieldTables F, tuple prefix, set out, ll[:, ::1] bn):
    cdef Tab T = F.tab()
    cdef ll[:, ::1] Q = Qarr
    cdef Py_ssize_t nr = Q.shape[0], w = Q.shape[1]
    cdef Py_ssize_t low = w, hi_row = -1, b, a, j, top, nw, hi_col = -1
    cdef ll g, acc, cb
    cdef ll *nrow
    cdef ll *qrow
    for b in range(nr):
        for a in range(w):
            if Q[b, a]:
                if a < low:
                    low = a
                hi_row = b
                break
    if hi_row < 0:
        return
    for b in range(hi_row + 1):
        for a in range(w - 1, -1, -1):
            if Q[b, a]:
                if a > hi_col:
                    hi_col = a
                break
    top = -1
    for b in range(hi_row + 1):
        if Q[b, low]:
            top = b
    if top < 1:
        return
    cdef ll[:, ::1] N
    for g in range(T.q):
        acc = 0
        for b in range(top, -1, -1):
            acc = t_add(&T, t_mul(&T, acc, g), Q[b, low])
        if acc:
            continue
        f = prefix + (int(g),)
        if len(f) == k:
            out.add(f)
            continue
        nw = hi_col - low + 1 + hi_row
        new = np.zeros((hi_row + 1, nw), dtype=np.int64)
        N = new
        for j in range(hi_row + 1):
            nrow = &N[j, j - low]
            for b in range(j, hi_row + 1):
                cb = t_mul(&T, bn[b, j], t_pow(&T, g, b - j))
                if cb == 0:
                    continue
                qrow = &Q[b, 0]
                for a in range(low, hi_col + 1):
                    if qrow[a]:
                        nrow[a] = t_add(&T, nrow[a], t_mul(&T, cb, qrow[a]))
        _rr_t(new, k, F, f, out, bn)


def rr_roots_tab(Q, int k, FieldTables F):
    Qa = np.array(Q, dtype=np.int64, order="C")
    cdef set out = set()
    if Qa.shape[0] == 0:
        return []
    cdef ll[:, ::1] bn = _binom_table(Qa.shape[0], F.p)
    _rr_t(Qa, k, F, (), out, bn)
    return sorted(out)
