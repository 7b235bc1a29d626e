import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rscover.code import grs_code
from rscover.decoder import (DecodeConfig, bw_unique_decode, gs_list_decode, gs_max_radius,
                             gs_parameters, tau_gs)
from rscover.gf import GF


def ball(code, y, tau):
    """Messages within tau of y by brute force, canonical order."""
    d = (code.codebook != np.asarray(y)).sum(axis=1)
    return [tuple(m) for m in code.message_array[d <= tau].tolist()]


def decoded(fs, k):
    return [f.padded(k) for f in fs]


def test_tau_gs_examples():
    assert tau_gs(6, 1) == 5
    assert tau_gs(6, 5) == 1
    assert tau_gs(14, 2) == 10
    assert tau_gs(6, 2) == 3
    with pytest.raises(ValueError):
        tau_gs(3, 4)


@given(st.integers(2, 400), st.data())
def test_tau_gs_uses_exact_integer_sqrt(n, data):
    k = data.draw(st.integers(1, n))
    t = tau_gs(n, k)
    r = n - 1 - t
    assert r * r <= (k - 1) * n < (r + 1) ** 2


def test_gs_parameters_meet_the_radius():
    for n, k in [(6, 2), (6, 5), (10, 3), (16, 8)]:
        for tau in range(tau_gs(n, k) + 1):
            s, D = gs_parameters(n, k, tau)
            assert (n - tau) * s > D
            monomials = sum(D - (k - 1) * b + 1 for b in range(D // (k - 1) + 1))
            assert monomials > n * s * (s + 1) // 2
    with pytest.raises(ValueError):
        gs_parameters(30, 10, tau_gs(30, 10), max_multiplicity=2)


def test_gs_max_radius_is_monotone_in_the_cap():
    prev = -1
    for cap in range(1, 12):
        r = gs_max_radius(30, 10, cap)
        assert r >= prev
        prev = r
    assert gs_max_radius(30, 10, 40) == tau_gs(30, 10)


def test_bw_examples():
    code = grs_code(5, 4, 2)
    f = (2, 3)
    c = code.encode(f)
    assert bw_unique_decode(code, c, 1).padded(2) == f
    y = list(c)
    y[2] = (y[2] + 1) % 5
    assert bw_unique_decode(code, y, 1).padded(2) == f
    # a word at distance >= 2 from every codeword is declined
    far = next(y for y in itertools.product(range(5), repeat=4) if not ball(code, y, 1))
    assert bw_unique_decode(code, list(far), 1) is None


def test_bw_radius_checked():
    with pytest.raises(ValueError):
        bw_unique_decode(grs_code(5, 4, 2), [0] * 4, 2)


@pytest.mark.parametrize("q,n,k", [(5, 4, 2), (5, 4, 1), (7, 5, 2), (4, 3, 1), (8, 6, 2)])
def test_bw_equals_unique_ball_exhaustive(q, n, k):
    code = grs_code(q, n, k)
    tau = (n - k) // 2
    for y in itertools.product(range(q), repeat=n):
        got = bw_unique_decode(code, list(y), tau)
        want = ball(code, y, tau)
        assert ([got.padded(k)] if got is not None else []) == want


def test_bw_with_multipliers():
    F = GF(7)
    code = grs_code(F, 6, 2, multipliers=[3, 1, 4, 1, 5, 2])
    f = (4, 6)
    y = list(code.encode(f))
    y[0], y[5] = (y[0] + 1) % 7, (y[5] + 3) % 7
    assert bw_unique_decode(code, y, 2).padded(2) == f


def test_raw_bw_can_leave_the_ball():
    # raw mode returns the unchecked key-equation quotient; it must agree with
    # the bounded decoder whenever that one succeeds
    code = grs_code(5, 4, 2)
    extra = 0
    for y in itertools.product(range(5), repeat=4):
        b = bw_unique_decode(code, list(y), 1)
        r = bw_unique_decode(code, list(y), 1, raw=True)
        if b is not None:
            assert r == b
        elif r is not None:
            extra += 1
    assert extra > 0


def test_gs_examples():
    code = grs_code(7, 6, 2)
    f = (1, 5)
    assert decoded(gs_list_decode(code, code.encode(f), 0), 2) == [f]
    with pytest.raises(ValueError):
        gs_list_decode(code, [0] * 6, 4)


@pytest.mark.parametrize("q,n,k,tau", [(7, 6, 1, 5), (7, 6, 2, 2), (7, 6, 2, 3), (7, 6, 3, 2),
                                       (7, 6, 4, 1), (8, 7, 2, 4), (9, 8, 3, 3), (11, 10, 3, 4)])
def test_gs_equals_ball_random(q, n, k, tau):
    code = grs_code(q, n, k)
    rng = np.random.default_rng(q * 100 + n * 10 + k)
    for _ in range(200):
        y = rng.integers(0, q, n).tolist()
        assert decoded(gs_list_decode(code, y, tau), k) == ball(code, y, tau)


def test_gs_near_codewords():
    # words close to a codeword exercise nonempty lists
    code = grs_code(13, 12, 4)
    rng = np.random.default_rng(5)
    tau = tau_gs(12, 4)
    for _ in range(100):
        f = rng.integers(0, 13, 4).tolist()
        y = list(code.encode(f))
        for i in rng.choice(12, tau, replace=False):
            y[i] = int(rng.integers(0, 13))
        got = decoded(gs_list_decode(code, y, tau), 4)
        assert tuple(f) in got
        assert got == ball(code, y, tau)


@pytest.mark.parametrize("tau", [2, 3])
@given(y=st.lists(st.integers(0, 6), min_size=6, max_size=6))
def test_gs_matches_ball_on_6_2_7(tau, y):
    code = grs_code(7, 6, 2)
    assert decoded(gs_list_decode(code, y, tau), 2) == ball(code, y, tau)


@pytest.mark.xfail(strict=True, reason="n - 1 - isqrt((k - 1) n) = 3 for n = 6, k = 2")
def test_tau_gs_6_2_is_two():
    assert tau_gs(6, 2) == 2


@given(st.lists(st.integers(0, 6), min_size=6, max_size=6))
def test_gs_is_nested_in_the_radius(y):
    code = grs_code(7, 6, 2)
    prev = set()
    for tau in range(tau_gs(6, 2) + 1):
        cur = set(decoded(gs_list_decode(code, y, tau), 2))
        assert prev <= cur
        prev = cur


def test_gs_max_list_and_pinned_multiplicity():
    code = grs_code(7, 6, 1)
    y = [0, 0, 1, 1, 2, 2]
    full = decoded(gs_list_decode(code, y, 5), 1)
    assert decoded(gs_list_decode(code, y, 5, DecodeConfig(max_list=2)), 1) == full[:2]
    code = grs_code(11, 10, 3)
    y = list(range(10))
    a = decoded(gs_list_decode(code, y, 3, DecodeConfig(multiplicity=4)), 3)
    assert a == ball(code, y, 3)


def test_decode_config_validation():
    with pytest.raises(ValueError):
        DecodeConfig(radius=-1)
    with pytest.raises(ValueError):
        DecodeConfig(multiplicity=0)
    with pytest.raises(ValueError):
        DecodeConfig(max_list=0)


def test_gs_extension_field_with_multipliers():
    F = GF(16)
    code = grs_code(F, 10, 3, multipliers=[1, 2, 3, 4, 5, 6, 7, 8, 9, 10])
    rng = np.random.default_rng(0)
    for _ in range(30):
        y = rng.integers(0, 16, 10).tolist()
        assert decoded(gs_list_decode(code, y, tau_gs(10, 3)), 3) == ball(code, y, tau_gs(10, 3))
