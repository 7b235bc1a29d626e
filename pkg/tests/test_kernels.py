"""The compiled kernels must agree with the pure-Python reference bit for bit."""
import numpy as np
import pytest
from hypothesis import given, strategies as st

from rscover import kernels
from rscover.decoder import DecodeConfig, clear_cache, gs_max_radius, gs_parameters
from rscover.code import grs_code
from rscover.cover import grs_cover
from rscover.gf import GF

needs_c = pytest.mark.skipif("cython" not in kernels.available_backends(),
                             reason="compiled kernels not built")


def test_python_backend_always_available():
    assert "python" in kernels.available_backends()
    with pytest.raises(ValueError):
        kernels.nullspace_vector([[1, 2]], GF(7), "fortran")


def test_python_nullspace_is_a_kernel_vector():
    F = GF(9)
    rng = np.random.default_rng(0)
    A = rng.integers(0, 9, (5, 8))
    v = kernels.nullspace_vector(A, F, "python")
    assert v is not None and any(v)
    for row in A.tolist():
        acc = 0
        for a, x in zip(row, v.tolist()):
            acc = F.add(acc, F.mul(a, x))
        assert acc == 0
    assert kernels.nullspace_vector(np.eye(3, dtype=int), F, "python") is None


@needs_c
@pytest.mark.parametrize("q", [2, 7, 31, 4, 8, 9, 16, 25, 27, 1021])
@given(data=st.data())
def test_nullspace_parity(q, data):
    F = GF(q)
    rows = data.draw(st.integers(1, 8))
    cols = data.draw(st.integers(1, 9))
    A = np.array(data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=cols, max_size=cols),
                                    min_size=rows, max_size=rows)))
    a = kernels.nullspace_vector(A, F, "python")
    b = kernels.nullspace_vector(A, F, "cython")
    assert (a is None and b is None) or np.array_equal(a, b)


@needs_c
@pytest.mark.parametrize("q,n,k", [(7, 6, 2), (7, 6, 5), (13, 12, 4), (8, 7, 3), (9, 8, 2),
                                   (16, 15, 5), (27, 12, 4)])
def test_interpolation_and_roots_parity(q, n, k):
    F = GF(q)
    rng = np.random.default_rng(q + n + k)
    xs = list(range(1, n + 1))
    tau = gs_max_radius(n, k, 4)
    s, D = gs_parameters(n, k, tau, max_multiplicity=4)
    for _ in range(4):
        ys = rng.integers(0, q, n).tolist()
        Qp = kernels.gs_interpolate(xs, ys, s, k, D, F, "python")
        Qc = kernels.gs_interpolate(xs, ys, s, k, D, F, "cython")
        assert np.array_equal(Qp, Qc)
        assert kernels.rr_roots(Qp, k, F, "python") == kernels.rr_roots(Qc, k, F, "cython")


@needs_c
def test_nearest_hamming_parity():
    code = grs_code(7, 6, 3)
    rng = np.random.default_rng(3)
    for _ in range(20):
        y = rng.integers(0, 7, 6)
        assert kernels.nearest_hamming(code.codebook, y, "python") == \
            kernels.nearest_hamming(code.codebook, y, "cython")


@needs_c
@pytest.mark.parametrize("q,n,k", [(7, 6, 3), (9, 8, 3)])
def test_cover_results_identical_across_backends(q, n, k):
    code = grs_code(q, n, k)
    rng = np.random.default_rng(11)
    ys = [rng.integers(0, q, n).tolist() for _ in range(40)]
    out = {}
    for b in ("python", "cython"):
        clear_cache()
        cfg = DecodeConfig(backend=b)
        out[b] = [(grs_cover(code, y, m, cfg).to_dict()) for y in ys for m in ("unique", "list")]
    clear_cache()
    assert out["python"] == out["cython"]
