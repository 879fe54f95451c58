import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from helpers import minplus_reference, poly_square_direct, rand_dist_matrix
from tapsp.matrices import (COUNTERS, INF, EntryBoundError, PolyMatrix,
                            bool_product, dist_product_fast,
                            dist_product_naive, full_inf, is_finite,
                            min_merge, minplus_identity, poly_square,
                            ring_matmul, scale_div_ceil, truncate,
                            window_shift)


def test_minplus_worked_example():
    # hand-checkable 2x2: the (0,0) entry goes through the diagonal,
    # min(0+0, 3+4) = 0
    a = np.array([[0, 3], [INF, 0]], dtype=np.int64)
    b = np.array([[0, INF], [4, 0]], dtype=np.int64)
    want = np.array([[0, 3], [4, 0]], dtype=np.int64)
    assert np.array_equal(dist_product_naive(a, b), want)
    assert np.array_equal(dist_product_fast(a, b, bound=4), want)


def test_minplus_path_example():
    # 1 -> 2 -> 3 with weights 3 and 4: two hops cost 7
    w = np.array([[0, 3, INF], [INF, 0, 4], [INF, INF, 0]], dtype=np.int64)
    sq = dist_product_naive(w, w)
    assert sq[0, 2] == 7


def test_fast_scalar_case():
    a = np.array([[2]], dtype=np.int64)
    b = np.array([[-1]], dtype=np.int64)
    assert dist_product_fast(a, b, bound=2)[0, 0] == 1


def test_ring_matmul_square_example():
    a = np.array([[1, 2], [3, 4]], dtype=object)
    want = np.array([[7, 10], [15, 22]], dtype=object)
    assert np.array_equal(ring_matmul(a, a), want)
    assert np.array_equal(ring_matmul(a, a, kernel="strassen", strassen_cutoff=2),
                          want)


def test_minplus_identity_neutral():
    gen = np.random.default_rng(0)
    a = rand_dist_matrix(gen, 7, 7, 9)
    eye = minplus_identity(7)
    assert np.array_equal(dist_product_naive(a, eye), a)
    assert np.array_equal(dist_product_naive(eye, a), a)


def test_naive_matches_pure_python_reference():
    gen = np.random.default_rng(1)
    for _ in range(25):
        a = rand_dist_matrix(gen, 5, 4, 8)
        b = rand_dist_matrix(gen, 4, 6, 8)
        assert np.array_equal(dist_product_naive(a, b), minplus_reference(a, b))


def test_fast_equals_naive_randomized():
    gen = np.random.default_rng(2)
    for trial in range(300):
        l, m, r = gen.integers(1, 13, size=3)
        bound = int(gen.integers(1, 17))
        a = rand_dist_matrix(gen, l, m, bound)
        b = rand_dist_matrix(gen, m, r, bound)
        fast = dist_product_fast(a, b, bound=bound)
        assert np.array_equal(fast, dist_product_naive(a, b)), trial


@given(st.integers(min_value=1, max_value=5),
       st.integers(min_value=1, max_value=5),
       st.integers(min_value=1, max_value=5),
       st.integers(min_value=0, max_value=2**31))
@settings(max_examples=150, deadline=None)
def test_fast_equals_naive_property(l, m, r, seed):
    gen = np.random.default_rng(seed)
    a = rand_dist_matrix(gen, l, m, 6, inf_frac=0.3)
    b = rand_dist_matrix(gen, m, r, 6, inf_frac=0.3)
    assert np.array_equal(dist_product_fast(a, b, bound=6),
                          dist_product_naive(a, b))


def test_fast_derives_bound_when_omitted():
    a = np.array([[2, -3], [INF, 5]], dtype=np.int64)
    assert np.array_equal(dist_product_fast(a, a), dist_product_naive(a, a))


def test_fast_rejects_entries_beyond_bound():
    a = np.array([[9]], dtype=np.int64)
    with pytest.raises(EntryBoundError):
        dist_product_fast(a, a, bound=5)


def test_fast_all_inf_inner_dimension():
    a = full_inf(3, 2)
    b = full_inf(2, 3)
    out = dist_product_fast(a, b, bound=1)
    assert not is_finite(out).any()


def test_fast_zero_inner_dimension():
    a = np.empty((3, 0), dtype=np.int64)
    b = np.empty((0, 2), dtype=np.int64)
    out = dist_product_fast(a, b, bound=1)
    assert out.shape == (3, 2) and not is_finite(out).any()


def test_ring_matmul_counts_multiplications():
    a = np.ones((3, 4), dtype=object)
    b = np.ones((4, 5), dtype=object)
    COUNTERS.reset()
    ring_matmul(a, b)
    assert COUNTERS.ring_mults == 3 * 4 * 5


def test_strassen_equals_schoolbook():
    gen = np.random.default_rng(3)
    for _ in range(60):
        n = int(gen.integers(1, 13))
        m = int(gen.integers(1, 13))
        r = int(gen.integers(1, 13))
        a = gen.integers(-50, 50, size=(n, m)).astype(object)
        b = gen.integers(-50, 50, size=(m, r)).astype(object)
        school = ring_matmul(a, b, kernel="schoolbook")
        stras = ring_matmul(a, b, kernel="strassen", strassen_cutoff=2)
        assert np.array_equal(school, stras)


def test_strassen_handles_big_integers():
    gen = np.random.default_rng(4)
    a = np.array([[int(x) << 200 for x in row]
                  for row in gen.integers(1, 9, size=(5, 5))], dtype=object)
    school = ring_matmul(a, a, kernel="schoolbook")
    stras = ring_matmul(a, a, kernel="strassen", strassen_cutoff=2)
    assert np.array_equal(school, stras)


def test_fast_product_through_strassen_kernel():
    gen = np.random.default_rng(5)
    a = rand_dist_matrix(gen, 9, 9, 7)
    fast = dist_product_fast(a, a, bound=7, kernel="strassen", strassen_cutoff=4)
    assert np.array_equal(fast, dist_product_naive(a, a))


def test_min_merge_elementwise():
    a = np.array([[1, INF]], dtype=np.int64)
    b = np.array([[INF, -2]], dtype=np.int64)
    assert np.array_equal(min_merge(a, b), np.array([[1, -2]], dtype=np.int64))


def test_truncate_drops_large_magnitudes():
    a = np.array([[5, -5, 6, -6, INF]], dtype=np.int64)
    got = truncate(a, 5)
    want = np.array([[5, -5, INF, INF, INF]], dtype=np.int64)
    assert np.array_equal(got, want)


def test_scale_div_ceil_rounds_toward_plus_infinity():
    a = np.array([[5, -5, 4, -4, 0, INF]], dtype=np.int64)
    got = scale_div_ceil(a, 2)
    want = np.array([[3, -2, 2, -2, 0, INF]], dtype=np.int64)
    assert np.array_equal(got, want)


@given(st.integers(min_value=-100, max_value=100),
       st.integers(min_value=1, max_value=9))
def test_scale_div_ceil_matches_math_ceil(x, k):
    got = scale_div_ceil(np.array([[x]], dtype=np.int64), k)[0, 0]
    assert got == -((-x) // k)
    assert k * got >= x > k * (got - 1)


def test_window_shift_keeps_only_window():
    a = np.array([[1, 4, 7, INF]], dtype=np.int64)
    got = window_shift(a, 3, 6, 2)
    want = np.array([[INF, 2, INF, INF]], dtype=np.int64)
    assert np.array_equal(got, want)


def test_bool_product_methods_agree():
    gen = np.random.default_rng(6)
    for _ in range(80):
        n = int(gen.integers(1, 20))
        m = int(gen.integers(1, 20))
        r = int(gen.integers(1, 20))
        a = gen.random((n, m)) < 0.3
        b = gen.random((m, r)) < 0.3
        bit = bool_product(a, b, method="bitset")
        ring = bool_product(a, b, method="ring")
        want = (a.astype(np.int64) @ b.astype(np.int64)) > 0
        assert np.array_equal(bit, want)
        assert np.array_equal(ring, want)


def test_poly_square_matches_direct_convolution():
    gen = np.random.default_rng(7)
    for _ in range(60):
        n = int(gen.integers(1, 9))
        s = int(gen.integers(1, 7))
        coeffs = gen.random((n, n, s)) < 0.35
        got = poly_square(PolyMatrix(coeffs))
        want = poly_square_direct(coeffs)
        assert got.coeffs.shape == want.shape
        assert np.array_equal(got.coeffs, want)


def test_poly_square_dense_coefficients_no_carry():
    # all-ones polynomials maximize digit counts; any radix carry would
    # corrupt neighbouring coefficients
    n, s = 6, 5
    coeffs = np.ones((n, n, s), dtype=bool)
    got = poly_square(PolyMatrix(coeffs))
    assert got.coeffs.all()


def test_poly_matrix_validation():
    with pytest.raises(ValueError):
        PolyMatrix(np.zeros((2, 3, 1), dtype=bool))
    with pytest.raises(ValueError):
        PolyMatrix(np.zeros((2, 2), dtype=bool))


@given(arrays(np.int8, (4, 4), elements=st.integers(min_value=-7, max_value=7)),
       arrays(np.int8, (4, 4), elements=st.integers(min_value=-7, max_value=7)))
@settings(max_examples=100, deadline=None)
def test_fast_equals_naive_dense_small(a8, b8):
    a = a8.astype(np.int64)
    b = b8.astype(np.int64)
    assert np.array_equal(dist_product_fast(a, b, bound=7),
                          dist_product_naive(a, b))
