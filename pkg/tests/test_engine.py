"""SVD factor contracts, recombination forms, and the transfer pipeline."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from oracles import jacobi_svd_values
from svdna.engine import (
    low_rank,
    recombine,
    recombine_residual,
    reconcile_shapes,
    svd,
    svdna_transfer,
)
from svdna.errors import (
    NonFiniteEntryError,
    ShapeMismatchError,
    ThresholdOutOfRangeError,
)
from svdna.imaging import histogram, histogram_match
from svdna.synthetic import random_image

matrices = hnp.arrays(
    dtype=np.float64,
    shape=hnp.array_shapes(min_dims=2, max_dims=2, min_side=1, max_side=20),
    elements=st.floats(-255, 255),
)


def _random_matrix(rng, max_side=32):
    m = int(rng.integers(1, max_side + 1))
    n = int(rng.integers(1, max_side + 1))
    return rng.integers(0, 256, size=(m, n)).astype(np.float64)


class TestSvd:
    @given(matrices)
    @settings(max_examples=60)
    def test_reconstruction_and_orthonormality(self, mat):
        f = svd(mat)
        recon = (f.u * f.sigma) @ f.v.T
        norm = np.linalg.norm(mat)
        assert np.linalg.norm(mat - recon) <= 1e-10 * max(norm, 1.0)
        r = f.rank_limit
        assert np.abs(f.u.T @ f.u - np.eye(r)).max() <= 1e-8
        assert np.abs(f.v.T @ f.v - np.eye(r)).max() <= 1e-8

    @given(matrices)
    @settings(max_examples=60)
    def test_sigma_sorted_nonnegative(self, mat):
        f = svd(mat)
        assert np.all(f.sigma >= 0)
        assert np.all(np.diff(f.sigma) <= 0)

    def test_values_match_jacobi_oracle(self):
        rng = np.random.default_rng(11)
        for _ in range(15):
            mat = _random_matrix(rng, max_side=24)
            f = svd(mat)
            want = jacobi_svd_values(mat)
            scale = max(want[0], 1.0)
            assert np.abs(f.sigma - want).max() <= 1e-8 * scale

    def test_sign_canonicalization_deterministic(self):
        rng = np.random.default_rng(12)
        mat = _random_matrix(rng)
        f1, f2 = svd(mat), svd(mat.copy())
        assert np.array_equal(f1.u, f2.u)
        assert np.array_equal(f1.sigma, f2.sigma)
        assert np.array_equal(f1.v, f2.v)

    def test_sign_anchor_positive(self):
        rng = np.random.default_rng(13)
        for _ in range(10):
            f = svd(_random_matrix(rng))
            anchors = np.argmax(np.abs(f.u), axis=0)
            picked = f.u[anchors, np.arange(f.u.shape[1])]
            assert np.all(picked >= 0)

    def test_rejects_non_finite(self):
        mat = np.ones((4, 4))
        mat[2, 2] = np.nan
        with pytest.raises(NonFiniteEntryError):
            svd(mat)

    def test_rejects_wrong_rank(self):
        with pytest.raises(ShapeMismatchError):
            svd(np.zeros(5))
        with pytest.raises(ShapeMismatchError):
            svd(np.zeros((0, 4)))

    def test_factor_shapes(self):
        f = svd(np.ones((7, 3)))
        assert f.u.shape == (7, 3)
        assert f.sigma.shape == (3,)
        assert f.v.shape == (3, 3)
        assert f.shape == (7, 3)
        assert f.rank_limit == 3


class TestLowRank:
    def test_k0_is_zero(self):
        f = svd(np.arange(12, dtype=float).reshape(3, 4))
        assert np.array_equal(low_rank(f, 0), np.zeros((3, 4)))

    def test_full_rank_reconstructs(self):
        rng = np.random.default_rng(14)
        mat = _random_matrix(rng)
        f = svd(mat)
        assert np.abs(low_rank(f, f.rank_limit) - mat).max() < 1e-9

    def test_eckart_young_monotone(self):
        # Truncation error is non-increasing in k for the Frobenius norm.
        rng = np.random.default_rng(15)
        mat = _random_matrix(rng, max_side=20)
        f = svd(mat)
        errors = [
            np.linalg.norm(mat - low_rank(f, k)) for k in range(f.rank_limit + 1)
        ]
        assert all(a >= b - 1e-9 for a, b in zip(errors, errors[1:]))

    def test_threshold_validation(self):
        f = svd(np.ones((5, 6)))
        with pytest.raises(ThresholdOutOfRangeError):
            low_rank(f, -1)
        with pytest.raises(ThresholdOutOfRangeError):
            low_rank(f, 6)


class TestRecombine:
    def test_forms_agree(self):
        rng = np.random.default_rng(16)
        for _ in range(10):
            m, n = int(rng.integers(2, 40)), int(rng.integers(2, 40))
            a = rng.integers(0, 256, (m, n)).astype(float)
            b = rng.integers(0, 256, (m, n)).astype(float)
            fa, fb = svd(a), svd(b)
            for k in (0, 1, min(m, n) // 2, min(m, n)):
                block = recombine(fa, fb, k)
                resid = recombine_residual(fa, fb, k, b)
                assert np.abs(block - resid).max() <= 1e-9

    def test_k0_returns_target(self):
        rng = np.random.default_rng(17)
        b = rng.integers(0, 256, (9, 9)).astype(float)
        a = rng.integers(0, 256, (9, 9)).astype(float)
        assert np.abs(recombine_residual(svd(a), svd(b), 0, b) - b).max() == 0.0

    def test_full_k_returns_source(self):
        rng = np.random.default_rng(18)
        a = rng.integers(0, 256, (8, 11)).astype(float)
        b = rng.integers(0, 256, (8, 11)).astype(float)
        out = recombine_residual(svd(a), svd(b), 8, b)
        assert np.abs(out - a).max() < 1e-8

    def test_shape_mismatch_raises(self):
        fa = svd(np.ones((4, 5)))
        fb = svd(np.ones((5, 4)))
        with pytest.raises(ShapeMismatchError):
            recombine(fa, fb, 2)
        with pytest.raises(ShapeMismatchError):
            recombine_residual(fa, fb, 2)

    def test_distance_to_source_shrinks_with_k(self):
        # On random image-like pairs the recombination moves monotonically
        # toward the source as more source triplets are kept.
        rng = np.random.default_rng(19)
        for _ in range(5):
            a = rng.integers(0, 256, (24, 24)).astype(float)
            b = rng.integers(0, 256, (24, 24)).astype(float)
            fa, fb = svd(a), svd(b)
            dist = [
                np.linalg.norm(recombine_residual(fa, fb, k, b) - a)
                for k in range(25)
            ]
            assert all(x >= y - 1e-9 for x, y in zip(dist, dist[1:]))


class TestReconcileShapes:
    def test_equal_shapes_pass_through(self):
        s = random_image(10, 8, seed=1)
        t = random_image(10, 8, seed=2)
        for policy in ("resize-target", "center-crop", "strict"):
            assert reconcile_shapes(s, t, policy) is t

    def test_strict_rejects_mismatch(self):
        with pytest.raises(ShapeMismatchError):
            reconcile_shapes(random_image(10, 8, seed=1), random_image(9, 8, seed=2), "strict")

    def test_center_crop(self):
        s = random_image(4, 3, seed=3)
        t = random_image(8, 7, seed=4)
        got = reconcile_shapes(s, t, "center-crop")
        assert np.array_equal(got, t[2:5, 2:6])

    def test_center_crop_rejects_smaller_target(self):
        s = random_image(10, 10, seed=5)
        t = random_image(12, 6, seed=6)
        with pytest.raises(ShapeMismatchError):
            reconcile_shapes(s, t, "center-crop")

    def test_resize_target_matches_source_shape(self):
        s = random_image(21, 13, seed=7)
        t = random_image(50, 40, seed=8)
        assert reconcile_shapes(s, t, "resize-target").shape == s.shape

    def test_unknown_policy(self):
        with pytest.raises(ValueError):
            reconcile_shapes(random_image(4, 4, seed=0), random_image(4, 4, seed=1), "pad")


class TestSvdnaTransfer:
    def test_output_shape_and_dtype(self):
        s = random_image(40, 30, seed=20)
        t = random_image(64, 48, seed=21)
        out = svdna_transfer(s, t, 10)
        assert out.shape == s.shape
        assert out.dtype == np.uint8

    def test_threshold_range_enforced(self):
        s = random_image(12, 10, seed=22)
        t = random_image(12, 10, seed=23)
        with pytest.raises(ThresholdOutOfRangeError):
            svdna_transfer(s, t, 11)
        with pytest.raises(ThresholdOutOfRangeError):
            svdna_transfer(s, t, -1)

    def test_self_transfer_identity(self):
        s = random_image(32, 32, seed=24)
        assert np.array_equal(svdna_transfer(s, s, 12), s)

    def test_k0_returns_target(self):
        s = random_image(30, 26, seed=25)
        t = random_image(30, 26, seed=26)
        assert np.array_equal(svdna_transfer(s, t, 0), t)

    def test_full_k_is_histogram_match(self):
        s = random_image(28, 34, seed=27)
        t = random_image(28, 34, seed=28)
        assert np.array_equal(svdna_transfer(s, t, 28), histogram_match(s, t))

    def test_output_histogram_tracks_target(self):
        s = random_image(64, 64, seed=29)
        t = random_image(64, 64, seed=30)
        out = svdna_transfer(s, t, 20)
        cdf_out = np.cumsum(histogram(out)) / out.size
        cdf_t = np.cumsum(histogram(t)) / t.size
        assert np.abs(cdf_out - cdf_t).max() <= histogram(out).max() / out.size + 1e-12

    def test_strict_policy_propagates(self):
        s = random_image(16, 16, seed=31)
        t = random_image(17, 16, seed=32)
        with pytest.raises(ShapeMismatchError):
            svdna_transfer(s, t, 4, "strict")

    def test_mismatched_shapes_default_policy(self):
        s = random_image(24, 18, seed=33)
        t = random_image(100, 90, seed=34)
        assert svdna_transfer(s, t, 8).shape == s.shape
