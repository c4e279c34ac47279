"""
Tests for the orthonormal DCT and Haar operators.
"""
import numpy as np
import pytest

from transforms.transform_operator import TransformKind, TransformOperator, as_matrix, forward, inverse
from utils.error_handler import ConfigError, DimensionError


class TestForwardInverse:
    def test_dct_of_constant(self):
        t = TransformOperator(TransformKind.DCT, 16)
        coeffs = forward(t, np.full(16, 2.5))
        expected = np.zeros(16)
        expected[0] = 2.5 * 4.0
        np.testing.assert_allclose(coeffs, expected, atol=1e-12)

    def test_dct_inverse_of_dc(self):
        t = TransformOperator("dct", 9)
        c = np.zeros(9)
        c[0] = 3.0 * 3.0
        np.testing.assert_allclose(inverse(t, c), np.full(9, 3.0), atol=1e-12)

    def test_haar_example(self):
        t = TransformOperator(TransformKind.HAAR, 4)
        np.testing.assert_allclose(forward(t, np.array([1.0, 1.0, -1.0, -1.0])), [0.0, 2.0, 0.0, 0.0], atol=1e-12)

    def test_identity(self, rng):
        f = rng.standard_normal(5)
        t = TransformOperator("identity", 5)
        assert np.array_equal(forward(t, f), f)
        assert np.array_equal(inverse(t, f), f)

    @pytest.mark.parametrize("kind", ["identity", "dct", "haar"])
    def test_round_trip(self, kind):
        f = np.array([5.0, -1.0, 2.0, 0.0])
        t = TransformOperator(kind, 4)
        np.testing.assert_allclose(inverse(t, forward(t, f)), f, atol=1e-10)

    @pytest.mark.parametrize("kind", ["dct", "haar"])
    def test_columns_are_independent(self, rng, kind):
        t = TransformOperator(kind, 8)
        img = rng.standard_normal((8, 3))
        np.testing.assert_allclose(t.forward(img)[:, 1], t.forward(img[:, 1]), atol=1e-12)

    def test_partial_haar_depth(self, rng):
        f = rng.standard_normal(8)
        assert np.array_equal(TransformOperator("haar", 8, levels=0).forward(f), f)
        one_level = TransformOperator("haar", 8, levels=1).forward(f)
        np.testing.assert_allclose(one_level[:4], (f[0::2] + f[1::2]) / np.sqrt(2.0))
        np.testing.assert_allclose(one_level[4:], (f[0::2] - f[1::2]) / np.sqrt(2.0))


class TestAsMatrix:
    def test_identity(self):
        np.testing.assert_array_equal(as_matrix(TransformOperator("identity", 3)), np.eye(3))

    @pytest.mark.parametrize("kind", ["dct", "haar"])
    def test_orthonormal(self, kind):
        psi = as_matrix(TransformOperator(kind, 16))
        np.testing.assert_allclose(psi @ psi.T, np.eye(16), atol=1e-10)

    @pytest.mark.parametrize("kind", ["identity", "dct", "haar"])
    def test_matches_fast_path(self, rng, kind):
        t = TransformOperator(kind, 32)
        f = rng.standard_normal(32)
        np.testing.assert_allclose(as_matrix(t) @ f, forward(t, f), atol=1e-10)
        np.testing.assert_allclose(as_matrix(t).T @ f, inverse(t, f), atol=1e-10)


class TestProperties:
    @pytest.mark.parametrize("kind", ["dct", "haar"])
    @pytest.mark.parametrize("n", [8, 64, 256])
    def test_parseval(self, rng, kind, n):
        signals = rng.standard_normal((n, 1000))
        coeffs = TransformOperator(kind, n).forward(signals)
        np.testing.assert_allclose(
            np.linalg.norm(coeffs, axis=0), np.linalg.norm(signals, axis=0), rtol=1e-10
        )

    def test_haar_sparsity_of_piecewise_constant(self, rng):
        n = 64
        t = TransformOperator("haar", n)
        for segments in (1, 2, 3, 5):
            breaks = np.sort(rng.choice(np.arange(1, n), size=segments - 1, replace=False))
            f = np.zeros(n)
            for start, end in zip(np.r_[0, breaks], np.r_[breaks, n]):
                f[start:end] = rng.standard_normal()
            nonzeros = np.count_nonzero(np.abs(t.forward(f)) > 1e-10)
            assert nonzeros <= segments * (1 + 6)


class TestValidation:
    def test_haar_needs_power_of_two(self):
        with pytest.raises(ConfigError):
            TransformOperator("haar", 12)

    def test_haar_levels_range(self):
        with pytest.raises(ConfigError):
            TransformOperator("haar", 8, levels=4)
        assert TransformOperator("haar", 8).levels == 3

    def test_unknown_kind(self):
        with pytest.raises(ConfigError):
            TransformOperator("fourier", 8)

    def test_shape_mismatch(self):
        with pytest.raises(DimensionError):
            TransformOperator("dct", 8).forward(np.ones(7))
