import logging
import math
import os
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays
from scipy.linalg import eigvalsh

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from ingham.eigensolver import jacobi_eigh
from ingham.exceptions import ConvergenceError
from ingham.quadrature import adaptive_gauss_legendre, composite_gauss_legendre, gauss_legendre_rule, panel_nodes


class TestGaussLegendre:
    """Fixed and composite rules"""

    def test_weights_sum_to_interval_length(self):
        _, weights = gauss_legendre_rule(32)
        assert float(np.sum(weights)) == pytest.approx(2.0, abs=1e-14)

    def test_rule_is_cached_and_read_only(self):
        nodes, _ = gauss_legendre_rule(16)
        assert gauss_legendre_rule(16)[0] is nodes
        with pytest.raises(ValueError):
            nodes[0] = 0.0

    def test_exact_for_high_degree_polynomials(self):
        value = composite_gauss_legendre(lambda x: x ** 40, -1.0, 1.0, panels=1, order=32)
        assert value == pytest.approx(2.0 / 41.0, rel=1e-13)

    def test_composite_sine(self):
        assert composite_gauss_legendre(np.sin, 0.0, math.pi, panels=4) == pytest.approx(2.0, abs=1e-14)

    def test_panel_nodes_cover_interval(self):
        x, w = panel_nodes(2.0, 5.0, panels=3, order=8)
        assert x.shape == (24,)
        assert np.all((x > 2.0) & (x < 5.0))
        assert float(np.sum(w)) == pytest.approx(3.0, abs=1e-14)


class TestAdaptiveQuadrature:
    """Panel doubling"""

    def test_oscillatory_integrand(self):
        value = adaptive_gauss_legendre(lambda x: np.cos(200.0 * x), 0.0, 1.0, tol=1e-13)
        assert value == pytest.approx(math.sin(200.0) / 200.0, abs=1e-12)

    def test_vector_valued(self):
        value = adaptive_gauss_legendre(lambda x: np.vstack([x ** 2, np.exp(x)]), 0.0, 1.0, tol=1e-13)
        np.testing.assert_allclose(value, [1.0 / 3.0, math.e - 1.0], atol=1e-13)

    def test_warns_when_not_converged(self, caplog):
        with caplog.at_level(logging.WARNING, logger="ingham.quadrature"):
            value = adaptive_gauss_legendre(lambda x: np.sqrt(np.abs(x - 0.3)), 0.0, 1.0, tol=1e-16, max_doublings=2)
        assert "stopped at" in caplog.text
        exact = (2.0 / 3.0) * (0.3 ** 1.5 + 0.7 ** 1.5)
        assert value == pytest.approx(exact, abs=1e-3)


class TestJacobiEigh:
    """Cyclic Jacobi eigensolver"""

    def test_scaled_identity(self):
        values, vectors = jacobi_eigh(2 * math.pi * np.eye(5))
        np.testing.assert_allclose(values, 2 * math.pi)
        np.testing.assert_allclose(vectors, np.eye(5))

    @pytest.mark.parametrize("a,b", [(3.0, 1.0), (2.0, -0.5), (1.0, 1.0)])
    def test_two_by_two(self, a, b):
        values, _ = jacobi_eigh(np.array([[a, b], [b, a]]))
        np.testing.assert_allclose(values, [a - abs(b), a + abs(b)], rtol=1e-14, atol=1e-15)

    def test_random_gram_against_independent_solver(self):
        rng = np.random.default_rng(3)
        points = rng.uniform(0, 6, size=6)
        delta = points[:, None] - points[None, :]
        with np.errstate(invalid="ignore", divide="ignore"):
            G = np.where(delta == 0, 4.0, 2 * np.sin(2.0 * delta) / delta)
        values, _ = jacobi_eigh(G)
        reference = eigvalsh(G)
        np.testing.assert_allclose(values, reference, rtol=1e-9, atol=1e-12 * np.abs(reference).max())
        # lambda_min is a root of the characteristic polynomial
        sign, logdet = np.linalg.slogdet(G - values[0] * np.eye(6))
        assert sign == 0 or logdet < math.log(1e-6)

    def test_eigenpairs(self):
        rng = np.random.default_rng(5)
        a = rng.normal(size=(7, 7))
        A = a + a.T
        values, vectors = jacobi_eigh(A)
        np.testing.assert_allclose(vectors.T @ vectors, np.eye(7), atol=1e-12)
        np.testing.assert_allclose(A @ vectors, vectors * values, atol=1e-11)
        assert np.all(np.diff(values) >= 0)

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            jacobi_eigh(np.ones((2, 3)))

    def test_rejects_non_symmetric(self):
        with pytest.raises(ValueError):
            jacobi_eigh(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_convergence_failure_carries_matrix(self):
        A = np.array([[2.0, 1.0], [1.0, 3.0]])
        with pytest.raises(ConvergenceError) as exc:
            jacobi_eigh(A, max_sweeps=0)
        np.testing.assert_array_equal(exc.value.matrix, A)
        assert "did not converge" in str(exc.value)

    @given(arrays(np.float64, (6, 6), elements=st.floats(-10, 10, allow_nan=False, allow_infinity=False, allow_subnormal=False)))
    @settings(max_examples=40, deadline=None)
    def test_matches_lapack(self, a):
        A = a + a.T
        values, _ = jacobi_eigh(A)
        scale = max(1.0, float(np.linalg.norm(A)))
        np.testing.assert_allclose(values, eigvalsh(A), atol=1e-10 * scale)
