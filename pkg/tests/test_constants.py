import math
import os
import sys

import numpy as np
import pytest

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from conftest import FAMILIES, integer_family, residue_family
from ingham.ball_analysis import alpha_m_plus_1, ball_volume, eigen_profile, min_h_squared
from ingham.constants import (
    alpha_j,
    alpha_j_prime,
    alpha_zero,
    assembly_lower_bound,
    class_alpha,
    covering_factor,
    exponent,
    theorem_constants,
)
from ingham.exceptions import HypothesisViolationError, SingletonClassError
from ingham.frequency_types import ConstantsMode, FrequencyFamily, PartitionedFamily
from ingham.gram_oracle import gram_matrix, riesz_bounds
from ingham.spectra import geometry, residue_partition


def geometric_radii(R0: float, m: int, count: int = 8, span: float = 1e-3):
    r_max = R0 / (2 * m)
    return [R0 + 2 * m * r for r in np.geomspace(span * r_max, r_max, count)]


def random_vectors(K: int, count: int, seed: int):
    rng = np.random.default_rng(seed)
    return rng.normal(size=(count, K)) + 1j * rng.normal(size=(count, K))


def two_classes(pf: PartitionedFamily) -> PartitionedFamily:
    """Residue split of a line, checkerboard split of a planar family."""
    if pf.m > 1:
        return pf
    if pf.dimension == 1:
        return residue_partition(pf.family, 2)
    parity = np.rint(pf.family.points).astype(int).sum(axis=1) % 2
    return PartitionedFamily(pf.family, {lbl: int(p) + 1 for lbl, p in zip(pf.family.labels, parity)}, 2)


class TestExponent:
    @pytest.mark.parametrize("m,N,expected", [(1, 1, 3), (1, 2, 5), (3, 1, 13), (2, 2, 10)])
    def test_values(self, m, N, expected):
        assert exponent(m, N) == expected

    def test_invalid(self):
        with pytest.raises(ValueError):
            exponent(0, 1)


class TestAlphaZero:
    """Upper constant"""

    def test_covering_factor(self):
        assert covering_factor(1, 1.0, 2 * math.pi) == pytest.approx(3.0)

    def test_interval_unit_gap(self):
        window = eigen_profile(1)
        alpha0_prime, alpha0 = alpha_zero(1, 1.0, 2 * math.pi, window)
        expected = 2 * math.pi * 0.5 / (0.25 * min_h_squared(window))
        assert alpha0_prime == pytest.approx(expected, rel=1e-12)
        assert alpha0_prime == pytest.approx(4 * math.pi, rel=1e-6)
        assert alpha0 == pytest.approx(3 * alpha0_prime, rel=1e-12)

    def test_monotone_in_radius(self):
        window = eigen_profile(2)
        _, small = alpha_zero(2, 1.0, 0.3, window)
        _, large = alpha_zero(2, 1.0, 9.6, window)
        assert small <= large

    def test_invalid_gap(self):
        with pytest.raises(ValueError):
            alpha_zero(1, math.inf, 1.0, eigen_profile(1))

    @pytest.mark.parametrize("name", list(FAMILIES))
    def test_upper_contract(self, name):
        pf = FAMILIES[name]()
        window = eigen_profile(pf.dimension)
        geo = geometry(pf, window.mu)
        R = 2 * geo.critical_radius
        _, alpha0 = alpha_zero(pf.dimension, geo.gamma, R, window)
        gram = gram_matrix(pf.family, R)
        for x in random_vectors(pf.family.size, 100, seed=1):
            assert gram.quadratic_form(x) <= alpha0 * float(np.sum(np.abs(x) ** 2))


class TestAlphaJ:
    """Class lower constant"""

    def test_interval_class_contract(self):
        pf = integer_family()
        window = eigen_profile(1)
        geo = geometry(pf, window.mu)
        r = math.pi / 10
        value = alpha_j(geo, 1, r, window)
        assert value > 0
        bounds = riesz_bounds(gram_matrix(pf.family, geo.class_radii[0] + r))
        assert value * r <= bounds.lambda_min

    def test_bounded_by_value_at_origin(self):
        pf = integer_family()
        window = eigen_profile(1)
        geo = geometry(pf, window.mu)
        r = 0.2
        R_j, s = geo.class_radii[0], geo.class_gammas[0] / 2
        at_origin = (R_j + r) ** 2 * s ** 2 * window.h_at_zero ** 2
        ceiling = 2 * math.pi * (2 * R_j + r) * s / at_origin
        assert alpha_j(geo, 1, r, window) <= ceiling * (1 + 1e-12)

    def test_singleton_rejected(self):
        pf = PartitionedFamily(FrequencyFamily(1, [0.0, 1.0, 5.0]), {0: 1, 1: 1, 2: 2}, 2)
        window = eigen_profile(1)
        geo = geometry(pf, window.mu)
        with pytest.raises(SingletonClassError, match="use singleton path"):
            alpha_j(geo, 2, 0.1, window)
        assert class_alpha(geo, 2, 0.1, window) == pytest.approx(ball_volume(1, 0.1) / 0.1)

    def test_uniform_mode_is_smaller(self):
        pf = integer_family()
        window = eigen_profile(1)
        geo = geometry(pf, window.mu)
        r = 0.05
        sharp = alpha_j(geo, 1, r, window, ConstantsMode.SHARP)
        uniform = alpha_j(geo, 1, r, window, ConstantsMode.PAPER_UNIFORM)
        assert uniform <= sharp

    @pytest.mark.parametrize("name", ["integers", "perturbed", "residue", "lattice"])
    def test_random_class_contract(self, name):
        pf = FAMILIES[name]()
        window = eigen_profile(pf.dimension)
        geo = geometry(pf, window.mu)
        r = geo.critical_radius / (4 * pf.m)
        for j in range(1, pf.m + 1):
            value = alpha_j(geo, j, r, window)
            members = pf.family.subfamily(pf.members(j))
            gram = gram_matrix(members, geo.class_radii[j - 1] + r)
            for x in random_vectors(members.size, 100, seed=j):
                assert value * r * float(np.sum(np.abs(x) ** 2)) <= gram.quadratic_form(x)


class TestAlphaJPrime:
    """Enlarged-class lower constant"""

    def _setup(self, pf):
        window = eigen_profile(pf.dimension)
        geo = geometry(pf, window.mu)
        r = geo.critical_radius / (4 * pf.m)
        _, alpha0 = alpha_zero(pf.dimension, geo.gamma, 2 * geo.critical_radius, window)
        alpha_m1 = alpha_m_plus_1(pf.dimension, geo.critical_radius * geo.gamma / (2 * pf.m))
        return window, geo, r, alpha0, alpha_m1

    def test_denominator_exceeds_four(self):
        pf = residue_family()
        window, geo, r, alpha0, alpha_m1 = self._setup(pf)
        a_j = alpha_j(geo, 1, r, window)
        prime = alpha_j_prime(geo, 1, r, a_j, alpha_m1, alpha0, window)
        assert 0 < prime < a_j * alpha_m1 ** 2 * geo.gamma ** 4 / 4

    def test_radius_hypothesis(self):
        pf = residue_family()
        window, geo, r, alpha0, alpha_m1 = self._setup(pf)
        with pytest.raises(HypothesisViolationError):
            alpha_j_prime(geo, 1, geo.critical_radius, 1.0, alpha_m1, alpha0, window)

    @pytest.mark.parametrize("name", list(FAMILIES))
    def test_enlarged_class_contract(self, name):
        pf = two_classes(FAMILIES[name]())
        window, geo, r, alpha0, alpha_m1 = self._setup(pf)
        for j in range(1, pf.m + 1):
            a_j = alpha_j(geo, j, r, window)
            prime = alpha_j_prime(geo, j, r, a_j, alpha_m1, alpha0, window)
            members = pf.members(j)
            outsiders = [lbl for lbl in pf.family.labels if lbl not in members]
            for k_prime in [None] + outsiders[:3]:
                labels = members if k_prime is None else members + (k_prime,)
                gram = gram_matrix(pf.family.subfamily(labels), geo.class_radii[j - 1] + 2 * r)
                for x in random_vectors(len(labels), 100, seed=len(labels)):
                    assert prime * r ** 5 * float(np.sum(np.abs(x) ** 2)) <= gram.quadratic_form(x)


class TestTheoremConstants:
    """The full chain"""

    def test_integers_at_one_and_a_half_pi(self):
        pf = integer_family()
        R = 1.5 * math.pi
        chain = theorem_constants(pf, R)
        assert chain.r == pytest.approx(math.pi / 4)
        assert chain.exponent == 3
        assert chain.c1 == pytest.approx(chain.L / (R - math.pi) ** 3)
        bounds = riesz_bounds(gram_matrix(pf.family, R))
        assert chain.L <= bounds.lambda_min
        assert bounds.lambda_max <= chain.c2

    def test_all_members_positive(self):
        chain = theorem_constants(residue_family(), 1.4 * math.pi)
        values = [chain.r, chain.alpha0_prime, chain.alpha0, chain.alpha0_small, chain.alpha_m1,
                  chain.window_g0, chain.window_G0, chain.L, chain.c1, chain.c2]
        values += list(chain.alpha_j) + list(chain.alpha_j_prime) + list(chain.p_factors)
        assert all(v > 0 and math.isfinite(v) for v in values)

    def test_c2_independent_of_radius(self):
        pf = integer_family()
        first = theorem_constants(pf, 1.2 * math.pi)
        second = theorem_constants(pf, 1.9 * math.pi)
        assert first.c2 == second.c2

    @pytest.mark.parametrize("R", [0.999 * math.pi, 0.5 * math.pi, 2.5 * math.pi])
    def test_radius_outside_range(self, R):
        with pytest.raises(HypothesisViolationError):
            theorem_constants(integer_family(), R)

    def test_upper_end_is_inclusive(self):
        chain = theorem_constants(integer_family(), 2 * math.pi)
        assert chain.r == pytest.approx(math.pi / 2)

    def test_uniform_mode_is_weaker(self):
        pf = residue_family()
        R = 1.5 * math.pi
        sharp = theorem_constants(pf, R, ConstantsMode.SHARP)
        uniform = theorem_constants(pf, R, ConstantsMode.PAPER_UNIFORM)
        assert uniform.L <= sharp.L
        assert uniform.c2 == sharp.c2
        assert uniform.mode is ConstantsMode.PAPER_UNIFORM

    def test_singleton_class_chain(self):
        pf = PartitionedFamily(FrequencyFamily(1, [0.0, 1.0, 2.0, 10.0]), {0: 1, 1: 1, 2: 1, 3: 2}, 2)
        R = 1.5 * math.pi
        chain = theorem_constants(pf, R)
        assert chain.alpha_j[1] == pytest.approx(2.0)
        bounds = riesz_bounds(gram_matrix(pf.family, R))
        assert 0 < chain.L <= bounds.lambda_min

    @pytest.mark.parametrize("name", ["integers", "perturbed", "residue", "lattice"])
    def test_certificates_over_radius_grid(self, name):
        pf = FAMILIES[name]()
        window = eigen_profile(pf.dimension)
        R0 = geometry(pf, window.mu).critical_radius
        for R in geometric_radii(R0, pf.m):
            chain = theorem_constants(pf, R, window=window)
            bounds = riesz_bounds(gram_matrix(pf.family, R))
            assert chain.L <= bounds.lambda_min * (1 + 1e-9)
            assert bounds.lambda_max <= chain.c2 * (1 + 1e-9)

    def test_slope_of_lower_bound(self):
        pf = integer_family()
        R0 = math.pi
        radii = geometric_radii(R0, 1)[:4]
        chains = [theorem_constants(pf, R) for R in radii]
        slope = np.polyfit(np.log([c.r for c in chains]), np.log([c.L for c in chains]), 1)[0]
        assert slope >= 3 - 0.1

    @pytest.mark.parametrize("s", [0.5, 2.0])
    def test_homogeneity(self, s):
        pf = integer_family(11)
        R = 1.6 * math.pi
        base = riesz_bounds(gram_matrix(pf.family, R))
        scaled_pf = pf.scaled(s)
        scaled = riesz_bounds(gram_matrix(scaled_pf.family, R / s))
        assert scaled.lambda_min == pytest.approx(base.lambda_min / s, rel=1e-9)
        chain = theorem_constants(scaled_pf, R / s)
        assert chain.L <= scaled.lambda_min
        assert scaled.lambda_max <= chain.c2

    def test_assembly_bound_with_infinite_factor(self):
        chain = theorem_constants(integer_family(), 1.5 * math.pi)
        assert assembly_lower_bound(chain, chain.p_factors) == pytest.approx(chain.L)
        assert assembly_lower_bound(chain, (math.inf,)) == 0.0

    def test_summary_and_dict(self):
        chain = theorem_constants(integer_family(), 1.5 * math.pi)
        data = chain.to_dict()
        assert data["mode"] == "sharp"
        assert isinstance(data["alpha_j"], list)
        assert "c1=" in chain.summary()
