import math

import numpy as np
import pytest

from chebdiff2d import (CoeffGrid, MetricSpec, evaluate_metric, l2_omega_norm,
                        lq_coefficient_bound, lq_omega_norm,
                        nikolskii_explicit_bound, parse_metric, sup_norm,
                        synthesize)
from conftest import random_grid


class TestL2:
    def test_single_entry(self):
        assert l2_omega_norm(CoeffGrid([((4, 7), 3.0)])) == 3.0

    def test_pythagorean(self):
        grid = CoeffGrid([((0, 0), 3.0), ((1, 1), 4.0)])
        assert l2_omega_norm(grid) == pytest.approx(5.0, abs=1e-14)

    def test_matches_quadrature(self, rng):
        for _ in range(20):
            grid = random_grid(rng, 24, 24, fill=0.4)
            assert lq_omega_norm(grid, 2.0) == pytest.approx(
                l2_omega_norm(grid), rel=1e-10)


class TestLq:
    def test_constant_function(self):
        grid = CoeffGrid([((0, 0), math.pi)])  # the constant 1
        for q in (1.0, 2.0, 3.0, 4.0, 7.5):
            assert lq_omega_norm(grid, q, quad_n=9) == pytest.approx(
                math.pi ** (2.0 / q), rel=1e-12)

    def test_invalid_q(self):
        with pytest.raises(ValueError):
            lq_omega_norm(CoeffGrid([((0, 0), 1.0)]), 0.5)

    def test_monotone_in_q_after_measure_normalization(self, rng):
        # Jensen under the probability measure omega / pi^2
        for _ in range(10):
            grid = random_grid(rng, 10, 10, fill=0.6)
            normalized = [lq_omega_norm(grid, q) / math.pi ** (2.0 / q)
                          for q in (2.0, 4.0, 8.0)]
            assert normalized[0] <= normalized[1] * (1 + 1e-12)
            assert normalized[1] <= normalized[2] * (1 + 1e-12)


class TestSupNorm:
    def test_tensor_peak_at_corner(self):
        for k, j in [(1, 1), (3, 2), (5, 5)]:
            grid = CoeffGrid([((k, j), 1.0)])
            assert sup_norm(grid, 257) == pytest.approx(2 / math.pi, rel=1e-10)

    def test_zero_grid(self):
        assert sup_norm(CoeffGrid(), 17) == 0.0

    def test_dominates_samples(self, rng):
        grid = random_grid(rng, 9, 9)
        peak = sup_norm(grid, 257)
        for _ in range(100):
            t, u = rng.uniform(-1, 1, size=2)
            assert abs(synthesize(grid, t, u)) <= peak * (1 + 1e-9) + 1e-12

    def test_nondecreasing_on_nested_grids(self, rng):
        grid = random_grid(rng, 12, 12)
        # grids with M = 2^e + 1 are nested
        values = [sup_norm(grid, 2**e + 1) for e in range(2, 9)]
        assert all(a <= b + 1e-15 for a, b in zip(values, values[1:]))


class TestCoefficientBound:
    def test_q2_is_l2(self, rng):
        grid = random_grid(rng, 7, 7, fill=0.5)
        assert lq_coefficient_bound(grid, 2.0) == pytest.approx(
            l2_omega_norm(grid), rel=1e-14)

    def test_single_entry_value(self):
        grid = CoeffGrid([((3, 2), 1.0)])
        assert lq_coefficient_bound(grid, 4.0) == pytest.approx(
            6.0**0.25, rel=1e-12)
        assert 6.0**0.25 == pytest.approx(1.5651, abs=1e-4)

    def test_nondecreasing_in_q(self, rng):
        grid = random_grid(rng, 8, 8)
        values = [lq_coefficient_bound(grid, q) for q in (2.0, 3.0, 4.0, 8.0, 64.0)]
        assert all(a <= b + 1e-15 for a, b in zip(values, values[1:]))

    def test_q_range(self):
        grid = CoeffGrid([((1, 1), 1.0)])
        with pytest.raises(ValueError):
            lq_coefficient_bound(grid, 1.5)
        with pytest.raises(ValueError):
            lq_coefficient_bound(grid, math.inf)

    def test_bounds_lq_with_small_constant(self, rng):
        # the comparison constant is unspecified a priori; empirically it
        # stays below 3 (in fact below 1) on random grids
        worst = 0.0
        for _ in range(200):
            grid = random_grid(rng, 12, 12)
            for q in (2.0, 4.0, 8.0):
                worst = max(worst, lq_omega_norm(grid, q)
                            / lq_coefficient_bound(grid, q))
        assert worst <= 3.0


class TestNikolskii:
    def test_explicit_values(self):
        assert nikolskii_explicit_bound(0, 0) == pytest.approx(2 / math.pi)
        assert nikolskii_explicit_bound(3, 1) == pytest.approx(
            (2 / math.pi) * math.sqrt(8))

    def test_valid_for_constant_basis_member(self):
        grid = CoeffGrid([((0, 0), 1.0)])
        assert sup_norm(grid, 9) <= nikolskii_explicit_bound(0, 0) * l2_omega_norm(grid)

    def test_holds_on_random_polynomials(self, rng):
        bound = nikolskii_explicit_bound(16, 16)
        for _ in range(300):
            grid = random_grid(rng, 16, 16)
            assert sup_norm(grid, 257) <= bound * l2_omega_norm(grid)


class TestMetricSpec:
    def test_parse(self):
        assert parse_metric("l2w") == MetricSpec("l2w")
        assert parse_metric("sup") == MetricSpec("sup")
        m = parse_metric("lqw:4")
        assert m.kind == "lqw" and m.q == 4.0
        assert m.label == "lqw:4"
        with pytest.raises(ValueError):
            parse_metric("linf")

    def test_validation(self):
        with pytest.raises(ValueError):
            MetricSpec("lqw")  # missing q
        with pytest.raises(ValueError):
            MetricSpec("lqw", q=1.5)
        with pytest.raises(ValueError):
            MetricSpec("l2w", q=3.0)
        with pytest.raises(ValueError):
            MetricSpec("sup", eval_grid=1)

    def test_evaluate_dispatch(self, rng):
        grid = random_grid(rng, 6, 6)
        assert evaluate_metric(grid, MetricSpec("l2w")) == l2_omega_norm(grid)
        assert evaluate_metric(grid, MetricSpec("sup", eval_grid=65)) == \
            sup_norm(grid, 65)
        assert evaluate_metric(grid, MetricSpec("lqw", q=2.0)) == pytest.approx(
            l2_omega_norm(grid), rel=1e-10)
