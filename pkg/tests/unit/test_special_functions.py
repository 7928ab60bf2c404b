"""
Unit Tests for Special Functions and Series Oracles
"""
import math

import numpy as np
import pytest

from src.core.errors import ArgumentTooSmall, DomainError, OrderUnsupported, RayUnsupported
from src.numerics import series
from src.numerics.special_functions import (
    CONNECTION_CONSTANTS,
    KernelBasis,
    Ray,
    bessel_j,
    bessel_k,
    bessel_k_integral,
    bessel_y,
    classify_ray,
    hankel2,
    hankel2_asymptotic,
    hankel_completion,
    kernel,
    measure_connection_constant,
    paper_kernel,
    paper_kernel_values,
)

J0_1 = 0.7651976865579666
Y0_1 = 0.08825696421567696
K0_2 = 0.11389387274953344


class TestSeriesOracles:
    """Test the power-series and asymptotic-series oracles"""

    def test_j0_reference(self):
        assert series.bessel_j_series(0, 1.0) == pytest.approx(J0_1, abs=1e-15)

    def test_y0_reference(self):
        assert series.bessel_y_series(0, 1.0) == pytest.approx(Y0_1, abs=1e-14)

    def test_k0_reference(self):
        assert series.bessel_k_series(0, 2.0) == pytest.approx(K0_2, rel=1e-12)

    def test_first_zeros(self):
        j0_zero = series.find_root(lambda x: series.bessel_j_series(0, x), 2.0, 3.0)
        y0_zero = series.find_root(lambda x: series.bessel_y_series(0, x), 0.5, 1.5)
        assert j0_zero == pytest.approx(2.404825557695773, abs=1e-12)
        assert y0_zero == pytest.approx(0.8935769662791675, abs=1e-12)

    @pytest.mark.parametrize("order", [0, 1, 2])
    @pytest.mark.parametrize("x", [0.1, 1.0, 4.5, 9.0])
    def test_series_match_scipy(self, order, x):
        assert series.bessel_j_series(order, x) == pytest.approx(bessel_j(order, x), abs=1e-11)
        assert series.bessel_y_series(order, x) == pytest.approx(bessel_y(order, x), rel=1e-10, abs=1e-11)

    @pytest.mark.parametrize("order", [0, 1, 2])
    @pytest.mark.parametrize("x", [0.05, 0.5, 1.0, 3.0])
    def test_k_series_match_scipy(self, order, x):
        assert series.bessel_k_series(order, x) == pytest.approx(bessel_k(order, x), rel=1e-10)

    @pytest.mark.parametrize("order", [0, 1])
    @pytest.mark.parametrize("x", [12.5, 13.0, 14.0])
    def test_branches_agree_in_overlap(self, order, x):
        j_asym, y_asym = series.bessel_jy_asymptotic(order, x)
        assert series.bessel_j_series(order, x) == pytest.approx(j_asym, abs=1e-8)
        assert series.bessel_y_series(order, x) == pytest.approx(y_asym, abs=1e-8)

    @pytest.mark.parametrize("x", [20.0, 50.0, 200.0])
    def test_asymptotic_branch_matches_scipy(self, x):
        assert series.hankel2_oracle(0, x) == pytest.approx(hankel2(0, x), abs=1e-12)


class TestBessel:
    """Test scipy-backed Bessel kernels"""

    def test_reference_values(self):
        assert bessel_j(0, 1.0) == pytest.approx(J0_1, abs=1e-15)
        assert bessel_y(0, 1.0) == pytest.approx(Y0_1, abs=1e-15)
        assert bessel_k(0, 2.0) == pytest.approx(K0_2, rel=1e-14)

    def test_unsupported_order(self):
        with pytest.raises(OrderUnsupported):
            bessel_j(3, 1.0)
        with pytest.raises(OrderUnsupported):
            hankel2(-1, 1.0)

    def test_y_and_k_need_positive_argument(self):
        with pytest.raises(DomainError):
            bessel_y(0, 0.0)
        with pytest.raises(DomainError):
            bessel_k(1, -1.0)

    def test_j_argument_cap(self):
        with pytest.raises(DomainError):
            bessel_j(0, 2e4)

    @pytest.mark.parametrize("x", np.geomspace(0.1, 100.0, 9).tolist())
    def test_wronskian(self, x):
        w = bessel_j(0, x) * bessel_y(1, x) - bessel_j(1, x) * bessel_y(0, x)
        assert w == pytest.approx(-2.0 / (math.pi * x), rel=1e-9)

    @pytest.mark.parametrize("order", [0, 1, 2])
    def test_k_integral_representation(self, order, spec):
        assert bessel_k_integral(order, 2.0, spec) == pytest.approx(bessel_k(order, 2.0), rel=1e-10)


class TestHankel:
    """Test H^(2) on both rays and its large-argument form"""

    def test_real_ray(self):
        assert hankel2(0, 1.0) == pytest.approx(complex(J0_1, -Y0_1), abs=1e-15)

    def test_negative_imaginary_ray(self):
        assert hankel2(0, -2j) == pytest.approx(2j / math.pi * K0_2, rel=1e-14)

    @pytest.mark.parametrize("z", [0.0, 1 + 1j, 2j, -1.0])
    def test_unsupported_rays(self, z):
        with pytest.raises(RayUnsupported):
            hankel2(0, z)

    def test_classify_ray(self):
        assert classify_ray(3.0) == (Ray.REAL, 3.0)
        assert classify_ray(-4j) == (Ray.NEGATIVE_IMAGINARY, 4.0)
        assert classify_ray(0.0, allow_zero=True) == (Ray.REAL, 0.0)

    @pytest.mark.parametrize("order", [0, 1, 2])
    @pytest.mark.parametrize("x", [5.0, 12.0, 30.0])
    def test_connection_constant_is_constant(self, order, x):
        ratio = hankel2(order, -1j * x) / bessel_k(order, x)
        assert ratio == pytest.approx(CONNECTION_CONSTANTS[order], rel=1e-14)
        assert abs(ratio) == pytest.approx(2.0 / math.pi, rel=1e-14)

    @pytest.mark.parametrize("order", [0, 1, 2])
    def test_connection_constant_measured(self, order):
        m = measure_connection_constant(order)
        assert m.deviation < 1e-2
        assert m.library_ratio == pytest.approx(m.frozen, rel=1e-10)

    def test_asymptotic_form_close_at_twenty(self):
        for z in (20.0, -20j):
            err = abs(hankel2_asymptotic(0, z) - hankel2(0, z)) / abs(hankel2(0, z))
            assert err < 1e-2

    def test_asymptotic_error_decreases(self):
        errors = [abs(hankel2_asymptotic(0, z) - hankel2(0, z)) / abs(hankel2(0, z)) for z in (5.0, 10.0, 20.0, 40.0)]
        assert errors == sorted(errors, reverse=True)

    def test_asymptotic_below_threshold(self):
        with pytest.raises(ArgumentTooSmall):
            hankel2_asymptotic(0, 3.0)


class TestPaperKernel:
    """Test the finite-interval kernel and its completion"""

    def test_values_at_origin(self, spec):
        assert paper_kernel(0, 0.0, spec) == pytest.approx(1.0, abs=1e-13)
        assert paper_kernel(1, 0.0, spec) == pytest.approx(2j / math.pi, abs=1e-13)

    def test_order_two_singular_at_origin(self, spec):
        with pytest.raises(DomainError):
            paper_kernel(2, 0.0, spec)

    def test_off_ray_rejected(self, spec):
        with pytest.raises(RayUnsupported):
            paper_kernel(0, 1 + 1j, spec)

    def test_shared_tree_matches_single(self, spec):
        zs = [0.5, 2.0, -3j]
        batch = paper_kernel_values(1, zs, spec)
        for z, value in zip(zs, batch):
            assert value == pytest.approx(paper_kernel(1, z, spec), abs=1e-11)

    @pytest.mark.parametrize("z,delta", [(1.0, 1e-4), (5.0, 1e-4), (-2j, -1e-4j)])
    def test_first_recurrence(self, z, delta, spec):
        p0 = paper_kernel_values(0, [z - delta, z + delta], spec)
        assert (p0[1] - p0[0]) / (2 * delta) == pytest.approx(-paper_kernel(1, z, spec), rel=1e-6)

    @pytest.mark.parametrize("z", [0.5, 1.0, 2.0, 5.0, 10.0])
    def test_completion_closes_the_gap(self, z, spec):
        completed = paper_kernel(0, z, spec) + hankel_completion(z, spec)
        assert completed == pytest.approx(hankel2(0, z), abs=1e-9)

    def test_completion_needs_real_argument(self, spec):
        with pytest.raises(RayUnsupported):
            hankel_completion(-2j, spec)

    def test_kernel_dispatch(self, spec):
        assert kernel(1, 3.0, KernelBasis.STANDARD_HANKEL) == hankel2(1, 3.0)
        assert kernel(1, 3.0, "paper_kernel", spec) == paper_kernel(1, 3.0, spec)
