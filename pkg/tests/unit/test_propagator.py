"""
Unit Tests for the Evanescent Propagator
"""
import math

import pytest

from src.core.errors import DomainError, LightconeSingular
from src.numerics.special_functions import KernelBasis, bessel_k
from src.physics.geometry import Regime, lowest_cutoff, rest_frame
from src.physics.propagator import (
    EvaluationMethod,
    boost_defect,
    boost_generator,
    closed_form_argument,
    d_closed,
    d_evanescent_quadrature,
    evanescent_integral,
    evanescent_integrals,
    phase_factor,
)


class TestQuadraturePropagator:
    """Test D by quadrature"""

    def test_anchor_value(self, waveguide, spec):
        sample = d_evanescent_quadrature(waveguide, 0.0, 0.0, spec)
        assert sample.value == pytest.approx(0.125, abs=1e-12)
        assert sample.method is EvaluationMethod.EVANESCENT_QUADRATURE
        assert sample.regime is Regime.LIGHTLIKE

    def test_anchor_independent_of_geometry(self, unit_waveguide, spec):
        assert d_evanescent_quadrature(unit_waveguide, 0.0, 0.0, spec).value == pytest.approx(0.125, abs=1e-12)

    def test_finite_on_light_cone(self, waveguide, spec):
        value = d_evanescent_quadrature(waveguide, 2.0, 2.0, spec).value
        assert math.isfinite(value.real) and math.isfinite(value.imag)

    def test_real_at_equal_time(self, waveguide, spec):
        value = d_evanescent_quadrature(waveguide, 0.0, 3.0, spec).value
        assert value.real > 0
        assert value.imag == pytest.approx(0.0, abs=1e-15)

    def test_decays_along_the_guide(self, waveguide, spec):
        values = [abs(d_evanescent_quadrature(waveguide, 0.0, r, spec).value) for r in (1.0, 2.0, 4.0, 8.0)]
        assert values == sorted(values, reverse=True)

    def test_negative_coordinates(self, waveguide, spec):
        with pytest.raises(DomainError):
            d_evanescent_quadrature(waveguide, -1.0, 0.0, spec)

    def test_batch_matches_single_points(self, waveguide, spec):
        points = [(0.0, 1.0), (2.0, 0.5), (3.0, 3.0)]
        batch = evanescent_integrals(waveguide, points, spec).values
        for (t, r), value in zip(points, batch):
            assert value == pytest.approx(d_evanescent_quadrature(waveguide, t, r, spec).value, abs=1e-11)

    @pytest.mark.parametrize("t,r", [(1.0, 0.5), (3.0, 2.0), (0.5, 4.0), (7.0, 0.0)])
    def test_time_reversal_conjugates(self, waveguide, spec, t, r):
        forward = evanescent_integral(waveguide, t, r, spec).value
        backward = evanescent_integral(waveguide, -t, r, spec).value
        assert abs(backward - forward.conjugate()) <= 1e-15

    def test_bounded_by_anchor(self, waveguide, spec):
        for t in (0.0, 0.7, 2.0, 9.0):
            for r in (0.0, 0.4, 3.0):
                assert abs(d_evanescent_quadrature(waveguide, t, r, spec).value) <= 0.125 + 1e-14


class TestClosedForms:
    """Test the closed forms in both kernel bases"""

    def test_argument_timelike(self, waveguide):
        assert closed_form_argument(waveguide, 5.0, 3.0) == pytest.approx(4.0 * math.pi / 2)

    def test_argument_spacelike(self, waveguide):
        assert closed_form_argument(waveguide, 3.0, 5.0) == pytest.approx(-4j * math.pi / 2)

    def test_light_cone_singular(self, waveguide):
        for basis in KernelBasis:
            with pytest.raises(LightconeSingular):
                d_closed(waveguide, 1.5, 1.5, basis)

    @pytest.mark.parametrize("u", [0.5, 2.0, 11.0, 20.0])
    def test_paper_kernel_exact_at_rest(self, waveguide, spec, u):
        t = u / lowest_cutoff(waveguide)
        quadrature = d_evanescent_quadrature(waveguide, t, 0.0, spec).value
        closed = d_closed(waveguide, t, 0.0, KernelBasis.PAPER_KERNEL, spec).value
        assert abs(quadrature - closed) / abs(quadrature) < 1e-8

    @pytest.mark.parametrize("u", [1.0, 3.0, 7.0, 19.0])
    def test_paper_kernel_exact_at_equal_time(self, waveguide, spec, u):
        r = u / lowest_cutoff(waveguide)
        quadrature = d_evanescent_quadrature(waveguide, 0.0, r, spec).value
        closed = d_closed(waveguide, 0.0, r, KernelBasis.PAPER_KERNEL, spec).value
        assert abs(quadrature - closed) / abs(quadrature) < 1e-8

    def test_general_point_through_rest_frame(self, waveguide, spec):
        t, r = 5.0, 3.0
        quadrature = d_evanescent_quadrature(waveguide, *rest_frame(t, r), spec).value
        closed = d_closed(waveguide, t, r, KernelBasis.PAPER_KERNEL, spec).value
        assert abs(quadrature - closed) / abs(quadrature) < 1e-8

    def test_standard_hankel_spacelike_is_imaginary(self, waveguide):
        r = 2.0
        value = d_closed(waveguide, 0.0, r, KernelBasis.STANDARD_HANKEL).value
        expected = (2j / math.pi) * bessel_k(0, lowest_cutoff(waveguide) * r) / 8.0
        assert value == pytest.approx(expected, rel=1e-14)

    def test_standard_hankel_differs_from_quadrature(self, waveguide, spec):
        quadrature = d_evanescent_quadrature(waveguide, 0.0, 2.0, spec).value
        hankel = d_closed(waveguide, 0.0, 2.0, KernelBasis.STANDARD_HANKEL).value
        assert abs(quadrature - hankel) / abs(quadrature) > 1e-2


class TestBoostDefect:
    """Test the non-invariance of the half-range integral"""

    @pytest.mark.parametrize("t,r", [(1.0, 2.0), (3.0, 1.0), (0.5, 0.5)])
    def test_generator_matches_closed_expression(self, waveguide, spec, t, r):
        numeric = boost_generator(waveguide, t, r, spec)
        analytic = boost_defect(waveguide, t, r)
        assert abs(numeric - analytic) / abs(analytic) < 1e-6

    def test_vanishes_at_origin(self, waveguide):
        assert boost_defect(waveguide, 0.0, 0.0) == 0


class TestPhaseFactor:
    """Test the transverse phase"""

    def test_quarter_turn(self, waveguide):
        assert phase_factor(waveguide, waveguide.b2 / 2) == pytest.approx(1j, abs=1e-15)

    def test_unit_modulus(self, waveguide):
        assert abs(phase_factor(waveguide, 0.37)) == pytest.approx(1.0, rel=1e-15)
