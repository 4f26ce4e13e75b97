"""Special functions and unit conversions."""

import math

import numpy as np
import pytest

from qkd_access.numerics import (
    AttenuationCoefficient,
    bessel_i0,
    binary_entropy,
    db_to_linear,
    holevo_g,
    linear_to_db,
)

from oracles import bessel_i0_series


class TestBinaryEntropy:
    def test_maximum(self):
        assert binary_entropy(0.5) == 1.0

    def test_endpoints(self):
        assert binary_entropy(0.0) == 0.0
        assert binary_entropy(1.0) == 0.0

    def test_reference_value(self):
        # high-precision evaluation of -x log2 x - (1-x) log2 (1-x) at x=0.11
        assert binary_entropy(0.11) == pytest.approx(0.4999159581645280, abs=1e-15)

    def test_symmetry(self):
        rng = np.random.default_rng(1)
        for x in rng.random(1000):
            assert abs(binary_entropy(x) - binary_entropy(1.0 - x)) < 1e-12

    @pytest.mark.parametrize("bad", [-0.1, 1.1, 2.0])
    def test_domain(self, bad):
        with pytest.raises(ValueError):
            binary_entropy(bad)


class TestHolevoG:
    def test_vacuum(self):
        assert holevo_g(1.0) == 0.0

    def test_exact_small_integer(self):
        # g(3) = 2 log2 2 - 1 log2 1 = 2
        assert holevo_g(3.0) == pytest.approx(2.0, abs=1e-14)

    def test_reference_value(self):
        # g(5) = 3 log2 3 - 2
        assert holevo_g(5.0) == pytest.approx(2.7548875021634685, abs=1e-14)

    def test_monotone(self):
        rng = np.random.default_rng(2)
        xs = 1.0 + 50.0 * rng.random(500)
        for x in xs:
            assert holevo_g(x + 0.5) > holevo_g(x)

    def test_clamp_window(self):
        assert holevo_g(1.0 - 1e-10) == 0.0

    def test_rejects_below_tolerance(self):
        with pytest.raises(ValueError):
            holevo_g(1.0 - 1e-6)


class TestBesselI0:
    def test_zero(self):
        assert bessel_i0(0.0) == 1.0

    def test_reference_values(self):
        assert bessel_i0(1.0) == pytest.approx(1.2660658777520083, rel=1e-12)
        assert bessel_i0(2.0) == pytest.approx(2.2795853023360673, rel=1e-12)

    def test_series_oracle_agreement(self):
        for x in np.linspace(0.0, 10.0, 201):
            ref = bessel_i0_series(float(x))
            assert bessel_i0(float(x)) == pytest.approx(ref, rel=1e-10)

    def test_wide_range(self):
        # relative error stays tight out to x = 50 (60-term reference)
        for x in np.linspace(10.0, 50.0, 41):
            ref = bessel_i0_series(float(x), terms=60)
            assert bessel_i0(float(x)) == pytest.approx(ref, rel=1e-10)

    def test_monotone_and_bounded_below(self):
        xs = np.linspace(0.0, 20.0, 200)
        values = [bessel_i0(float(x)) for x in xs]
        assert all(v >= 1.0 for v in values)
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_domain(self):
        with pytest.raises(ValueError):
            bessel_i0(-1.0)


class TestDecibels:
    def test_trivial(self):
        assert db_to_linear(10.0) == pytest.approx(10.0, rel=1e-15)
        assert db_to_linear(0.0) == 1.0

    def test_reference_value(self):
        assert db_to_linear(3.0) == pytest.approx(1.9952623149688796, rel=1e-14)

    def test_round_trip(self):
        rng = np.random.default_rng(3)
        for db in rng.uniform(-80.0, 80.0, 1000):
            assert db_to_linear(linear_to_db(db_to_linear(db))) == pytest.approx(
                db_to_linear(db), rel=1e-12
            )

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            linear_to_db(0.0)
        with pytest.raises(ValueError):
            linear_to_db(-2.0)


class TestAttenuationCoefficient:
    def test_natural_units(self):
        alpha = AttenuationCoefficient(0.2)
        assert alpha.per_km == pytest.approx(0.2 * math.log(10.0) / 10.0, rel=1e-15)
        assert alpha.per_km == pytest.approx(0.04605170185988091, rel=1e-12)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            AttenuationCoefficient(-0.1)
