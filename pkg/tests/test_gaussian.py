import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from replikit import DomainError
from replikit.gaussian import (
    normal_cdf,
    normal_cdf_array,
    normal_pdf,
    normal_quantile,
    normal_quantile_array,
)

import oracle

# frozen from tests/oracle.py (mpmath, 50 digits); see test_oracle_values
PHI_1_96 = 0.97500210485178
Z_0_025 = -1.95996398454005
Z_0_8 = 0.841621233572914
PDF_2 = 0.0539909665132


def test_cdf_examples():
    assert normal_cdf(0) == 0.5
    assert normal_cdf(-2.0) == pytest.approx(0.02275, abs=5e-6)
    assert round(normal_cdf(-2.0), 4) == 0.0228
    assert normal_cdf(0.2) == pytest.approx(0.57926, abs=5e-6)
    assert normal_cdf(1.96) == pytest.approx(PHI_1_96, abs=1e-12)


def test_quantile_examples():
    assert normal_quantile(0.5) == 0.0
    assert normal_quantile(0.025) == pytest.approx(Z_0_025, abs=1e-10)
    assert normal_quantile(0.8) == pytest.approx(Z_0_8, abs=1e-10)


def test_pdf_examples():
    assert normal_pdf(0) == pytest.approx(1 / math.sqrt(2 * math.pi), rel=1e-15)
    assert normal_pdf(1) == normal_pdf(-1)
    assert normal_pdf(2) == pytest.approx(PDF_2, abs=1e-12)


def test_oracle_values():
    assert float(oracle.cdf(1.96)) == pytest.approx(PHI_1_96, abs=1e-14)
    assert float(oracle.quantile(0.025)) == pytest.approx(Z_0_025, abs=1e-14)
    assert float(oracle.quantile_bisect(0.8)) == pytest.approx(Z_0_8, abs=1e-14)
    assert float(oracle.pdf(2)) == pytest.approx(PDF_2, abs=1e-13)


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf, "1", None])
def test_non_finite_rejected(bad):
    with pytest.raises(DomainError):
        normal_cdf(bad)
    with pytest.raises(DomainError):
        normal_pdf(bad)


@pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5, math.nan])
def test_quantile_domain(p):
    with pytest.raises(DomainError):
        normal_quantile(p)


def test_tail_cutoffs():
    assert normal_cdf(-38.5) == 0.0
    assert normal_cdf(38.5) == 1.0
    assert normal_cdf(-37.5) > 0.0


def test_cdf_matches_oracle_on_grid():
    zs = np.linspace(-8, 8, 1601)
    worst = max(abs(normal_cdf(float(z)) - float(oracle.cdf(float(z)))) for z in zs)
    assert worst <= 1e-12


def test_lower_tail_relative_accuracy():
    for z in (-10.0, -20.0, -30.0, -37.0):
        assert normal_cdf(z) == pytest.approx(float(oracle.cdf(z)), rel=1e-12)


@pytest.mark.parametrize("p", [1e-300, 1e-100, 1e-20, 1e-8, 0.001, 0.02425, 0.3, 0.7, 0.97575, 1 - 1e-12])
def test_quantile_matches_oracle(p):
    z = normal_quantile(p)
    assert z == pytest.approx(float(oracle.quantile(p)), abs=1e-10)
    assert abs(normal_cdf(z) - p) <= 1e-12


@settings(max_examples=300, deadline=None)
@given(st.floats(min_value=1e-12, max_value=1 - 1e-12))
def test_quantile_inverts_cdf(p):
    assert abs(normal_cdf(normal_quantile(p)) - p) <= 1e-12


@settings(max_examples=300, deadline=None)
@given(st.floats(min_value=-8, max_value=8))
def test_reflection(z):
    assert abs(normal_cdf(-z) + normal_cdf(z) - 1.0) <= 1e-15


@settings(max_examples=300, deadline=None)
@given(st.floats(min_value=-8, max_value=8))
def test_density_is_derivative(z):
    h = 1e-5
    slope = (normal_cdf(z + h) - normal_cdf(z - h)) / (2 * h)
    assert abs(slope - normal_pdf(z)) <= 1e-6


def test_array_versions_agree_with_scalars():
    rng = np.random.default_rng(3)
    z = rng.uniform(-9, 9, 500)
    assert np.array_equal(normal_cdf_array(z), [normal_cdf(float(v)) for v in z])
    p = rng.uniform(0, 1, 500)
    assert np.array_equal(normal_quantile_array(p), [normal_quantile(float(v)) for v in p])


def test_array_domain():
    with pytest.raises(DomainError):
        normal_quantile_array([0.2, 1.0])
    with pytest.raises(DomainError):
        normal_cdf_array([0.0, np.nan])
