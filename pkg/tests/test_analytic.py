import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from canonical_hecke.analytic import (
    REFERENCE_CONSTANTS,
    QuadratureError,
    c1_tail_bound,
    complex_gamma_abs,
    contour_remainder_bound,
    contour_segment_bound,
    loggamma,
    residue_constants,
    zeta_complex,
    zeta_extended,
)

mpmath.mp.dps = 30


def test_gamma_abs_examples():
    assert complex_gamma_abs(1, 0) == pytest.approx(1.0, rel=1e-14)
    assert complex_gamma_abs(0.5, 0) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    t = 30.0
    assert complex_gamma_abs(1, t) == pytest.approx(math.sqrt(math.pi * t / math.sinh(math.pi * t)), rel=1e-12)
    with pytest.raises(ValueError):
        loggamma(-2)


@settings(max_examples=200)
@given(st.floats(-4, 4), st.floats(-100, 100))
def test_gamma_abs_vs_mpmath(sigma, t):
    if abs(t) < 1e-3 and abs(sigma - round(sigma)) < 1e-3 and sigma <= 0.01:
        return
    ref = float(abs(mpmath.gamma(mpmath.mpc(sigma, t))))
    if ref == 0.0:
        return
    assert complex_gamma_abs(sigma, t) == pytest.approx(ref, rel=1e-10)


def test_zeta_examples():
    assert zeta_complex(2, 0).real == pytest.approx(math.pi**2 / 6, abs=1e-14)
    assert zeta_complex(0.5, 0).real == pytest.approx(-1.4603545088, abs=1e-10)
    assert zeta_extended(0) == -0.5
    assert zeta_extended(-1).real == pytest.approx(-1 / 12, abs=1e-13)
    with pytest.raises(ValueError):
        zeta_complex(0.0, 1.0)
    with pytest.raises(ValueError):
        zeta_complex(1.0, 0.0)


@settings(max_examples=150, deadline=None)
@given(st.floats(0.4, 4), st.floats(-60, 60))
def test_zeta_vs_mpmath(sigma, t):
    if abs(sigma - 1) < 1e-6 and abs(t) < 1e-6:
        return
    ref = complex(mpmath.zeta(mpmath.mpc(sigma, t)))
    assert abs(zeta_complex(sigma, t) - ref) <= 1e-8 * max(1.0, abs(ref))


@pytest.mark.parametrize("t", [0.3, 1.0, 3.5, 7.0, 14.0])
def test_zeta_on_the_imaginary_axis(t):
    ref = complex(mpmath.zeta(mpmath.mpc(0, t)))
    assert abs(zeta_extended(complex(0, t)) - ref) <= 1e-9 * abs(ref)


def test_residues():
    res1, res34 = residue_constants()
    assert abs(res1 - 0.523599) < 1e-6
    assert abs(res34 + 0.845767) < 1e-5
    ref = float(2**1.25 * mpmath.gamma(0.75) / (mpmath.pi**0.75 * mpmath.zeta(0.5)))
    assert res34 == pytest.approx(ref, rel=1e-12)


@pytest.mark.parametrize("segment", ["C1", "C2", "C3", "C4", "C5"])
def test_contour_segments_within_slack(segment):
    b = contour_segment_bound(segment)
    assert b.within_slack
    assert b.computed_bound > 0 and b.quad_error < 1e-3 * b.computed_bound
    assert b.scaling == ("sqrt_x" if segment == "C3" else "linear_x")


def test_contour_c3_close_to_reference():
    assert contour_segment_bound("C3").computed_bound == pytest.approx(REFERENCE_CONSTANTS["C3"], rel=1e-4)


def test_c1_integrand_against_mpmath_spot_values():
    from canonical_hecke.analytic import _c1_integrand, _c2_integrand, _c3_integrand

    def ref1(t):
        return float(abs(mpmath.gamma(1 + 1j * t)) / t**2 * abs(mpmath.zeta(2 + 4j * t)) / abs(mpmath.zeta(1 + 2j * t)))

    for t in (7.0, 12.3, 40.0):
        assert _c1_integrand(t) == pytest.approx(ref1(t), rel=1e-8)
    s = 0.7
    ref2 = float((2 * mpmath.pi) ** (-s) * abs(mpmath.gamma(s + 7j)) / ((s - 1) ** 2 + 49)
                 * abs(mpmath.zeta(4 * s - 2 + 28j)) / abs(mpmath.zeta(2 * s - 1 + 14j)))
    assert _c2_integrand(s) == pytest.approx(ref2, rel=1e-8)
    t = 2.2
    ref3 = float(abs(mpmath.gamma(0.5 + 1j * t)) / (0.25 + t * t) * abs(mpmath.zeta(4j * t)) / abs(mpmath.zeta(2j * t)))
    assert _c3_integrand(t) == pytest.approx(ref3, rel=1e-8)


def test_c1_tail_is_negligible():
    assert c1_tail_bound() < 1e-100


def test_low_quadrature_limit_fails_loudly():
    with pytest.raises(QuadratureError):
        contour_segment_bound("C1", limit=3)
    with pytest.raises(ValueError):
        contour_segment_bound("C6")


def test_contour_remainder_bound():
    segs = {s: contour_segment_bound(s) for s in ("C1", "C2", "C3")}
    x = 1e4
    rem = contour_remainder_bound(x, segs)
    assert 0 < rem < 2.5 * math.sqrt(x) / (2 * math.pi) + 1e-5 * x
