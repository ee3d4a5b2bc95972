import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import digamma as sp_digamma

from dilute1d.special import EULER_GAMMA, digamma


def test_known_values():
    assert digamma(1.0) == pytest.approx(-EULER_GAMMA, abs=1e-14)
    assert digamma(0.5) == pytest.approx(-EULER_GAMMA - 2 * math.log(2), abs=1e-14)
    # psi(1) - psi(1/3) = (3/2) ln 3 + pi / (2 sqrt 3)
    assert digamma(1.0) - digamma(1 / 3) == pytest.approx(1.5 * math.log(3) + math.pi / (2 * math.sqrt(3)), abs=1e-13)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=1e-3, max_value=1e3))
def test_matches_mpmath_positive(x):
    ref = float(mpmath.digamma(mpmath.mpf(x)))
    assert abs(digamma(x) - ref) <= 1e-12 * max(1.0, abs(ref))


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=-20, max_value=-1e-3).filter(lambda x: abs(x - round(x)) > 1e-3))
def test_matches_scipy_negative(x):
    ref = float(sp_digamma(x))
    assert abs(digamma(x) - ref) <= 1e-10 * max(1.0, abs(ref))


def test_poles():
    for x in (0.0, -1.0, -7.0):
        with pytest.raises(ValueError):
            digamma(x)
