from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from secpair.functors import QZValue
from secpair.spectral import (FlatLineBundle, certify, eta_circle, eta_closed_form, hurwitz_zeta,
                              pairing_crosscheck, rho_relative)


def test_hurwitz_zeta_at_zero():
    assert abs(hurwitz_zeta(0, 0.5)) < 1e-12
    assert abs(hurwitz_zeta(0, 1.0) + 0.5) < 1e-12
    assert abs(hurwitz_zeta(0, 1 / 3) - 1 / 6) < 1e-12


# the oracle itself hits its pole for subnormal s, where 1 - s rounds to 1
@given(st.floats(-3, 0.5).filter(lambda s: s == 0 or abs(s) > 1e-12), st.floats(0.01, 1.0))
def test_hurwitz_zeta_against_mpmath(s, a):
    ref = float(mpmath.zeta(s, a))
    assert abs(hurwitz_zeta(s, a) - ref) <= 1e-8 * max(1.0, abs(ref))


def test_hurwitz_zeta_domain():
    with pytest.raises(ValueError):
        hurwitz_zeta(0, 0)
    with pytest.raises(ValueError):
        hurwitz_zeta(1, 0.5)


def test_eta_examples():
    r = eta_circle(FlatLineBundle(Fraction(0)))
    assert r.eta == 0 and r.kernel_dim == 1
    r = eta_circle(FlatLineBundle(Fraction(1, 2)))
    assert abs(r.eta) < 1e-12 and r.kernel_dim == 0
    assert abs(eta_circle(FlatLineBundle(Fraction(1, 3))).eta + 1 / 3) < 1e-8


def test_eta_closed_form_all_k_over_d():
    for d in range(1, 49):
        for k in range(d):
            th = Fraction(k, d)
            r = eta_circle(FlatLineBundle(th))
            assert abs(r.eta - eta_closed_form(th)) < 1e-8
            assert r.kernel_dim == (1 if th == 0 else 0)


def test_holonomy_taken_mod_one():
    assert FlatLineBundle(Fraction(4, 3)).theta == Fraction(1, 3)
    assert FlatLineBundle(Fraction(-1, 3)).theta == Fraction(2, 3)


def test_rho_example():
    r = rho_relative(FlatLineBundle(Fraction(1, 3)), FlatLineBundle.trivial())
    assert r.certified == QZValue(1, 3)


thetas = st.fractions(min_value=0, max_value=1, max_denominator=30)


@given(thetas, thetas, thetas)
def test_rho_telescopes(a, b, c):
    U, V, W = (FlatLineBundle(x) for x in (a, b, c))
    lhs = rho_relative(U, W).value
    rhs = rho_relative(U, V).value + rho_relative(V, W).value
    diff = (lhs - rhs) % 1.0
    assert min(diff, 1 - diff) < 1e-8


@given(thetas, thetas)
def test_rho_is_holonomy_difference(a, b):
    r = rho_relative(FlatLineBundle(a), FlatLineBundle(b), max_denominator=1000)
    assert r.certified == QZValue.of(a - b)


def test_certify():
    v, res = certify(0.25000000001)
    assert v == QZValue(1, 4) and res < 1e-9
    v, res = certify(0.1234567, max_denominator=10)
    assert v is None


@pytest.mark.parametrize("d", [2, 3, 12])
def test_pairing_crosscheck(d):
    assert pairing_crosscheck(d)
