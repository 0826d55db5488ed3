import random
import warnings
from math import gcd

import pytest
from hypothesis import given, strategies as st

from secpair.fgab import FgGroup, GroupHom, Z, cyclic, torsion_subgroup
from secpair.functors import QZHom, QZValue, all_characters
from secpair.lambda_families import (IncompatibleFamilyError, LambdaFamily, check_compatibility,
                                     compatible_family_space, delta_from_family, family_from_delta,
                                     kappa_down_action, kappa_up_action, kk_group, kk_table)


def test_kk_examples():
    assert kk_group(6, 4, 0).group == cyclic(2)
    d = kk_group(1, 5, 0)
    assert d.group == cyclic(5) and d.generator == "rho_5"
    assert kk_group(1, 1, 0).group == Z


def test_kk_boundary_cases():
    for m in range(2, 20):
        assert kk_group(1, m, 0).group == cyclic(m)
        assert kk_group(m, 1, 1).group == cyclic(m)
        assert kk_group(m, 1, 0).group.is_trivial()
        assert kk_group(1, m, 1).group.is_trivial()
    assert kk_group(1, 1, 1).group.is_trivial()


def test_kk_table_gcd_and_symmetry():
    for n in range(2, 51):
        for m in range(2, 51):
            for j in (0, 1):
                a, b = kk_group(n, m, j), kk_group(m, n, j)
                assert a.group.order() == gcd(n, m) == b.group.order()
                assert a.action_order() == a.group.order()


def test_kk_table_shape():
    t = kk_table(6, 0)
    assert len(t) == 6 and all(len(r) == 6 for r in t)
    assert [d.group for d in t[0]] == [Z] + [cyclic(m) for m in range(2, 7)]


def test_kappa_actions_compose():
    for n in range(2, 13):
        for m in range(1, 13):
            up, down = kappa_up_action(n, m), kappa_down_action(n, m)
            assert up.images()[0].coords == ((m % (m * n),) if m * n > 1 else ())
            assert down.compose(up) == GroupHom.multiplication(cyclic(n), m)


def test_kk_rejects_bad_input():
    with pytest.raises(ValueError):
        kk_group(0, 3, 0)
    with pytest.raises(ValueError):
        kk_group(2, 3, 2)


Z6 = cyclic(6)
delta16 = QZHom(Z6, (QZValue(1, 6),))


def test_family_from_delta_example():
    F = family_from_delta(delta16, Z6, 12)
    assert F.psi_hom(6) == GroupHom.identity(Z6)
    # Tor(Z/2, Z/6) and Tor(Z/4, Z/6) are generated by [3]
    assert F.tor_group(2) == cyclic(2) and F.psi[2] == (1,)
    assert F.psi[4] == (2,)
    assert check_compatibility(F)


def test_corrupted_family_fails_at_2_2():
    F = family_from_delta(delta16, Z6, 12).with_entry(4, 0, 1)
    r = check_compatibility(F)
    assert not r and r.pair == (2, 2) and r.square == 1
    with pytest.raises(IncompatibleFamilyError):
        delta_from_family(F)


def test_zero_family():
    F = LambdaFamily(Z6, 12, {})
    assert check_compatibility(F)
    assert delta_from_family(F).is_zero()
    assert family_from_delta(QZHom.zero(Z6), Z6, 12) == F


def test_two_factor_example():
    k1 = FgGroup(0, (2, 4))
    delta = QZHom(k1, (QZValue(1, 2), QZValue(1, 4)))
    F = family_from_delta(delta, k1, 8)
    _, incl = __import__("secpair").tor_zn(4, k1)
    psi4 = F.psi_hom(4)
    for a in range(2):
        for b in range(4):
            pre = incl.preimage(k1.element([a, b]))
            assert psi4(pre).coords == ((2 * a + b) % 4,)


def test_round_trips():
    delta = QZHom(Z6, (QZValue(5, 6),))
    assert delta_from_family(family_from_delta(delta, Z6, 6)) == delta
    F = LambdaFamily(cyclic(2), 2, {2: (1,)})
    assert delta_from_family(F).values == (QZValue(1, 2),)


def test_bound_warning():
    with pytest.warns(UserWarning):
        family_from_delta(delta16, Z6, 4)


def test_ill_defined_entry_reported():
    # psi_4 sends the order-2 generator of Tor(Z/4, Z/2) to [1], which has order 4
    r = check_compatibility(LambdaFamily(cyclic(2), 4, {2: (0,), 4: (1,)}))
    assert not r
    assert check_compatibility(LambdaFamily(cyclic(4), 4, {2: (1,), 4: (1,)}))


k1s = st.builds(lambda r, ds: FgGroup.from_orders([0] * r + ds), st.integers(0, 1),
                st.lists(st.integers(2, 12), min_size=1, max_size=2)).filter(
    lambda G: G.torsion_exponent() <= 24)


@given(k1s, st.randoms(use_true_random=False))
def test_bijection_random(k1, rng):
    T, _ = torsion_subgroup(k1)
    e = k1.torsion_exponent()
    delta = QZHom.from_coordinates(T, [rng.randrange(d) for d in T.invariant_factors])
    F = family_from_delta(delta, k1, e)
    assert check_compatibility(F)
    assert delta_from_family(F) == delta


@given(k1s)
def test_family_space_counts_characters(k1):
    T, _ = torsion_subgroup(k1)
    e = k1.torsion_exponent()
    if e < 2:
        return
    space = compatible_family_space(k1, e)
    assert space.order() == T.order()
    fams = set(space.families())
    assert fams == {family_from_delta(chi, k1, e) for chi in all_characters(T)}


@given(k1s, st.randoms(use_true_random=False))
def test_single_corruptions_rejected(k1, rng):
    T, _ = torsion_subgroup(k1)
    e = k1.torsion_exponent()
    delta = QZHom.from_coordinates(T, [rng.randrange(d) for d in T.invariant_factors])
    F = family_from_delta(delta, k1, 2 * e)
    slots = [(m, j) for m in F.psi for j in range(len(F.psi[m]))]
    if not slots:
        return
    m, j = rng.choice(slots)
    bad = F.with_entry(m, j, F.psi[m][j] + rng.randint(1, m - 1))
    assert not check_compatibility(bad)
