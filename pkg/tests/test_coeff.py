import random

import pytest
from hypothesis import given, strategies as st

from secpair.coeff import KTheoryPair, k_coeff_qz, k_coeff_zn, kappa_down, kappa_up
from secpair.fgab import FgGroup, GroupHom, TRIVIAL, Z, cyclic, exact_at
from secpair.functors import QZValue

groups = st.builds(lambda r, ds: FgGroup.from_orders([0] * r + ds),
                   st.integers(0, 2), st.lists(st.integers(2, 12), max_size=2))
pairs = st.builds(KTheoryPair, groups, groups)


def test_zn_examples():
    c = k_coeff_zn(KTheoryPair(Z, cyclic(6)), 4, 0)
    assert c.group == FgGroup(0, (2, 4))
    assert c.tor_group == cyclic(2)
    assert k_coeff_zn(KTheoryPair(TRIVIAL, TRIVIAL), 5, 0).group.is_trivial()
    assert k_coeff_zn(KTheoryPair(cyclic(7), TRIVIAL), 3, 0).group.is_trivial()


@given(pairs, st.integers(2, 24), st.integers(0, 1))
def test_bockstein_sequence_exact(K, n, degree):
    c = k_coeff_zn(K, n, degree)
    assert c.is_exact()
    assert c.rho_map.source == K[degree]
    assert c.tor_inclusion.target == K[degree + 1]


def _mult(G, k):
    return GroupHom.multiplication(G, k)


def check_kappa_squares(K, n, m, degree):
    a, b = k_coeff_zn(K, n, degree), k_coeff_zn(K, m * n, degree)
    up, up_tor = kappa_up(K, n, m, degree)
    down, down_tor = kappa_down(K, n, m, degree)
    # inclusion M_n -> M_mn: times m on K_degree, canonical inclusion on Tor
    assert up.compose(a.rho_map) == b.rho_map.compose(_mult(K[degree], m))
    assert b.beta_map.compose(up) == up_tor.compose(a.beta_map)
    assert b.tor_inclusion.compose(up_tor) == a.tor_inclusion
    # the other direction: identity on K_degree, times m on Tor
    assert down.compose(b.rho_map) == a.rho_map
    assert a.beta_map.compose(down) == down_tor.compose(b.beta_map)
    assert a.tor_inclusion.compose(down_tor) == _mult(K[degree + 1], m).compose(b.tor_inclusion)
    # composite is multiplication by m on K(Z/n)
    assert down.compose(up) == _mult(a.group, m)


def test_kappa_squares_exhaustive():
    K = KTheoryPair(FgGroup(1, (6,)), FgGroup(1, (2, 12)))
    for n in range(2, 13):
        for m in range(1, 13):
            for degree in (0, 1):
                check_kappa_squares(K, n, m, degree)


@given(pairs, st.integers(2, 12), st.integers(1, 12), st.integers(0, 1))
def test_kappa_squares_random(K, n, m, degree):
    check_kappa_squares(K, n, m, degree)


def test_qz_examples():
    c = k_coeff_qz(KTheoryPair(Z, cyclic(5)), 0)
    assert c.group.qz_rank == 1 and c.group.fg_part == cyclic(5)
    c = k_coeff_qz(KTheoryPair(TRIVIAL, cyclic(7)), 0)
    assert c.group.qz_rank == 0 and c.torsion == cyclic(7)
    x = c.lift([3])
    assert c.quotient_to_torsion(x).coords == (3,)
    assert k_coeff_qz(KTheoryPair(cyclic(6), Z), 0).group.is_trivial()


@given(pairs, st.integers(0, 1), st.randoms(use_true_random=False))
def test_resplit_lifts_are_sections(K, degree, rng):
    c = k_coeff_qz(K, degree)
    r = c.group.qz_rank
    shear = [[QZValue(rng.randrange(d), d) for _ in range(r)] for d in c.torsion.invariant_factors]
    c2 = c.resplit(shear)
    for t in c.torsion.gens():
        l1, l2 = c.lift(t), c2.lift(t)
        assert c2.quotient_to_torsion(l2) == t
        # two sections differ by a divisible element
        diff = l2 - l1
        assert c.quotient_to_torsion(diff).is_zero()
        assert not any(diff.finite)


def test_resplit_rejects_non_hom():
    c = k_coeff_qz(KTheoryPair(Z, cyclic(4)), 0)
    with pytest.raises(ValueError):
        c.resplit([[QZValue(1, 3)]])


def test_degree_checked():
    with pytest.raises(ValueError):
        k_coeff_zn(KTheoryPair(Z, Z), 2, 2)
    with pytest.raises(ValueError):
        k_coeff_zn(KTheoryPair(Z, Z), 1, 0)
