"""Acceptance criteria 1-8, each at its stated tolerance and time limit.

Run with pytest (a summary line per criterion is printed at the end of the
session) or directly: ``python tests/test_acceptance.py``.
"""

import random
import sys
import time
from fractions import Fraction
from math import gcd
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from secpair.coeff import KTheoryPair
from secpair.detpair import log_det_pairing, root_of_unity, zeta_generator_check
from secpair.fgab import FgGroup, Z, cyclic, torsion_subgroup
from secpair.functors import QZHom, QZValue, all_characters
from secpair.lambda_families import (check_compatibility, compatible_family_space,
                                     delta_from_family, family_from_delta, kk_group)
from secpair.pairing import (ExtensionClass, baer_sum, cyclic_extension, delta_via_extension,
                             delta_via_qz, ext_to_qz_hom, extension_for_character, qz_class_for,
                             rational_extensions)
from secpair.spectral import FlatLineBundle, eta_circle, eta_closed_form, rho_relative

from helpers import random_extension

RESULTS: dict[int, str] = {}


def record(n: int, name: str, ok: bool, elapsed: float, limit: float, note: str = ""):
    status = "PASS" if ok and elapsed < limit else "FAIL"
    RESULTS[n] = (f"criterion {n} {name}: {status} ({elapsed:.2f}s of {limit:.0f}s"
                  + (f"; {note}" if note else "") + ")")
    print(RESULTS[n])
    assert ok, RESULTS[n]
    assert elapsed < limit, RESULTS[n]


def criterion_1():
    t = time.perf_counter()
    ok = True
    for n in range(2, 51):
        for m in range(2, 51):
            for j in (0, 1):
                ok &= kk_group(n, m, j).group.order() == gcd(n, m)
    for m in range(2, 51):
        ok &= kk_group(1, m, 0).group == cyclic(m)
        ok &= kk_group(m, 1, 1).group == cyclic(m)
        ok &= kk_group(m, 1, 0).group.is_trivial()
        ok &= kk_group(1, m, 1).group.is_trivial()
    ok &= kk_group(1, 1, 0).group == Z
    ok &= kk_group(1, 1, 1).group.is_trivial()
    record(1, "KK table", ok, time.perf_counter() - t, 1)


def criterion_2(seed=2):
    t = time.perf_counter()
    rng = random.Random(seed)
    ok, nontrivial = True, 0
    for _ in range(500):
        x = random_extension(rng, max_exponent=24)
        phis = rational_extensions(x, 16, rng)
        nontrivial += len(set(phis)) > 1
        ref = delta_via_extension(x, phis[0])
        ok &= all(delta_via_extension(x, phi) == ref for phi in phis[1:])
    record(2, "well-definedness over rational solves", ok, time.perf_counter() - t, 10,
           f"500 extensions, {nontrivial} with distinct solves")


def criterion_3(seed=3):
    t = time.perf_counter()
    ok = True
    for d in range(2, 65):
        e = delta_via_extension(ExtensionClass.multiplication(d))
        q = delta_via_qz(qz_class_for(KTheoryPair(Z, cyclic(d)), QZHom(cyclic(d), (QZValue(1, d),))))
        ok &= e == q == QZHom(cyclic(d), (QZValue(1, d),))
    rng = random.Random(seed)
    for _ in range(100):
        parts = [rng.randint(2, 12) for _ in range(rng.randint(2, 3))]
        cocycles = [rng.randrange(d) for d in parts]
        x, injections = baer_sum(*(cyclic_extension(d, a) for d, a in zip(parts, cocycles)))
        delta = delta_via_extension(x)
        T, incl = torsion_subgroup(x.k1)
        q = delta_via_qz(qz_class_for(KTheoryPair(Z, T), QZHom(T, delta.values)))
        ok &= q == delta
        ok &= all(delta(incl.preimage(inj.images()[0])) == QZValue(a, d)
                  for inj, d, a in zip(injections, parts, cocycles))
    record(3, "cross-picture agreement", ok, time.perf_counter() - t, 5)


def torsion_groups(max_exponent=24):
    out = []
    for b in range(2, max_exponent + 1):
        out.append(FgGroup(0, (b,)))
        out.extend(FgGroup(0, (a, b)) for a in range(2, b + 1) if b % a == 0)
    return out


def criterion_4(seed=4):
    t = time.perf_counter()
    ok = True
    groups = torsion_groups()
    nchars = 0
    for G in groups:
        e = G.exponent()
        fams = set()
        for chi in all_characters(G):
            F = family_from_delta(chi, G, e)
            ok &= bool(check_compatibility(F)) and delta_from_family(F) == chi
            fams.add(F)
            nchars += 1
        # every compatible family comes from a character
        ok &= len(fams) == G.order() == compatible_family_space(G, e).order()
    rng = random.Random(seed)
    rejected = 0
    for _ in range(200):
        G = rng.choice(groups)
        chi = QZHom.from_coordinates(G, [rng.randrange(d) for d in G.invariant_factors])
        F = family_from_delta(chi, G, 2 * G.exponent())
        m = rng.choice([m for m in F.psi if F.psi[m]])
        j = rng.randrange(len(F.psi[m]))
        bad = F.with_entry(m, j, F.psi[m][j] + rng.randint(1, m - 1))
        rejected += not check_compatibility(bad)
    ok &= rejected == 200
    record(4, "Lambda bijection", ok, time.perf_counter() - t, 30,
           f"{len(groups)} groups, {nchars} characters, {rejected}/200 corruptions rejected")


def criterion_5():
    t = time.perf_counter()
    ok = True
    for d in range(2, 25):
        G = cyclic(d)
        image = {}
        for chi in all_characters(G):
            x = extension_for_character(chi)
            ok &= x.k1 == G
            image[chi] = ext_to_qz_hom(x)
        ok &= all(k == v for k, v in image.items())
        ok &= len(set(image.values())) == d
    record(5, "duality", ok, time.perf_counter() - t, 5)


def criterion_6():
    t = time.perf_counter()
    ok = True
    for d in range(1, 49):
        for k in range(d):
            th = Fraction(k, d)
            ok &= abs(eta_circle(FlatLineBundle(th)).eta - eta_closed_form(th)) < 1e-8
    for d in range(2, 13):
        r = rho_relative(FlatLineBundle(Fraction(1, d)), FlatLineBundle.trivial(), max_denominator=4 * d)
        ok &= r.certified == QZValue(1, d)
    record(6, "eta reproduction", ok, time.perf_counter() - t, 5)


def criterion_7():
    t = time.perf_counter()
    ok, worst = True, 0.0
    for d in range(2, 25):
        r = log_det_pairing([[root_of_unity(d)]], [[1.0]], max_denominator=4 * d)
        worst = max(worst, r.numeric_residual)
        ok &= r.value == QZValue(1, d) and r.numeric_residual < 1e-9
    for m in range(2, 13):
        for n in (1, 2, 3):
            ok &= zeta_generator_check(m, n).value == QZValue(1, m)
    record(7, "determinant pairing", ok, time.perf_counter() - t, 5, f"max residual {worst:.1e}")


def criterion_8():
    t = time.perf_counter()
    ok = True
    for d in range(2, 13):
        ext = delta_via_extension(ExtensionClass.multiplication(d)).values[0]
        rho = rho_relative(FlatLineBundle(Fraction(1, d)), FlatLineBundle.trivial(),
                           max_denominator=4 * d).certified
        det = log_det_pairing(np.array([[root_of_unity(d)]]), np.eye(1), max_denominator=4 * d).value
        ok &= ext == rho == det == QZValue(1, d)
    record(8, "grand crosscheck", ok, time.perf_counter() - t, 10)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4,
            criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda f: f.__name__)
def test_criterion(criterion):
    criterion()


if __name__ == "__main__":
    failed = 0
    for c in CRITERIA:
        try:
            c()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
