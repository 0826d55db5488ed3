"""Random corpora shared by the test modules."""

import random

from secpair.fgab import FgGroup, GroupHom, torsion_subgroup
from secpair.pairing import ExtensionClass, delta_via_extension


def random_extension(rng: random.Random, max_exponent: int = 24) -> ExtensionClass:
    """E = Z^r (+) finite, iota(1) a random element of infinite order; k1 = E / iota."""
    while True:
        r = rng.randint(1, 3)
        tors = FgGroup.from_orders([rng.randint(2, 12) for _ in range(rng.randint(0, 2))])
        E = FgGroup(r, tors.invariant_factors)
        free = [rng.randint(-12, 12) for _ in range(r)]
        if not any(free):
            continue
        v = free + [rng.randrange(d) for d in E.invariant_factors]
        x = ExtensionClass.from_inclusion(E, v)
        if x.k1.torsion_exponent() <= max_exponent:
            return x


def random_hom_into(rng: random.Random, H: FgGroup, G: FgGroup) -> GroupHom:
    imgs = []
    for o in H.orders:
        v = [rng.randint(-6, 6) for _ in range(G.ngens)]
        if o:
            from math import gcd
            v = [0] * G.free_rank + [x * (d // gcd(d, o)) for x, d in
                                     zip(v[G.free_rank:], G.invariant_factors)]
        imgs.append(v)
    return GroupHom.from_images(H, G, imgs)


def pair(x: ExtensionClass, y):
    """Pairing of x with a torsion element y of k1."""
    delta = delta_via_extension(x)
    _, incl = torsion_subgroup(x.k1)
    pre = incl.preimage(y)
    assert pre is not None, "y is not torsion"
    return delta(pre)
