"""The torsion pairing of a class with vanishing index against t K_1.

A class is seen only through one of its algebraic shadows:

* an extension ``0 -> Z -> E -> K1 -> 0`` (:class:`ExtensionClass`); the
  pairing is obtained by extending ``Z -> Q`` over E and reducing mod Z, or
* a map on ``K_0(Q/Z)`` vanishing on the divisible summand
  (:class:`QZPictureClass`); the pairing is its factorisation through the
  torsion quotient.

Sign convention: the generator of K_0(C) is identified with +1 in Z, so
the extension ``Z --(x d)--> Z -> Z/d`` pairs the generator of Z/d to +1/d.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable, Sequence

from .coeff import KTheoryPair, QZCoefficients, k_coeff_qz
from .fgab import (
    FgGroup,
    GroupElement,
    GroupHom,
    Z,
    _as_element,
    _present,
    cokernel,
    cyclic,
    direct_sum,
    exact_at,
    kernel,
    torsion_subgroup,
)
from .functors import ExtElement, QZHom, QZValue


class NotAnExtensionError(ValueError):
    pass


class NotInKernelError(ValueError):
    """The class does not vanish on the divisible summand."""


@dataclass(frozen=True)
class ExtensionClass:
    """A short exact sequence ``0 -> Z --iota--> E --pi--> k1 -> 0``."""

    e_group: FgGroup
    iota: GroupHom
    pi: GroupHom

    def __post_init__(self):
        if self.iota.source != Z or self.iota.target != self.e_group:
            raise NotAnExtensionError("iota must be a map Z -> E")
        if self.pi.source != self.e_group:
            raise NotAnExtensionError("pi must be defined on E")
        if not self.iota.is_injective():
            raise NotAnExtensionError(f"iota(1) = {self.iota.images()[0].coords} is torsion; "
                                      "no extension of Z -> Q exists")
        if not self.pi.is_surjective():
            raise NotAnExtensionError("pi is not surjective")
        if not exact_at(self.iota, self.pi):
            raise NotAnExtensionError("image(iota) != kernel(pi)")

    @property
    def k1(self) -> FgGroup:
        return self.pi.target

    @classmethod
    def from_inclusion(cls, E: FgGroup, iota_image) -> ExtensionClass:
        """Extension with quotient ``E / <iota(1)>``."""
        iota = GroupHom.from_images(Z, E, [_as_element(E, iota_image).coords])
        _, q = cokernel(iota)
        return cls(E, iota, q)

    @classmethod
    def from_cocycle(cls, k1: FgGroup, cocycle: Sequence[int]) -> ExtensionClass:
        """E generated by z and lifts e_i of the generators of k1, subject to
        ``d_i e_i = cocycle[i] z`` for each torsion generator of order d_i.

        The resulting pairing sends the i-th torsion generator to cocycle[i]/d_i.
        """
        ds = k1.invariant_factors
        if len(cocycle) != len(ds):
            raise ValueError(f"need one cocycle entry per torsion generator ({len(ds)})")
        g = 1 + k1.ngens
        rels = []
        for i, (d, a) in enumerate(zip(ds, cocycle)):
            row = [0] * g
            row[0] = -a
            row[1 + k1.free_rank + i] = d
            rels.append(row)
        E, P, S = _present(g, rels)
        iota = GroupHom.from_images(Z, E, [P.col(0)])
        pi = GroupHom.from_images(E, k1, [S.col(j)[1:] for j in range(E.ngens)])
        return cls(E, iota, pi)

    @classmethod
    def multiplication(cls, d: int) -> ExtensionClass:
        """``0 -> Z --(x d)--> Z -> Z/d -> 0``."""
        return cls.from_inclusion(Z, [d])

    @classmethod
    def split(cls, k1: FgGroup) -> ExtensionClass:
        ds = direct_sum(Z, k1)
        return cls(ds.group, ds.injections[0], ds.projections[1])


# ---------------------------------------------------------------------------
# Extension picture
# ---------------------------------------------------------------------------


def rational_extensions(x: ExtensionClass, count: int = 1, rng: random.Random | None = None
                        ) -> list[tuple[Fraction, ...]]:
    """Homomorphisms phi: E -> Q with phi o iota = id, as values on generators of E.

    Torsion generators necessarily go to 0.  The first solution is the
    minimal one; further ones add random rational multiples of kernel
    directions when ``count > 1``.
    """
    E = x.e_group
    r = E.free_rank
    v = x.iota.images()[0].coords[:r]
    pivot = next(i for i, c in enumerate(v) if c)
    base = [Fraction(0)] * r
    base[pivot] = Fraction(1, v[pivot])
    # kernel of c -> <c, v> over Q: e_j - (v_j / v_pivot) e_pivot
    directions = []
    for j in range(r):
        if j != pivot:
            w = [Fraction(0)] * r
            w[j] = Fraction(1)
            w[pivot] = Fraction(-v[j], v[pivot])
            directions.append(w)
    rng = rng or random.Random(0)
    out = []
    for k in range(count):
        phi = list(base)
        if k:
            for w in directions:
                t = Fraction(rng.randint(-50, 50), rng.randint(1, 30))
                phi = [a + t * b for a, b in zip(phi, w)]
        out.append(tuple(phi) + (Fraction(0),) * len(E.invariant_factors))
    return out


def _delta_from_phi(x: ExtensionClass, phi: Sequence[Fraction]) -> QZHom:
    T, incl = torsion_subgroup(x.k1)
    vals = []
    for t in incl.images():
        e = x.pi.preimage(t)
        vals.append(QZValue.of(sum((Fraction(c) * p for c, p in zip(e.coords, phi)), Fraction(0))))
    return QZHom(T, tuple(vals))


def delta_via_extension(x: ExtensionClass, phi: Sequence[Fraction] | None = None) -> QZHom:
    """Pairing on t k1 from a rational extension of iota over E.

    >>> delta_via_extension(ExtensionClass.multiplication(3)).values
    (QZValue(numerator=1, denominator=3),)
    """
    if phi is None:
        phi = rational_extensions(x)[0]
    E = x.e_group
    total = sum((Fraction(c) * p for c, p in zip(x.iota.images()[0].coords, phi)), Fraction(0))
    if total != 1:
        raise ValueError(f"phi(iota(1)) = {total}, expected 1")
    if any(p for p in phi[E.free_rank:]):
        raise ValueError("phi must vanish on torsion generators of E")
    return _delta_from_phi(x, phi)


def ext_to_qz_hom(x: ExtensionClass) -> QZHom:
    """Pairing through the Ext class of the extension, without solving over Q.

    Lift each torsion generator t (order d) of k1 to e in E; then
    ``d e = iota(a)`` for an integer a and t pairs to a/d.
    """
    T, incl = torsion_subgroup(x.k1)
    vals = []
    for t, d in zip(incl.images(), T.invariant_factors):
        e = x.pi.preimage(t)
        a = x.iota.preimage(d * e)
        if a is None:
            raise NotAnExtensionError("d * lift is not in the image of iota")
        vals.append(QZValue(a.coords[0], d))
    return QZHom(T, tuple(vals))


def pairing_value(delta: QZHom, y) -> QZValue:
    if isinstance(y, GroupElement) and y.group != delta.source:
        raise ValueError(f"element of {y.group} is not in {delta.source}")
    return delta(y)


def pullback(x: ExtensionClass, f: GroupHom) -> ExtensionClass:
    """Fibre product ``E x_{k1} H`` as an extension of H by Z."""
    if f.target != x.k1:
        raise ValueError("f must map into k1")
    H = f.source
    ds = direct_sum(x.e_group, H)
    diff = x.pi.compose(ds.projections[0]) - f.compose(ds.projections[1])
    P, incl = kernel(diff)
    z = ds.injections[0](x.iota.images()[0])
    iota = GroupHom.from_images(Z, P, [incl.preimage(z).coords])
    pi = ds.projections[1].compose(incl)
    return ExtensionClass(P, iota, pi)


def baer_sum(*xs: ExtensionClass) -> tuple[ExtensionClass, list[GroupHom]]:
    """Extension of ``k1_1 (+) ... (+) k1_r`` by Z whose pairing is blockwise.

    E is ``(+) E_i`` modulo the identification of the copies of Z.  Also
    returns the inclusions of each ``k1_i`` into the new quotient.
    """
    dsE = direct_sum(*(x.e_group for x in xs))
    dsK = direct_sum(*(x.k1 for x in xs))
    zs = [inj(x.iota.images()[0]) for inj, x in zip(dsE.injections, xs)]
    G = dsE.group
    rels = G.relation_vectors() + [tuple(a - b for a, b in zip(zs[0].coords, z.coords))
                                   for z in zs[1:]]
    E, P, S = _present(G.ngens, rels)
    q = GroupHom(G, E, P)
    iota = GroupHom.from_images(Z, E, [q(zs[0]).coords])
    pi_big = sum((dsK.injections[i].compose(x.pi).compose(dsE.projections[i])
                  for i, x in enumerate(xs)), GroupHom.zero(G, dsK.group))
    pi = GroupHom.from_images(E, dsK.group, [pi_big(S.col(j)).coords for j in range(E.ngens)])
    return ExtensionClass(E, iota, pi), list(dsK.injections)


# ---------------------------------------------------------------------------
# Q/Z-coefficient picture
# ---------------------------------------------------------------------------


# divisible test elements: [1/k] in every coordinate direction
_PROBE_DENOMINATORS = (2, 3, 5, 7, 12, 60)


@dataclass(frozen=True)
class QZPictureClass:
    """An additive map ``alpha: K_0(Q/Z) -> Q/Z`` that kills the divisible summand."""

    coeff: QZCoefficients
    alpha_map: Callable[[ExtElement], QZValue]

    def __post_init__(self):
        r = self.coeff.group.qz_rank
        for i in range(r):
            for k in _PROBE_DENOMINATORS:
                q = [QZValue(0)] * r
                q[i] = QZValue(1, k)
                v = self.alpha_map(self.coeff.divisible_part_inclusion(q))
                if not v.is_zero():
                    raise NotInKernelError(
                        f"alpha([1/{k}] e_{i}) = {v}: the map does not vanish on "
                        "the divisible summand, so the class has nonzero index")

    @classmethod
    def from_data(cls, coeff: QZCoefficients, on_torsion: QZHom,
                  divisible_multipliers: Sequence[int] = ()) -> QZPictureClass:
        """alpha(q, t) = sum_i c_i q_i + chi(t) in the split coordinates."""
        mult = tuple(divisible_multipliers) or (0,) * coeff.group.qz_rank
        if on_torsion.source != coeff.torsion:
            raise ValueError("character must be defined on the torsion quotient")

        def alpha(x: ExtElement) -> QZValue:
            v = on_torsion(x.finite)
            for c, q in zip(mult, x.divisible):
                v = v + q * c
            return v

        return cls(coeff, alpha)

    def resplit(self, shear) -> QZPictureClass:
        """Same alpha, different section of the torsion quotient."""
        return QZPictureClass(self.coeff.resplit(shear), self.alpha_map)


def delta_via_qz(x: QZPictureClass) -> QZHom:
    """Factor alpha through ``K_0(Q/Z) -> t K_1``.

    Each generator is lifted twice (the second lift shifted by a divisible
    element) and the two values compared.
    """
    c = x.coeff
    vals = []
    r = c.group.qz_rank
    shift = c.divisible_part_inclusion([QZValue(i + 1, 2 * i + 3) for i in range(r)])
    for t in c.torsion.gens():
        lift = c.lift(t)
        v1 = x.alpha_map(lift)
        v2 = x.alpha_map(lift + shift)
        if v1 != v2:
            raise NotInKernelError(f"value on {t.coords} depends on the lift ({v1} vs {v2})")
        vals.append(v1)
    return QZHom(c.torsion, tuple(vals))


def qz_class_for(K: KTheoryPair, chi: QZHom) -> QZPictureClass:
    """Q/Z-picture class on K_0(Q/Z) that restricts to chi on t K_1."""
    return QZPictureClass.from_data(k_coeff_qz(K, 0), chi)


# ---------------------------------------------------------------------------
# Characters realised by extensions
# ---------------------------------------------------------------------------


def extension_for_character(chi: QZHom) -> ExtensionClass:
    """An extension of ``chi.source`` by Z whose pairing is chi."""
    G = chi.source
    return ExtensionClass.from_cocycle(G, chi.coordinates())


def cyclic_extension(d: int, a: int) -> ExtensionClass:
    """Extension of Z/d by Z pairing the generator to a/d."""
    return ExtensionClass.from_cocycle(cyclic(d), [a]) if d > 1 else ExtensionClass.split(cyclic(d))


def common_denominator(delta: QZHom) -> int:
    return lcm(1, *(v.denominator for v in delta.values))
