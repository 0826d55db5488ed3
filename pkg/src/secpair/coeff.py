"""K-theory with Z/n and Q/Z coefficients, from the integral groups alone.

The coefficient groups are built from a (non-canonical) splitting of the
change-of-coefficients sequences

    K_j -> K_j(Z/n) -> Tor(Z/n, K_{j+1}) -> 0
    0 -> K_j (x) Q/Z -> K_j(Q/Z) -> t K_{j+1} -> 0

Only the maps of these sequences are meant to be used downstream; the
splitting itself carries no meaning, which :meth:`QZCoefficients.resplit`
exists to test.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .fgab import FgGroup, GroupElement, GroupHom, direct_sum, exact_at
from .functors import (
    ExtElement,
    ExtGroup,
    QZHom,
    QZValue,
    tensor_zn,
    tor_zn,
)


@dataclass(frozen=True)
class KTheoryPair:
    k0: FgGroup
    k1: FgGroup

    def __getitem__(self, degree: int) -> FgGroup:
        return (self.k0, self.k1)[degree % 2]


def _check_degree(degree: int):
    if degree not in (0, 1):
        raise ValueError(f"degree must be 0 or 1, got {degree}")


@dataclass(frozen=True)
class ZnCoefficients:
    """``K_degree(Z/n)`` with its Bockstein sequence maps.

    ``rho_map``: K_degree -> group, ``beta_map``: group -> Tor(Z/n, K_{degree+1}).
    """

    n: int
    degree: int
    group: FgGroup
    rho_map: GroupHom
    beta_map: GroupHom
    tor_inclusion: GroupHom
    _tensor_inj: GroupHom
    _tensor_proj: GroupHom
    _tor_inj: GroupHom
    _reduction: GroupHom

    @property
    def tor_group(self) -> FgGroup:
        return self.beta_map.target

    def is_exact(self) -> bool:
        return exact_at(self.rho_map, self.beta_map) and self.beta_map.is_surjective()


def k_coeff_zn(K: KTheoryPair, n: int, degree: int) -> ZnCoefficients:
    """``(K_degree (x) Z/n) (+) Tor(Z/n, K_{degree+1})`` with rho and beta."""
    _check_degree(degree)
    if n < 2:
        raise ValueError("n must be at least 2")
    T, red = tensor_zn(K[degree], n)
    tor, incl = tor_zn(n, K[degree + 1])
    ds = direct_sum(T, tor)
    rho = ds.injections[0].compose(red)
    beta = ds.projections[1]
    return ZnCoefficients(n, degree, ds.group, rho, beta, incl,
                          ds.injections[0], ds.projections[0], ds.injections[1], red)


def _tensor_map(src: ZnCoefficients, dst: ZnCoefficients, k: int) -> GroupHom:
    """x (x) [1]_n -> k x (x) [1]_m on the tensor summands."""
    imgs = []
    for x in src._tensor_proj.target.gens():
        pre = src._reduction.preimage(x)
        imgs.append(dst._reduction(k * pre).coords)
    return GroupHom.from_images(src._tensor_proj.target, dst._tensor_proj.target, imgs)


def _tor_map(src: ZnCoefficients, dst: ZnCoefficients, k: int) -> GroupHom:
    """Tor_src -> Tor_dst induced by multiplication by k inside K_{degree+1}."""
    imgs = []
    for x in src.tor_inclusion.images():
        y = dst.tor_inclusion.preimage(k * x)
        if y is None:
            raise ValueError("multiplication does not land in the target torsion")
        imgs.append(y.coords)
    return GroupHom.from_images(src.tor_group, dst.tor_group, imgs)


def _assemble(src: ZnCoefficients, dst: ZnCoefficients, tmap: GroupHom, tormap: GroupHom) -> GroupHom:
    return (dst._tensor_inj.compose(tmap).compose(src._tensor_proj)
            + dst._tor_inj.compose(tormap).compose(src.beta_map))


def kappa_up(K: KTheoryPair, n: int, m: int, degree: int) -> tuple[GroupHom, GroupHom]:
    """Map K(Z/n) -> K(Z/mn) induced by the unital inclusion M_n -> M_mn.

    Multiplication by m on the tensor summand, canonical inclusion on Tor.
    Returns ``(kappa, tor_part)``.
    """
    a, b = k_coeff_zn(K, n, degree), k_coeff_zn(K, m * n, degree)
    tormap = _tor_map(a, b, 1)
    return _assemble(a, b, _tensor_map(a, b, m), tormap), tormap


def kappa_down(K: KTheoryPair, n: int, m: int, degree: int) -> tuple[GroupHom, GroupHom]:
    """Map K(Z/mn) -> K(Z/n): reduction on the tensor summand, times m on Tor."""
    a, b = k_coeff_zn(K, m * n, degree), k_coeff_zn(K, n, degree)
    tormap = _tor_map(a, b, m)
    return _assemble(a, b, _tensor_map(a, b, 1), tormap), tormap


@dataclass(frozen=True)
class QZCoefficients:
    """``K_degree(Q/Z) = (Q/Z)^rank K_degree (+) t K_{degree+1}`` (split)."""

    degree: int
    group: ExtGroup
    torsion: FgGroup
    shear: tuple[tuple[QZValue, ...], ...] = ()

    def quotient_to_torsion(self, x: ExtElement) -> GroupElement:
        return self.torsion.element(x.finite)

    def divisible_part_inclusion(self, q: Sequence) -> ExtElement:
        return self.group.element(divisible=q)

    def lift(self, t) -> ExtElement:
        """A preimage of t under :meth:`quotient_to_torsion` (the split one)."""
        t = self.torsion.element(t if not isinstance(t, GroupElement) else t.coords)
        div = [QZValue(0)] * self.group.qz_rank
        for coeff, row in zip(t.coords, self.shear):
            div = [a + b * coeff for a, b in zip(div, row)]
        return self.group.element(divisible=div, finite=t.coords)

    def resplit(self, shear: Sequence[Sequence]) -> QZCoefficients:
        """Same sequence with the section t -> (h(t), t) for a hom h: tK -> (Q/Z)^r.

        ``shear[i]`` is h applied to the i-th torsion generator.
        """
        rows = tuple(tuple(QZValue.of(x) for x in row) for row in shear)
        if len(rows) != self.torsion.ngens or any(len(r) != self.group.qz_rank for r in rows):
            raise ValueError("shear must give one (Q/Z)^rank vector per torsion generator")
        for d, row in zip(self.torsion.invariant_factors, rows):
            if any(d % v.denominator for v in row):
                raise ValueError("shear is not a homomorphism on the torsion group")
        return QZCoefficients(self.degree, self.group, self.torsion, rows)


def k_coeff_qz(K: KTheoryPair, degree: int) -> QZCoefficients:
    _check_degree(degree)
    tors = FgGroup(0, K[degree + 1].invariant_factors)
    return QZCoefficients(degree, ExtGroup(tors, qz_rank=K[degree].free_rank), tors)
