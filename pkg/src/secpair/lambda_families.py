"""Bockstein-compatible families and the dimension-drop KK table.

A character of t K1 is equivalent to a family of maps

    psi_m : Tor(Z/m, K1) -> Z/m,    m >= 2,

making both squares commute for all m, n >= 2:

    Tor(Z/m)  --incl-->  Tor(Z/mn)  --(x m)-->  Tor(Z/n)
       |psi_m               |psi_mn                |psi_n
      Z/m    --[1]->[n]-->  Z/mn    --[1]->[1]-->  Z/n

Families are truncated at a bound M (only mn <= M is checked); at M equal
to the exponent of t K1 the truncation loses nothing.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Iterator

from .fgab import (
    FgGroup,
    GroupElement,
    GroupHom,
    IntMatrix,
    _present,
    cyclic,
    kernel,
    torsion_subgroup,
)
from .functors import QZHom, QZValue, tor_zn


# ---------------------------------------------------------------------------
# KK(I_n, I_m) table
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KKGroupDescriptor:
    """Cyclic group KK^degree(I_n, I_m), its generator, and the generator's
    action on K-theory as a hom between cyclic groups (Z/0 = Z)."""

    n: int
    m: int
    degree: int
    group: FgGroup
    generator: str
    action: GroupHom

    def action_order(self) -> int:
        return self.action.order()


def _cyc_hom(src: int, dst: int, image: int) -> GroupHom:
    S, T = cyclic(src), cyclic(dst)
    if T.is_trivial() or S.is_trivial():
        return GroupHom.zero(S, T)
    return GroupHom.from_images(S, T, [[image]])


def kk_group(n: int, m: int, degree: int) -> KKGroupDescriptor:
    """KK^degree(I_n, I_m) with I_1 = C.

    >>> kk_group(6, 4, 0).group
    FgGroup(free_rank=0, invariant_factors=(2,))
    """
    if n < 1 or m < 1:
        raise ValueError("indices must be >= 1")
    if degree not in (0, 1):
        raise ValueError("degree must be 0 or 1")
    if n >= 2 and m >= 2:
        g = gcd(n, m)
        if degree == 0:
            return KKGroupDescriptor(n, m, 0, cyclic(g), f"kappa_{{{m},{g}}} o kappa_{{{g},{n}}}",
                                     _cyc_hom(n, m, m // g))
        # computed on K_1(S I_m (x) I_n) = Z/g -> K_0(S I_m (x) I_m) = Z/m
        return KKGroupDescriptor(n, m, 1, cyclic(g), f"rho_{m} o beta_{n}", _cyc_hom(g, m, m // g))
    if n == 1 and m == 1:
        if degree == 0:
            return KKGroupDescriptor(1, 1, 0, cyclic(0), "id", _cyc_hom(0, 0, 1))
        return KKGroupDescriptor(1, 1, 1, cyclic(1), "0", _cyc_hom(0, 0, 0))
    if n == 1:
        if degree == 0:
            return KKGroupDescriptor(1, m, 0, cyclic(m), f"rho_{m}", _cyc_hom(0, m, 1))
        return KKGroupDescriptor(1, m, 1, cyclic(1), "0", _cyc_hom(0, m, 0))
    # m == 1
    if degree == 1:
        # computed on K_0(S I_n (x) I_n) = Z/n -> K_0(S I_n) = Z/n
        return KKGroupDescriptor(n, 1, 1, cyclic(n), f"beta_{n}", _cyc_hom(n, n, 1))
    return KKGroupDescriptor(n, 1, 0, cyclic(1), "0", _cyc_hom(n, 0, 0))


def kk_table(max_index: int, degree: int) -> list[list[KKGroupDescriptor]]:
    """Rows n = 1..max_index, columns m = 1..max_index."""
    return [[kk_group(n, m, degree) for m in range(1, max_index + 1)]
            for n in range(1, max_index + 1)]


def kappa_up_action(n: int, m: int) -> GroupHom:
    """kappa_{mn,n} on K_1: Z/n -> Z/mn, [1] -> [m]."""
    return kk_group(n, m * n, 0).action


def kappa_down_action(n: int, m: int) -> GroupHom:
    """kappa_{n,mn} on K_1: Z/mn -> Z/n, [1] -> [1]."""
    return kk_group(m * n, n, 0).action


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------


@lru_cache(maxsize=65536)
def _tor_gens_in_torsion(k1: FgGroup, m: int) -> tuple[FgGroup, tuple[tuple[int, ...], ...]]:
    """Tor(Z/m, k1) and its generators in t k1 coordinates."""
    T, incl = tor_zn(m, k1)
    r = k1.free_rank
    return T, tuple(x.coords[r:] for x in incl.images())


@lru_cache(maxsize=65536)
def _up(k1: FgGroup, m: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Tor(Z/m) -> Tor(Z/mn) inclusion, as images of generators in Tor(Z/mn) coords."""
    _, incl_m = tor_zn(m, k1)
    _, incl_mn = tor_zn(m * n, k1)
    return tuple(incl_mn.preimage(x).coords for x in incl_m.images())


@lru_cache(maxsize=65536)
def _down(k1: FgGroup, m: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Tor(Z/mn) -> Tor(Z/n), multiplication by m."""
    _, incl_mn = tor_zn(m * n, k1)
    _, incl_n = tor_zn(n, k1)
    return tuple(incl_n.preimage(m * x).coords for x in incl_mn.images())


def _eval(images: tuple[int, ...], coords, modulus: int) -> int:
    return sum(a * b for a, b in zip(images, coords)) % modulus


@dataclass(frozen=True)
class LambdaFamily:
    """``psi[m]`` lists the images in Z/m of the generators of Tor(Z/m, k1).

    Entries are stored raw so that corrupted (even ill-defined) families can
    be represented and rejected by :func:`check_compatibility`.
    """

    k1: FgGroup
    bound: int
    psi: dict = field(hash=False)

    def __post_init__(self):
        if self.bound < 2:
            raise ValueError("bound must be >= 2")
        norm = {}
        for m in range(2, self.bound + 1):
            T, _ = _tor_gens_in_torsion(self.k1, m)
            imgs = tuple(int(x) % m for x in self.psi.get(m, (0,) * T.ngens))
            if len(imgs) != T.ngens:
                raise ValueError(f"psi_{m} needs {T.ngens} generator images")
            norm[m] = imgs
        object.__setattr__(self, "psi", norm)

    def psi_hom(self, m: int) -> GroupHom:
        T, _ = _tor_gens_in_torsion(self.k1, m)
        return GroupHom.from_images(T, cyclic(m), [[x] for x in self.psi[m]]) if m > 1 else None

    def tor_group(self, m: int) -> FgGroup:
        return _tor_gens_in_torsion(self.k1, m)[0]

    def with_entry(self, m: int, j: int, value: int) -> LambdaFamily:
        psi = dict(self.psi)
        row = list(psi[m])
        row[j] = value
        psi[m] = tuple(row)
        return LambdaFamily(self.k1, self.bound, psi)

    def __eq__(self, other):
        return (isinstance(other, LambdaFamily) and self.k1 == other.k1
                and self.bound == other.bound and self.psi == other.psi)

    def __hash__(self):
        return hash((self.k1, self.bound, tuple(sorted(self.psi.items()))))


@dataclass(frozen=True)
class CompatibilityReport:
    ok: bool
    failure: str | None = None
    pair: tuple[int, int] | None = None
    square: int | None = None

    def __bool__(self):
        return self.ok


def check_compatibility(F: LambdaFamily) -> CompatibilityReport:
    """Check both squares for every m, n >= 2 with mn <= bound, then
    well-definedness of each psi_m.  Reports the first failure."""
    k1, M, psi = F.k1, F.bound, F.psi
    for m in range(2, M // 2 + 1):
        for n in range(2, M // m + 1):
            mn = m * n
            for j, (x, up) in enumerate(zip(psi[m], _up(k1, m, n))):
                lhs = _eval(psi[mn], up, mn)
                rhs = (n * x) % mn
                if lhs != rhs:
                    return CompatibilityReport(
                        False, f"psi_{mn}(incl g_{j}) = [{lhs}] but {n} * psi_{m}(g_{j}) = [{rhs}] "
                               f"in Z/{mn}", (m, n), 1)
            for j, (y, down) in enumerate(zip(psi[mn], _down(k1, m, n))):
                lhs = _eval(psi[n], down, n)
                if lhs != y % n:
                    return CompatibilityReport(
                        False, f"psi_{n}({m} g_{j}) = [{lhs}] but psi_{mn}(g_{j}) reduces to "
                               f"[{y % n}] in Z/{n}", (m, n), 2)
    for m in range(2, M + 1):
        T = F.tor_group(m)
        for j, (x, t) in enumerate(zip(psi[m], T.invariant_factors)):
            if (t * x) % m:
                return CompatibilityReport(
                    False, f"psi_{m} is not a homomorphism: generator {j} has order {t} "
                           f"but image [{x}] has order {m // gcd(x, m)}", (m, 1), 0)
    return CompatibilityReport(True)


def family_from_delta(delta: QZHom, k1: FgGroup, bound: int) -> LambdaFamily:
    """Restrict a character of t k1 to the m-torsion: psi_m(g) = m * delta(g)."""
    T, _ = torsion_subgroup(k1)
    if delta.source != T:
        raise ValueError("delta must be a character of the torsion subgroup of k1")
    e = k1.torsion_exponent()
    if bound % e:
        warnings.warn(f"bound {bound} is not a multiple of the torsion exponent {e}; "
                      "the family will not determine delta", stacklevel=2)
    psi = {}
    for m in range(2, bound + 1):
        _, gens = _tor_gens_in_torsion(k1, m)
        row = []
        for g in gens:
            v = delta(g).as_fraction() * m
            if v.denominator != 1:
                raise ArithmeticError(f"delta({g}) = {delta(g)} is not m-torsion for m={m}")
            row.append(v.numerator % m)
        psi[m] = tuple(row)
    return LambdaFamily(k1, bound, psi)


class IncompatibleFamilyError(ValueError):
    pass


def delta_from_family(F: LambdaFamily) -> QZHom:
    """Direct limit of the psi_m, read off at the exponent stage."""
    report = check_compatibility(F)
    if not report:
        raise IncompatibleFamilyError(report.failure)
    k1 = F.k1
    T, incl = torsion_subgroup(k1)
    e = k1.torsion_exponent()
    if e == 1:
        return QZHom.zero(T)
    if F.bound < e:
        raise ValueError(f"bound {F.bound} is below the torsion exponent {e}")
    _, incl_e = tor_zn(e, k1)
    vals = []
    for g in incl.images():
        c = incl_e.preimage(g).coords
        vals.append(QZValue(_eval(F.psi[e], c, e), e))
    return QZHom(T, tuple(vals))


# ---------------------------------------------------------------------------
# The group of all compatible families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilySpace:
    """Compatible families at a bound, as the kernel of the square-defect map."""

    k1: FgGroup
    bound: int
    group: FgGroup
    _incl: GroupHom
    _section: IntMatrix
    _slots: tuple[tuple[int, int, int], ...]  # (m, generator index, Tor order)

    def order(self) -> int:
        return self.group.order()

    def decode(self, x) -> LambdaFamily:
        y = self._incl(x).coords
        u = self._section.apply(y)
        psi: dict[int, list[int]] = {}
        for (m, j, t), uv in zip(self._slots, u):
            psi.setdefault(m, []).append((m // t) * (uv % t))
        return LambdaFamily(self.k1, self.bound, {m: tuple(v) for m, v in psi.items()})

    def families(self) -> Iterator[LambdaFamily]:
        for x in self.group.elements():
            yield self.decode(x)


def compatible_family_space(k1: FgGroup, bound: int) -> FamilySpace:
    """Solve the square equations over all psi_m simultaneously.

    A well-defined psi_m sends a Tor generator of order t to a multiple of
    m/t, so the unknowns are u in Z/t with psi = (m/t) u.  Each square gives
    a linear condition; the families form the kernel of the defect map.
    """
    slots = []
    for m in range(2, bound + 1):
        T, _ = _tor_gens_in_torsion(k1, m)
        for j, t in enumerate(T.invariant_factors):
            slots.append((m, j, t))
    index = {(m, j): i for i, (m, j, _) in enumerate(slots)}
    nvar = len(slots)
    rows, mods = [], []

    def coef(m, j):
        return m // slots[index[(m, j)]][2]

    for m in range(2, bound // 2 + 1):
        for n in range(2, bound // m + 1):
            mn = m * n
            for j, up in enumerate(_up(k1, m, n)):
                row = [0] * nvar
                for jj, c in enumerate(up):
                    row[index[(mn, jj)]] += c * coef(mn, jj)
                row[index[(m, j)]] -= n * coef(m, j)
                rows.append(row)
                mods.append(mn)
            for j, down in enumerate(_down(k1, m, n)):
                row = [0] * nvar
                for jj, c in enumerate(down):
                    row[index[(n, jj)]] += c * coef(n, jj)
                row[index[(mn, j)]] -= coef(mn, j)
                rows.append(row)
                mods.append(n)
    src_orders = [t for _, _, t in slots]
    S, P_src, sec_src = _present(nvar, [[t if k == i else 0 for k in range(nvar)]
                                        for i, t in enumerate(src_orders)])
    keep = [i for i, md in enumerate(mods) if md > 1]
    rows = [rows[i] for i in keep]
    mods = [mods[i] for i in keep]
    Tgt, P_tgt, _ = _present(len(rows), [[md if k == i else 0 for k in range(len(rows))]
                                         for i, md in enumerate(mods)])
    if rows:
        naive = IntMatrix.from_rows(rows, nvar)
        M = P_tgt @ naive @ sec_src
    else:
        M = IntMatrix.zeros(Tgt.ngens, S.ngens)
    defect = GroupHom(S, Tgt, M)
    K, incl = kernel(defect)
    return FamilySpace(k1, bound, K, incl, sec_src, tuple(slots))
