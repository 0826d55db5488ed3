"""Hom, Ext, Tor and tensor functors for finitely generated abelian groups.

Q/Z never appears as a group object.  Values in it are :class:`QZValue`
(reduced fractions in [0, 1)), homomorphisms into it are :class:`QZHom`,
and direct limits over the divisibility poset are read off at a finite
cofinal stage.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Callable, Sequence

from .fgab import (
    FgGroup,
    GroupElement,
    GroupHom,
    IntMatrix,
    TRIVIAL,
    _as_element,
    _coords,
    _present,
    cyclic,
    direct_sum,
    group_from_presentation,
    torsion_subgroup,
)


class InfiniteGroupError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class QZValue:
    """An element p/q of Q/Z with 0 <= p < q and gcd(p, q) = 1."""

    numerator: int
    denominator: int = 1

    def __post_init__(self):
        if self.denominator <= 0:
            raise ValueError("denominator must be positive")
        f = Fraction(self.numerator, self.denominator) % 1
        object.__setattr__(self, "numerator", f.numerator)
        object.__setattr__(self, "denominator", f.denominator)

    @classmethod
    def of(cls, x) -> QZValue:
        if isinstance(x, QZValue):
            return x
        f = Fraction(x)
        return cls(f.numerator, f.denominator)

    @classmethod
    def parse(cls, s: str) -> QZValue:
        """Parse ``"p/q"`` (or an integer string)."""
        try:
            return cls.of(Fraction(s.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {s!r}") from exc

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __add__(self, other) -> QZValue:
        return QZValue.of(self.as_fraction() + QZValue.of(other).as_fraction())

    def __neg__(self) -> QZValue:
        return QZValue.of(-self.as_fraction())

    def __sub__(self, other) -> QZValue:
        return self + (-QZValue.of(other))

    def __mul__(self, k: int) -> QZValue:
        return QZValue.of(self.as_fraction() * int(k))

    __rmul__ = __mul__

    def __float__(self):
        return self.numerator / self.denominator

    def is_zero(self) -> bool:
        return self.numerator == 0

    def order(self) -> int:
        return self.denominator

    def __str__(self):
        return f"{self.numerator}/{self.denominator}"


QZ_ZERO = QZValue(0)


@dataclass(frozen=True)
class QZHom:
    """Homomorphism from a finite group into Q/Z, by generator values."""

    source: FgGroup
    values: tuple[QZValue, ...]

    def __post_init__(self):
        if not self.source.is_finite():
            raise InfiniteGroupError(f"QZHom source {self.source} must be finite")
        vals = tuple(QZValue.of(v) for v in self.values)
        if len(vals) != self.source.ngens:
            raise ValueError(f"need {self.source.ngens} values, got {len(vals)}")
        for d, v in zip(self.source.invariant_factors, vals):
            if d % v.denominator:
                raise ValueError(f"value {v} on a generator of order {d} is not order-compatible")
        object.__setattr__(self, "values", vals)

    @classmethod
    def zero(cls, source: FgGroup) -> QZHom:
        return cls(source, (QZ_ZERO,) * source.ngens)

    def __call__(self, x) -> QZValue:
        c = _as_element(self.source, x).coords
        return QZValue.of(sum((Fraction(k) * v.as_fraction() for k, v in zip(c, self.values)),
                              Fraction(0)))

    def compose(self, f: GroupHom) -> QZHom:
        """``self o f`` for f with finite source."""
        if f.target != self.source:
            raise ValueError("target of f is not the source of this character")
        return QZHom(f.source, tuple(self(y) for y in f.images()))

    def __add__(self, other: QZHom) -> QZHom:
        if other.source != self.source:
            raise ValueError("characters on different groups")
        return QZHom(self.source, tuple(a + b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> QZHom:
        return QZHom(self.source, tuple(-a for a in self.values))

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def coordinates(self) -> tuple[int, ...]:
        """Coordinates in Hom(G, Q/Z) = (+) Z/d_i: value_i = c_i / d_i."""
        return tuple((v.as_fraction() * d).numerator % d
                     for v, d in zip(self.values, self.source.invariant_factors))

    @classmethod
    def from_coordinates(cls, G: FgGroup, coords: Sequence[int]) -> QZHom:
        return cls(G, tuple(QZValue(c, d) for c, d in zip(coords, G.invariant_factors)))


def all_characters(G: FgGroup):
    """Every homomorphism G -> Q/Z of a finite group."""
    for c in product(*(range(d) for d in G.invariant_factors)):
        yield QZHom.from_coordinates(G, c)


# ---------------------------------------------------------------------------
# Hom
# ---------------------------------------------------------------------------

QZ = "Q/Z"


@dataclass(frozen=True)
class HomGroup:
    """Hom(G, T) for T = Z/n or Q/Z, presented as a normal-form group.

    ``coords`` maps a normal-form element of ``group`` to one integer per
    generator of G; the generator ``g_i`` goes to ``coords_i * step_i`` in
    T where ``step_i`` is ``n / gcd(n, ord g_i)`` (or ``1/d_i`` for Q/Z).
    """

    source: FgGroup
    target: int | str
    group: FgGroup
    _to_naive: IntMatrix
    _from_naive: IntMatrix
    _naive_orders: tuple[int, ...]

    def _naive(self, h) -> tuple[int, ...]:
        v = self._to_naive.apply(_as_element(self.group, h).coords)
        return tuple(x % o for x, o in zip(v, self._naive_orders))

    def as_map(self, h) -> GroupHom | QZHom:
        c = self._naive(h)
        if self.target == QZ:
            return QZHom.from_coordinates(self.source, c)
        n = self.target
        imgs = []
        for ci, o in zip(c, self.source.orders):
            step = n // gcd(n, o) if o else 1
            imgs.append([ci * step])
        return GroupHom.from_images(self.source, cyclic(n), imgs) if n > 1 else \
            GroupHom.zero(self.source, cyclic(n))

    def evaluate(self, h, g) -> QZValue | GroupElement:
        return self.as_map(h)(g)

    def element_of(self, phi: GroupHom | QZHom) -> GroupElement:
        """Element of ``group`` representing the given homomorphism."""
        if self.target == QZ:
            naive = phi.coordinates()
        else:
            n = self.target
            naive = []
            for y, o in zip(phi.images(), self.source.orders):
                step = n // gcd(n, o) if o else 1
                v = y.coords[0] if y.coords else 0
                naive.append(v // step)
        return GroupElement(self.group, self._from_naive.apply(naive))


def hom_group(G: FgGroup, target: int | str) -> HomGroup:
    """Hom(G, Z/n) for an integer n >= 1, or Hom(G, Q/Z) for ``target == "Q/Z"``.

    >>> hom_group(cyclic(4), 6).group
    FgGroup(free_rank=0, invariant_factors=(2,))
    """
    if target == QZ:
        if not G.is_finite():
            raise InfiniteGroupError("Hom(G, Q/Z) is not finitely generated for infinite G")
        orders = list(G.invariant_factors)
    else:
        n = int(target)
        if n < 1:
            raise ValueError("target Z/n needs n >= 1")
        orders = [gcd(n, o) if o else n for o in G.orders]
    H, P, S = _present(len(orders), [[o if j == i else 0 for j in range(len(orders))]
                                     for i, o in enumerate(orders)])
    return HomGroup(G, target, H, S, P, tuple(orders))


# ---------------------------------------------------------------------------
# Tor, Ext, tensor
# ---------------------------------------------------------------------------


@lru_cache(maxsize=4096)
def tor_zn(n: int, G: FgGroup) -> tuple[FgGroup, GroupHom]:
    """Tor(Z/n, G) = {g : n g = 0} with its inclusion into G.

    >>> tor_zn(4, FgGroup(1, (6,)))[0]
    FgGroup(free_rank=0, invariant_factors=(2,))
    """
    if n < 1:
        raise ValueError("n must be positive")
    r = G.free_rank
    orders = [gcd(d, n) for d in G.invariant_factors]
    keep = [i for i, o in enumerate(orders) if o > 1]
    T = FgGroup(0, tuple(orders[i] for i in keep))
    imgs = []
    for i in keep:
        v = [0] * G.ngens
        v[r + i] = G.invariant_factors[i] // orders[i]
        imgs.append(v)
    return T, GroupHom.from_images(T, G, imgs)


def tensor_zn(G: FgGroup, n: int) -> tuple[FgGroup, GroupHom]:
    """G (x) Z/n with the reduction map G -> G (x) Z/n."""
    rels = G.relation_vectors() + [tuple(n if j == i else 0 for j in range(G.ngens))
                                   for i in range(G.ngens)]
    T, P, _ = _present(G.ngens, rels)
    return T, GroupHom(G, T, P)


def ext_z(G: FgGroup) -> FgGroup:
    """Ext(G, Z) from the free resolution 0 -> Z^k -> Z^g -> G -> 0.

    Dualising gives Hom(Z^g, Z) -> Hom(Z^k, Z) -> Ext(G, Z) -> 0, so Ext is
    the cokernel of the transposed relation matrix.
    """
    rels = G.relation_vectors()
    k = len(rels)
    if k == 0:
        return TRIVIAL
    # columns of the dual map are the rows of the relation matrix, transposed
    dual_rels = [[r[j] for r in rels] for j in range(G.ngens)]
    return group_from_presentation(k, dual_rels)[0]


def pontryagin_dual(G: FgGroup) -> FgGroup:
    """Hom(G, Q/Z) of a finite group; isomorphic to G."""
    return hom_group(G, QZ).group


def dual_pairing(G: FgGroup, g, chi) -> QZValue:
    """Evaluation pairing G x Hom(G, Q/Z) -> Q/Z.

    chi is a QZHom on G or an element of ``pontryagin_dual(G)``.
    """
    if isinstance(chi, QZHom):
        if chi.source != G:
            raise ValueError("character is defined on a different group")
        return chi(g)
    return hom_group(G, QZ).as_map(chi)(g)


def is_perfect_pairing(G: FgGroup) -> bool:
    """Check by enumeration that the evaluation pairing is nondegenerate on both sides."""
    if not G.is_finite():
        raise InfiniteGroupError("pairing check needs a finite group")
    H = hom_group(G, QZ)
    chars = [H.as_map(h) for h in H.group.elements()]
    elts = list(G.elements())
    left = all(any(not c(g).is_zero() for c in chars) for g in elts if not g.is_zero())
    right = all(any(not c(g).is_zero() for g in elts) for c in chars if not c.is_zero())
    return left and right and H.group.order() == G.order()


# ---------------------------------------------------------------------------
# Groups with divisible summands
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExtGroup:
    """``fg_part (+) Q^q_rank (+) (Q/Z)^qz_rank``."""

    fg_part: FgGroup = TRIVIAL
    q_rank: int = 0
    qz_rank: int = 0

    def is_trivial(self) -> bool:
        return self.fg_part.is_trivial() and not self.q_rank and not self.qz_rank

    def element(self, divisible: Sequence = (), finite: Sequence[int] = (),
                rational: Sequence = ()) -> ExtElement:
        return ExtElement(self, tuple(QZValue.of(x) for x in divisible) or (QZ_ZERO,) * self.qz_rank,
                          self.fg_part.reduce(tuple(finite) or (0,) * self.fg_part.ngens),
                          tuple(Fraction(x) for x in rational) or (Fraction(0),) * self.q_rank)

    def zero(self) -> ExtElement:
        return self.element()

    def __str__(self):
        parts = [f"Q/Z"] * self.qz_rank + ["Q"] * self.q_rank
        if not self.fg_part.is_trivial():
            parts.append(str(self.fg_part))
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class ExtElement:
    group: ExtGroup
    divisible: tuple[QZValue, ...]
    finite: tuple[int, ...]
    rational: tuple[Fraction, ...] = ()

    def __post_init__(self):
        g = self.group
        if len(self.divisible) != g.qz_rank or len(self.finite) != g.fg_part.ngens:
            raise ValueError(f"element shape does not match {g}")
        if len(self.rational) != g.q_rank:
            raise ValueError(f"element shape does not match {g}")

    def __add__(self, other: ExtElement) -> ExtElement:
        return ExtElement(self.group,
                          tuple(a + b for a, b in zip(self.divisible, other.divisible)),
                          self.group.fg_part.reduce(tuple(a + b for a, b in zip(self.finite, other.finite))),
                          tuple(a + b for a, b in zip(self.rational, other.rational)))

    def __neg__(self) -> ExtElement:
        return ExtElement(self.group, tuple(-a for a in self.divisible),
                          self.group.fg_part.reduce(tuple(-a for a in self.finite)),
                          tuple(-a for a in self.rational))

    def __sub__(self, other: ExtElement) -> ExtElement:
        return self + (-other)

    def __rmul__(self, k: int) -> ExtElement:
        return ExtElement(self.group, tuple(a * k for a in self.divisible),
                          self.group.fg_part.reduce(tuple(k * a for a in self.finite)),
                          tuple(a * k for a in self.rational))

    def is_zero(self) -> bool:
        return (all(a.is_zero() for a in self.divisible) and not any(self.finite)
                and not any(self.rational))


def tensor_q(G: FgGroup) -> ExtGroup:
    """G (x) Q: only the free rank survives."""
    return ExtGroup(TRIVIAL, q_rank=G.free_rank)


def tensor_qz(G: FgGroup) -> ExtGroup:
    """G (x) Q/Z = (Q/Z)^rank; torsion tensors to zero."""
    return ExtGroup(TRIVIAL, qz_rank=G.free_rank)


# ---------------------------------------------------------------------------
# Direct limits over the divisibility poset
# ---------------------------------------------------------------------------


class InconsistentFamilyError(ValueError):
    def __init__(self, triple, message):
        super().__init__(message)
        self.triple = triple


class DirectedFamily:
    """Groups indexed by n >= 2, ordered by divisibility, with bonding maps.

    ``group(n)`` and ``bond(n, m)`` (for n | m) are evaluated lazily and
    memoised under a lock so concurrent readers see one value.
    """

    def __init__(self, group: Callable[[int], FgGroup], bond: Callable[[int, int], GroupHom]):
        self._group_fn = group
        self._bond_fn = bond
        self._cache: dict = {}
        self._lock = threading.Lock()

    def _memo(self, key, fn):
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        val = fn()
        with self._lock:
            return self._cache.setdefault(key, val)

    def group(self, n: int) -> FgGroup:
        return self._memo(("g", n), lambda: self._group_fn(n))

    def bond(self, n: int, m: int) -> GroupHom:
        if m % n:
            raise ValueError(f"{n} does not divide {m}")
        def make():
            f = self._bond_fn(n, m)
            if f.source != self.group(n) or f.target != self.group(m):
                raise InconsistentFamilyError((n, m, m), f"bond {n}->{m} has the wrong endpoints")
            return f
        return self._memo(("b", n, m), make)

    @classmethod
    def constant(cls, G: FgGroup) -> DirectedFamily:
        return cls(lambda n: G, lambda n, m: GroupHom.identity(G))

    @classmethod
    def cyclic_qz(cls) -> DirectedFamily:
        """Z/n with bonds [1] -> [m/n]; its colimit is Q/Z."""
        return cls(cyclic, lambda n, m: GroupHom.from_images(cyclic(n), cyclic(m), [[m // n]]))


@dataclass(frozen=True)
class DirectLimit:
    stage: int
    group: FgGroup
    structure_maps: dict

    def structure_map(self, n: int) -> GroupHom:
        return self.structure_maps[n]


def direct_limit(F: DirectedFamily, bound: int) -> DirectLimit:
    """Colimit of F restricted to the divisors of ``bound`` that are >= 2.

    ``bound`` is the cofinal stage of that subposet, so the colimit is
    ``F.group(bound)``; every bonding triple n | m | k is checked first.
    """
    if bound < 2:
        raise ValueError("bound must be at least 2")
    idx = [n for n in range(2, bound + 1) if bound % n == 0]
    for n in idx:
        for m in idx:
            if m % n:
                continue
            for k in idx:
                if k % m:
                    continue
                if F.bond(n, k) != F.bond(m, k).compose(F.bond(n, m)):
                    raise InconsistentFamilyError(
                        (n, m, k), f"bond({n}->{k}) != bond({m}->{k}) o bond({n}->{m})")
    maps = {n: F.bond(n, bound) for n in idx}
    return DirectLimit(bound, F.group(bound), maps)


def qz_from_cyclic_stage(n: int, x) -> QZValue:
    """Image of [x] in Z/n under the canonical map Z/n -> Q/Z, [1] -> [1/n]."""
    v = _coords(x)
    return QZValue(v[0] if v else 0, n)
