"""Exact integer linear algebra and finitely generated abelian groups.

Every group is stored in invariant-factor normal form

    G = Z^r (+) Z/d_1 (+) ... (+) Z/d_k,   d_1 | d_2 | ... | d_k,  d_i >= 2,

and elements are coordinate vectors in that basis, free coordinates first.
Subgroups, quotients and kernels are all computed by pushing a presentation
through :func:`smith_normal_form` and reading off the diagonal.

>>> G, proj = group_from_presentation(2, [[2, 0], [0, 3]])
>>> G
FgGroup(free_rank=0, invariant_factors=(6,))
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, reduce
from itertools import product
from math import gcd, lcm, prod
from typing import Iterable, Iterator, Sequence


class IllDefinedHomError(ValueError):
    """Raised when a proposed homomorphism does not respect the source relations."""


class CompositionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Integer matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntMatrix:
    """Immutable rectangular matrix of Python ints (row-major)."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix shape")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("column count of an empty matrix is ambiguous")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntMatrix:
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int, cols: int) -> IntMatrix:
        e = [0] * (rows * cols)
        for i, d in enumerate(diag):
            e[i * cols + i] = d
        return cls(rows, cols, tuple(e))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def T(self) -> IntMatrix:
        return IntMatrix.from_rows([self.col(j) for j in range(self.cols)], self.rows)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = [other.col(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.extend(sum(a * b for a, b in zip(r, c)) for c in ocols)
        return IntMatrix(self.rows, other.cols, tuple(out))

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.cols:
            raise ValueError(f"vector of length {len(vec)} against {self.cols} columns")
        return tuple(sum(a * b for a, b in zip(self.row(i), vec)) for i in range(self.rows))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.rows)
                   for j in range(self.cols) if i != j)

    def diagonal_entries(self) -> tuple[int, ...]:
        return tuple(self[i, i] for i in range(min(self.rows, self.cols)))

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        n = self.rows
        if n != self.cols:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return 1
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]


def _as_matrix(A) -> IntMatrix:
    if isinstance(A, IntMatrix):
        return A
    return IntMatrix.from_rows(A)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


class _SNF:
    """Working state of a Smith reduction; keeps U, U^-1 and V in sync with A."""

    def __init__(self, A: IntMatrix):
        m, n = A.shape
        self.m, self.n = m, n
        self.a = A.tolist()
        self.u = [[int(i == j) for j in range(m)] for i in range(m)]
        self.uinv = [[int(i == j) for j in range(m)] for i in range(m)]
        self.v = [[int(i == j) for j in range(n)] for i in range(n)]

    # row i <- row i - q * row t
    def _row_sub(self, i, t, q):
        a, u, ui = self.a, self.u, self.uinv
        a[i] = [x - q * y for x, y in zip(a[i], a[t])]
        u[i] = [x - q * y for x, y in zip(u[i], u[t])]
        for r in ui:
            r[t] += q * r[i]

    def _row_swap(self, i, t):
        if i == t:
            return
        self.a[i], self.a[t] = self.a[t], self.a[i]
        self.u[i], self.u[t] = self.u[t], self.u[i]
        for r in self.uinv:
            r[i], r[t] = r[t], r[i]

    def _row_neg(self, t):
        self.a[t] = [-x for x in self.a[t]]
        self.u[t] = [-x for x in self.u[t]]
        for r in self.uinv:
            r[t] = -r[t]

    # col j <- col j - q * col t
    def _col_sub(self, j, t, q):
        for r in self.a:
            r[j] -= q * r[t]
        for r in self.v:
            r[j] -= q * r[t]

    def _col_swap(self, j, t):
        if j == t:
            return
        for r in self.a:
            r[j], r[t] = r[t], r[j]
        for r in self.v:
            r[j], r[t] = r[t], r[j]

    def run(self) -> _SNF:
        a, m, n = self.a, self.m, self.n
        for t in range(min(m, n)):
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            self._row_swap(best[1], t)
            self._col_swap(best[2], t)
            while True:
                p = a[t][t]
                dirty = False
                for i in range(t + 1, m):
                    if a[i][t]:
                        self._row_sub(i, t, a[i][t] // p)
                        dirty = dirty or a[i][t] != 0
                for j in range(t + 1, n):
                    if a[t][j]:
                        self._col_sub(j, t, a[t][j] // p)
                        dirty = dirty or a[t][j] != 0
                if dirty:
                    # a remainder smaller than the pivot survived: promote it
                    cands = [(abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]]
                    cands += [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
                    _, i, j = min(cands)
                    self._row_swap(i, t)
                    self._col_swap(j, t)
                    continue
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                # row t += row i brings a non-multiple into row t
                self._row_sub(t, bad[0], -1)
            if a[t][t] < 0:
                self._row_neg(t)
        return self

    @property
    def rank(self) -> int:
        return sum(1 for i in range(min(self.m, self.n)) if self.a[i][i])

    @property
    def diag(self) -> list[int]:
        return [self.a[i][i] for i in range(min(self.m, self.n))]


def _snf(A: IntMatrix) -> _SNF:
    return _SNF(A).run()


def smith_normal_form(A) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, D, V)`` with U, V unimodular and ``U @ A @ V == D``.

    D is diagonal with non-negative entries d_1 | d_2 | ... (zeros last).
    The pivot at each stage is the nonzero entry of least absolute value.

    >>> U, D, V = smith_normal_form([[2, 4], [6, 8]])
    >>> D.diagonal_entries()
    (2, 4)
    """
    A = _as_matrix(A)
    s = _snf(A)
    m, n = A.shape
    return (IntMatrix.from_rows(s.u, m), IntMatrix.from_rows(s.a, n),
            IntMatrix.from_rows(s.v, n))


def invariant_factors(A) -> tuple[int, ...]:
    """Nonzero SNF diagonal of ``A`` (units included)."""
    return tuple(d for d in _snf(_as_matrix(A)).diag if d)


# ---------------------------------------------------------------------------
# Groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FgGroup:
    """``Z^free_rank (+) Z/d_1 (+) ... (+) Z/d_k`` with ``d_1 | ... | d_k``."""

    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors", tuple(int(d) for d in self.invariant_factors))
        if self.free_rank < 0:
            raise ValueError("free_rank must be non-negative")
        ds = self.invariant_factors
        if any(d < 2 for d in ds):
            raise ValueError(f"invariant factors must be >= 2, got {ds}")
        if any(b % a for a, b in zip(ds, ds[1:])):
            raise ValueError(f"invariant factors {ds} do not form a divisibility chain")

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> FgGroup:
        """Normal form of ``(+) Z/o`` (``o = 0`` meaning Z, ``o = 1`` trivial)."""
        orders = list(orders)
        return group_from_presentation(len(orders), _diag_relations(orders))[0]

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.invariant_factors)

    @property
    def orders(self) -> tuple[int, ...]:
        """Order of each normal-form generator, 0 for the free ones."""
        return (0,) * self.free_rank + self.invariant_factors

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def is_trivial(self) -> bool:
        return self.ngens == 0

    def order(self) -> int:
        """Cardinality; 0 stands for infinity."""
        return 0 if self.free_rank else prod(self.invariant_factors)

    def exponent(self) -> int:
        """Least e > 0 with eG = 0, or 0 when G is infinite."""
        if self.free_rank:
            return 0
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def torsion_exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def reduce(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.ngens:
            raise ValueError(f"expected {self.ngens} coordinates, got {len(vec)}")
        r = self.free_rank
        return tuple(vec[:r]) + tuple(x % d for x, d in zip(vec[r:], self.invariant_factors))

    def zero(self) -> GroupElement:
        return GroupElement(self, (0,) * self.ngens)

    def element(self, coords: Sequence[int]) -> GroupElement:
        return GroupElement(self, coords)

    def gens(self) -> list[GroupElement]:
        n = self.ngens
        return [GroupElement(self, tuple(int(i == j) for j in range(n))) for i in range(n)]

    def relation_vectors(self) -> list[tuple[int, ...]]:
        n, r = self.ngens, self.free_rank
        return [tuple(d if j == r + i else 0 for j in range(n))
                for i, d in enumerate(self.invariant_factors)]

    def elements(self) -> Iterator[GroupElement]:
        """All elements of a finite group, in lexicographic coordinate order."""
        if self.free_rank:
            raise ValueError("cannot enumerate an infinite group")
        for c in product(*(range(d) for d in self.invariant_factors)):
            yield GroupElement(self, c, _reduced=True)

    def element_order(self, vec) -> int:
        """Order of an element, 0 if infinite."""
        v = _coords(vec)
        r = self.free_rank
        if any(v[:r]):
            return 0
        return reduce(lcm, (d // gcd(x, d) for x, d in zip(v[r:], self.invariant_factors)), 1)

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.invariant_factors]
        return " + ".join(parts) if parts else "0"


def free_group(n: int) -> FgGroup:
    return FgGroup(n, ())


def cyclic(n: int) -> FgGroup:
    """Z/n, with ``cyclic(0) == Z`` and ``cyclic(1) == 0``."""
    if n < 0:
        raise ValueError("order must be non-negative")
    if n == 0:
        return FgGroup(1, ())
    return FgGroup(0, (n,) if n > 1 else ())


TRIVIAL = FgGroup()
Z = FgGroup(1, ())


def _coords(x) -> tuple[int, ...]:
    if isinstance(x, GroupElement):
        return x.coords
    return tuple(int(c) for c in x)


@dataclass(frozen=True)
class GroupElement:
    group: FgGroup
    coords: tuple[int, ...]
    _reduced: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        if not self._reduced:
            object.__setattr__(self, "coords", self.group.reduce(tuple(int(c) for c in self.coords)))

    def __add__(self, other) -> GroupElement:
        o = _coords(other)
        return GroupElement(self.group, tuple(a + b for a, b in zip(self.coords, o)))

    def __neg__(self) -> GroupElement:
        return GroupElement(self.group, tuple(-a for a in self.coords))

    def __sub__(self, other) -> GroupElement:
        return self + (-_as_element(self.group, other))

    def __rmul__(self, k: int) -> GroupElement:
        return GroupElement(self.group, tuple(k * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def order(self) -> int:
        return self.group.element_order(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)


def _as_element(G: FgGroup, x) -> GroupElement:
    if isinstance(x, GroupElement):
        if x.group != G:
            raise ValueError(f"element of {x.group} used in {G}")
        return x
    return GroupElement(G, _coords(x))


# ---------------------------------------------------------------------------
# Homomorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=True)
class GroupHom:
    """Homomorphism given by the images of the normal-form generators.

    ``matrix`` has one column per source generator, expressed in target
    coordinates and reduced, so two homs are equal iff they agree on every
    generator.
    """

    source: FgGroup
    target: FgGroup
    matrix: IntMatrix

    def __post_init__(self):
        M = _as_matrix(self.matrix) if not isinstance(self.matrix, IntMatrix) else self.matrix
        if M.shape != (self.target.ngens, self.source.ngens):
            raise ValueError(
                f"matrix shape {M.shape} does not match "
                f"{self.target.ngens}x{self.source.ngens} ({self.source} -> {self.target})")
        cols = [self.target.reduce(M.col(j)) for j in range(M.cols)]
        r = self.source.free_rank
        for i, d in enumerate(self.source.invariant_factors):
            img = self.target.reduce(tuple(d * c for c in cols[r + i]))
            if any(img):
                raise IllDefinedHomError(
                    f"generator {r + i} of {self.source} has order {d} but "
                    f"{d} * {cols[r + i]} = {img} != 0 in {self.target}")
        object.__setattr__(self, "matrix", IntMatrix.from_columns(cols, self.target.ngens))

    @classmethod
    def from_images(cls, source: FgGroup, target: FgGroup, images: Sequence) -> GroupHom:
        cols = [_coords(x) for x in images]
        if len(cols) != source.ngens:
            raise ValueError(f"need {source.ngens} generator images, got {len(cols)}")
        return cls(source, target, IntMatrix.from_columns(cols, target.ngens))

    @classmethod
    def zero(cls, source: FgGroup, target: FgGroup) -> GroupHom:
        return cls(source, target, IntMatrix.zeros(target.ngens, source.ngens))

    @classmethod
    def identity(cls, G: FgGroup) -> GroupHom:
        return cls(G, G, IntMatrix.identity(G.ngens))

    @classmethod
    def multiplication(cls, G: FgGroup, k: int) -> GroupHom:
        n = G.ngens
        return cls(G, G, IntMatrix.diagonal([k] * n, n, n))

    def __call__(self, x) -> GroupElement:
        v = _as_element(self.source, x).coords
        return GroupElement(self.target, self.matrix.apply(v))

    def images(self) -> list[GroupElement]:
        return [GroupElement(self.target, self.matrix.col(j), _reduced=True)
                for j in range(self.source.ngens)]

    def compose(self, other: GroupHom) -> GroupHom:
        """``self o other``."""
        if other.target != self.source:
            raise CompositionError(f"cannot compose {other.target} -> ... with {self.source} -> ...")
        return GroupHom(other.source, self.target, self.matrix @ other.matrix)

    __matmul__ = compose

    def __add__(self, other: GroupHom) -> GroupHom:
        self._check_parallel(other)
        return GroupHom(self.source, self.target,
                        IntMatrix(self.matrix.rows, self.matrix.cols,
                                  tuple(a + b for a, b in zip(self.matrix.entries, other.matrix.entries))))

    def __neg__(self) -> GroupHom:
        return GroupHom(self.source, self.target,
                        IntMatrix(self.matrix.rows, self.matrix.cols,
                                  tuple(-a for a in self.matrix.entries)))

    def __sub__(self, other: GroupHom) -> GroupHom:
        return self + (-other)

    def __rmul__(self, k: int) -> GroupHom:
        return GroupHom(self.source, self.target,
                        IntMatrix(self.matrix.rows, self.matrix.cols,
                                  tuple(k * a for a in self.matrix.entries)))

    def _check_parallel(self, other):
        if (self.source, self.target) != (other.source, other.target):
            raise CompositionError("homomorphisms have different source/target")

    def is_zero(self) -> bool:
        return not any(self.matrix.entries)

    def is_injective(self) -> bool:
        return kernel(self)[0].is_trivial()

    def is_surjective(self) -> bool:
        return cokernel(self)[0].is_trivial()

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def order(self) -> int:
        """Order of this hom in Hom(source, target); 0 if infinite."""
        return reduce(_lcm0, (x.order() for x in self.images()), 1)

    @cached_property
    def _solver(self) -> _LinearSolver:
        rels = [list(v) for v in self.target.relation_vectors()]
        cols = [self.matrix.col(j) for j in range(self.source.ngens)] + rels
        return _LinearSolver(IntMatrix.from_columns(cols, self.target.ngens))

    def preimage(self, y) -> GroupElement | None:
        """Some x with f(x) = y, or None if y is not in the image."""
        z = self._solver.solve(_as_element(self.target, y).coords)
        if z is None:
            return None
        return GroupElement(self.source, z[:self.source.ngens])


def _lcm0(a: int, b: int) -> int:
    return 0 if a == 0 or b == 0 else lcm(a, b)


class _LinearSolver:
    """Integer solutions of ``C z = y`` via one cached Smith reduction."""

    def __init__(self, C: IntMatrix):
        self.C = C
        self.s = _snf(C)
        self.rank = self.s.rank

    def solve(self, y: Sequence[int]) -> tuple[int, ...] | None:
        s = self.s
        w = [sum(a * b for a, b in zip(row, y)) for row in s.u]
        z = [0] * s.n
        for i in range(s.m):
            if i < self.rank:
                q, r = divmod(w[i], s.a[i][i])
                if r:
                    return None
                z[i] = q
            elif w[i]:
                return None
        return tuple(sum(vr[j] * z[j] for j in range(self.rank)) for vr in s.v)

    def kernel_basis(self) -> list[tuple[int, ...]]:
        s = self.s
        return [tuple(vr[j] for vr in s.v) for j in range(self.rank, s.n)]


# ---------------------------------------------------------------------------
# Presentations, subgroups, kernels and cokernels
# ---------------------------------------------------------------------------


def _diag_relations(orders: Sequence[int]) -> list[list[int]]:
    n = len(orders)
    return [[o if j == i else 0 for j in range(n)] for i, o in enumerate(orders) if o != 0]


def _present(ngens: int, relations: Sequence[Sequence[int]]):
    """Normal form of ``Z^ngens / <relations>``.

    Returns ``(G, P, S)`` where P (G.ngens x ngens) maps old coordinates to
    normal-form coordinates and S (ngens x G.ngens) sends each normal-form
    generator back to a representative in Z^ngens.
    """
    rels = [list(r) for r in relations]
    for r in rels:
        if len(r) != ngens:
            raise ValueError(f"relation {r} does not have {ngens} entries")
    A = IntMatrix.from_columns(rels, ngens)
    s = _snf(A)
    diag = s.diag + [0] * (ngens - len(s.diag))
    free = [i for i, d in enumerate(diag) if d == 0]
    tors = [i for i, d in enumerate(diag) if d > 1]
    keep = free + tors
    G = FgGroup(len(free), tuple(diag[i] for i in tors))
    P = IntMatrix.from_rows([s.u[i] for i in keep], ngens)
    S = IntMatrix.from_rows([[s.uinv[r][i] for i in keep] for r in range(ngens)], len(keep))
    return G, P, S


def group_from_presentation(generators: int, relations) -> tuple[FgGroup, GroupHom]:
    """Cokernel of a relation matrix (one relation per row) in normal form.

    Returns the group together with the surjection ``Z^generators -> G``.

    >>> group_from_presentation(2, [[1, 0]])[0]
    FgGroup(free_rank=1, invariant_factors=())
    """
    if isinstance(relations, IntMatrix):
        relations = relations.tolist()
    G, P, _ = _present(generators, relations)
    return G, GroupHom(free_group(generators), G, P)


def subgroup(G: FgGroup, generators: Sequence) -> tuple[FgGroup, GroupHom]:
    """Subgroup of G generated by the given elements, with its inclusion."""
    gens = [_as_element(G, x).coords for x in generators]
    n = G.ngens
    cols = gens + G.relation_vectors()
    if not cols:
        return TRIVIAL, GroupHom.zero(TRIVIAL, G)
    s = _snf(IntMatrix.from_columns(cols, n))
    r = s.rank
    # basis of the lattice spanned by generators + relations
    basis = [[s.uinv[row][i] * s.a[i][i] for row in range(n)] for i in range(r)]
    rels = []
    for w in G.relation_vectors():
        uw = [sum(a * b for a, b in zip(urow, w)) for urow in s.u]
        rels.append([uw[i] // s.a[i][i] for i in range(r)])
    S, _, sec = _present(r, rels)
    images = []
    for k in range(S.ngens):
        y = sec.col(k)
        images.append([sum(y[i] * basis[i][row] for i in range(r)) for row in range(n)])
    return S, GroupHom.from_images(S, G, images)


def contains(G: FgGroup, generators: Sequence, x) -> bool:
    """Whether x lies in the subgroup generated by ``generators``."""
    cols = [_as_element(G, g).coords for g in generators] + G.relation_vectors()
    if not cols:
        return not any(_coords(x))
    return _LinearSolver(IntMatrix.from_columns(cols, G.ngens)).solve(_as_element(G, x).coords) is not None


def kernel(f: GroupHom) -> tuple[FgGroup, GroupHom]:
    """Kernel of f with its inclusion into ``f.source``."""
    gS = f.source.ngens
    gens = [v[:gS] for v in f._solver.kernel_basis()]
    return subgroup(f.source, gens)


def image(f: GroupHom) -> tuple[FgGroup, GroupHom]:
    """Image of f with its inclusion into ``f.target``."""
    return subgroup(f.target, f.images())


def cokernel(f: GroupHom) -> tuple[FgGroup, GroupHom]:
    """Cokernel of f with the quotient map from ``f.target``."""
    H = f.target
    rels = H.relation_vectors() + [x.coords for x in f.images()]
    Q, P, _ = _present(H.ngens, rels)
    return Q, GroupHom(H, Q, P)


def torsion_subgroup(G: FgGroup) -> tuple[FgGroup, GroupHom]:
    T = FgGroup(0, G.invariant_factors)
    r, k = G.free_rank, len(G.invariant_factors)
    M = IntMatrix.from_rows([[0] * k] * r + [[int(i == j) for j in range(k)] for i in range(k)], k)
    return T, GroupHom(T, G, M)


def exact_at(f: GroupHom, g: GroupHom) -> bool:
    """Whether ``im f == ker g`` inside ``f.target``."""
    if f.target != g.source:
        raise CompositionError(f"target {f.target} of f is not the source {g.source} of g")
    if not g.compose(f).is_zero():
        return False
    _, incl = kernel(g)
    imgs = f.images()
    return all(contains(f.target, imgs, k) for k in incl.images())


def is_subgroup_equal(G: FgGroup, a: Sequence, b: Sequence) -> bool:
    return (all(contains(G, b, x) for x in a) and all(contains(G, a, x) for x in b))


# ---------------------------------------------------------------------------
# Direct sums and isomorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DirectSum:
    """Normal form of ``G_1 (+) ... (+) G_k`` with injections and projections."""

    group: FgGroup
    summands: tuple[FgGroup, ...]
    injections: tuple[GroupHom, ...]
    projections: tuple[GroupHom, ...]


def direct_sum(*groups: FgGroup) -> DirectSum:
    orders = [o for G in groups for o in G.orders]
    S, P, sec = _present(len(orders), _diag_relations(orders))
    injections, projections = [], []
    offset = 0
    for G in groups:
        k = G.ngens
        inj_cols = [P.col(offset + j) for j in range(k)]
        injections.append(GroupHom.from_images(G, S, inj_cols))
        proj = IntMatrix.from_rows([sec.row(offset + i) for i in range(k)], S.ngens)
        projections.append(GroupHom(S, G, proj))
        offset += k
    return DirectSum(S, tuple(groups), tuple(injections), tuple(projections))


def inverse(f: GroupHom) -> GroupHom:
    """Inverse of an isomorphism."""
    if not f.is_isomorphism():
        raise ValueError("homomorphism is not invertible")
    imgs = []
    for y in f.target.gens():
        x = f.preimage(y)
        imgs.append(x.coords)
    return GroupHom.from_images(f.target, f.source, imgs)


def induced_map(f: GroupHom, incl_src: GroupHom, incl_dst: GroupHom) -> GroupHom:
    """Restriction of f to subgroups: ``incl_dst^-1 o f o incl_src``.

    ``incl_dst`` must be injective and contain the image.
    """
    imgs = []
    for x in incl_src.images():
        y = f(x)
        z = incl_dst.preimage(y)
        if z is None:
            raise ValueError(f"{y} is not in the target subgroup")
        imgs.append(z.coords)
    return GroupHom.from_images(incl_src.source, incl_dst.source, imgs)


def are_isomorphic(G: FgGroup, H: FgGroup) -> bool:
    return G == H
