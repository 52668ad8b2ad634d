"""
The finite abelian group Q/kQ_L.

Vectors of the root lattice Q are handled through their integer
coordinates over the simple roots. The long-root sublattice Q_L is put in
row-style Hermite normal form H (upper triangular, positive diagonal,
entries above each pivot reduced modulo it); kQ_L then has HNF k·H, and
the box 0 <= c_i < k·H_ii is a fundamental domain. A coset id is the
mixed-radix number of its box coordinates, first coordinate most
significant, so coset 0 is the zero coset and ids follow the order of
`itertools.product` over the box.

Coset addition is the fusion of simple currents and `weight_class` is the
conformal weight modulo Z.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from math import prod
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from exceptions import UsageError
from rootsys import RootSystem, RootSystemType, Vector, build_root_system

IntRow = Tuple[int, ...]

INCOMPLETE_BANNER = "simple-current list incomplete for (E8,2)"


def hermite_normal_form(rows: Sequence[Sequence[int]], dim: int) -> Tuple[IntRow, ...]:
    """
    Row-style Hermite normal form of a full-rank integer lattice.

    Args:
        rows: Generators of the lattice (any number, possibly dependent)
        dim: Ambient dimension; the lattice must have full rank

    Returns:
        Tuple of `dim` basis rows, upper triangular with positive diagonal and
        0 <= H[j][i] < H[i][i] for j < i

    Raises:
        UsageError: If the generators do not span a full-rank lattice
    """
    work = [list(r) for r in rows if any(r)]
    basis: List[List[int]] = []
    for col in range(dim):
        active = [r for r in work if r[col] != 0]
        rest = [r for r in work if r[col] == 0]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            pivot = active[0]
            reduced = []
            for r in active[1:]:
                q = r[col] // pivot[col]
                r = [a - q * b for a, b in zip(r, pivot)]
                if r[col] != 0:
                    reduced.append(r)
                elif any(r):
                    rest.append(r)
            active = [pivot] + reduced
        if not active:
            raise UsageError(f"generators do not span a full-rank lattice (column {col})")
        pivot = active[0]
        if pivot[col] < 0:
            pivot = [-a for a in pivot]
        basis.append(pivot)
        work = rest
    for i in range(dim):
        for j in range(i):
            q = basis[j][i] // basis[i][i]
            if q:
                basis[j] = [a - q * b for a, b in zip(basis[j], basis[i])]
    return tuple(tuple(r) for r in basis)


def reduce_modulo(v: Sequence[int], hnf: Sequence[IntRow]) -> IntRow:
    """Unique representative of v modulo the lattice spanned by an HNF basis."""
    v = list(v)
    for i, row in enumerate(hnf):
        q = v[i] // row[i]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return tuple(v)


@dataclass(frozen=True, eq=False)
class RootLattice:
    """
    Q with its long-root sublattice Q_L.

    Attributes:
        root_system: The underlying root system
        q_basis: The simple roots (a Z-basis of Q)
        ql_hnf: HNF basis of Q_L in simple-root coordinates
    """

    root_system: RootSystem
    ql_hnf: Tuple[IntRow, ...]

    @property
    def rstype(self) -> RootSystemType:
        return self.root_system.rstype

    @property
    def q_basis(self) -> Tuple[Vector, ...]:
        return self.root_system.simple_roots

    @cached_property
    def ql_basis(self) -> Tuple[Vector, ...]:
        return tuple(self.root_system.from_coordinates(row) for row in self.ql_hnf)

    @property
    def index(self) -> int:
        """[Q : Q_L], the determinant of the Q_L basis in Q coordinates."""
        return prod(row[i] for i, row in enumerate(self.ql_hnf))


@lru_cache(maxsize=None)
def build_root_lattice(t: RootSystemType) -> RootLattice:
    rs = build_root_system(t)
    long_coordinates = [rs.root_coordinates[rs.index[v]] for v in rs.long_roots]
    return RootLattice(rs, hermite_normal_form(long_coordinates, rs.rank))


def lattice_index(t: RootSystemType) -> int:
    """[Q : Q_L] for an irreducible type."""
    return build_root_lattice(t).index


@dataclass(frozen=True)
class Coset:
    """An element β + kQ_L of a coset space, identified by its canonical id."""

    space: "CosetSpace" = field(repr=False)
    id: int

    @property
    def coords(self) -> IntRow:
        """Canonical box coordinates over the simple roots."""
        return self.space.coordinates_of(self.id)

    @property
    def rep(self) -> Vector:
        """Canonical representative."""
        return self.space.rep(self.id)

    def __add__(self, other: "Coset") -> "Coset":
        return self.space.add(self, other)

    def __neg__(self) -> "Coset":
        return self.space.negate(self)

    def is_zero(self) -> bool:
        return self.id == 0


class CosetSpace:
    """
    Q/kQ_L with canonical representatives.

    Attributes:
        lattice (RootLattice): Q and Q_L
        k (int): The level
        hnf (Tuple[IntRow, ...]): HNF basis of kQ_L in simple-root coordinates
        moduli (IntRow): Box side lengths, the diagonal of `hnf`
        incomplete (bool): True for (E8, 2), where Q/kQ_L misses a simple current
    """

    def __init__(self, lattice: RootLattice, k: int):
        if k < 1:
            raise UsageError(f"level k must be >= 1, got {k}")
        self.lattice = lattice
        self.k = k
        self.hnf = tuple(tuple(k * a for a in row) for row in lattice.ql_hnf)
        self.moduli = tuple(row[i] for i, row in enumerate(self.hnf))
        self._weights = tuple(prod(self.moduli[i + 1:]) for i in range(len(self.moduli)))
        self.incomplete = lattice.rstype == RootSystemType("E", 8) and k == 2

    @property
    def root_system(self) -> RootSystem:
        return self.lattice.root_system

    @property
    def rstype(self) -> RootSystemType:
        return self.lattice.rstype

    @property
    def rank(self) -> int:
        return len(self.moduli)

    def __len__(self) -> int:
        return prod(self.moduli)

    def __iter__(self) -> Iterator[Coset]:
        return (Coset(self, i) for i in range(len(self)))

    def __repr__(self) -> str:
        return f"CosetSpace({self.rstype.name}, k={self.k}, {len(self)} cosets)"

    def canonical_coordinates(self, coords: Sequence[int]) -> IntRow:
        return reduce_modulo(coords, self.hnf)

    def id_of(self, box: Sequence[int]) -> int:
        return sum(c * w for c, w in zip(box, self._weights))

    def coordinates_of(self, coset_id: int) -> IntRow:
        if not 0 <= coset_id < len(self):
            raise UsageError(f"coset id {coset_id} outside 0..{len(self) - 1}")
        out = []
        for w, m in zip(self._weights, self.moduli):
            out.append(coset_id // w % m)
        return tuple(out)

    def coset(self, coset_id: int) -> Coset:
        self.coordinates_of(coset_id)
        return Coset(self, coset_id)

    def rep(self, coset_id: int) -> Vector:
        return self.root_system.from_coordinates(self.coordinates_of(coset_id))

    @cached_property
    def reps(self) -> Tuple[Vector, ...]:
        """Canonical representatives in id order."""
        return tuple(self.root_system.from_coordinates(c) for c in product(*(range(m) for m in self.moduli)))

    @cached_property
    def index(self) -> Dict[Vector, int]:
        return {v: i for i, v in enumerate(self.reps)}

    def canonicalize(self, gamma: Vector) -> Coset:
        """
        The coset of a root-lattice vector.

        Raises:
            UsageError: If gamma is not in Q
        """
        box = self.canonical_coordinates(self.root_system.integral_coordinates(gamma))
        return Coset(self, self.id_of(box))

    def coset_of_coordinates(self, coords: Sequence[int]) -> Coset:
        return Coset(self, self.id_of(self.canonical_coordinates(coords)))

    def _check_member(self, a: Coset) -> None:
        if a.space is not self:
            raise UsageError("cosets belong to different coset spaces")

    def add(self, a: Coset, b: Coset) -> Coset:
        self._check_member(a)
        self._check_member(b)
        return self.coset_of_coordinates([x + y for x, y in zip(a.coords, b.coords)])

    def negate(self, a: Coset) -> Coset:
        self._check_member(a)
        return self.coset_of_coordinates([-x for x in a.coords])

    def order(self, a: Coset) -> int:
        """Order of a in the coset group."""
        current, n = a, 1
        while not current.is_zero():
            current, n = self.add(current, a), n + 1
        return n

    def weight_class(self, a: Coset) -> Fraction:
        """(-|rep|²/2k) mod 1, in [0, 1)."""
        self._check_member(a)
        return (-a.rep.norm() / (2 * self.k)) % 1

    @cached_property
    def root_coset_ids(self) -> Tuple[int, ...]:
        """Coset id of every root, in root order."""
        return tuple(self.coset_of_coordinates(c).id for c in self.root_system.root_coordinates)

    @cached_property
    def _roots_by_coset(self) -> Dict[int, Tuple[int, ...]]:
        grouped: Dict[int, List[int]] = {}
        for root_index, coset_id in enumerate(self.root_coset_ids):
            grouped.setdefault(coset_id, []).append(root_index)
        return {c: tuple(v) for c, v in grouped.items()}

    def roots_in_coset(self, a: Coset, norm_filter: Optional[Fraction] = None) -> Tuple[Vector, ...]:
        """Roots congruent to the representative modulo kQ_L, optionally of one norm."""
        self._check_member(a)
        roots = self.root_system.roots
        found = (roots[i] for i in self._roots_by_coset.get(a.id, ()))
        if norm_filter is None:
            return tuple(found)
        return tuple(v for v in found if v.norm() == norm_filter)

    def root_cosets(self, norm: Optional[Fraction] = None) -> Tuple[int, ...]:
        """Sorted ids of cosets meeting Δ (or the roots of one norm)."""
        roots = self.root_system.roots
        return tuple(sorted({
            c for i, c in enumerate(self.root_coset_ids) if norm is None or roots[i].norm() == norm
        }))

    @cached_property
    def coordinate_table(self) -> np.ndarray:
        """Box coordinates of every coset, row per id."""
        return np.array(list(product(*(range(m) for m in self.moduli))), dtype=np.int64).reshape(len(self), self.rank)

    def reduce_array(self, coords: np.ndarray) -> np.ndarray:
        """Vectorised `canonical_coordinates` over the rows of an integer array."""
        v = np.array(coords, dtype=np.int64, copy=True)
        for i, row in enumerate(self.hnf):
            q = np.floor_divide(v[:, i], row[i])
            v -= np.outer(q, np.array(row, dtype=np.int64))
        return v

    def ids_of_array(self, box: np.ndarray) -> np.ndarray:
        return box @ np.array(self._weights, dtype=np.int64)

    def add_ids(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Vectorised coset addition on arrays of ids."""
        table = self.coordinate_table
        return self.ids_of_array(self.reduce_array(table[a] + table[b]))

    @cached_property
    def weight_classes(self) -> Tuple[Fraction, ...]:
        """weight_class of every coset, in id order."""
        return tuple((-v.norm() / (2 * self.k)) % 1 for v in self.reps)


@lru_cache(maxsize=None)
def build_coset_space(t: RootSystemType, k: int) -> CosetSpace:
    """
    Enumerate Q/kQ_L for a type and level.

    Raises:
        UsageError: If k < 1
    """
    space = CosetSpace(build_root_lattice(t), k)
    logger.debug(f"Built {space!r} with moduli {space.moduli}")
    if space.incomplete:
        logger.warning(INCOMPLETE_BANNER)
    return space


def canonicalize(space: CosetSpace, gamma: Vector) -> Coset:
    return space.canonicalize(gamma)


def weight_class(a: Coset) -> Fraction:
    return a.space.weight_class(a)


def roots_in_coset(a: Coset, norm_filter: Optional[Fraction] = None) -> Tuple[Vector, ...]:
    return a.space.roots_in_coset(a, norm_filter)


@dataclass(frozen=True)
class RootCosetRow:
    root: Vector
    coset_id: int
    meets: Tuple[Vector, ...]


def root_coset_intersections(space: CosetSpace, short_only: bool = False) -> List[RootCosetRow]:
    """For each root α (optionally only short ones), the set (α + kQ_L) ∩ Δ."""
    rs = space.root_system
    pool = rs.short_roots if short_only else rs.roots
    return [
        RootCosetRow(alpha, space.root_coset_ids[rs.index[alpha]],
                   space.roots_in_coset(space.coset(space.root_coset_ids[rs.index[alpha]])))
        for alpha in pool
    ]
