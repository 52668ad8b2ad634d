"""
Root systems in explicit coordinates with exact arithmetic.

Vectors carry rational coordinates in an orthogonal ambient basis e_1..e_m
together with a diagonal form <e_i, e_j> = c·δ_ij. Each irreducible type is
enumerated from its closed-form description:

    A_n   e_i - e_j                           in R^{n+1}, c = 1
    B_n   ±e_i, ±e_i ± e_j                    in R^n,     c = 1
    C_n   ±e_i ± e_j, ±2e_i                   in R^n,     c = 1/2
    D_n   ±e_i ± e_j                          in R^n,     c = 1
    F4    ±e_i, (±1/2, ±1/2, ±1/2, ±1/2), ±e_i ± e_j      c = 1
    G2    ±(1/3)(2e_a - e_b - e_c), e_i - e_j in R^3,     c = 1
    E8    ±e_i, Σ_{i∈S} ±(1/2)e_i for S in H8(4)          c = 2
    E7    as E8 with H7(4) inside R^7
    E6    ±e_i (i ≤ 4), Σ_{i∈S} c_i e_i for S in H7(4), c_i = ±1/2,
          with the c_i summing to 0 over S ∩ {5,6,7}; inside R^7

so every long root has norm 2. Simple roots are not tabulated: they are
the indecomposable positive roots for the lexicographic order, and the
resulting Cartan matrix is checked against the standard one.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations, product
from math import lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy
from loguru import logger

from codes import hamming_blocks
from exceptions import ArithmeticOverflowError, ConsistencyError, UsageError

INT64_MAX = 2**63 - 1

Number = Union[int, Fraction]


def checked(q: Number) -> Fraction:
    """Coerce to Fraction, refusing components outside the signed 64-bit range."""
    q = Fraction(q)
    if abs(q.numerator) > INT64_MAX or q.denominator > INT64_MAX:
        raise ArithmeticOverflowError(f"rational {q} exceeds 64-bit components")
    return q


@dataclass(frozen=True)
class FormScale:
    """The constant c of the diagonal form <e_i, e_j> = c·δ_ij."""

    scale: Fraction

    def __post_init__(self):
        object.__setattr__(self, "scale", Fraction(self.scale))
        if self.scale not in (Fraction(1), Fraction(1, 2), Fraction(2)):
            raise UsageError(f"form scale must be 1, 1/2 or 2, got {self.scale}")


UNIT_FORM = FormScale(Fraction(1))
HALF_FORM = FormScale(Fraction(1, 2))
DOUBLE_FORM = FormScale(Fraction(2))


@dataclass(frozen=True)
class Vector:
    """An exact vector in the ambient space of a root system."""

    coords: Tuple[Fraction, ...]
    form: FormScale = UNIT_FORM

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(checked(c) for c in self.coords))

    @classmethod
    def of(cls, *coords: Number, form: FormScale = UNIT_FORM) -> "Vector":
        return cls(tuple(coords), form)

    @classmethod
    def zero(cls, m: int, form: FormScale = UNIT_FORM) -> "Vector":
        return cls((Fraction(0),) * m, form)

    @classmethod
    def basis(cls, i: int, m: int, form: FormScale = UNIT_FORM) -> "Vector":
        """The unit vector e_i, with i counted from 1."""
        if not 1 <= i <= m:
            raise UsageError(f"basis index {i} outside 1..{m}")
        return cls(tuple(Fraction(int(j == i - 1)) for j in range(m)), form)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def _check_compatible(self, other: "Vector") -> None:
        if self.dim != other.dim:
            raise UsageError(f"dimension mismatch: {self.dim} != {other.dim}")
        if self.form != other.form:
            raise UsageError(f"form mismatch: {self.form.scale} != {other.form.scale}")

    def __add__(self, other: "Vector") -> "Vector":
        self._check_compatible(other)
        return Vector(tuple(a + b for a, b in zip(self.coords, other.coords)), self.form)

    def __sub__(self, other: "Vector") -> "Vector":
        self._check_compatible(other)
        return Vector(tuple(a - b for a, b in zip(self.coords, other.coords)), self.form)

    def __neg__(self) -> "Vector":
        return Vector(tuple(-a for a in self.coords), self.form)

    def __mul__(self, scalar: Number) -> "Vector":
        return Vector(tuple(a * scalar for a in self.coords), self.form)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """|v|² = <v, v>."""
        return inner_product(self, self)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def support(self) -> Tuple[int, ...]:
        """1-based indices of the nonzero coordinates."""
        return tuple(i + 1 for i, c in enumerate(self.coords) if c)

    def abs_sum(self, subset: Optional[Iterable[int]] = None) -> Fraction:
        """Σ |x_i| over a 1-based subset (all coordinates by default)."""
        indices = range(1, self.dim + 1) if subset is None else subset
        return sum((abs(self.coords[i - 1]) for i in indices), Fraction(0))

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def inner_product(u: Vector, v: Vector) -> Fraction:
    """
    The diagonal form scale·Σ u_i v_i.

    Raises:
        UsageError: On dimension or form mismatch
    """
    u._check_compatible(v)
    return checked(u.form.scale * sum((a * b for a, b in zip(u.coords, v.coords)), Fraction(0)))


FAMILIES = ("A", "B", "C", "D", "E", "F", "G")
_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4}
_EXCEPTIONAL_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


@dataclass(frozen=True, order=True)
class RootSystemType:
    """An irreducible Cartan type such as A3 or E8."""

    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UsageError(f"unknown root system family {self.family!r}")
        if self.family in _EXCEPTIONAL_RANKS:
            if self.rank not in _EXCEPTIONAL_RANKS[self.family]:
                raise UsageError(f"{self.family}{self.rank} is not a root system type")
        elif self.rank < _MIN_RANK[self.family]:
            raise UsageError(f"{self.family}_n needs n >= {_MIN_RANK[self.family]}, got {self.rank}")

    @classmethod
    def parse(cls, text: str) -> "RootSystemType":
        """Parse names like 'E8', 'b3' or 'A 2'."""
        cleaned = text.replace(" ", "").replace("_", "")
        if len(cleaned) < 2 or not cleaned[1:].isdigit():
            raise UsageError(f"cannot parse root system type {text!r}")
        return cls(cleaned[0].upper(), int(cleaned[1:]))

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def __str__(self) -> str:
        return self.name

    @property
    def ambient_dim(self) -> int:
        if self.family == "A":
            return self.rank + 1
        if self.family == "G":
            return 3
        if self.family == "E":
            return 8 if self.rank == 8 else 7
        return self.rank

    @property
    def form(self) -> FormScale:
        if self.family == "C":
            return HALF_FORM
        if self.family == "E":
            return DOUBLE_FORM
        return UNIT_FORM

    @property
    def lacing(self) -> int:
        return {"B": 2, "C": 2, "F": 2, "G": 3}.get(self.family, 1)

    @property
    def is_simply_laced(self) -> bool:
        return self.lacing == 1


def _unit(i: int, m: int, coefficient: Number = 1) -> List[Fraction]:
    v = [Fraction(0)] * m
    v[i] = Fraction(coefficient)
    return v


def _pair(i: int, j: int, si: int, sj: int, m: int) -> Tuple[Fraction, ...]:
    v = [Fraction(0)] * m
    v[i], v[j] = Fraction(si), Fraction(sj)
    return tuple(v)


def _signed_pairs(m: int) -> List[Tuple[Fraction, ...]]:
    """±e_i ± e_j for i < j."""
    return [_pair(i, j, si, sj, m) for i, j in combinations(range(m), 2) for si in (1, -1) for sj in (1, -1)]


def _signed_units(m: int, coefficient: Number = 1) -> List[Tuple[Fraction, ...]]:
    return [tuple(_unit(i, m, s * coefficient)) for i in range(m) for s in (1, -1)]


def _roots_a(n: int) -> List[Tuple[Fraction, ...]]:
    m = n + 1
    return [_pair(i, j, 1, -1, m) for i in range(m) for j in range(m) if i != j]


def _roots_g2() -> List[Tuple[Fraction, ...]]:
    short = []
    for a in range(3):
        v = tuple(Fraction(2, 3) if i == a else Fraction(-1, 3) for i in range(3))
        short += [v, tuple(-c for c in v)]
    return short + _roots_a(2)


def _roots_f4() -> List[Tuple[Fraction, ...]]:
    halves = [tuple(Fraction(s, 2) for s in signs) for signs in product((1, -1), repeat=4)]
    return _signed_units(4) + halves + _signed_pairs(4)


def _half_roots(blocks, m: int, admissible) -> List[Tuple[Fraction, ...]]:
    roots = []
    for block in blocks:
        members = block.members
        for signs in product((1, -1), repeat=len(members)):
            coefficients = dict(zip(members, signs))
            if not admissible(coefficients):
                continue
            roots.append(tuple(Fraction(coefficients.get(i + 1, 0), 2) for i in range(m)))
    return roots


def _roots_e(n: int) -> List[Tuple[Fraction, ...]]:
    if n == 8:
        return _signed_units(8) + _half_roots(hamming_blocks(8), 8, lambda c: True)
    if n == 7:
        return _signed_units(7) + _half_roots(hamming_blocks(7), 7, lambda c: True)
    units = [tuple(_unit(i, 7, s)) for i in range(4) for s in (1, -1)]
    balanced = lambda c: sum(s for i, s in c.items() if i in (5, 6, 7)) == 0  # noqa: E731
    return units + _half_roots(hamming_blocks(7), 7, balanced)


def enumerate_roots(t: RootSystemType) -> List[Tuple[Fraction, ...]]:
    """Coordinates of all roots of an irreducible type, in construction order."""
    n = t.rank
    if t.family == "A":
        return _roots_a(n)
    if t.family == "B":
        return _signed_units(n) + _signed_pairs(n)
    if t.family == "C":
        return _signed_pairs(n) + _signed_units(n, 2)
    if t.family == "D":
        return _signed_pairs(n)
    if t.family == "F":
        return _roots_f4()
    if t.family == "G":
        return _roots_g2()
    return _roots_e(n)


def standard_cartan_matrix(t: RootSystemType) -> Tuple[Tuple[int, ...], ...]:
    """
    Standard Cartan matrix with entries 2<β_i,β_j>/<β_j,β_j> in Bourbaki numbering.
    """
    n = t.rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i: int, j: int, a_ij: int = -1, a_ji: int = -1) -> None:
        a[i][j], a[j][i] = a_ij, a_ji

    if t.family in "ABC":
        for i in range(n - 1):
            bond(i, i + 1)
        if t.family == "B":
            bond(n - 2, n - 1, -2, -1)
        elif t.family == "C":
            bond(n - 2, n - 1, -1, -2)
    elif t.family == "D":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 3, n - 1)
    elif t.family == "E":
        bond(0, 2)
        bond(1, 3)
        for i in range(2, n - 1):
            bond(i, i + 1)
    elif t.family == "F":
        bond(0, 1)
        bond(1, 2, -2, -1)
        bond(2, 3)
    else:
        bond(0, 1, -1, -3)
    return tuple(tuple(row) for row in a)


def _block_diagonal(blocks: Sequence[Tuple[Tuple[int, ...], ...]]) -> Tuple[Tuple[int, ...], ...]:
    size = sum(len(b) for b in blocks)
    out = [[0] * size for _ in range(size)]
    offset = 0
    for b in blocks:
        for i, row in enumerate(b):
            out[offset + i][offset:offset + len(row)] = row
        offset += len(b)
    return tuple(tuple(row) for row in out)


def find_cartan_isomorphism(
    actual: Sequence[Sequence[int]], standard: Sequence[Sequence[int]]
) -> Optional[Tuple[int, ...]]:
    """
    A permutation p with actual[i][j] == standard[p[i]][p[j]], found by backtracking.

    Returns:
        The permutation as a tuple, or None if the matrices are not
        simultaneously conjugate.
    """
    n = len(actual)
    if n != len(standard):
        return None
    profile = lambda row: tuple(sorted(row))  # noqa: E731
    candidates = [[j for j in range(n) if profile(standard[j]) == profile(actual[i])] for i in range(n)]
    assignment: List[int] = []
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        for j in candidates[i]:
            if used[j]:
                continue
            if all(actual[i][p] == standard[j][assignment[p]] and actual[p][i] == standard[assignment[p]][j]
                   for p in range(i)):
                used[j] = True
                assignment.append(j)
                if extend(i + 1):
                    return True
                assignment.pop()
                used[j] = False
        return False

    return tuple(assignment) if extend(0) else None


def _graph_components(cartan: Sequence[Sequence[int]]) -> List[List[int]]:
    n = len(cartan)
    seen, components = set(), []
    for start in range(n):
        if start in seen:
            continue
        stack, component = [start], []
        seen.add(start)
        while stack:
            i = stack.pop()
            component.append(i)
            for j in range(n):
                if j not in seen and cartan[i][j] != 0:
                    seen.add(j)
                    stack.append(j)
        components.append(sorted(component))
    return components


def _classify_simply_laced_component(cartan, nodes: List[int]) -> RootSystemType:
    n = len(nodes)
    neighbours = {i: [j for j in nodes if j != i and cartan[i][j] != 0] for i in nodes}
    if any(cartan[i][j] not in (0, -1) for i in nodes for j in neighbours[i]):
        raise ConsistencyError("component is not simply laced")
    branch = [i for i in nodes if len(neighbours[i]) == 3]
    if not branch:
        return RootSystemType("A", n)
    if len(branch) > 1 or any(len(v) > 3 for v in neighbours.values()):
        raise ConsistencyError("Dynkin diagram is not of finite type")
    centre = branch[0]
    arms = []
    for start in neighbours[centre]:
        length, previous, current = 1, centre, start
        while True:
            onward = [j for j in neighbours[current] if j != previous]
            if not onward:
                break
            previous, current = current, onward[0]
            length += 1
        arms.append(length)
    arms = tuple(sorted(arms))
    if arms[:2] == (1, 1):
        return RootSystemType("D", n)
    if arms in ((1, 2, 2), (1, 2, 3), (1, 2, 4)):
        return RootSystemType("E", n)
    raise ConsistencyError(f"Dynkin diagram with arms {arms} is not of finite type")


def component_label(components: Sequence[RootSystemType]) -> str:
    """Names like 'A1^3' or 'D4' for a product of irreducible types."""
    parts = []
    for t in sorted(set(components)):
        count = sum(1 for c in components if c == t)
        parts.append(t.name if count == 1 else f"{t.name}^{count}")
    return "+".join(parts)


@dataclass(frozen=True, eq=False)
class RootSystem:
    """
    A finite root system with a fixed base.

    Attributes:
        components: Irreducible types whose product this system is
        roots: All roots, sorted lexicographically descending (positives first)
        simple_roots: The base, lexicographically descending
        lacing: Ratio of long to short norms (1, 2 or 3)
        long_roots / short_roots: Norm classes; both equal `roots` when simply laced
        name: Type label, e.g. 'C4' or 'A1^3'
    """

    components: Tuple[RootSystemType, ...]
    roots: Tuple[Vector, ...]
    simple_roots: Tuple[Vector, ...]
    lacing: int
    long_roots: Tuple[Vector, ...]
    short_roots: Tuple[Vector, ...]
    name: str
    scale_denominator: int = field(repr=False)

    @property
    def rstype(self) -> RootSystemType:
        """The irreducible type; only defined for irreducible systems."""
        if len(self.components) != 1:
            raise UsageError(f"{self.name} is reducible")
        return self.components[0]

    @property
    def is_irreducible(self) -> bool:
        return len(self.components) == 1

    @property
    def form(self) -> FormScale:
        return self.roots[0].form

    @property
    def ambient_dim(self) -> int:
        return self.roots[0].dim

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @property
    def is_simply_laced(self) -> bool:
        return self.lacing == 1

    def __len__(self) -> int:
        return len(self.roots)

    def __repr__(self) -> str:
        return f"RootSystem({self.name}, {len(self.roots)} roots)"

    @cached_property
    def index(self) -> Dict[Vector, int]:
        return {v: i for i, v in enumerate(self.roots)}

    @cached_property
    def simple_indices(self) -> Tuple[int, ...]:
        return tuple(self.index[v] for v in self.simple_roots)

    @cached_property
    def negation(self) -> Tuple[int, ...]:
        """negation[i] is the index of -roots[i]."""
        return tuple(self.index[-v] for v in self.roots)

    @cached_property
    def long_norm(self) -> Fraction:
        return max(v.norm() for v in self.roots)

    def is_long(self, v: Vector) -> bool:
        return v.norm() == self.long_norm

    @cached_property
    def cartan_matrix(self) -> Tuple[Tuple[int, ...], ...]:
        rows = []
        for bi in self.simple_roots:
            row = []
            for bj in self.simple_roots:
                entry = 2 * inner_product(bi, bj) / inner_product(bj, bj)
                if entry.denominator != 1:
                    raise ConsistencyError(f"non-integral Cartan entry {entry} in {self.name}")
                row.append(int(entry))
            rows.append(tuple(row))
        return tuple(rows)

    def to_scaled(self, v: Vector) -> Tuple[int, ...]:
        """Coordinates multiplied by the common denominator of all root coordinates."""
        scaled = tuple(c * self.scale_denominator for c in v.coords)
        if any(c.denominator != 1 for c in scaled):
            raise UsageError(f"{v} is not in the root lattice of {self.name}")
        return tuple(int(c) for c in scaled)

    def from_scaled(self, coords: Sequence[int]) -> Vector:
        return Vector(tuple(Fraction(int(c), self.scale_denominator) for c in coords), self.form)

    @cached_property
    def scaled_roots(self) -> np.ndarray:
        """Integer matrix (roots x ambient) of scaled root coordinates."""
        return np.array([self.to_scaled(v) for v in self.roots], dtype=np.int64)

    @cached_property
    def scaled_gram(self) -> np.ndarray:
        """Raw Gram matrix Σ r_i s_i of scaled roots; proportional to the form."""
        r = self.scaled_roots
        return r @ r.T

    @cached_property
    def _solver(self) -> Tuple[Tuple[int, ...], Tuple[Tuple[Fraction, ...], ...]]:
        basis = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in v.coords] for v in self.simple_roots])
        _, pivots = basis.rref()
        if len(pivots) != self.rank:
            raise ConsistencyError(f"simple roots of {self.name} are linearly dependent")
        inverse = basis.extract(list(range(self.rank)), list(pivots)).inv()
        rows = tuple(tuple(Fraction(int(x.p), int(x.q)) for x in inverse.row(i)) for i in range(self.rank))
        return tuple(pivots), rows

    def lattice_coordinates(self, v: Vector) -> Tuple[Fraction, ...]:
        """
        Coefficients c with v = Σ c_j β_j over the simple roots.

        Raises:
            UsageError: If v is not in the span of the roots
        """
        if v.dim != self.ambient_dim or v.form != self.form:
            raise UsageError(f"{v} does not live in the ambient space of {self.name}")
        pivots, inverse = self._solver
        picked = [v.coords[p] for p in pivots]
        coefficients = tuple(
            sum((picked[i] * inverse[i][j] for i in range(self.rank)), Fraction(0)) for j in range(self.rank)
        )
        if self.from_coordinates(coefficients) != v:
            raise UsageError(f"{v} is not in the span of {self.name}")
        return coefficients

    def integral_coordinates(self, v: Vector) -> Tuple[int, ...]:
        """
        Simple-root coordinates of a root-lattice vector.

        Raises:
            UsageError: If v is not in the root lattice Q
        """
        coefficients = self.lattice_coordinates(v)
        if any(c.denominator != 1 for c in coefficients):
            raise UsageError(f"{v} is not in the root lattice of {self.name}")
        return tuple(int(c) for c in coefficients)

    def from_coordinates(self, coefficients: Sequence[Number]) -> Vector:
        total = [Fraction(0)] * self.ambient_dim
        for c, beta in zip(coefficients, self.simple_roots):
            if c:
                for i, x in enumerate(beta.coords):
                    total[i] += c * x
        return Vector(tuple(total), self.form)

    @cached_property
    def root_coordinates(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(self.integral_coordinates(v) for v in self.roots)

    @cached_property
    def coordinate_index(self) -> Dict[Tuple[int, ...], int]:
        return {c: i for i, c in enumerate(self.root_coordinates)}

    @cached_property
    def highest_root(self) -> Vector:
        heights = [sum(c) for c in self.root_coordinates]
        return self.roots[heights.index(max(heights))]

    def reflect(self, alpha: Vector, x: Vector) -> Vector:
        """s_α(x) = x - (2<x,α>/<α,α>) α."""
        return x - alpha * (2 * inner_product(x, alpha) / inner_product(alpha, alpha))

    def reflection_permutation(self, alpha_index: int) -> Tuple[int, ...]:
        """The permutation of root indices induced by s_α."""
        gram = self.scaled_gram
        roots = self.scaled_roots
        numerators = 2 * gram[:, alpha_index]
        denominator = gram[alpha_index, alpha_index]
        if np.any(numerators % denominator):
            raise ConsistencyError(f"non-integral reflection coefficient in {self.name}")
        images = roots - np.outer(numerators // denominator, roots[alpha_index])
        lookup = self.scaled_index
        try:
            return tuple(lookup[tuple(int(c) for c in row)] for row in images)
        except KeyError as e:
            raise ConsistencyError(f"{self.name} is not closed under the reflection in root {alpha_index}") from e

    @cached_property
    def scaled_index(self) -> Dict[Tuple[int, ...], int]:
        return {tuple(int(c) for c in row): i for i, row in enumerate(self.scaled_roots)}

    def is_reflection_closed(self) -> bool:
        try:
            for a in range(len(self.roots)):
                self.reflection_permutation(a)
        except ConsistencyError:
            return False
        return True

    def span_rank(self) -> int:
        """Dimension of the real span of the roots, computed exactly."""
        rows = [[sympy.Rational(c.numerator, c.denominator) for c in v.coords] for v in self.roots]
        matrix = sympy.Matrix(rows)
        return (matrix.T * matrix).rank()


def _positive(coords: Sequence[int]) -> bool:
    for c in coords:
        if c:
            return c > 0
    return False


def _simple_from_scaled(scaled: List[Tuple[int, ...]]) -> List[Tuple[int, ...]]:
    positives = [v for v in scaled if _positive(v)]
    positive_set = set(positives)
    simple = []
    for alpha in positives:
        decomposable = any(
            tuple(a - b for a, b in zip(alpha, beta)) in positive_set for beta in positives if beta != alpha
        )
        if not decomposable:
            simple.append(alpha)
    return sorted(simple, reverse=True)


def _assemble(
    coords: List[Tuple[Fraction, ...]],
    form: FormScale,
    components: Optional[Tuple[RootSystemType, ...]] = None,
) -> RootSystem:
    vectors = [Vector(c, form) for c in coords]
    if len(set(vectors)) != len(vectors):
        raise ConsistencyError("root enumeration produced duplicates")
    vector_set = set(vectors)
    if any(-v not in vector_set for v in vectors):
        raise ConsistencyError("root set is not closed under negation")

    denominator = lcm(*(c.denominator for v in vectors for c in v.coords))
    scaled = [tuple(int(c * denominator) for c in v.coords) for v in vectors]
    simple_scaled = _simple_from_scaled(scaled)
    by_scaled = dict(zip(scaled, vectors))
    simple = tuple(by_scaled[s] for s in simple_scaled)

    norms = sorted({v.norm() for v in vectors})
    if len(norms) > 2:
        raise ConsistencyError(f"more than two root norms: {norms}")
    ratio = norms[-1] / norms[0]
    if ratio.denominator != 1 or ratio not in (1, 2, 3):
        raise ConsistencyError(f"invalid norm ratio {ratio}")
    lacing = int(ratio)

    ordered = tuple(sorted(vectors, key=lambda v: v.coords, reverse=True))
    long_roots = tuple(v for v in ordered if v.norm() == norms[-1])
    short_roots = tuple(v for v in ordered if v.norm() == norms[0])

    rs = RootSystem(
        components=components or (),
        roots=ordered,
        simple_roots=simple,
        lacing=lacing,
        long_roots=long_roots,
        short_roots=short_roots,
        name="",
        scale_denominator=denominator,
    )
    cartan = rs.cartan_matrix
    if components is None:
        found = tuple(
            _classify_simply_laced_component(cartan, nodes) for nodes in _graph_components(cartan)
        )
        components = tuple(sorted(found))
        object.__setattr__(rs, "components", components)
    object.__setattr__(rs, "name", component_label(components))

    standard = _block_diagonal([standard_cartan_matrix(t) for t in components])
    if find_cartan_isomorphism(cartan, standard) is None:
        raise ConsistencyError(f"Cartan matrix of the computed base does not match type {rs.name}")
    return rs


@lru_cache(maxsize=None)
def build_root_system(t: RootSystemType) -> RootSystem:
    """
    Enumerate an irreducible root system and fix its base.

    Args:
        t (RootSystemType): The type to build

    Returns:
        RootSystem: Roots, validated base, lacing number and norm classes

    Raises:
        ConsistencyError: If the enumeration violates a root-system axiom or
            the base does not reproduce the standard Cartan matrix
    """
    rs = _assemble(enumerate_roots(t), t.form, (t,))
    if len(rs.simple_roots) != t.rank:
        raise ConsistencyError(f"{t.name}: found {len(rs.simple_roots)} simple roots")
    if rs.lacing != t.lacing:
        raise ConsistencyError(f"{t.name}: lacing {rs.lacing}, expected {t.lacing}")
    if rs.highest_root.norm() != 2:
        raise ConsistencyError(f"{t.name}: highest root has norm {rs.highest_root.norm()}")
    logger.debug(f"Built root system {t.name}: {len(rs.roots)} roots, base {[str(b) for b in rs.simple_roots]}")
    return rs


def simple_roots(rs: RootSystem) -> Tuple[Vector, ...]:
    """The validated base of a built root system."""
    return rs.simple_roots


def expected_short_type(t: RootSystemType) -> Tuple[RootSystemType, ...]:
    """Type of the short-root subsystem: A1^n, D_n, D4 or A2 for B_n, C_n, F4, G2."""
    if t.family == "B":
        return (RootSystemType("A", 1),) * t.rank
    if t.family == "C":
        if t.rank == 2:
            return (RootSystemType("A", 1),) * 2
        if t.rank == 3:
            return (RootSystemType("A", 3),)
        return (RootSystemType("D", t.rank),)
    if t.family == "F":
        return (RootSystemType("D", 4),)
    if t.family == "G":
        return (RootSystemType("A", 2),)
    raise UsageError(f"{t.name} is simply laced; its short roots are all roots")


@lru_cache(maxsize=None)
def _short_subsystem(t: RootSystemType) -> RootSystem:
    rs = build_root_system(t)
    sub = _assemble([v.coords for v in rs.short_roots], rs.form)
    if sub.components != tuple(sorted(expected_short_type(t))):
        raise ConsistencyError(f"short roots of {t.name} form {sub.name}, not {component_label(expected_short_type(t))}")
    logger.debug(f"Short-root subsystem of {t.name} has type {sub.name}")
    return sub


def short_root_subsystem(rs: RootSystem) -> RootSystem:
    """
    The short roots of a non simply laced system as a root system in their own right.

    Raises:
        UsageError: For simply laced input
    """
    if rs.is_simply_laced:
        raise UsageError(f"{rs.name} is simply laced; it has no proper short-root subsystem")
    return _short_subsystem(rs.rstype)


@dataclass(frozen=True)
class RootStats:
    count: int
    norms: Dict[Fraction, int]
    lacing: int
    highest_root: Vector


def root_stats(rs: RootSystem) -> RootStats:
    """Root count, norm multiset, lacing number and highest root."""
    norms: Dict[Fraction, int] = {}
    for v in rs.roots:
        n = v.norm()
        norms[n] = norms.get(n, 0) + 1
    return RootStats(count=len(rs.roots), norms=dict(sorted(norms.items())), lacing=rs.lacing,
                     highest_root=rs.highest_root)
