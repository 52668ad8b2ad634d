"""
Automorphisms of root systems and their action on Q/kQ_L.

An automorphism of Δ is stored as the permutation it induces on the root
indices of its `RootSystem`, packed into `bytes` (no system here has more
than 240 roots). Composition is then `bytes.translate`, which keeps group
closure fast enough to enumerate Aut(Δ) for every type up to E6. The
rational matrix of an automorphism is computed only on request.

The reconstruction pipeline starts from a permutation π of cosets and
tries to recover the automorphism of Δ that induces it: pull π back to a
permutation of Δ (or of the short roots at level 2), check that it
commutes with negation and preserves inner products modulo k, confirm
exact inner products, extend linearly from the simple roots and compare
the induced coset permutation with π.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache
from math import lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import sympy
from loguru import logger

from exceptions import (
    ConsistencyError,
    ExtensionError,
    GroupCapExceededError,
    ReconstructionError,
    UsageError,
)
from quotient import CosetSpace
from rootsys import RootSystem, Vector, short_root_subsystem

DEFAULT_GROUP_CAP = 2_000_000


def _as_array(perm: bytes) -> np.ndarray:
    return np.frombuffer(perm, dtype=np.uint8).astype(np.int64)


def _rational_matrix(vectors: Sequence[Vector]) -> sympy.Matrix:
    """Vectors as the columns of a sympy matrix."""
    rows = [[sympy.Rational(c.numerator, c.denominator) for c in v.coords] for v in vectors]
    return sympy.Matrix(rows).T


@lru_cache(maxsize=None)
def _complement(rs: RootSystem) -> Tuple[Vector, ...]:
    """A basis of the orthogonal complement of the span of Δ in the ambient space."""
    rows = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in v.coords] for v in rs.simple_roots])
    basis = []
    for column in rows.nullspace():
        basis.append(Vector(tuple(Fraction(int(x.p), int(x.q)) for x in column), rs.form))
    return tuple(basis)


@lru_cache(maxsize=None)
def _coordinate_array(rs: RootSystem) -> np.ndarray:
    return np.array(rs.root_coordinates, dtype=np.int64)


@lru_cache(maxsize=None)
def _expansion(target: RootSystem, source: RootSystem) -> Tuple[np.ndarray, int]:
    """Coefficients of the roots of `target` over the simple roots of `source`, times a common denominator."""
    coefficients = [source.lattice_coordinates(v) for v in target.roots]
    denominator = lcm(*(c.denominator for row in coefficients for c in row))
    matrix = np.array([[int(c * denominator) for c in row] for row in coefficients], dtype=np.int64)
    return matrix, denominator


def _induced_root_permutation(target: RootSystem, source: RootSystem, simple_images: Sequence[Vector]) -> Optional[Tuple[int, ...]]:
    """
    The permutation of target's roots under the linear map sending source's
    simple roots to `simple_images`, or None if some root leaves Δ.
    """
    coefficients, denominator = _expansion(target, source)
    images = coefficients @ np.array([target.to_scaled(v) for v in simple_images], dtype=np.int64)
    if np.any(images % denominator):
        return None
    images //= denominator
    lookup = target.scaled_index
    out = []
    for row in images:
        index = lookup.get(tuple(int(c) for c in row))
        if index is None:
            return None
        out.append(index)
    if len(set(out)) != len(out):
        return None
    return tuple(out)


@dataclass(frozen=True)
class Isometry:
    """
    An automorphism of Δ, given by the permutation of root indices it induces.

    Attributes:
        root_system: The root system acted on
        perm: perm[i] is the index of the image of roots[i]
    """

    root_system: RootSystem
    perm: bytes

    def __post_init__(self):
        if len(self.perm) != len(self.root_system.roots):
            raise UsageError(f"permutation of length {len(self.perm)} for {len(self.root_system.roots)} roots")

    @classmethod
    def identity(cls, rs: RootSystem) -> "Isometry":
        return cls(rs, bytes(range(len(rs.roots))))

    def __matmul__(self, other: "Isometry") -> "Isometry":
        """self ∘ other."""
        return Isometry(self.root_system, compose(self.perm, other.perm))

    def inverse(self) -> "Isometry":
        inv = bytearray(len(self.perm))
        for i, j in enumerate(self.perm):
            inv[j] = i
        return Isometry(self.root_system, bytes(inv))

    def is_identity(self) -> bool:
        return self.perm == bytes(range(len(self.perm)))

    def image(self, index: int) -> Vector:
        return self.root_system.roots[self.perm[index]]

    @cached_property
    def matrix(self) -> Tuple[Tuple[Fraction, ...], ...]:
        """
        Rational matrix on ambient coordinates (acting on column vectors).

        Simple roots go to their images and the orthogonal complement of the
        root span is fixed.
        """
        rs = self.root_system
        complement = list(_complement(rs))
        images = [self.image(i) for i in rs.simple_indices]
        source = _rational_matrix(list(rs.simple_roots) + complement)
        target = _rational_matrix(images + complement)
        m = target * source.inv()
        return tuple(tuple(Fraction(int(x.p), int(x.q)) for x in m.row(i)) for i in range(m.rows))

    def apply(self, v: Vector) -> Vector:
        """M·v for any ambient vector."""
        return Vector(
            tuple(sum((a * c for a, c in zip(row, v.coords)), Fraction(0)) for row in self.matrix), v.form
        )

    def is_form_preserving(self) -> bool:
        """MᵀM = I, which for a diagonal form c·I is MᵀGM = G."""
        m = self.matrix
        n = len(m)
        return all(
            sum((m[r][i] * m[r][j] for r in range(n)), Fraction(0)) == (1 if i == j else 0)
            for i in range(n) for j in range(n)
        )

    def is_automorphism(self) -> bool:
        """Preserves all inner products between roots."""
        return preserves_gram(self.root_system, _as_array(self.perm))


def compose(g: bytes, h: bytes) -> bytes:
    """g ∘ h as root permutations."""
    return h.translate(g.ljust(256, b"\0"))


def preserves_gram(rs: RootSystem, perm: np.ndarray) -> bool:
    gram = rs.scaled_gram
    return bool(np.array_equal(gram[np.ix_(perm, perm)], gram))


def cartan_automorphisms(cartan: Sequence[Sequence[int]]) -> List[Tuple[int, ...]]:
    """All permutations p with cartan[p[i]][p[j]] == cartan[i][j], found by backtracking."""
    n = len(cartan)
    profile = lambda row: tuple(sorted(row))  # noqa: E731
    candidates = [[j for j in range(n) if profile(cartan[j]) == profile(cartan[i])] for i in range(n)]
    found: List[Tuple[int, ...]] = []
    assignment: List[int] = []
    used = [False] * n

    def extend(i: int) -> None:
        if i == n:
            found.append(tuple(assignment))
            return
        for j in candidates[i]:
            if used[j]:
                continue
            if all(cartan[j][assignment[p]] == cartan[i][p] and cartan[assignment[p]][j] == cartan[p][i]
                   for p in range(i)):
                used[j] = True
                assignment.append(j)
                extend(i + 1)
                assignment.pop()
                used[j] = False

    extend(0)
    return found


def diagram_automorphisms(rs: RootSystem) -> List[Isometry]:
    """
    Non-identity symmetries of the Dynkin diagram as automorphisms of Δ.

    Raises:
        ConsistencyError: If a Cartan-preserving permutation does not preserve Δ
    """
    coords = _coordinate_array(rs)
    out = []
    for p in cartan_automorphisms(rs.cartan_matrix):
        if p == tuple(range(rs.rank)):
            continue
        moved = np.zeros_like(coords)
        moved[:, list(p)] = coords
        try:
            perm = bytes(rs.coordinate_index[tuple(int(c) for c in row)] for row in moved)
        except KeyError as e:
            raise ConsistencyError(f"diagram symmetry {p} of {rs.name} does not preserve Δ") from e
        g = Isometry(rs, perm)
        if not g.is_automorphism():
            raise ConsistencyError(f"diagram symmetry {p} of {rs.name} is not an isometry")
        out.append(g)
    return out


def aut_generators(rs: RootSystem) -> List[Isometry]:
    """Simple reflections followed by the diagram symmetries."""
    reflections = [Isometry(rs, bytes(rs.reflection_permutation(i))) for i in rs.simple_indices]
    return reflections + diagram_automorphisms(rs)


@dataclass
class IsometryGroup:
    """
    A group of automorphisms of Δ.

    Attributes:
        root_system: The root system acted on
        generators: Generating automorphisms
        elements: All elements as root permutations, when enumerated
        order: Group order, when enumerated
    """

    root_system: RootSystem
    generators: Tuple[Isometry, ...]
    elements: Optional[Tuple[bytes, ...]] = None
    order: Optional[int] = None

    @property
    def enumerated(self) -> bool:
        return self.elements is not None

    def __iter__(self):
        if self.elements is None:
            raise GroupCapExceededError(f"automorphism group of {self.root_system.name} was not enumerated")
        return (Isometry(self.root_system, e) for e in self.elements)

    def require_elements(self) -> Tuple[bytes, ...]:
        if self.elements is None:
            raise GroupCapExceededError(f"automorphism group of {self.root_system.name} was not enumerated")
        return self.elements


def generate(group: IsometryGroup, cap: int = DEFAULT_GROUP_CAP) -> IsometryGroup:
    """
    Close the generators under composition.

    Args:
        group (IsometryGroup): Generators to close
        cap (int): Largest number of elements to enumerate

    Returns:
        IsometryGroup: With elements and order, or generators only past the cap
    """
    if cap < 1:
        raise UsageError(f"group cap must be >= 1, got {cap}")
    rs = group.root_system
    identity = bytes(range(len(rs.roots)))
    tables = [g.perm.ljust(256, b"\0") for g in group.generators]
    seen: Dict[bytes, None] = {identity: None}
    frontier = [identity]
    while frontier:
        following = []
        for e in frontier:
            for table in tables:
                h = e.translate(table)
                if h not in seen:
                    seen[h] = None
                    following.append(h)
                    if len(seen) > cap:
                        logger.warning(f"Aut({rs.name}) has more than {cap} elements; keeping generators only")
                        return IsometryGroup(rs, group.generators)
        frontier = following
    elements = tuple(seen)
    logger.info(f"Enumerated Aut({rs.name}): {len(elements)} elements")
    return IsometryGroup(rs, group.generators, elements, len(elements))


@lru_cache(maxsize=None)
def automorphism_group(rs: RootSystem, cap: int = DEFAULT_GROUP_CAP) -> IsometryGroup:
    """Aut(Δ), enumerated when its order is at most `cap`."""
    return generate(IsometryGroup(rs, tuple(aut_generators(rs))), cap)


def sample_elements(group: IsometryGroup, count: int, seed: int = 0, walk: Optional[int] = None) -> List[Isometry]:
    """
    Replayable pseudo-random elements as random words in the generators.

    Args:
        group (IsometryGroup): Group to sample from (need not be enumerated)
        count (int): Number of samples
        seed (int): Seed for numpy's default generator
        walk (Optional[int]): Word length; 4·|generators| + 8 by default
    """
    rng = np.random.default_rng(seed)
    rs = group.root_system
    tables = [g.perm.ljust(256, b"\0") for g in group.generators]
    steps = walk if walk is not None else 4 * len(tables) + 8
    out = []
    for _ in range(count):
        e = bytes(range(len(rs.roots)))
        for choice in rng.integers(0, len(tables), size=steps):
            e = e.translate(tables[int(choice)])
        out.append(Isometry(rs, e))
    return out


@dataclass(frozen=True)
class CosetPermutation:
    """A permutation of coset ids; images[i] is the image of coset i."""

    images: Tuple[int, ...]

    def __call__(self, coset_id: int) -> int:
        return self.images[coset_id]

    @property
    def array(self) -> np.ndarray:
        return np.array(self.images, dtype=np.int64)

    def is_bijection(self) -> bool:
        return sorted(self.images) == list(range(len(self.images)))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def __matmul__(self, other: "CosetPermutation") -> "CosetPermutation":
        """self ∘ other."""
        return CosetPermutation(tuple(self.images[j] for j in other.images))


def coordinate_action(g: Isometry) -> np.ndarray:
    """Rows are the simple-root coordinates of the images of the simple roots."""
    rs = g.root_system
    perm = _as_array(g.perm)
    return _coordinate_array(rs)[perm[list(rs.simple_indices)]]


def _check_space(g: Isometry, space: CosetSpace) -> None:
    if g.root_system is not space.root_system:
        raise UsageError(f"isometry of {g.root_system.name} cannot act on {space!r}")


def coset_images(g: Isometry, space: CosetSpace) -> np.ndarray:
    """Image id of every coset, without validating g."""
    _check_space(g, space)
    return space.ids_of_array(space.reduce_array(space.coordinate_table @ coordinate_action(g)))


def act_on_cosets(g: Isometry, space: CosetSpace) -> CosetPermutation:
    """
    The permutation β + kQ_L ↦ g(β) + kQ_L.

    Raises:
        UsageError: If g does not preserve inner products on Δ
    """
    if not g.is_automorphism():
        raise UsageError("permutation does not preserve the form on Δ")
    return CosetPermutation(tuple(int(i) for i in coset_images(g, space)))


def acts_trivially(g: Isometry, space: CosetSpace) -> bool:
    """(A − I)β_j ∈ kQ_L for every simple root, A the coordinate action."""
    delta = coordinate_action(g) - np.eye(space.rank, dtype=np.int64)
    return not np.any(space.reduce_array(delta))


def kernel(space: CosetSpace, group: Optional[IsometryGroup] = None) -> Tuple[Isometry, ...]:
    """
    Elements of Aut(Δ) acting trivially on Q/kQ_L.

    Raises:
        GroupCapExceededError: If the group is not enumerated
    """
    group = group or automorphism_group(space.root_system)
    rs = space.root_system
    return tuple(g for g in (Isometry(rs, e) for e in group.require_elements()) if acts_trivially(g, space))


def negation(rs: RootSystem) -> Isometry:
    return Isometry(rs, bytes(rs.negation))


def extend_permutation(rs: RootSystem, perm: Sequence[int]) -> Isometry:
    """
    Extend an inner-product preserving permutation of Δ to an automorphism.

    The linear map is fixed by the images of the simple roots; it is then
    checked to agree with `perm` on every root.

    Args:
        rs (RootSystem): The root system
        perm (Sequence[int]): perm[i] is the index of the image of roots[i]

    Returns:
        Isometry: The extension

    Raises:
        UsageError: If perm is not a permutation of the roots
        ExtensionError: If perm changes an inner product; carries the pair of indices
    """
    n = len(rs.roots)
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise UsageError(f"not a permutation of the {n} roots of {rs.name}")
    p = np.array(perm, dtype=np.int64)
    gram = rs.scaled_gram
    moved = gram[np.ix_(p, p)]
    bad = np.argwhere(moved != gram)
    if len(bad):
        i, j = (int(x) for x in bad[0])
        raise ExtensionError(
            f"<{rs.roots[i]}, {rs.roots[j]}> changes under the permutation", witness=(i, j)
        )
    induced = _induced_root_permutation(rs, rs, [rs.roots[int(p[i])] for i in rs.simple_indices])
    if induced != tuple(int(x) for x in p):
        raise ConsistencyError(f"linear extension of an inner-product preserving permutation of {rs.name} differs from it")
    return Isometry(rs, bytes(int(x) for x in p))


class RigidityOutcome(str, Enum):
    ACCEPTED = "accepted"
    REJECTED = "rejected"
    HYPOTHESIS_VIOLATED = "hypothesis_violated"


@dataclass(frozen=True)
class RigidityVerdict:
    """Outcome for one pair (<α1,α2>, <g(α1),g(α2)>)."""

    before: Fraction
    after: Fraction
    outcome: RigidityOutcome
    case: Optional[str] = None


def rigidity_check(
    rs: RootSystem, k: int, pairs: Iterable[Tuple[Fraction, Fraction]], short_only: bool = False
) -> List[RigidityVerdict]:
    """
    Decide whether congruence of inner products modulo k forces equality.

    Equal values are accepted. Values that are not congruent modulo k
    violate the hypothesis. Congruent but unequal values fall into one of
    four contradiction cases and are rejected:

        i    k = 4, ±2 against ∓2
        ii   k = 3, ±2 against ∓1
        iii  k = 3, ±1 against ∓2
        iv   k = 2, lacing 2, ±1 against ∓1 (short roots)

    Args:
        rs (RootSystem): The root system
        k (int): Level
        pairs: Inner products before and after
        short_only (bool): The pairs come from short roots (required for k = 2)

    Raises:
        UsageError: If k < 2, or k = 2 without short roots of a non simply laced system
    """
    if k < 2:
        raise UsageError(f"rigidity needs k >= 2, got {k}")
    if k == 2 and (rs.is_simply_laced or not short_only):
        raise UsageError("at level 2 rigidity holds only for short roots of a non simply laced system")
    verdicts = []
    for before, after in pairs:
        before, after = Fraction(before), Fraction(after)
        if before == after:
            verdicts.append(RigidityVerdict(before, after, RigidityOutcome.ACCEPTED))
            continue
        if ((before - after) / k).denominator != 1:
            verdicts.append(RigidityVerdict(before, after, RigidityOutcome.HYPOTHESIS_VIOLATED))
            continue
        case = None
        opposite = before * after < 0
        if opposite and k == 4 and abs(before) == 2 and abs(after) == 2:
            case = "i"
        elif opposite and k == 3 and abs(before) == 2 and abs(after) == 1:
            case = "ii"
        elif opposite and k == 3 and abs(before) == 1 and abs(after) == 2:
            case = "iii"
        elif opposite and k == 2 and rs.lacing == 2 and abs(before) == 1 and abs(after) == 1:
            case = "iv"
        outcome = RigidityOutcome.REJECTED if case else RigidityOutcome.HYPOTHESIS_VIOLATED
        verdicts.append(RigidityVerdict(before, after, outcome, case))
    return verdicts


def _inner_scale(rs: RootSystem) -> Fraction:
    """Factor turning a raw scaled Gram entry into an inner product."""
    return rs.form.scale / (rs.scale_denominator ** 2)


@dataclass(frozen=True)
class _SpaceTables:
    shifts: Tuple[Tuple[int, np.ndarray], ...]
    class_codes: np.ndarray


@lru_cache(maxsize=None)
def _space_tables(space: CosetSpace) -> _SpaceTables:
    """Translation by each simple root's coset, and weight classes as integer codes."""
    n = len(space)
    ids = np.arange(n, dtype=np.int64)
    shifts = []
    for j in range(space.rank):
        unit = [0] * space.rank
        unit[j] = 1
        g_id = space.coset_of_coordinates(unit).id
        shifts.append((g_id, space.add_ids(ids, np.full(n, g_id))))
    classes = space.weight_classes
    codes = {c: i for i, c in enumerate(sorted(set(classes)))}
    return _SpaceTables(tuple(shifts), np.array([codes[c] for c in classes], dtype=np.int64))


def reconstruct_from_coset_action(space: CosetSpace, pi: CosetPermutation, metrics=None) -> Isometry:
    """
    Recover the automorphism of Δ inducing a coset permutation.

    Stages, each raising ReconstructionError(stage) on failure:
    fusion (π is a bijective group automorphism), weight (π preserves weight
    classes), root-cosets (π preserves the cosets of the domain roots),
    pullback (a unique root in each image coset), negation, mod-k (inner
    products agree modulo k), rigidity, extend, full-delta (the extension
    maps all of Δ to Δ) and induced (the extension induces π).

    The domain is Δ for k >= 3 and the short roots for k = 2 and a non
    simply laced type.

    Raises:
        UsageError: For k = 1, or k = 2 with a simply laced type
        ReconstructionError: If π corresponds to no automorphism of Δ
    """
    try:
        g = _reconstruct(space, pi)
    except ReconstructionError as e:
        if metrics is not None:
            metrics.record_reconstruction(space.rstype.name, space.k, e.stage)
        raise
    if metrics is not None:
        metrics.record_reconstruction(space.rstype.name, space.k, "accepted")
    return g


def _reconstruct(space: CosetSpace, pi: CosetPermutation) -> Isometry:
    rs = space.root_system
    k = space.k
    if k < 2 or (k == 2 and rs.is_simply_laced):
        raise UsageError(f"reconstruction needs k >= 3, or k = 2 with a non simply laced type; got {rs.name}, k={k}")
    n = len(space)
    if len(pi.images) != n or not pi.is_bijection():
        raise ReconstructionError("fusion", "not a permutation of the cosets")
    images = pi.array
    tables = _space_tables(space)
    for j, (g_id, shifted) in enumerate(tables.shifts):
        if not np.array_equal(images[shifted], space.add_ids(images, np.full(n, images[g_id]))):
            raise ReconstructionError("fusion", f"π is not additive on the generator β_{j + 1}")

    if not np.array_equal(tables.class_codes[images], tables.class_codes):
        raise ReconstructionError("weight", "π changes a weight class")

    short = k == 2
    domain_rs = short_root_subsystem(rs) if short else rs
    domain_cosets = [space.root_coset_ids[rs.index[v]] for v in domain_rs.roots]
    by_coset: Dict[int, int] = {}
    for index, c in enumerate(domain_cosets):
        if c in by_coset:
            raise ReconstructionError("pullback", f"coset {c} holds two domain roots")
        by_coset[c] = index
    if {int(images[c]) for c in by_coset} != set(by_coset):
        raise ReconstructionError("root-cosets", "π does not preserve the cosets of the domain roots")
    sigma = np.array([by_coset[int(images[c])] for c in domain_cosets], dtype=np.int64)

    if not np.array_equal(sigma[list(domain_rs.negation)], np.array(domain_rs.negation)[sigma]):
        raise ReconstructionError("negation", "σ̃(−α) ≠ −σ̃(α)")

    gram = domain_rs.scaled_gram
    moved = gram[np.ix_(sigma, sigma)]
    scale = _inner_scale(domain_rs)
    if np.any(((moved - gram) * scale.numerator) % (scale.denominator * k)):
        raise ReconstructionError("mod-k", "inner products differ modulo k")

    unequal = np.argwhere(moved != gram)
    pairs = {(Fraction(int(gram[i, j])) * scale, Fraction(int(moved[i, j])) * scale) for i, j in unequal}
    rejected = [v for v in rigidity_check(rs, k, sorted(pairs), short_only=short)
                if v.outcome != RigidityOutcome.ACCEPTED]
    if rejected:
        first = rejected[0]
        raise ReconstructionError("rigidity", f"{first.before} against {first.after}: {first.outcome.value} {first.case or ''}".strip())

    try:
        extended = extend_permutation(domain_rs, tuple(int(x) for x in sigma))
    except ExtensionError as e:
        raise ReconstructionError("extend", str(e)) from e

    if short:
        simple_images = [extended.image(i) for i in domain_rs.simple_indices]
        full = _induced_root_permutation(rs, domain_rs, simple_images)
        if full is None:
            raise ReconstructionError("full-delta", "the extension does not preserve Δ")
        result = Isometry(rs, bytes(full))
    else:
        result = extended

    if not np.array_equal(coset_images(result, space), images):
        raise ReconstructionError("induced", "the extension does not induce π")
    return result


def coset_automorphisms(space: CosetSpace) -> List[CosetPermutation]:
    """
    Weight-class preserving automorphisms of a cyclic coset group.

    Every automorphism of Z/n is x ↦ u·x for a unit u; those that keep
    each weight class are returned, the identity first.

    Raises:
        UsageError: If the coset group is not cyclic of rank one
    """
    if space.rank != 1:
        raise UsageError(f"{space!r} is not a rank-one coset group")
    n = len(space)
    classes = space.weight_classes
    out = []
    for u in range(1, n):
        if np.gcd(u, n) != 1:
            continue
        images = tuple(u * i % n for i in range(n))
        if all(classes[images[i]] == classes[i] for i in range(n)):
            out.append(CosetPermutation(images))
    return out


def preserves_root_structure(space: CosetSpace, pi: CosetPermutation) -> bool:
    """π keeps every weight class and maps the cosets of each root norm onto themselves."""
    classes = space.weight_classes
    if any(classes[pi(i)] != classes[i] for i in range(len(space))):
        return False
    for norm in {v.norm() for v in space.root_system.roots}:
        cosets = set(space.root_cosets(norm))
        if {pi(c) for c in cosets} != cosets:
            return False
    return True


def orbit_ids(space: CosetSpace, generators: Sequence[Isometry]) -> Tuple[int, ...]:
    """
    Orbit label of every coset under the group generated by `generators`.

    Labels are numbered from 0 in order of the smallest coset id of each
    orbit, so the zero coset always has label 0.
    """
    perms = [coset_images(g, space) for g in generators]
    labels = np.arange(len(space), dtype=np.int64)
    while True:
        before = labels.copy()
        for p in perms:
            labels = np.minimum(labels, labels[p])
            labels[p] = np.minimum(labels[p], labels)
        labels = labels[labels]
        if np.array_equal(labels, before):
            break
    _, inverse = np.unique(labels, return_inverse=True)
    return tuple(int(i) for i in inverse)


@dataclass(frozen=True)
class ShortAutComparison:
    """Orders of Aut(Δ) and Aut(Δ_s)."""

    name: str
    short_type: str
    full_order: int
    short_order: int

    @property
    def isomorphic(self) -> bool:
        return self.full_order == self.short_order

    @property
    def index(self) -> int:
        if self.short_order % self.full_order:
            raise ConsistencyError(f"|Aut(Δ)| = {self.full_order} does not divide |Aut(Δ_s)| = {self.short_order}")
        return self.short_order // self.full_order


def compare_short_aut(rs: RootSystem, cap: int = DEFAULT_GROUP_CAP) -> ShortAutComparison:
    """
    Compare Aut(Δ) with the automorphism group of the short roots.

    Raises:
        UsageError: For simply laced types
        GroupCapExceededError: If either group has more than `cap` elements
    """
    short = short_root_subsystem(rs)
    full_group = automorphism_group(rs, cap)
    short_group = automorphism_group(short, cap)
    if not (full_group.enumerated and short_group.enumerated):
        raise GroupCapExceededError(f"cannot enumerate Aut({rs.name}) or Aut({short.name}) within {cap} elements")
    result = ShortAutComparison(rs.name, short.name, full_group.order, short_group.order)
    logger.info(f"|Aut({rs.name})| = {result.full_order}, |Aut({short.name})| = {result.short_order}")
    return result


def inner_product_pairs(rs: RootSystem, g: Isometry) -> List[Tuple[int, int]]:
    """Index pairs whose inner product changes under g; empty for automorphisms."""
    p = _as_array(g.perm)
    gram = rs.scaled_gram
    return [(int(i), int(j)) for i, j in np.argwhere(gram[np.ix_(p, p)] != gram) if i < j]


__all__ = [
    "CosetPermutation",
    "Isometry",
    "IsometryGroup",
    "RigidityOutcome",
    "RigidityVerdict",
    "ShortAutComparison",
    "act_on_cosets",
    "aut_generators",
    "automorphism_group",
    "cartan_automorphisms",
    "compare_short_aut",
    "compose",
    "coset_automorphisms",
    "coset_images",
    "extend_permutation",
    "generate",
    "kernel",
    "negation",
    "orbit_ids",
    "preserves_root_structure",
    "reconstruct_from_coset_action",
    "rigidity_check",
    "sample_elements",
]
