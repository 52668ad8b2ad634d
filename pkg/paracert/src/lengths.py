"""
Length function ℓ_Q(β): the least number of roots summing to β.

`LengthOracle` answers exact length queries by meeting in the middle. A
ball of all lattice points within `ball_radius` roots of 0 is built once
per root system with numpy, layer by layer; each layer keeps its points
as sorted integer keys together with parent pointers, so every point in
the ball has a shortest decomposition on record. A query then runs a
breadth-first search outward from β, looking every layer up in the ball.
States are pruned with two lower bounds on the remaining distance: the
L1 bound Σ|x_i| / max_α Σ|α_i| and the norm bound |x| <= d·max|α|.

All arithmetic is on coordinates scaled by the root system's common
denominator, so the search is pure integer work.

The closed-form lower bounds follow one recipe: for a coordinate subset S,
ℓ(β) >= Σ_{i∈S}|x_i| / M_S with M_S = max over roots of Σ_{i∈S}|α_i|.
Subsets are given with 1-based coordinate labels.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import inf
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from codes import CodeWord, containing_block, hamming_blocks, max_block_overlap
from exceptions import ConsistencyError, LengthCapExceededError, UsageError
from rootsys import RootSystem, Vector

DEFAULT_BALL_RADIUS = 3
_CHUNK_ROWS = 1 << 19


@dataclass(frozen=True)
class LengthResult:
    """An exact length with a shortest decomposition."""

    value: int
    witness: Tuple[Vector, ...]


class BoundSource(str, Enum):
    GENERIC = "generic"
    CLASSICAL_HALF = "classical_half"
    CLASSICAL_COORD = "classical_coord"
    E_TYPE = "e_type"
    E_TYPE_567 = "e_type_567"


@dataclass(frozen=True)
class BoundReport:
    """A lower bound Σ_{i∈S}|x_i| / M_S on the length."""

    subset: Tuple[int, ...]
    m_s: Fraction
    bound: Fraction
    source: BoundSource


@dataclass(frozen=True)
class EqualityCertificate:
    """The structure forced when a length meets a lower bound."""

    subset: Tuple[int, ...]
    m_s: Fraction
    witness_sums: Tuple[Fraction, ...]
    checks: Tuple[str, ...]


class LengthOracle:
    """
    Exact lengths for one root system.

    Args:
        rs (RootSystem): The root system
        ball_radius (int): Radius of the precomputed ball around 0

    Notes:
        The ball is read-only after construction, so one oracle serves
        concurrent queries; the visited map of a query is local to the call.
    """

    def __init__(self, rs: RootSystem, ball_radius: int = DEFAULT_BALL_RADIUS):
        if ball_radius < 1:
            raise UsageError(f"ball radius must be >= 1, got {ball_radius}")
        self.rs = rs
        self.ball_radius = ball_radius
        self._roots = rs.scaled_roots
        self._root_tuples = [tuple(int(c) for c in row) for row in self._roots]
        self._l1_max = int(np.abs(self._roots).sum(axis=1).max())
        self._norm_max = int((self._roots * self._roots).sum(axis=1).max())

        m = rs.ambient_dim
        self._offset = ball_radius * int(np.abs(self._roots).max()) + 1
        base = 2 * self._offset + 1
        if base ** m >= 2**62:
            raise UsageError(f"ball radius {ball_radius} too large to index for {rs.name}")
        self._powers = np.array([base**i for i in range(m)], dtype=np.int64)

        self._build_ball()

    def _encode(self, points: np.ndarray) -> np.ndarray:
        return (points + self._offset) @ self._powers

    def _build_ball(self) -> None:
        m = self.rs.ambient_dim
        n_roots = len(self._roots)
        zero = np.zeros((1, m), dtype=np.int64)
        self._layer_points = [zero]
        self._layer_keys = [self._encode(zero)]
        self._layer_parent = [np.array([-1], dtype=np.int64)]
        self._layer_root = [np.array([-1], dtype=np.int64)]

        for d in range(1, self.ball_radius + 1):
            previous = self._layer_points[-1]
            step = max(1, _CHUNK_ROWS // n_roots)
            keys, points, parents, via = [], [], [], []
            for start in range(0, len(previous), step):
                block = previous[start:start + step]
                candidates = (block[:, None, :] + self._roots[None, :, :]).reshape(-1, m)
                candidate_keys = self._encode(candidates)
                fresh = ~np.isin(candidate_keys, self._layer_keys[-1])
                if d >= 2:
                    fresh &= ~np.isin(candidate_keys, self._layer_keys[-2])
                unique_keys, first = np.unique(candidate_keys[fresh], return_index=True)
                keys.append(unique_keys)
                points.append(candidates[fresh][first])
                parents.append(np.repeat(np.arange(start, start + len(block)), n_roots)[fresh][first])
                via.append(np.tile(np.arange(n_roots), len(block))[fresh][first])
            merged_keys, first = np.unique(np.concatenate(keys), return_index=True)
            self._layer_keys.append(merged_keys)
            self._layer_points.append(np.concatenate(points)[first])
            self._layer_parent.append(np.concatenate(parents)[first])
            self._layer_root.append(np.concatenate(via)[first])

        all_keys = np.concatenate(self._layer_keys)
        all_dist = np.concatenate([np.full(len(k), d, dtype=np.int64) for d, k in enumerate(self._layer_keys)])
        all_pos = np.concatenate([np.arange(len(k), dtype=np.int64) for k in self._layer_keys])
        order = np.argsort(all_keys, kind="stable")
        self._ball_keys = all_keys[order]
        self._ball_dist = all_dist[order]
        self._ball_pos = all_pos[order]
        logger.debug(
            f"Length ball for {self.rs.name}: radius {self.ball_radius}, "
            f"{len(self._ball_keys)} points, layers {[len(k) for k in self._layer_keys]}"
        )

    @property
    def ball_size(self) -> int:
        return len(self._ball_keys)

    def _lookup(self, points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Ball distance (or -1) and layer position of each row."""
        dist = np.full(len(points), -1, dtype=np.int64)
        pos = np.full(len(points), -1, dtype=np.int64)
        inside = np.all(np.abs(points) < self._offset, axis=1)
        if not inside.any():
            return dist, pos
        keys = self._encode(points[inside])
        where = np.searchsorted(self._ball_keys, keys)
        where = np.minimum(where, len(self._ball_keys) - 1)
        found = self._ball_keys[where] == keys
        rows = np.flatnonzero(inside)[found]
        dist[rows] = self._ball_dist[where[found]]
        pos[rows] = self._ball_pos[where[found]]
        return dist, pos

    def _ball_path(self, d: int, pos: int) -> List[int]:
        path = []
        while d > 0:
            path.append(int(self._layer_root[d][pos]))
            pos = int(self._layer_parent[d][pos])
            d -= 1
        return path

    def _greedy_upper(self, start: Tuple[int, ...], cap: int) -> Optional[int]:
        """Length of a greedy decomposition, used to tighten pruning."""
        q = np.array(start, dtype=np.int64)
        for steps in range(cap + 1):
            dist, _ = self._lookup(q[None, :])
            if dist[0] >= 0:
                return steps + int(dist[0])
            scores = self._roots @ q
            best = int(np.argmax(scores))
            if scores[best] <= 0:
                return None
            q = q - self._roots[best]
        return None

    def length(self, beta: Vector, cap: int) -> LengthResult:
        """
        Exact ℓ(β) with a shortest decomposition.

        Args:
            beta (Vector): A root-lattice vector
            cap (int): Largest length searched

        Returns:
            LengthResult: The minimal length and a witness

        Raises:
            UsageError: If beta is not in Q or cap < 1
            LengthCapExceededError: If no decomposition of length <= cap exists
        """
        if cap < 1:
            raise UsageError(f"length cap must be >= 1, got {cap}")
        self.rs.integral_coordinates(beta)
        start = self.rs.to_scaled(beta)
        if not any(start):
            return LengthResult(0, ())

        greedy = self._greedy_upper(start, cap)
        limit = cap if greedy is None else min(cap, greedy)
        best, hit = inf, None
        parents: Dict[Tuple[int, ...], Optional[Tuple[Tuple[int, ...], int]]] = {start: None}
        frontier = [start]
        j = 0
        while frontier:
            dist, pos = self._lookup(np.array(frontier, dtype=np.int64))
            for point, d, p in zip(frontier, dist.tolist(), pos.tolist()):
                if d >= 0 and j + d < best:
                    best, hit = j + d, (point, d, p)
            if best <= j + 1 or j >= limit:
                break
            j += 1
            budget = min(limit, best - 1) - j
            if budget < 0:
                break
            l1_limit = budget * self._l1_max
            norm_limit = budget * budget * self._norm_max
            following = []
            for point in frontier:
                for index, root in enumerate(self._root_tuples):
                    q = tuple(a - b for a, b in zip(point, root))
                    if q in parents:
                        continue
                    if sum(abs(c) for c in q) > l1_limit or sum(c * c for c in q) > norm_limit:
                        continue
                    parents[q] = (point, index)
                    following.append(q)
            frontier = following

        if hit is None or best > cap:
            raise LengthCapExceededError(f"no decomposition of {beta} into at most {cap} roots of {self.rs.name}")

        point, d, p = hit
        outward: List[int] = []
        current = point
        while parents[current] is not None:
            previous, index = parents[current]
            outward.append(index)
            current = previous
        outward.reverse()
        indices = outward + self._ball_path(d, p)
        witness = tuple(self.rs.roots[i] for i in indices)

        total = Vector.zero(self.rs.ambient_dim, self.rs.form)
        for v in witness:
            total = total + v
        if len(witness) != best or total != beta:
            raise ConsistencyError(f"length witness for {beta} does not re-sum correctly")
        return LengthResult(int(best), witness)


@lru_cache(maxsize=None)
def get_oracle(rs: RootSystem, ball_radius: int = DEFAULT_BALL_RADIUS) -> LengthOracle:
    """Shared oracle per (root system, radius)."""
    return LengthOracle(rs, ball_radius)


def default_cap(k: int, rank: int, factor: int = 4) -> int:
    return factor * k * rank


def length_exact(rs: RootSystem, beta: Vector, cap: int, ball_radius: int = DEFAULT_BALL_RADIUS) -> LengthResult:
    """
    Exact ℓ_Q(β), searching decompositions of at most `cap` roots.

    Raises:
        LengthCapExceededError: If ℓ_Q(β) > cap
    """
    return get_oracle(rs, ball_radius).length(beta, cap)


@lru_cache(maxsize=None)
def subset_constant(rs: RootSystem, subset: FrozenSet[int]) -> Fraction:
    """M_S = max over roots α of Σ_{i∈S}|α_i|."""
    return max(v.abs_sum(subset) for v in rs.roots)


def _normalise_subset(beta: Vector, subset: Iterable[int]) -> Tuple[int, ...]:
    chosen = tuple(sorted(set(subset)))
    if not chosen:
        raise UsageError("coordinate subset must be nonempty")
    if chosen[0] < 1 or chosen[-1] > beta.dim:
        raise UsageError(f"coordinate subset {chosen} outside 1..{beta.dim}")
    return chosen


def bound_generic(rs: RootSystem, beta: Vector, subset: Iterable[int]) -> BoundReport:
    """
    ℓ(β) >= Σ_{i∈S}|x_i| / M_S for any nonempty coordinate subset S.
    """
    chosen = _normalise_subset(beta, subset)
    m_s = subset_constant(rs, frozenset(chosen))
    bound = beta.abs_sum(chosen) / m_s if m_s else Fraction(0)
    return BoundReport(chosen, m_s, bound, BoundSource.GENERIC)


def _e_type_constant(subset: Tuple[int, ...], m: int) -> Fraction:
    """max{1, |S∩T|/2 : T ∈ H_m(4)}."""
    return max(Fraction(1), Fraction(max_block_overlap(CodeWord.of(subset), m), 2))


def specialized_bounds(rs: RootSystem, beta: Vector) -> List[BoundReport]:
    """
    Every applicable closed-form bound for β, specialised ones first.

    Classical types get the half-sum bound and, except type C, the
    single-coordinate bound. E types get the H_m(4) bound on the support,
    the unit bound on {5,6,7} for E6/E7, and the generic bound on the
    support and on each supporting coordinate.
    """
    support = beta.support()
    if not support:
        return []
    t = rs.rstype
    everything = tuple(range(1, beta.dim + 1))
    reports: List[BoundReport] = []
    if t.family != "E":
        reports.append(BoundReport(everything, Fraction(2), beta.abs_sum() / 2, BoundSource.CLASSICAL_HALF))
        if t.family != "C":
            a = max(support, key=lambda i: (abs(beta.coords[i - 1]), -i))
            reports.append(BoundReport((a,), Fraction(1), abs(beta.coords[a - 1]), BoundSource.CLASSICAL_COORD))
    else:
        m = 8 if t.rank == 8 else 7
        m_s = _e_type_constant(support, m)
        reports.append(BoundReport(support, m_s, beta.abs_sum(support) / m_s, BoundSource.E_TYPE))
        if t.rank in (6, 7) and set(support) & {5, 6, 7}:
            block = (5, 6, 7)
            reports.append(BoundReport(block, Fraction(1), beta.abs_sum(block), BoundSource.E_TYPE_567))
    reports.append(bound_generic(rs, beta, support))
    reports.extend(bound_generic(rs, beta, (i,)) for i in support)
    return reports


def bound_specialized(rs: RootSystem, beta: Vector) -> BoundReport:
    """The largest applicable closed-form lower bound; the zero vector gets bound 0."""
    reports = specialized_bounds(rs, beta)
    if not reports:
        return BoundReport(tuple(range(1, beta.dim + 1)), Fraction(1), Fraction(0), BoundSource.GENERIC)
    return max(reports, key=lambda r: r.bound)


def equality_certificate(
    rs: RootSystem, beta: Vector, res: LengthResult, rep: BoundReport
) -> Optional[EqualityCertificate]:
    """
    Check the structure forced when ℓ(β) equals a lower bound.

    Every witness root must attain Σ_{i∈S}|y_i| = M_S, and on each i ∈ S the
    witnesses may not carry opposite signs. For E types with the bound taken
    on the support: with |S| in {4, 5} and M_S = 2 the support must be a block
    of H_m(4) and all |x_i| equal; with |S| = 3 and M_S = 3/2 some block must
    contain the support and all |x_i| be equal.

    Returns:
        The certificate, or None when the inequality is strict

    Raises:
        ConsistencyError: If equality holds but the forced structure is absent
    """
    if Fraction(res.value) != rep.bound or res.value == 0:
        return None
    subset = rep.subset
    sums = tuple(y.abs_sum(subset) for y in res.witness)
    checks = []
    if any(s != rep.m_s for s in sums):
        raise ConsistencyError(f"equality ℓ = {rep.bound} for {beta} but witness sums {sums} != M_S = {rep.m_s}")
    checks.append("witness roots attain M_S")
    for i in subset:
        signs = {(y.coords[i - 1] > 0) - (y.coords[i - 1] < 0) for y in res.witness} - {0}
        if len(signs) > 1:
            raise ConsistencyError(f"equality for {beta} but witnesses disagree in sign on coordinate {i}")
    checks.append("witness signs agree on S")

    support = beta.support()
    if rs.rstype.family == "E" and subset == support:
        m = 8 if rs.rstype.rank == 8 else 7
        magnitudes = {abs(beta.coords[i - 1]) for i in support}
        if len(support) in (4, 5) and rep.m_s == 2:
            if CodeWord.of(support) not in hamming_blocks(m) or len(magnitudes) != 1:
                raise ConsistencyError(f"half-sum equality for {beta} without a uniform H_{m}(4) support")
            checks.append(f"support is a block of H_{m}(4) with equal |x_i|")
        elif len(support) == 3 and rep.m_s == Fraction(3, 2):
            if containing_block(CodeWord.of(support), m) is None or len(magnitudes) != 1:
                raise ConsistencyError(f"2/3-sum equality for {beta} without a containing block and equal |x_i|")
            checks.append(f"support lies in a block of H_{m}(4) with equal |x_i|")
    return EqualityCertificate(subset, rep.m_s, sums, tuple(checks))
