"""
Extended Hamming code H8 and its subcode H7.

Words are subsets of Ω8 = {1, ..., 8} stored as 8-bit masks (bit i-1 set
when i is a member). The weight-4 words of H8 index the half-integral roots
of E8 in the coordinates used by `rootsys`; the weight-4 words of H7 do the
same for E7 and E6. The two partition searches back the clearing moves of
the E-type reductions.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import FrozenSet, Iterable, Iterator, Optional, Tuple

from exceptions import ConsistencyError, UsageError

OMEGA8: Tuple[int, ...] = tuple(range(1, 9))
OMEGA7: Tuple[int, ...] = tuple(range(1, 8))

H8_GENERATORS: Tuple[Tuple[int, ...], ...] = (
    (1, 2, 3, 4),
    (1, 2, 5, 6),
    (1, 2, 7, 8),
    (1, 3, 5, 7),
)


@dataclass(frozen=True, order=True)
class CodeWord:
    """A subset of Ω8 as a bit mask."""

    mask: int

    def __post_init__(self):
        if not 0 <= self.mask < 256:
            raise UsageError(f"code word mask out of range: {self.mask}")

    @classmethod
    def of(cls, members: Iterable[int]) -> "CodeWord":
        mask = 0
        for i in members:
            if not 1 <= i <= 8:
                raise UsageError(f"code word member {i} outside 1..8")
            mask |= 1 << (i - 1)
        return cls(mask)

    @property
    def members(self) -> Tuple[int, ...]:
        return tuple(i for i in OMEGA8 if self.mask >> (i - 1) & 1)

    @property
    def size(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, i: int) -> bool:
        return 1 <= i <= 8 and bool(self.mask >> (i - 1) & 1)

    def __xor__(self, other: "CodeWord") -> "CodeWord":
        return CodeWord(self.mask ^ other.mask)

    def __or__(self, other: "CodeWord") -> "CodeWord":
        return CodeWord(self.mask | other.mask)

    def __and__(self, other: "CodeWord") -> "CodeWord":
        return CodeWord(self.mask & other.mask)

    def isdisjoint(self, other: "CodeWord") -> bool:
        return not self.mask & other.mask

    def issubset(self, other: "CodeWord") -> bool:
        return self.mask & ~other.mask == 0

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.members)) + "}"


@dataclass(frozen=True)
class HammingCode:
    """A binary code of length 7 or 8 given by its full word set."""

    words: FrozenSet[CodeWord]
    length: int

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[CodeWord]:
        return iter(sorted(self.words, key=lambda w: (w.size, w.members)))

    def __contains__(self, word: object) -> bool:
        return word in self.words

    def words_of_size(self, size: int) -> Tuple[CodeWord, ...]:
        """Words of the given weight in lexicographic order of members."""
        return tuple(w for w in self if w.size == size)

    def weight_distribution(self) -> Tuple[int, ...]:
        """Counts of words of weight 0..length."""
        counts = [0] * (self.length + 1)
        for w in self.words:
            counts[w.size] += 1
        return tuple(counts)

    def is_linear(self) -> bool:
        """Closed under symmetric difference (and so contains the empty word)."""
        return all((a ^ b) in self.words for a in self.words for b in self.words)

    def has_even_intersections(self) -> bool:
        return all((a & b).size % 2 == 0 for a in self.words for b in self.words)

    def dimension(self) -> int:
        return len(self.words).bit_length() - 1


@lru_cache(maxsize=None)
def build_h8() -> HammingCode:
    """Span of the four generators under symmetric difference."""
    span = {CodeWord(0)}
    for generator in map(CodeWord.of, H8_GENERATORS):
        span |= {w ^ generator for w in span}
    return HammingCode(frozenset(span), 8)


@lru_cache(maxsize=None)
def build_h7() -> HammingCode:
    """The words of H8 avoiding the point 8."""
    return HammingCode(frozenset(w for w in build_h8().words if 8 not in w), 7)


def hamming_blocks(m: int) -> Tuple[CodeWord, ...]:
    """H_m(4): the weight-4 words of H8 (m = 8) or H7 (m = 7)."""
    if m == 8:
        return build_h8().words_of_size(4)
    if m == 7:
        return build_h7().words_of_size(4)
    raise UsageError(f"Hamming blocks exist for m in (7, 8), got {m}")


def _pairs(points: Tuple[int, ...], excluded: CodeWord) -> Tuple[CodeWord, ...]:
    free = [i for i in points if i not in excluded]
    return tuple(CodeWord.of(pair) for pair in combinations(free, 2))


def _check_pair(t1: CodeWord, points: Tuple[int, ...]) -> None:
    if t1.size != 2 or any(i not in points for i in t1.members):
        raise UsageError(f"expected a 2-subset of {{1..{len(points)}}}, got {t1}")


def find_quadruple(t1: CodeWord) -> Tuple[CodeWord, CodeWord, CodeWord]:
    """
    Complete a 2-subset of Ω8 to four pairwise disjoint pairs whose pairwise
    unions all lie in H8(4).

    Args:
        t1 (CodeWord): A 2-subset of Ω8

    Returns:
        Tuple[CodeWord, CodeWord, CodeWord]: (t2, t3, t4), the first solution in
        lexicographic order of the pairs

    Raises:
        UsageError: If t1 is not a 2-subset of Ω8
        ConsistencyError: If no completion exists
    """
    _check_pair(t1, OMEGA8)
    blocks = set(hamming_blocks(8))
    candidates = _pairs(OMEGA8, t1)
    for t2, t3, t4 in combinations(candidates, 3):
        chosen = (t1, t2, t3, t4)
        if not all(a.isdisjoint(b) for a, b in combinations(chosen, 2)):
            continue
        if all((a | b) in blocks for a, b in combinations(chosen, 2)):
            return t2, t3, t4
    raise ConsistencyError(f"no H8(4) quadruple completes {t1}")


def find_triple(t1: CodeWord) -> Tuple[CodeWord, CodeWord]:
    """
    Complete a 2-subset of Ω7 to three pairwise disjoint pairs whose pairwise
    unions all lie in H7(4).

    Returns:
        Tuple[CodeWord, CodeWord]: (t2, t3), first in lexicographic order

    Raises:
        UsageError: If t1 is not a 2-subset of Ω7
        ConsistencyError: If no completion exists
    """
    _check_pair(t1, OMEGA7)
    blocks = set(hamming_blocks(7))
    candidates = _pairs(OMEGA7, t1)
    for t2, t3 in combinations(candidates, 2):
        chosen = (t1, t2, t3)
        if not all(a.isdisjoint(b) for a, b in combinations(chosen, 2)):
            continue
        if all((a | b) in blocks for a, b in combinations(chosen, 2)):
            return t2, t3
    raise ConsistencyError(f"no H7(4) triple completes {t1}")


def containing_block(subset: CodeWord, m: int) -> Optional[CodeWord]:
    """First block of H_m(4) containing the subset, if any."""
    for block in hamming_blocks(m):
        if subset.issubset(block):
            return block
    return None


def max_block_overlap(subset: CodeWord, m: int) -> int:
    """max |S ∩ T| over T in H_m(4)."""
    return max((subset & block).size for block in hamming_blocks(m))
