from itertools import combinations

import pytest

from codes import (
    OMEGA7,
    OMEGA8,
    CodeWord,
    build_h7,
    build_h8,
    containing_block,
    find_quadruple,
    find_triple,
    hamming_blocks,
    max_block_overlap,
)
from exceptions import UsageError


class TestCodeWord:
    def test_members_round_trip(self):
        """Masks store members 1..8 as bits 0..7."""
        word = CodeWord.of((1, 3, 8))
        assert word.mask == 0b10000101
        assert word.members == (1, 3, 8)
        assert word.size == 3
        assert 3 in word and 2 not in word

    def test_set_operations(self):
        a, b = CodeWord.of((1, 2, 3, 4)), CodeWord.of((3, 4, 5, 6))
        assert (a ^ b).members == (1, 2, 5, 6)
        assert (a & b).members == (3, 4)
        assert (a | b).size == 6
        assert not a.isdisjoint(b)
        assert CodeWord.of((3, 4)).issubset(a)

    def test_out_of_range_member(self):
        with pytest.raises(UsageError, match="outside 1..8"):
            CodeWord.of((0, 1))


class TestHammingCodes:
    def test_h8_size_and_weights(self):
        """H8 has 16 words with weights 0, 4 (fourteen times) and 8."""
        h8 = build_h8()
        assert len(h8) == 16
        assert h8.weight_distribution() == (1, 0, 0, 0, 14, 0, 0, 0, 1)
        assert h8.dimension() == 4

    def test_h8_is_doubly_even_linear(self):
        h8 = build_h8()
        assert h8.is_linear()
        assert h8.has_even_intersections()

    def test_h7_blocks(self):
        """H7(4) consists of the seven blocks avoiding the point 8."""
        blocks = hamming_blocks(7)
        assert len(blocks) == 7
        assert all(8 not in b and b.size == 4 for b in blocks)
        assert len(build_h7()) == 8

    def test_block_lists_are_sorted(self):
        blocks = hamming_blocks(8)
        assert blocks[0].members == (1, 2, 3, 4)
        assert [b.members for b in blocks] == sorted(b.members for b in blocks)

    def test_blocks_need_m_7_or_8(self):
        with pytest.raises(UsageError):
            hamming_blocks(6)

    def test_containing_block_and_overlap(self):
        assert containing_block(CodeWord.of((1, 2, 3)), 8) == CodeWord.of((1, 2, 3, 4))
        assert containing_block(CodeWord.of((5, 7)), 7) == CodeWord.of((1, 3, 5, 7))
        assert max_block_overlap(CodeWord.of((1, 2, 3, 5, 6)), 8) == 4


class TestPartitionSearches:
    def test_quadruple_for_first_pair(self):
        """{1,2} completes to four disjoint pairs with every union in H8(4)."""
        t1 = CodeWord.of((1, 2))
        t2, t3, t4 = find_quadruple(t1)
        chosen = (t1, t2, t3, t4)
        blocks = set(hamming_blocks(8))
        assert all(a.isdisjoint(b) for a, b in combinations(chosen, 2))
        assert all((a | b) in blocks for a, b in combinations(chosen, 2))

    @pytest.mark.parametrize("pair", list(combinations(OMEGA8, 2)))
    def test_every_pair_has_a_quadruple(self, pair):
        t2, t3, t4 = find_quadruple(CodeWord.of(pair))
        covered = CodeWord.of(pair) | t2 | t3 | t4
        assert covered.size == 8

    @pytest.mark.parametrize("pair", list(combinations(OMEGA7, 2)))
    def test_every_pair_has_a_triple(self, pair):
        t1 = CodeWord.of(pair)
        t2, t3 = find_triple(t1)
        blocks = set(hamming_blocks(7))
        assert (t1 | t2) in blocks and (t1 | t3) in blocks and (t2 | t3) in blocks

    def test_searches_reject_non_pairs(self):
        with pytest.raises(UsageError):
            find_quadruple(CodeWord.of((1, 2, 3)))
        with pytest.raises(UsageError):
            find_triple(CodeWord.of((1, 8)))
