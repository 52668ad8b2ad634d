from fractions import Fraction

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from exceptions import UsageError
from quotient import (
    CosetSpace,
    build_root_lattice,
    hermite_normal_form,
    lattice_index,
    reduce_modulo,
    root_coset_intersections,
)
from rootsys import RootSystemType, Vector


class TestHermiteNormalForm:
    def test_small_lattice(self):
        assert hermite_normal_form([(2, 0), (1, 2)], 2) == ((1, 2), (0, 4))

    def test_dependent_generators(self):
        assert hermite_normal_form([(2, 0), (0, 2), (2, 2), (4, 0)], 2) == ((2, 0), (0, 2))

    def test_rank_deficient(self):
        with pytest.raises(UsageError, match="full-rank"):
            hermite_normal_form([(1, 1), (2, 2)], 2)

    def test_reduce_modulo(self):
        hnf = ((2, 0), (0, 4))
        assert reduce_modulo((5, -1), hnf) == (1, 3)


class TestRootLattice:
    @pytest.mark.parametrize("name,index", [
        ("A3", 1), ("D5", 1), ("E6", 1), ("B2", 2), ("B4", 2),
        ("C2", 2), ("C4", 8), ("F4", 4), ("G2", 3),
    ])
    def test_lattice_index(self, name, index):
        assert lattice_index(RootSystemType.parse(name)) == index

    def test_b2_long_sublattice(self):
        lattice = build_root_lattice(RootSystemType("B", 2))
        assert lattice.ql_hnf == ((1, 0), (0, 2))
        assert lattice.index == 2


class TestCosetSpace:
    @pytest.mark.parametrize("name,k,moduli", [
        ("A2", 3, (3, 3)),
        ("B2", 2, (2, 4)),
        ("A1", 4, (4,)),
    ])
    def test_moduli(self, coset_space, name, k, moduli):
        space = coset_space(name, k)
        assert space.moduli == moduli
        assert len(space) == np.prod(moduli)

    def test_g2_level_two_has_twelve_cosets(self, coset_space):
        assert len(coset_space("G2", 2)) == 12

    def test_zero_coset_is_id_zero(self, coset_space):
        space = coset_space("A2", 3)
        zero = space.canonicalize(Vector.zero(3))
        assert zero.id == 0 and zero.is_zero()
        assert space.weight_class(zero) == 0

    def test_canonicalize_absorbs_k_long_roots(self, coset_space):
        space = coset_space("A2", 3)
        alpha = Vector.of(1, -1, 0)
        assert space.canonicalize(3 * alpha).is_zero()
        assert space.canonicalize(4 * alpha) == space.canonicalize(alpha)

    def test_canonical_reps_round_trip(self, coset_space):
        space = coset_space("B2", 2)
        for coset in space:
            assert space.canonicalize(coset.rep) == coset
            assert all(0 <= c < m for c, m in zip(coset.coords, space.moduli))

    def test_b2_ids(self, coset_space):
        """Ids are 4·c1 + c2 over the simple roots e1 - e2 and e2."""
        space = coset_space("B2", 2)
        assert space.canonicalize(Vector.of(1, 0)).id == 5
        assert space.coset(2).rep == Vector.of(0, 2)

    @pytest.mark.parametrize("name,k,root,expected", [
        ("A2", 3, Vector.of(1, -1, 0), Fraction(2, 3)),
        ("B2", 2, Vector.of(1, 1), Fraction(1, 2)),
        ("B2", 2, Vector.of(1, 0), Fraction(3, 4)),
        ("A1", 4, Vector.of(1, -1), Fraction(3, 4)),
    ])
    def test_weight_class(self, coset_space, name, k, root, expected):
        space = coset_space(name, k)
        assert space.weight_class(space.canonicalize(root)) == expected

    def test_g2_short_weight_class(self, coset_space, root_system):
        space = coset_space("G2", 2)
        short = root_system("G2").short_roots[0]
        assert space.weight_class(space.canonicalize(short)) == Fraction(5, 6)

    def test_weight_classes_match_single_lookups(self, coset_space):
        space = coset_space("A2", 3)
        assert space.weight_classes == tuple(space.weight_class(c) for c in space)
        assert sorted(space.weight_classes).count(0) == 3

    def test_order_and_addition(self, coset_space):
        space = coset_space("B2", 2)
        short = space.canonicalize(Vector.of(0, 1))
        assert space.order(short) == 4
        assert (short + short + short + short).is_zero()
        assert (short + -short).is_zero()

    def test_add_ids_agrees_with_add(self, coset_space):
        space = coset_space("B2", 2)
        a, b = np.meshgrid(np.arange(len(space)), np.arange(len(space)), indexing="ij")
        table = space.add_ids(a.ravel(), b.ravel()).reshape(len(space), len(space))
        for i in range(len(space)):
            for j in range(len(space)):
                assert table[i, j] == space.add(space.coset(i), space.coset(j)).id

    def test_roots_in_coset(self, coset_space):
        alpha = Vector.of(1, -1, 0)
        at_three = coset_space("A2", 3)
        assert at_three.roots_in_coset(at_three.canonicalize(alpha)) == (alpha,)
        assert at_three.roots_in_coset(at_three.coset(0)) == ()
        at_two = coset_space("A2", 2)
        assert set(at_two.roots_in_coset(at_two.canonicalize(alpha))) == {alpha, -alpha}

    def test_root_cosets_by_norm(self, coset_space):
        space = coset_space("B2", 2)
        assert space.root_cosets(Fraction(2)) == (4, 6)
        assert space.root_cosets(Fraction(1)) == (1, 3, 5, 7)
        assert space.root_cosets() == (1, 3, 4, 5, 6, 7)

    def test_root_coset_intersections(self, coset_space):
        rows = root_coset_intersections(coset_space("A2", 2))
        assert len(rows) == 6
        assert all(set(row.meets) == {row.root, -row.root} for row in rows)

    def test_e8_level_two_is_flagged(self, coset_space):
        assert coset_space("E8", 2).incomplete
        assert not coset_space("E8", 3).incomplete

    def test_invalid_level(self):
        with pytest.raises(UsageError, match="level k"):
            CosetSpace(build_root_lattice(RootSystemType("A", 2)), 0)

    def test_mixing_spaces(self, coset_space):
        a, b = coset_space("A2", 3), coset_space("A2", 2)
        with pytest.raises(UsageError, match="different coset spaces"):
            a.add(a.coset(1), b.coset(1))

    def test_out_of_range_id(self, coset_space):
        with pytest.raises(UsageError, match="outside"):
            coset_space("A2", 3).coset(9)

    def test_vector_outside_root_lattice(self, coset_space):
        with pytest.raises(UsageError):
            coset_space("B2", 2).canonicalize(Vector.of(Fraction(1, 2), Fraction(1, 2)))


class TestCanonicalizeProperties:
    @settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
    @given(
        coords=st.lists(st.integers(-20, 20), min_size=2, max_size=2),
        shift=st.lists(st.integers(-5, 5), min_size=2, max_size=2),
    )
    def test_invariant_under_k_long_lattice(self, coset_space, root_system, coords, shift):
        space = coset_space("B2", 3)
        rs = root_system("B2")
        gamma = rs.from_coordinates(coords)
        long_shift = Vector.zero(2)
        for n, v in zip(shift, space.lattice.ql_basis):
            long_shift = long_shift + (3 * n) * v
        assert space.canonicalize(gamma + long_shift) == space.canonicalize(gamma)

    @settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
    @given(coords=st.lists(st.integers(-20, 20), min_size=2, max_size=2))
    def test_weight_class_is_well_defined(self, coset_space, root_system, coords):
        space = coset_space("G2", 2)
        gamma = root_system("G2").from_coordinates(coords)
        coset = space.canonicalize(gamma)
        assert (-gamma.norm() / 4) % 1 == space.weight_class(coset)
