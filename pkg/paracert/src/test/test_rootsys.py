from fractions import Fraction

import pytest

from exceptions import ArithmeticOverflowError, UsageError
from rootsys import (
    DOUBLE_FORM,
    HALF_FORM,
    RootSystemType,
    Vector,
    build_root_system,
    component_label,
    expected_short_type,
    inner_product,
    root_stats,
    short_root_subsystem,
)
from sweeps import expected_root_count

CLASSICAL_GRID = (
    [f"A{n}" for n in range(1, 9)]
    + [f"B{n}" for n in range(2, 7)]
    + [f"C{n}" for n in range(2, 7)]
    + [f"D{n}" for n in range(4, 7)]
)


class TestVector:
    def test_inner_product_scales(self):
        """The diagonal form uses scale 1, 1/2 (type C) or 2 (type E)."""
        assert inner_product(Vector.basis(1, 3), Vector.basis(2, 3)) == 0
        assert inner_product(Vector.basis(1, 3, HALF_FORM), Vector.basis(1, 3, HALF_FORM)) == Fraction(1, 2)
        assert inner_product(Vector.basis(1, 8, DOUBLE_FORM), Vector.basis(1, 8, DOUBLE_FORM)) == 2

    def test_arithmetic(self):
        u, v = Vector.of(1, 0, -1), Vector.of(0, 1, -1)
        assert u + v == Vector.of(1, 1, -2)
        assert u - v == Vector.of(1, -1, 0)
        assert -u == Vector.of(-1, 0, 1)
        assert 2 * u == Vector.of(2, 0, -2)
        assert (u + v).support() == (1, 2, 3)
        assert (u + v).abs_sum((1, 3)) == 3
        assert Vector.zero(3).is_zero()

    def test_mismatches_are_usage_errors(self):
        with pytest.raises(UsageError, match="dimension mismatch"):
            Vector.of(1, 0) + Vector.of(1, 0, 0)
        with pytest.raises(UsageError, match="form mismatch"):
            inner_product(Vector.basis(1, 2), Vector.basis(1, 2, HALF_FORM))
        with pytest.raises(UsageError):
            Vector.basis(0, 3)

    def test_overflow_guard(self):
        with pytest.raises(ArithmeticOverflowError):
            Vector.of(2**63, 0)


class TestRootSystemType:
    def test_parse(self):
        assert RootSystemType.parse("e8") == RootSystemType("E", 8)
        assert RootSystemType.parse("D_5").name == "D5"
        assert RootSystemType.parse("A 2").ambient_dim == 3

    @pytest.mark.parametrize("name", ["D3", "E9", "F2", "G3", "Q2", "B1", "A"])
    def test_invalid_types(self, name):
        with pytest.raises(UsageError):
            RootSystemType.parse(name)

    def test_attributes(self):
        assert RootSystemType("E", 6).ambient_dim == 7
        assert RootSystemType("G", 2).lacing == 3
        assert RootSystemType("C", 3).form == HALF_FORM
        assert RootSystemType("D", 4).is_simply_laced


class TestRootSystems:
    def test_a1(self, root_system):
        rs = root_system("A1")
        assert set(rs.roots) == {Vector.of(1, -1), Vector.of(-1, 1)}
        assert all(v.norm() == 2 for v in rs.roots)

    def test_g2_norms(self, root_system):
        """G2 has six long roots of norm 2 and six short roots of norm 2/3."""
        stats = root_stats(root_system("G2"))
        assert stats.count == 12
        assert stats.norms == {Fraction(2, 3): 6, Fraction(2): 6}
        assert stats.lacing == 3

    def test_e8_shape(self, root_system):
        rs = root_system("E8")
        assert len(rs.roots) == 240
        units = [v for v in rs.roots if len(v.support()) == 1]
        assert len(units) == 16
        assert all(v.norm() == 2 for v in rs.roots)

    def test_f4_norm_classes(self, root_system):
        rs = root_system("F4")
        assert len(rs.long_roots) == 24
        assert len(rs.short_roots) == 24
        assert set(rs.long_roots).isdisjoint(rs.short_roots)

    def test_e6_in_r7(self, root_system):
        """E6 keeps the units on e_1..e_4 and the half-roots balanced on {5,6,7}."""
        rs = root_system("E6")
        assert len(rs.roots) == 72
        assert all(len(v.coords) == 7 and v.form == DOUBLE_FORM for v in rs.roots)
        units = [v for v in rs.roots if len(v.support()) == 1]
        assert len(units) == 8
        assert all(v.coords[4:] == (0, 0, 0) for v in units)
        assert all(sum(v.coords[4:]) == 0 for v in rs.roots)
        assert all(v.norm() == 2 for v in rs.roots)

    def test_c_long_roots_use_half_form(self, root_system):
        rs = root_system("C3")
        assert Vector.of(2, 0, 0, form=HALF_FORM) in rs.long_roots
        assert Vector.of(1, -1, 0, form=HALF_FORM) in rs.short_roots
        assert {v.norm() for v in rs.long_roots} == {2}

    def test_a2_base(self, root_system):
        rs = root_system("A2")
        assert rs.simple_roots == (Vector.of(1, -1, 0), Vector.of(0, 1, -1))
        assert rs.cartan_matrix == ((2, -1), (-1, 2))

    def test_g2_cartan(self, root_system):
        cartan = root_system("G2").cartan_matrix
        assert cartan[0][1] * cartan[1][0] == 3

    @pytest.mark.parametrize("name", CLASSICAL_GRID + ["E6", "E7", "E8", "F4", "G2"])
    def test_root_counts(self, name):
        t = RootSystemType.parse(name)
        rs = build_root_system(t)
        assert len(rs.roots) == expected_root_count(t)
        assert len(rs.simple_roots) == t.rank
        assert rs.highest_root.norm() == 2
        assert {v.norm() for v in rs.roots} <= {Fraction(2), Fraction(2, rs.lacing)}

    @pytest.mark.parametrize("name", ["A3", "B3", "C3", "D4", "F4", "G2"])
    def test_reflection_closure(self, root_system, name):
        assert root_system(name).is_reflection_closed()

    def test_reflection_permutation_is_involution(self, root_system):
        rs = root_system("B3")
        for i in rs.simple_indices:
            perm = rs.reflection_permutation(i)
            assert all(perm[perm[j]] == j for j in range(len(rs.roots)))
            assert perm[i] == rs.negation[i]

    def test_reflect(self, root_system):
        rs = root_system("C2")
        alpha = rs.simple_roots[0]
        assert rs.reflect(alpha, alpha) == -alpha

    def test_e6_spans_rank_six(self, root_system):
        """E6 lives in R^7 but its roots span only six dimensions."""
        rs = root_system("E6")
        assert rs.ambient_dim == 7
        assert rs.span_rank() == 6

    def test_lattice_coordinates(self, root_system):
        rs = root_system("D4")
        beta = Vector.of(2, 0, 0, 0)
        assert rs.from_coordinates(rs.integral_coordinates(beta)) == beta
        with pytest.raises(UsageError, match="not in the root lattice"):
            rs.integral_coordinates(Vector.of(1, 0, 0, 0))
        with pytest.raises(UsageError, match="not in the span"):
            root_system("A2").lattice_coordinates(Vector.of(1, 0, 0))

    def test_rstype_of_reducible_system(self, root_system):
        sub = short_root_subsystem(root_system("B3"))
        with pytest.raises(UsageError, match="reducible"):
            sub.rstype


class TestShortRootSubsystem:
    @pytest.mark.parametrize("name,label,count", [
        ("B3", "A1^3", 6),
        ("C3", "A3", 12),
        ("C4", "D4", 24),
        ("F4", "D4", 24),
        ("G2", "A2", 6),
    ])
    def test_types(self, root_system, name, label, count):
        sub = short_root_subsystem(root_system(name))
        assert sub.name == label
        assert len(sub.roots) == count

    def test_g2_short_norms(self, root_system):
        sub = short_root_subsystem(root_system("G2"))
        assert {v.norm() for v in sub.roots} == {Fraction(2, 3)}

    def test_simply_laced_input(self, root_system):
        with pytest.raises(UsageError, match="simply laced"):
            short_root_subsystem(root_system("A3"))
        with pytest.raises(UsageError):
            expected_short_type(RootSystemType("E", 6))

    def test_component_label(self):
        a1 = RootSystemType("A", 1)
        assert component_label((a1, a1, a1)) == "A1^3"
        assert component_label((RootSystemType("D", 4),)) == "D4"
