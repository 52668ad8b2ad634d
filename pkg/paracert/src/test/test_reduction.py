from fractions import Fraction

import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from codes import CodeWord
from exceptions import ReductionError, UsageError
from reduction import (
    _e6_loop,
    _e6_normalise,
    _Walker,
    CaseTag,
    case_holds,
    reduce_AD,
    reduce_B,
    reduce_C,
    reduce_coset,
    reduce_E,
    reduce_F,
    reduce_G,
)
from rootsys import DOUBLE_FORM, HALF_FORM, RootSystemType, Vector

h = Fraction(1, 2)
third = Fraction(1, 3)


def reduce_from(space, start, reducer=reduce_coset):
    return reducer(space, space.canonicalize(start), start)


class TestClassicalReductions:
    def test_type_a(self, coset_space):
        space = coset_space("A2", 3)
        out = reduce_from(space, Vector.of(4, -4, 0), reduce_AD)
        assert out.gamma == Vector.of(1, -1, 0)
        assert out.case_tag == CaseTag.AD_1
        assert out.steps == 1

    @pytest.mark.parametrize("start,gamma,tag", [
        (Vector.of(3, 1, 0, 0), Vector.of(1, -1, 0, 0), CaseTag.AD_I),
        (Vector.of(2, 0, 0, 0), Vector.of(2, 0, 0, 0), CaseTag.AD_II),
    ])
    def test_type_d(self, coset_space, start, gamma, tag):
        out = reduce_from(coset_space("D4", 2), start, reduce_AD)
        assert (out.gamma, out.case_tag) == (gamma, tag)

    @pytest.mark.parametrize("start,gamma,tag", [
        (Vector.of(1, 0), Vector.of(1, 0), CaseTag.B_II),
        (Vector.of(3, 1), Vector.of(1, -1), CaseTag.B_I),
    ])
    def test_type_b(self, coset_space, start, gamma, tag):
        out = reduce_from(coset_space("B2", 2), start, reduce_B)
        assert (out.gamma, out.case_tag) == (gamma, tag)

    def test_type_b_rank_three(self, coset_space):
        out = reduce_from(coset_space("B3", 3), Vector.of(1, 1, 0), reduce_B)
        assert out.case_tag == CaseTag.B_I

    @pytest.mark.parametrize("name,k,start,gamma", [
        ("C2", 2, (5, 1), (1, 1)),
        ("C2", 2, (2, 0), (2, 0)),
        ("C3", 3, (1, 1, 0), (1, 1, 0)),
    ])
    def test_type_c(self, coset_space, name, k, start, gamma):
        out = reduce_from(coset_space(name, k), Vector.of(*start, form=HALF_FORM), reduce_C)
        assert out.gamma == Vector.of(*gamma, form=HALF_FORM)
        assert out.case_tag == CaseTag.C


class TestExceptionalReductions:
    def test_e8_unit_vector(self, coset_space):
        out = reduce_from(coset_space("E8", 2), Vector.basis(1, 8, DOUBLE_FORM), reduce_E)
        assert out.case_tag == CaseTag.E78_III

    @pytest.mark.parametrize("start,gamma,tag", [
        ((h, h, h, h), (h, h, h, h), CaseTag.F_III),
        ((1, 0, 0, 0), (1, 0, 0, 0), CaseTag.F_II),
        ((Fraction(5, 2), h, h, h), (h, Fraction(-3, 2), h, h), CaseTag.F_III),
    ])
    def test_type_f(self, coset_space, start, gamma, tag):
        out = reduce_from(coset_space("F4", 2), Vector.of(*start), reduce_F)
        assert (out.gamma, out.case_tag) == (Vector.of(*gamma), tag)

    @pytest.mark.parametrize("start,gamma,tag", [
        ((2 * third, -third, -third), (2 * third, -third, -third), CaseTag.G_II),
        ((1, -1, 0), (1, -1, 0), CaseTag.G_I),
        ((8 * third, -4 * third, -4 * third), (2 * third, 2 * third, -4 * third), CaseTag.G_II),
    ])
    def test_type_g(self, coset_space, start, gamma, tag):
        out = reduce_from(coset_space("G2", 2), Vector.of(*start), reduce_G)
        assert (out.gamma, out.case_tag) == (Vector.of(*gamma), tag)


class TestReductionErrors:
    def test_zero_coset(self, coset_space):
        space = coset_space("E8", 2)
        with pytest.raises(UsageError, match="zero coset"):
            reduce_E(space, space.coset(0))

    def test_wrong_type(self, coset_space):
        space = coset_space("A2", 3)
        with pytest.raises(UsageError, match="does not apply"):
            reduce_C(space, space.coset(1))

    def test_start_outside_coset(self, coset_space):
        space = coset_space("A2", 3)
        coset = space.canonicalize(Vector.of(1, -1, 0))
        with pytest.raises(UsageError, match="does not lie in coset"):
            reduce_AD(space, coset, Vector.of(0, 1, -1))

    def test_foreign_coset(self, coset_space):
        a, b = coset_space("A2", 3), coset_space("A2", 2)
        with pytest.raises(UsageError, match="different coset space"):
            reduce_AD(a, b.coset(1))

    def test_e6_normalise_without_triple(self, mocker):
        mocker.patch("reduction.find_triple", return_value=(CodeWord.of((5, 7)), CodeWord.of((6, 7))))
        w = _Walker([0, 0, 0, 0, 2, -1, -1], 6)
        with pytest.raises(ReductionError, match=r"no H7 triple through \{5, 6\} inside \{1,2,3,4\}"):
            _e6_normalise(w, 3)

    def test_e6_loop_without_triple(self, mocker):
        mocker.patch("reduction.find_triple", return_value=(CodeWord.of((3, 4)), CodeWord.of((1, 3))))
        w = _Walker([1, 1, 0, 0, h, h, 0], 6)
        with pytest.raises(ReductionError, match=r"no H7 triple through \[1, 2\] inside \{5,6,7\}"):
            _e6_loop(w, 2)


class TestCaseHolds:
    def test_classical_conditions(self):
        a2 = RootSystemType("A", 2)
        assert case_holds(a2, 3, Vector.of(1, -1, 0), CaseTag.AD_1)
        assert not case_holds(a2, 3, Vector.of(3, -3, 0), CaseTag.AD_1)
        assert not case_holds(RootSystemType("D", 4), 3, Vector.of(1, -1, 0, 0), CaseTag.AD_1)

    def test_e6_unit_block(self):
        e6 = RootSystemType("E", 6)
        gamma = Vector.of(0, 0, 0, 0, 1, h, h, form=DOUBLE_FORM)
        assert case_holds(e6, 2, gamma, CaseTag.E6_IV)
        assert not case_holds(RootSystemType("E", 7), 2, gamma, CaseTag.E6_IV)

    def test_g2_conditions(self):
        g2 = RootSystemType("G", 2)
        assert case_holds(g2, 2, Vector.of(1, -1, 0), CaseTag.G_I)
        assert not case_holds(g2, 2, Vector.of(1, -1, 0), CaseTag.G_II)


class TestReduceCoset:
    def test_dispatch_records_metrics(self, coset_space, mocker):
        metrics = mocker.Mock()
        space = coset_space("B2", 2)
        out = reduce_coset(space, space.coset(2), metrics=metrics)
        assert out.gamma == Vector.of(0, 2)
        metrics.record_reduction.assert_called_once_with("B2", "B-ii")

    @pytest.mark.parametrize("name,k", [("A2", 3), ("B2", 2), ("C2", 2), ("D4", 2), ("F4", 2), ("G2", 2)])
    def test_every_coset_reduces(self, coset_space, name, k):
        space = coset_space(name, k)
        for coset in list(space)[1:]:
            out = reduce_coset(space, coset)
            assert space.canonicalize(out.gamma) == coset
            assert case_holds(space.rstype, k, out.gamma, out.case_tag)

    @pytest.mark.slow
    @pytest.mark.parametrize("name,k", [("E6", 2), ("E7", 2), ("E6", 3)])
    def test_every_e_coset_reduces(self, coset_space, name, k):
        space = coset_space(name, k)
        for coset in list(space)[1:]:
            out = reduce_coset(space, coset)
            assert case_holds(space.rstype, k, out.gamma, out.case_tag)


class TestReductionProperties:
    @settings(max_examples=50, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
    @given(
        name=st.sampled_from(["A3", "B3", "C3", "G2"]),
        k=st.integers(2, 4),
        raw=st.lists(st.integers(-15, 15), min_size=3, max_size=3),
    )
    def test_reduction_stays_in_coset(self, coset_space, root_system, name, k, raw):
        rs = root_system(name)
        space = coset_space(name, k)
        start = rs.from_coordinates(raw[: rs.rank])
        coset = space.canonicalize(start)
        assume(not coset.is_zero())
        out = reduce_coset(space, coset, start)
        assert space.canonicalize(out.gamma) == coset
        assert case_holds(space.rstype, k, out.gamma, out.case_tag)
