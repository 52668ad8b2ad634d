from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from exceptions import ConsistencyError, LengthCapExceededError, UsageError
from lengths import (
    BoundReport,
    BoundSource,
    LengthOracle,
    LengthResult,
    bound_generic,
    bound_specialized,
    default_cap,
    equality_certificate,
    get_oracle,
    length_exact,
    specialized_bounds,
    subset_constant,
)
from rootsys import DOUBLE_FORM, HALF_FORM, Vector


def e8_vector(*coords):
    return Vector.of(*coords, form=DOUBLE_FORM)


class TestLengthOracle:
    def test_sum_of_two_roots(self, root_system):
        rs = root_system("A2")
        res = length_exact(rs, Vector.of(1, 1, -2), cap=6)
        assert res.value == 2
        assert set(res.witness) == {Vector.of(1, 0, -1), Vector.of(0, 1, -1)}

    def test_roots_have_length_one(self, root_system):
        rs = root_system("G2")
        for alpha in rs.roots:
            assert length_exact(rs, alpha, cap=4).value == 1

    def test_zero_vector(self, root_system):
        assert length_exact(root_system("A2"), Vector.zero(3), cap=1) == LengthResult(0, ())

    def test_beyond_the_ball(self, root_system):
        """Queries longer than the ball radius fall back on the outward search."""
        rs = root_system("A2")
        res = length_exact(rs, Vector.of(5, -5, 0), cap=10)
        assert res.value == 5
        assert sum(res.witness, Vector.zero(3)) == Vector.of(5, -5, 0)

    def test_b2_doubled_short_root(self, root_system):
        """Any shortest decomposition is accepted; it must sum to the query and use roots only."""
        rs = root_system("B2")
        res = length_exact(rs, Vector.of(0, 2), cap=8)
        assert res.value == 2
        assert len(res.witness) == 2
        assert sum(res.witness, Vector.zero(2)) == Vector.of(0, 2)
        assert all(v in rs.index for v in res.witness)

    def test_cap_exceeded(self, root_system):
        with pytest.raises(LengthCapExceededError, match="at most 1 roots"):
            length_exact(root_system("A2"), Vector.of(1, 1, -2), cap=1)

    def test_invalid_queries(self, root_system):
        rs = root_system("A2")
        with pytest.raises(UsageError, match="cap"):
            length_exact(rs, Vector.of(1, -1, 0), cap=0)
        with pytest.raises(UsageError):
            length_exact(rs, Vector.of(1, 0, 0), cap=4)
        with pytest.raises(UsageError, match="ball radius"):
            LengthOracle(rs, ball_radius=0)

    def test_oracles_are_shared(self, root_system):
        rs = root_system("A2")
        assert get_oracle(rs, 2) is get_oracle(rs, 2)
        assert get_oracle(rs, 1).ball_size < get_oracle(rs, 2).ball_size

    def test_e8_with_small_ball(self, root_system):
        rs = root_system("E8")
        assert length_exact(rs, e8_vector(1, 1, 1, 1, 0, 0, 0, 0), cap=4, ball_radius=1).value == 2
        half = Fraction(1, 2)
        assert length_exact(rs, e8_vector(half, half, half, half, 0, 0, 0, 0), cap=4, ball_radius=1).value == 1

    def test_default_cap(self):
        assert default_cap(3, 2) == 24
        assert default_cap(2, 8, factor=2) == 32


class TestBounds:
    def test_subset_constant(self, root_system):
        rs = root_system("B2")
        assert subset_constant(rs, frozenset({1, 2})) == 2
        assert subset_constant(rs, frozenset({1})) == 1

    def test_generic_bound(self, root_system):
        rs = root_system("A2")
        beta = Vector.of(1, 1, -2)
        report = bound_generic(rs, beta, {1, 2, 3})
        assert report == BoundReport((1, 2, 3), Fraction(2), Fraction(2), BoundSource.GENERIC)
        assert bound_generic(rs, beta, (1,)).bound == 1

    def test_generic_bound_rejects_bad_subsets(self, root_system):
        rs = root_system("A2")
        with pytest.raises(UsageError, match="nonempty"):
            bound_generic(rs, Vector.of(1, -1, 0), ())
        with pytest.raises(UsageError, match="outside"):
            bound_generic(rs, Vector.of(1, -1, 0), (4,))

    def test_classical_coordinate_bound(self, root_system):
        report = bound_specialized(root_system("D4"), Vector.of(3, 0, 0, 0))
        assert report.bound == 3
        assert report.source == BoundSource.CLASSICAL_COORD

    def test_type_c_skips_coordinate_bound(self, root_system):
        sources = {r.source for r in specialized_bounds(root_system("C3"), Vector.of(2, 0, 0, form=HALF_FORM))}
        assert BoundSource.CLASSICAL_COORD not in sources
        assert BoundSource.CLASSICAL_HALF in sources

    def test_e6_unit_block(self, root_system):
        report = bound_specialized(root_system("E6"), Vector.of(0, 0, 0, 0, 1, 0, -1, form=DOUBLE_FORM))
        assert report.bound == 2

    def test_e8_triple_support(self, root_system):
        report = bound_specialized(root_system("E8"), e8_vector(1, 1, 1, 0, 0, 0, 0, 0))
        assert report.source == BoundSource.E_TYPE
        assert report.m_s == Fraction(3, 2)
        assert report.bound == 2

    def test_e8_block_support(self, root_system):
        report = bound_specialized(root_system("E8"), e8_vector(1, 1, 1, 1, 0, 0, 0, 0))
        assert report.m_s == 2
        assert report.bound == 2

    def test_zero_vector_bound(self, root_system):
        assert bound_specialized(root_system("A2"), Vector.zero(3)).bound == 0


class TestEqualityCertificate:
    def test_e8_block_equality(self, root_system):
        rs = root_system("E8")
        beta = e8_vector(1, 1, 1, 1, 0, 0, 0, 0)
        res = length_exact(rs, beta, cap=4, ball_radius=1)
        cert = equality_certificate(rs, beta, res, bound_specialized(rs, beta))
        assert cert is not None
        assert cert.witness_sums == (2, 2)
        assert len(cert.checks) == 3

    def test_e8_root_equality(self, root_system):
        rs = root_system("E8")
        half = Fraction(1, 2)
        beta = e8_vector(half, half, half, half, 0, 0, 0, 0)
        res = length_exact(rs, beta, cap=4, ball_radius=1)
        rep = bound_specialized(rs, beta)
        assert rep.source == BoundSource.E_TYPE and rep.bound == 1
        assert len(equality_certificate(rs, beta, res, rep).checks) == 3

    def test_classical_equality(self, root_system):
        rs = root_system("B2")
        beta = Vector.of(0, 2)
        cert = equality_certificate(rs, beta, length_exact(rs, beta, cap=8), bound_specialized(rs, beta))
        assert cert.subset == (2,)
        assert cert.checks == ("witness roots attain M_S", "witness signs agree on S")

    def test_strict_inequality(self, root_system):
        rs = root_system("A2")
        beta = Vector.of(1, 1, -2)
        res = length_exact(rs, beta, cap=6)
        assert equality_certificate(rs, beta, res, bound_generic(rs, beta, (1,))) is None

    def test_inconsistent_witness(self, root_system):
        rs = root_system("A2")
        beta = Vector.of(1, 0, -1)
        fake = LengthResult(2, (Vector.of(1, -1, 0), Vector.of(0, 1, -1)))
        rep = BoundReport((1, 2, 3), Fraction(2), Fraction(2), BoundSource.GENERIC)
        with pytest.raises(ConsistencyError, match="disagree in sign"):
            equality_certificate(rs, beta, fake, rep)


small_a2 = st.tuples(st.integers(-3, 3), st.integers(-3, 3))


class TestLengthProperties:
    @settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
    @given(coords=small_a2, root_index=st.integers(0, 5))
    def test_triangle_inequality(self, root_system, coords, root_index):
        rs = root_system("A2")
        beta = rs.from_coordinates(coords)
        alpha = rs.roots[root_index]
        here = length_exact(rs, beta, cap=16).value
        there = length_exact(rs, beta + alpha, cap=16).value
        assert abs(here - there) <= 1

    @settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
    @given(coords=small_a2)
    def test_bounds_never_exceed_length(self, root_system, coords):
        rs = root_system("A2")
        beta = rs.from_coordinates(coords)
        res = length_exact(rs, beta, cap=16)
        assert bound_specialized(rs, beta).bound <= res.value
        assert length_exact(rs, -beta, cap=16).value == res.value
