from fractions import Fraction

import pytest

from config_manager import RunSettings
from exceptions import ConsistencyError, ExtensionError, GroupCapExceededError, LengthCapExceededError, UsageError
from rootsys import RootSystemType
from sweeps import (
    VerificationReport,
    build_catalog,
    root_coset_report,
    small_norm_vectors,
    verify_faithful,
    verify_hamming,
    verify_lattice,
    verify_lengths,
    verify_reduce,
    verify_roots,
    verify_symdelta,
)

A2 = RootSystemType("A", 2)
B2 = RootSystemType("B", 2)
G2 = RootSystemType("G", 2)


class TestVerificationReport:
    def test_check_collects_failures(self):
        report = VerificationReport("demo", "A2")
        assert report.check(True, "fine")
        assert not report.check(False, "broken")
        assert report.checks_run == 2
        assert report.failures == ["broken"]
        assert not report.passed

    def test_log_levels(self, caplog):
        VerificationReport("demo", "A2", checks_run=3).log()
        assert "3 checks passed" in caplog.text
        VerificationReport("demo", "B2", checks_run=1, failures=["bad coset"]).log()
        assert "bad coset" in caplog.text


class TestCodeAndRootSweeps:
    def test_hamming(self):
        report = verify_hamming()
        assert report.passed
        assert report.details["quadruples"] == 28
        assert report.details["triples"] == 21

    @pytest.mark.parametrize("name", ["A2", "B3", "C3", "D4", "F4", "G2", "E6"])
    def test_roots(self, name):
        report = verify_roots(RootSystemType.parse(name))
        assert report.passed, report.failures

    def test_root_details(self):
        details = verify_roots(G2).details
        assert details["roots"] == 12
        assert details["norms"] == {"2/3": 6, "2": 6}


class TestLatticeSweeps:
    def test_simply_laced_level_two(self):
        rows = root_coset_report(A2, 2)
        assert len(rows) == 6
        assert all(ok for _, ok in rows)

    def test_long_roots_at_level_two_are_unclaimed(self):
        rows = root_coset_report(B2, 2)
        long_flags = {ok for row, ok in rows if row.root.norm() == 2}
        short_flags = {ok for row, ok in rows if row.root.norm() == 1}
        assert long_flags == {None}
        assert short_flags == {True}

    def test_level_one_rejected(self):
        with pytest.raises(UsageError):
            root_coset_report(A2, 1)

    @pytest.mark.parametrize("t,k,cosets", [(A2, 3, 9), (B2, 2, 8), (G2, 2, 12), (G2, 3, 27)])
    def test_lattice(self, t, k, cosets):
        report = verify_lattice(t, k)
        assert report.passed, report.failures
        assert report.details["cosets"] == cosets

    def test_small_norm_vectors(self, root_system):
        assert set(small_norm_vectors(root_system("A2"), 2)) == set(root_system("A2").roots)
        assert len(small_norm_vectors(root_system("A1"))) == 4


class TestLengthAndReductionSweeps:
    @pytest.mark.parametrize("t,k", [(A2, 3), (B2, 2), (G2, 2)])
    def test_lengths(self, t, k):
        report = verify_lengths(t, k)
        assert report.passed, report.failures
        assert report.details["vectors"] > 0

    def test_lengths_cap(self):
        with pytest.raises(LengthCapExceededError):
            verify_lengths(A2, 3, RunSettings(bfs_cap=1))

    def test_lengths_record_metrics(self, mocker):
        metrics = mocker.Mock()
        verify_lengths(B2, 2, metrics=metrics)
        assert metrics.record_length.call_count > 0

    @pytest.mark.parametrize("t,k", [(A2, 3), (B2, 2), (RootSystemType("C", 3), 2), (G2, 3)])
    def test_reduce(self, t, k):
        report = verify_reduce(t, k)
        assert report.passed, report.failures

    def test_reduce_case_counts(self):
        details = verify_reduce(B2, 2).details
        assert details["cosets"] == 7
        assert sum(details["cases"].values()) == 7


class TestSymmetrySweeps:
    @pytest.mark.parametrize("t,k,order", [(A2, 2, 2), (A2, 3, 1), (B2, 2, 1)])
    def test_faithful(self, t, k, order):
        report = verify_faithful(t, k)
        assert report.passed
        assert report.details["kernel_order"] == order

    def test_faithful_group_cap(self):
        with pytest.raises(GroupCapExceededError):
            verify_faithful(RootSystemType("A", 4), 3, RunSettings(group_cap=10))

    def test_symdelta_b2(self):
        report = verify_symdelta(B2, 2, RunSettings(symdelta_samples=10))
        assert report.passed, report.failures
        assert report.details["index"] == 1
        assert report.details["round_trips"] == 8

    def test_symdelta_records_extension_failures(self, mocker):
        """A sampled element that does not extend back is a failed check, not an escaped error."""
        mocker.patch("sweeps.extend_permutation", side_effect=ConsistencyError("linear extension differs"))
        report = verify_symdelta(B2, 2, RunSettings(symdelta_samples=3))
        assert not report.passed
        assert len(report.failures) == 3
        assert all("does not extend back" in f for f in report.failures)

        mocker.patch("sweeps.extend_permutation", side_effect=ExtensionError("inner product changes", witness=(0, 1)))
        report = verify_symdelta(B2, 2, RunSettings(symdelta_samples=2))
        assert [f.startswith("group element fails the inner-product check") for f in report.failures] == [True, True]

    def test_symdelta_is_seeded(self):
        first = verify_symdelta(A2, 3, RunSettings(symdelta_samples=5, seed=3))
        again = verify_symdelta(A2, 3, RunSettings(symdelta_samples=5, seed=3))
        assert first.details == again.details
        assert first.checks_run == again.checks_run

    def test_symdelta_rank_one(self):
        report = verify_symdelta(RootSystemType("A", 1), 4, RunSettings(symdelta_samples=4))
        assert report.passed
        assert report.details["coset_automorphisms"] == 2
        assert report.details["rejected"] == []

    def test_symdelta_c4_index(self):
        report = verify_symdelta(RootSystemType("C", 4), 2, RunSettings(symdelta_samples=20))
        assert report.details["index"] == 3


class TestCatalog:
    def test_a2_level_three(self):
        catalog = build_catalog(A2, 3)
        assert catalog.passed
        assert len(catalog.rows) == 9
        assert catalog.tallies["root_found"] == 6
        assert catalog.orbits == 3
        assert catalog.weight_classes == {"0": 3, "2/3": 6}
        assert catalog.banners == []

    def test_row_contents(self):
        rows = build_catalog(A2, 3).rows
        assert rows[0].tag == "trivial" and rows[0].rho == "0" and rows[0].orbit_id == 0
        assert rows[1].rho == "2/3"
        assert rows[5].tag == "excluded_modz" and rows[5].rho is None
        assert rows[5].weight_class == "0"

    def test_short_root_catalog(self):
        catalog = build_catalog(B2, 2, tval=2)
        found = [row.coset_id for row in catalog.rows if row.tag == "root_found"]
        assert found == [1, 3, 5, 7]
        assert {row.rho for row in catalog.rows if row.tag == "root_found"} == {str(Fraction(3, 4))}

    def test_level_one_rejected(self):
        with pytest.raises(UsageError):
            build_catalog(A2, 1)

    @pytest.mark.slow
    def test_e8_level_two_banner(self):
        catalog = build_catalog(RootSystemType("E", 8), 2)
        assert catalog.banners == ["simple-current list incomplete for (E8,2)"]
