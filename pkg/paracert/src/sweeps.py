"""
Verification sweeps behind the `verify` commands.

Each sweep runs one family of exhaustive checks and returns a
VerificationReport listing every check that failed. Sweeps never raise
on a failed check; they raise only for caller errors (UsageError) and
exhausted caps (CapExceededError).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import sympy
from loguru import logger

from autgrp import (
    CosetPermutation,
    act_on_cosets,
    aut_generators,
    automorphism_group,
    compare_short_aut,
    coset_automorphisms,
    coset_images,
    extend_permutation,
    kernel,
    negation,
    orbit_ids,
    preserves_root_structure,
    reconstruct_from_coset_action,
    sample_elements,
)
from certifier import map_ordered, sweep_space
from codes import OMEGA7, OMEGA8, CodeWord, build_h7, build_h8, find_quadruple, find_triple, hamming_blocks
from config_manager import RunSettings
from exceptions import ConsistencyError, ExtensionError, GroupCapExceededError, ReconstructionError, UsageError
from lengths import equality_certificate, get_oracle, specialized_bounds
from quotient import INCOMPLETE_BANNER, RootCosetRow, build_coset_space, lattice_index, root_coset_intersections
from reduction import case_holds, reduce_coset
from rootsys import RootSystem, RootSystemType, Vector, build_root_system, inner_product, root_stats
from storage import CatalogRow, fraction_text

EXHAUSTIVE_NORM = 8
CANONICAL_LENGTH_RANK = 4


@dataclass
class VerificationReport:
    """
    Outcome of one verification sweep.

    Attributes:
        name: Command name, e.g. 'lengths'
        subject: What was checked, e.g. 'A2 k=3'
        checks_run: Number of individual checks performed
        failures: One message per failed check
        details: Summary values for the report
    """

    name: str
    subject: str
    checks_run: int = 0
    failures: List[str] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, message: str) -> bool:
        self.checks_run += 1
        if not ok:
            self.failures.append(message)
        return ok

    def log(self) -> "VerificationReport":
        if self.passed:
            logger.success(f"verify {self.name} {self.subject}: {self.checks_run} checks passed")
        else:
            logger.error(f"verify {self.name} {self.subject}: {len(self.failures)} of {self.checks_run} checks failed")
            for message in self.failures[:10]:
                logger.error(f"  {message}")
        return self


def _settings(settings: Optional[RunSettings]) -> RunSettings:
    return settings or RunSettings()


def _subject(t: RootSystemType, k: Optional[int] = None) -> str:
    return t.name if k is None else f"{t.name} k={k}"


def _completes(search, pair) -> Tuple[bool, str]:
    try:
        search(CodeWord.of(pair))
    except ConsistencyError as e:
        return False, str(e)
    return True, ""


def verify_hamming() -> VerificationReport:
    """Size, weights and intersections of H8, plus every quadruple and triple completion."""
    report = VerificationReport("hamming", "H8")
    h8, h7 = build_h8(), build_h7()
    report.check(len(h8) == 16, f"|H8| = {len(h8)}, expected 16")
    distribution = h8.weight_distribution()
    report.check(distribution == (1, 0, 0, 0, 14, 0, 0, 0, 1), f"weight distribution {distribution}")
    report.check(h8.is_linear(), "H8 is not closed under symmetric difference")
    report.check(h8.has_even_intersections(), "H8 has an odd pairwise intersection")
    report.check(len(hamming_blocks(7)) == 7, f"|H7(4)| = {len(hamming_blocks(7))}, expected 7")
    report.check(len(h7) == 8, f"|H7| = {len(h7)}, expected 8")

    quadruples = sum(report.check(*_completes(find_quadruple, pair)) for pair in combinations(OMEGA8, 2))
    triples = sum(report.check(*_completes(find_triple, pair)) for pair in combinations(OMEGA7, 2))
    report.details = {
        "words": len(h8),
        "weight_distribution": list(distribution),
        "quadruples": quadruples,
        "triples": triples,
    }
    return report.log()


def expected_root_count(t: RootSystemType) -> int:
    n = t.rank
    closed_forms = {
        "A": n * (n + 1),
        "B": 2 * n * n,
        "C": 2 * n * n,
        "D": 2 * n * (n - 1),
        "F": 48,
        "G": 12,
    }
    if t.family == "E":
        return {6: 72, 7: 126, 8: 240}[n]
    return closed_forms[t.family]


def verify_roots(t: RootSystemType) -> VerificationReport:
    """
    Self checks of an enumerated root system.

    Root count against its closed form, norms in {2, 2/r}, closure under
    every reflection, a validated base and a root span of full rank.
    """
    report = VerificationReport("roots", _subject(t))
    try:
        rs = build_root_system(t)
    except ConsistencyError as e:
        report.check(False, f"construction failed: {e}")
        return report.log()
    stats = root_stats(rs)
    expected = expected_root_count(t)
    report.check(stats.count == expected, f"{stats.count} roots, expected {expected}")
    allowed = {Fraction(2), Fraction(2, rs.lacing)}
    report.check(set(stats.norms) <= allowed, f"norms {sorted(stats.norms)} outside {sorted(allowed)}")
    report.check(rs.is_reflection_closed(), "not closed under reflections")
    report.check(len(rs.simple_roots) == t.rank, f"{len(rs.simple_roots)} simple roots")
    report.check(rs.span_rank() == t.rank, f"roots span a space of dimension {rs.span_rank()}")
    report.details = {
        "roots": stats.count,
        "norms": {str(n): c for n, c in stats.norms.items()},
        "lacing": stats.lacing,
        "highest_root": str(stats.highest_root),
        "ambient_dim": rs.ambient_dim,
        "cartan_matrix": [list(row) for row in rs.cartan_matrix],
    }
    return report.log()


def _expected_meets(rs: RootSystem, k: int, alpha: Vector) -> Optional[Tuple[Vector, ...]]:
    """The set (α + kQ_L) ∩ Δ is known to be, or None where nothing is claimed."""
    if k >= 3:
        return (alpha,)
    if rs.is_simply_laced:
        return (alpha, -alpha)
    if not rs.is_long(alpha):
        return (alpha,)
    return None


def root_coset_report(t: RootSystemType, k: int) -> List[Tuple[RootCosetRow, Optional[bool]]]:
    """
    Each root with its coset's intersection with Δ and whether it matches.

    For k >= 3 the intersection is {α}; for k = 2 it is {α} for short roots
    of a non simply laced type and {α, −α} for a simply laced type. Long
    roots at level 2 of a non simply laced type carry None.
    """
    if k < 2:
        raise UsageError(f"root coset intersections need k >= 2, got {k}")
    space = build_coset_space(t, k)
    rs = space.root_system
    out = []
    for row in root_coset_intersections(space):
        expected = _expected_meets(rs, k, row.root)
        ok = None if expected is None else set(row.meets) == set(expected)
        out.append((row, ok))
    return out


def verify_lattice(t: RootSystemType, k: int) -> VerificationReport:
    """Root-coset intersections, one norm per root coset and the coset count."""
    report = VerificationReport("lattice", _subject(t, k))
    space = build_coset_space(t, k)
    rs = space.root_system
    expected_count = lattice_index(t) * k ** t.rank
    report.check(len(space) == expected_count, f"|Q/kQ_L| = {len(space)}, expected {expected_count}")

    checked = 0
    for row, ok in root_coset_report(t, k):
        if ok is None:
            continue
        checked += 1
        report.check(ok, f"coset of {row.root} meets Δ in {[str(v) for v in row.meets]}")
    for c in space.root_cosets():
        norms = {v.norm() for v in space.roots_in_coset(space.coset(c))}
        report.check(len(norms) == 1, f"coset {c} holds roots of norms {sorted(norms)}")
    report.check(
        sum(len(space.roots_in_coset(space.coset(c))) for c in space.root_cosets()) == len(rs.roots),
        "root cosets do not partition Δ",
    )
    report.details = {
        "cosets": len(space),
        "root_cosets": len(space.root_cosets()),
        "roots_checked": checked,
        "incomplete": space.incomplete,
    }
    return report.log()


def small_norm_vectors(rs: RootSystem, max_norm: int = EXHAUSTIVE_NORM) -> List[Vector]:
    """
    All nonzero β ∈ Q with |β|² <= max_norm.

    Coordinates over the base are bounded by sqrt(max_norm · (G⁻¹)_jj)
    for the Gram matrix G of the simple roots.
    """
    gram = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in _simple_gram(rs)])
    inverse = gram.inv()
    bounds = [int(sympy.floor(sympy.sqrt(max_norm * inverse[j, j]))) for j in range(rs.rank)]
    axes = [np.arange(-b, b + 1, dtype=np.int64) for b in bounds]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, rs.rank)

    scaled_simple = np.array([rs.to_scaled(b) for b in rs.simple_roots], dtype=np.int64)
    points = grid @ scaled_simple
    raw = np.einsum("ij,ij->i", points, points)
    limit = Fraction(max_norm) * rs.scale_denominator ** 2 / rs.form.scale
    keep = (raw <= int(limit)) & (raw > 0)
    return [rs.from_scaled(row) for row in points[keep]]


def _simple_gram(rs: RootSystem) -> List[List[Fraction]]:
    return [[inner_product(a, b) for b in rs.simple_roots] for a in rs.simple_roots]


def _check_bounds(rs: RootSystem, beta: Vector, cap: int, ball_radius: int) -> Tuple[int, List[str], int]:
    """Compare every bound with ℓ(β); returns (ℓ, failures, equality certificates issued)."""
    result = get_oracle(rs, ball_radius).length(beta, cap)
    failures = []
    certificates = 0
    for rep in specialized_bounds(rs, beta):
        if rep.bound > result.value:
            failures.append(f"{rep.source.value} bound {rep.bound} on {rep.subset} exceeds ℓ({beta}) = {result.value}")
            continue
        try:
            if equality_certificate(rs, beta, result, rep) is not None:
                certificates += 1
        except ConsistencyError as e:
            failures.append(str(e))
    return result.value, failures, certificates


def verify_lengths(t: RootSystemType, k: int, settings: Optional[RunSettings] = None, metrics=None) -> VerificationReport:
    """
    Lower bounds against exact lengths.

    Checked on the reduced representative of every nonzero coset, on the
    canonical representatives as well for rank <= 4, and on every β with
    |β|² <= 8 for rank <= 4.
    """
    settings = _settings(settings)
    report = VerificationReport("lengths", _subject(t, k))
    space = build_coset_space(t, k)
    rs = space.root_system
    cap = settings.length_cap(k, t.rank)
    get_oracle(rs, settings.ball_radius)

    vectors: List[Vector] = []
    for a in space:
        if a.is_zero():
            continue
        vectors.append(reduce_coset(space, a, metrics=metrics).gamma)
        if t.rank <= CANONICAL_LENGTH_RANK:
            vectors.append(a.rep)
    if t.rank <= CANONICAL_LENGTH_RANK:
        vectors.extend(small_norm_vectors(rs))
    vectors = list(dict.fromkeys(vectors))

    def run(beta: Vector):
        value, failures, certificates = _check_bounds(rs, beta, cap, settings.ball_radius)
        if metrics is not None:
            metrics.record_length(rs.name, value)
        return value, failures, certificates

    results = map_ordered(run, vectors, settings.threads, settings.progress, f"lengths {report.subject}")
    equalities = 0
    for beta, (_, failures, certificates) in zip(vectors, results):
        report.check(not failures, "; ".join(failures))
        equalities += certificates
    report.details = {
        "vectors": len(vectors),
        "equality_certificates": equalities,
        "max_length": max((value for value, _, _ in results), default=0),
        "cap": cap,
    }
    return report.log()


def verify_reduce(t: RootSystemType, k: int, settings: Optional[RunSettings] = None, metrics=None) -> VerificationReport:
    """Every nonzero coset reduces to a representative in its coset satisfying its case tag."""
    settings = _settings(settings)
    report = VerificationReport("reduce", _subject(t, k))
    space = build_coset_space(t, k)
    nonzero = [a for a in space if not a.is_zero()]

    def run(a):
        try:
            reduced = reduce_coset(space, a, metrics=metrics)
        except ConsistencyError as e:
            return None, str(e)
        if not case_holds(t, k, reduced.gamma, reduced.case_tag):
            return reduced, f"coset {a.id}: {reduced.gamma} fails case {reduced.case_tag.value}"
        if space.canonicalize(reduced.gamma) != a:
            return reduced, f"coset {a.id}: {reduced.gamma} left its coset"
        return reduced, None

    results = map_ordered(run, nonzero, settings.threads, settings.progress, f"reduce {report.subject}")
    cases: Dict[str, int] = {}
    for reduced, failure in results:
        report.check(failure is None, failure or "")
        if reduced is not None:
            cases[reduced.case_tag.value] = cases.get(reduced.case_tag.value, 0) + 1
    report.details = {"cosets": len(nonzero), "cases": dict(sorted(cases.items()))}
    return report.log()


def _enumerated_group(rs: RootSystem, settings: RunSettings):
    group = automorphism_group(rs, settings.group_cap)
    if not group.enumerated:
        raise GroupCapExceededError(f"Aut({rs.name}) has more than {settings.group_cap} elements")
    return group


def verify_faithful(t: RootSystemType, k: int, settings: Optional[RunSettings] = None) -> VerificationReport:
    """
    The kernel of Aut(Δ) on Q/kQ_L.

    Trivial for k >= 3 and for k = 2 with a non simply laced type; {±1} for
    k = 2 with a simply laced type.
    """
    settings = _settings(settings)
    if k < 2:
        raise UsageError(f"kernel facts need k >= 2, got {k}")
    report = VerificationReport("faithful", _subject(t, k))
    space = build_coset_space(t, k)
    rs = space.root_system
    group = _enumerated_group(rs, settings)
    found = {g.perm for g in kernel(space, group)}
    identity = bytes(range(len(rs.roots)))
    expected = {identity, negation(rs).perm} if (k == 2 and rs.is_simply_laced) else {identity}
    report.check(found == expected, f"kernel has {len(found)} elements, expected {len(expected)}")
    report.details = {"group_order": group.order, "kernel_order": len(found)}
    return report.log()


def verify_symdelta(
    t: RootSystemType, k: int, settings: Optional[RunSettings] = None, metrics=None
) -> VerificationReport:
    """
    Automorphisms of Δ against their coset action.

    On seeded random elements: restriction to Δ extends back to the same
    automorphism, which preserves the form, and the induced coset
    permutation preserves every weight class and root-coset set. Over the
    whole group when it is enumerable (samples otherwise): the coset
    action reconstructs the element, for k >= 3 or k = 2 with a non
    simply laced type. Also compares Aut(Δ) with the automorphisms of the
    short roots.
    """
    settings = _settings(settings)
    if k < 2:
        raise UsageError(f"symmetry checks need k >= 2, got {k}")
    report = VerificationReport("symdelta", _subject(t, k))
    space = build_coset_space(t, k)
    rs = space.root_system
    group = automorphism_group(rs, settings.group_cap)
    samples = sample_elements(group, settings.symdelta_samples, settings.seed)

    for g in samples:
        try:
            extend_permutation(rs, list(g.perm))
            extended, problem = True, ""
        except ExtensionError as e:
            extended, problem = False, f"group element fails the inner-product check: {e}"
        except ConsistencyError as e:
            extended, problem = False, f"restriction of a group element does not extend back: {e}"
        report.check(extended, problem)
        report.check(g.is_form_preserving(), "sampled element does not preserve the form")
        report.check(preserves_root_structure(space, act_on_cosets(g, space)),
                     "induced coset permutation moves a weight class or root-coset set")

    reconstructible = k >= 3 or not rs.is_simply_laced
    pool = list(group) if group.enumerated else samples
    if reconstructible:
        def run(g):
            pi = CosetPermutation(tuple(int(i) for i in coset_images(g, space)))
            try:
                return reconstruct_from_coset_action(space, pi, metrics) == g, None
            except ReconstructionError as e:
                return False, str(e)

        results = map_ordered(run, pool, settings.threads, settings.progress, f"symdelta {report.subject}")
        for ok, error in results:
            report.check(ok, error or "reconstruction returned a different automorphism")

    details: Dict[str, Any] = {
        "samples": len(samples),
        "group_order": group.order,
        "round_trips": len(pool) if reconstructible else 0,
        "seed": settings.seed,
    }
    if not rs.is_simply_laced:
        comparison = compare_short_aut(rs, settings.group_cap)
        expected_index = 3 if t == RootSystemType("C", 4) else 1
        report.check(comparison.index == expected_index,
                     f"[Aut(Δ_s) : Aut(Δ)] = {comparison.index}, expected {expected_index}")
        details.update(short_type=comparison.short_type, full_order=comparison.full_order,
                       short_order=comparison.short_order, index=comparison.index)
    if space.rank == 1 and reconstructible:
        rejected = []
        for pi in coset_automorphisms(space):
            try:
                reconstruct_from_coset_action(space, pi, metrics)
            except ReconstructionError as e:
                rejected.append(e.stage)
        details["coset_automorphisms"] = len(coset_automorphisms(space))
        details["rejected"] = rejected
    report.details = details
    return report.log()


@dataclass
class Catalog:
    """
    The simple currents of one (type, k) with certificates and orbits.

    Attributes:
        rows: One CatalogRow per coset in id order
        tallies: Certificate counts
        orbits: Number of Aut(Δ)-orbits on the cosets
        weight_classes: Number of cosets per weight class
        banners: Warnings to print above the table
    """

    rstype: RootSystemType
    k: int
    t: int
    rows: List[CatalogRow]
    tallies: Dict[str, int]
    orbits: int
    weight_classes: Dict[str, int]
    banners: List[str] = field(default_factory=list)
    passed: bool = True


def build_catalog(
    t: RootSystemType, k: int, tval: int = 1, settings: Optional[RunSettings] = None, metrics=None
) -> Catalog:
    """
    Certify every coset and label it with its Aut(Δ)-orbit.

    Orbits come from the coset permutations of the generators, so they are
    available even when Aut(Δ) is too large to enumerate.
    """
    settings = _settings(settings)
    if k < 2:
        raise UsageError(f"catalogs need k >= 2, got {k}")
    space = build_coset_space(t, k)
    banners = [INCOMPLETE_BANNER] if space.incomplete else []
    if space.incomplete:
        logger.warning(INCOMPLETE_BANNER)
    sweep = sweep_space(space, tval, settings, metrics)
    orbits = orbit_ids(space, aut_generators(space.root_system))
    classes = space.weight_classes

    rows = []
    for a, certificate, orbit in zip(space, sweep.certificates, orbits):
        rho = getattr(certificate, "rho", None)
        rows.append(CatalogRow(
            coset_id=a.id,
            rep=tuple(str(c) for c in a.rep.coords),
            weight_class=fraction_text(classes[a.id]),
            tag=certificate.tag.value,
            rho=fraction_text(rho),
            orbit_id=orbit,
        ))
    distribution: Dict[str, int] = {}
    for c in sorted(classes):
        distribution[str(c)] = distribution.get(str(c), 0) + 1
    logger.info(f"{t.name} k={k}: {len(space)} simple currents in {max(orbits) + 1} orbits")
    return Catalog(t, k, tval, rows, dict(sweep.tallies), max(orbits) + 1, distribution, banners, sweep.passed)


__all__ = [
    "Catalog",
    "VerificationReport",
    "build_catalog",
    "root_coset_report",
    "small_norm_vectors",
    "verify_faithful",
    "verify_hamming",
    "verify_lattice",
    "verify_lengths",
    "verify_reduce",
    "verify_roots",
    "verify_symdelta",
]
