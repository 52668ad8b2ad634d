"""
Conformal-weight certificates for simple-current cosets.

For a coset β + kQ_L and t in {1, r} the question is whether its weight
equals 1 − 1/(tk). Each coset receives one certificate:

    Trivial         the zero coset, weight 0
    RootFound       the coset contains a root γ of norm 2/t; weight 1 − |γ|²/2k
    ExcludedModZ    the weight class −|β|²/2k mod 1 differs from the target
    ExcludedBound   a representative γ has ℓ(γ) − |γ|²/2k > target; the
                    reduced one first, then its shifts by k times a long root
    Failure         none of the above; never expected

`verify_thm_key` certifies every coset for every applicable t and checks
that the RootFound cosets are exactly the cosets meeting Δ_t.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import ceil
from typing import ClassVar, Dict, List, Optional, Tuple, Union

from loguru import logger
from tqdm import tqdm

from config_manager import RunSettings
from exceptions import ConsistencyError, LengthCapExceededError, UsageError
from lengths import get_oracle
from quotient import INCOMPLETE_BANNER, Coset, CosetSpace, build_coset_space
from reduction import reduce_coset
from rootsys import RootSystemType, Vector


class CertificateTag(str, Enum):
    TRIVIAL = "trivial"
    ROOT_FOUND = "root_found"
    EXCLUDED_MODZ = "excluded_modz"
    EXCLUDED_BOUND = "excluded_bound"
    FAILURE = "failure"


@dataclass(frozen=True)
class Trivial:
    coset_id: int
    rho: Fraction = Fraction(0)
    tag: ClassVar[CertificateTag] = CertificateTag.TRIVIAL


@dataclass(frozen=True)
class RootFound:
    coset_id: int
    gamma: Vector
    norm: Fraction
    rho: Fraction
    tag: ClassVar[CertificateTag] = CertificateTag.ROOT_FOUND


@dataclass(frozen=True)
class ExcludedModZ:
    coset_id: int
    t: int
    target: Fraction
    weight_class: Fraction
    tag: ClassVar[CertificateTag] = CertificateTag.EXCLUDED_MODZ


@dataclass(frozen=True)
class ExcludedBound:
    coset_id: int
    gamma_reduced: Vector
    case_tag: str
    length: int
    lower: Fraction
    target: Fraction
    witness: Tuple[Vector, ...] = field(repr=False, default=())
    # set when length and lower belong to gamma_reduced + k·λ, λ a long root
    representative: Optional[Vector] = None
    tag: ClassVar[CertificateTag] = CertificateTag.EXCLUDED_BOUND


@dataclass(frozen=True)
class Failure:
    coset_id: int
    diagnostics: str
    tag: ClassVar[CertificateTag] = CertificateTag.FAILURE


WeightCertificate = Union[Trivial, RootFound, ExcludedModZ, ExcludedBound, Failure]


def empty_tallies() -> Dict[str, int]:
    return {tag.value: 0 for tag in CertificateTag}


@dataclass
class SweepReport:
    """
    Certificates for every coset of one (type, k, t).

    Attributes:
        rstype: Root system type
        k: Level
        t: 1 for long roots, the lacing number for short roots
        certificates: One certificate per coset, in coset-id order
        tallies: Count per certificate tag
        expected_root_cosets: Ids of the cosets meeting Δ_t
        iff_holds: RootFound ids equal `expected_root_cosets`
        incomplete: True for (E8, 2)
    """

    rstype: RootSystemType
    k: int
    t: int
    certificates: List[WeightCertificate]
    tallies: Dict[str, int]
    expected_root_cosets: Tuple[int, ...]
    iff_holds: bool
    incomplete: bool = False

    @property
    def passed(self) -> bool:
        return self.tallies[CertificateTag.FAILURE.value] == 0 and self.iff_holds

    @property
    def root_found_ids(self) -> Tuple[int, ...]:
        return tuple(c.coset_id for c in self.certificates if c.tag == CertificateTag.ROOT_FOUND)


def target_weight(k: int, t: int) -> Fraction:
    """1 − 1/(tk)."""
    return 1 - Fraction(1, t * k)


def _check_t(space: CosetSpace, t: int) -> None:
    if space.k < 2:
        raise UsageError(f"certification needs k >= 2, got {space.k}")
    lacing = space.root_system.lacing
    if t not in {1, lacing}:
        raise UsageError(f"t must be 1 or the lacing number {lacing} for {space.rstype.name}, got {t}")


def t_values(rs_lacing: int) -> Tuple[int, ...]:
    return (1,) if rs_lacing == 1 else (1, rs_lacing)


def exact_weight_if_root(a: Coset) -> Optional[Fraction]:
    """
    1 − |γ|²/2k when the coset contains a root γ.

    Raises:
        ConsistencyError: If the coset contains roots of two norms
    """
    roots = a.space.roots_in_coset(a)
    if not roots:
        return None
    norms = {v.norm() for v in roots}
    if len(norms) > 1:
        raise ConsistencyError(f"coset {a.id} of {a.space!r} contains roots of norms {sorted(norms)}")
    return 1 - norms.pop() / (2 * a.space.k)


def _settings(settings: Optional[RunSettings]) -> RunSettings:
    return settings if settings is not None else RunSettings()


def lower_bound(a: Coset, settings: Optional[RunSettings] = None, metrics=None):
    """
    Lower bound ℓ(γ) − |γ|²/2k on the weight, γ the reduced representative.

    Returns:
        Tuple of (ReducedRep, LengthResult, lower bound)

    Raises:
        LengthCapExceededError: If the length search runs past its cap
    """
    settings = _settings(settings)
    space = a.space
    rs = space.root_system
    reduced = reduce_coset(space, a, metrics=metrics)
    oracle = get_oracle(rs, settings.ball_radius)
    cap = settings.length_cap(space.k, rs.rank)
    try:
        result = oracle.length(reduced.gamma, cap)
    except LengthCapExceededError:
        if metrics is not None:
            metrics.record_length(space.rstype.name, None)
        raise
    if metrics is not None:
        metrics.record_length(space.rstype.name, result.value)
    return reduced, result, result.value - reduced.gamma.norm() / (2 * space.k)


def shifted_bound(a: Coset, gamma: Vector, target: Fraction, settings: Optional[RunSettings] = None, metrics=None):
    """
    First representative γ + kλ, λ a long root, whose bound clears `target`.

    Every vector of the coset bounds the weight from below, so when the
    reduced representative sits exactly on the target a shorter neighbour
    can still separate it. Candidates are tried in order of norm; those
    whose length search hits the cap are skipped.

    Returns:
        Optional tuple of (representative, LengthResult, lower bound)
    """
    settings = _settings(settings)
    space = a.space
    rs = space.root_system
    oracle = get_oracle(rs, settings.ball_radius)
    cap = settings.length_cap(space.k, rs.rank)
    candidates = sorted({gamma + space.k * lam for lam in rs.long_roots}, key=lambda v: (v.norm(), v.coords))
    for candidate in candidates:
        try:
            result = oracle.length(candidate, cap)
        except LengthCapExceededError:
            if metrics is not None:
                metrics.record_length(space.rstype.name, None)
            continue
        if metrics is not None:
            metrics.record_length(space.rstype.name, result.value)
        lower = result.value - candidate.norm() / (2 * space.k)
        if lower > target:
            return candidate, result, lower
    return None


def certify_coset(
    a: Coset,
    t: int,
    skip_modz: bool = False,
    settings: Optional[RunSettings] = None,
    metrics=None,
) -> WeightCertificate:
    """
    Decide whether a coset has weight 1 − 1/(tk).

    Args:
        a (Coset): The coset
        t (int): 1 or the lacing number
        skip_modz (bool): Go straight to the length bound after the root test
        settings (Optional[RunSettings]): Length cap and ball radius
        metrics (Optional[MetricsCollector]): Certificate and length counters

    Returns:
        WeightCertificate: Trivial, RootFound, ExcludedModZ, ExcludedBound or Failure

    Raises:
        UsageError: If k < 2 or t is not 1 or the lacing number
        LengthCapExceededError: If the exact length search hits its cap
    """
    space = a.space
    _check_t(space, t)
    k = space.k
    target = target_weight(k, t)
    certificate = _decide(a, t, target, skip_modz, settings, metrics)
    if certificate.tag == CertificateTag.FAILURE:
        logger.error(f"{space.rstype.name} k={k} t={t}: no certificate for coset {a.id}: {certificate.diagnostics}")
    if metrics is not None:
        metrics.record_certificate(space.rstype.name, k, t, certificate.tag.value)
    return certificate


def _decide(a: Coset, t: int, target: Fraction, skip_modz: bool, settings, metrics) -> WeightCertificate:
    space = a.space
    k = space.k
    if a.is_zero():
        return Trivial(a.id)

    norm = Fraction(2, t)
    roots = space.roots_in_coset(a, norm)
    if roots:
        gamma = roots[0]
        return RootFound(a.id, gamma, norm, 1 - norm / (2 * k))

    if not skip_modz:
        cls = space.weight_class(a)
        if cls != target % 1:
            return ExcludedModZ(a.id, t, target, cls)

    reduced, result, lower = lower_bound(a, settings, metrics)
    if lower > target:
        return ExcludedBound(a.id, reduced.gamma, reduced.case_tag.value, result.value, lower, target, result.witness)
    shifted = shifted_bound(a, reduced.gamma, target, settings, metrics)
    if shifted is not None:
        gamma, result, lower = shifted
        logger.debug(f"coset {a.id}: bound at reduced {reduced.gamma} is tight, cleared by {gamma}")
        return ExcludedBound(a.id, reduced.gamma, reduced.case_tag.value, result.value, lower, target,
                             result.witness, representative=gamma)
    return Failure(
        a.id,
        f"reduced representative {reduced.gamma} ({reduced.case_tag.value}) has length {result.value} "
        f"and lower bound {lower} <= target {target}, no shift by kQ_L clears it",
    )


def map_ordered(fn, items: list, threads: int, progress: bool, label: str) -> list:
    """Apply fn over items on a thread pool, results in input order."""
    if threads <= 1:
        iterator = map(fn, items)
        return list(tqdm(iterator, total=len(items), desc=label, disable=not progress))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(tqdm(pool.map(fn, items), total=len(items), desc=label, disable=not progress))


def expected_root_cosets(space: CosetSpace, t: int) -> Tuple[int, ...]:
    """Ids of the cosets meeting Δ_t: long roots for t = 1, short roots otherwise."""
    rs = space.root_system
    if rs.is_simply_laced:
        return space.root_cosets()
    norm = max(v.norm() for v in rs.roots) if t == 1 else min(v.norm() for v in rs.roots)
    return space.root_cosets(norm)


def sweep_space(space: CosetSpace, t: int, settings: Optional[RunSettings] = None, metrics=None) -> SweepReport:
    """Certify every coset of a space for one t."""
    settings = _settings(settings)
    _check_t(space, t)
    get_oracle(space.root_system, settings.ball_radius)
    label = f"{space.rstype.name} k={space.k} t={t}"
    certificates = map_ordered(
        lambda a: certify_coset(a, t, settings=settings, metrics=metrics),
        list(space), settings.threads, settings.progress, label,
    )
    tallies = empty_tallies()
    for c in certificates:
        tallies[c.tag.value] += 1
    expected = expected_root_cosets(space, t)
    found = tuple(c.coset_id for c in certificates if c.tag == CertificateTag.ROOT_FOUND)
    report = SweepReport(space.rstype, space.k, t, certificates, tallies, expected, found == expected, space.incomplete)
    if report.passed:
        logger.success(f"{label}: certified {len(space)} cosets {tallies}")
    else:
        logger.error(f"{label}: certification failed {tallies}, iff holds: {report.iff_holds}")
    return report


def verify_thm_key(t: RootSystemType, k: int, settings: Optional[RunSettings] = None, metrics=None) -> List[SweepReport]:
    """
    Certify all cosets of Q/kQ_L for each t in {1, r}.

    Args:
        t (RootSystemType): Root system type
        k (int): Level, at least 2

    Returns:
        List[SweepReport]: One report per applicable t, long roots first
    """
    if k < 2:
        raise UsageError(f"certification needs k >= 2, got {k}")
    space = build_coset_space(t, k)
    if space.incomplete:
        logger.warning(INCOMPLETE_BANNER)
    return [sweep_space(space, tv, settings, metrics) for tv in t_values(space.root_system.lacing)]


@dataclass(frozen=True)
class CosetWeight:
    """Exact weight or certified lower bound of one nonzero coset."""

    coset_id: int
    value: Fraction
    exact: bool


@dataclass
class MinWeightReport:
    """
    Minimum weight over the nonzero simple currents of one (type, k).

    Attributes:
        minimum: Least exact weight or lower bound seen
        expected: 1 − 1/k
        attained_at: Cosets whose value equals the minimum
        long_root_cosets: Cosets meeting the long roots
        counterexamples: Root-free cosets whose bound does not exceed 1 − 1/k
    """

    rstype: RootSystemType
    k: int
    minimum: Fraction
    expected: Fraction
    weights: List[CosetWeight]
    attained_at: Tuple[int, ...]
    long_root_cosets: Tuple[int, ...]
    counterexamples: Tuple[int, ...]

    @property
    def passed(self) -> bool:
        return (self.minimum == self.expected and not self.counterexamples
                and self.attained_at == self.long_root_cosets)


def min_weight_report(t: RootSystemType, k: int, settings: Optional[RunSettings] = None, metrics=None) -> MinWeightReport:
    """
    Check that the least weight of a nonzero simple current is 1 − 1/k.

    Root cosets contribute their exact weight. Root-free cosets contribute
    ℓ(γ) − |γ|²/2k for the reduced representative, or for one of its
    shifts by kQ_L when that bound does not clear 1 − 1/k, lifted to the
    least value of the coset's weight class above it.

    Raises:
        UsageError: For (E8, 2) or k < 2
    """
    if t == RootSystemType("E", 8) and k == 2:
        raise UsageError("minimum weight is not determined by Q/kQ_L for (E8,2)")
    if k < 2:
        raise UsageError(f"minimum weight needs k >= 2, got {k}")
    settings = _settings(settings)
    space = build_coset_space(t, k)
    expected = 1 - Fraction(1, k)
    get_oracle(space.root_system, settings.ball_radius)

    def weigh(a: Coset) -> CosetWeight:
        exact = exact_weight_if_root(a)
        if exact is not None:
            return CosetWeight(a.id, exact, True)
        reduced, _, lower = lower_bound(a, settings, metrics)
        if lower <= expected:
            shifted = shifted_bound(a, reduced.gamma, expected, settings, metrics)
            if shifted is not None:
                lower = shifted[2]
            cls = space.weight_class(a)
            lower = cls + ceil(lower - cls)
        return CosetWeight(a.id, lower, False)

    nonzero = [a for a in space if not a.is_zero()]
    weights = map_ordered(weigh, nonzero, settings.threads, settings.progress, f"{t.name} k={k} min weight")
    minimum = min(w.value for w in weights)
    attained = tuple(w.coset_id for w in weights if w.value == minimum)
    counterexamples = tuple(w.coset_id for w in weights if not w.exact and w.value <= expected)
    long_norm = space.root_system.long_norm
    report = MinWeightReport(t, k, minimum, expected, weights, attained, space.root_cosets(long_norm), counterexamples)
    if counterexamples:
        logger.error(f"{t.name} k={k}: root-free cosets {counterexamples} not separated from 1-1/k")
    if report.passed:
        logger.success(f"{t.name} k={k}: minimum weight {minimum} attained on {len(attained)} long-root cosets")
    else:
        logger.error(f"{t.name} k={k}: minimum weight {minimum}, expected {expected}")
    return report
