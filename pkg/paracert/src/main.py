"""
paracert - Command-Line Interface

Exact verification of the simple-current combinatorics of parafermion
algebras: root systems, the coset groups Q/kQ_L, conformal-weight
certificates and the action of Aut(Δ) on cosets.

Commands:
- roots T                 roots, norms and base of a root system
- cosets T k [--fusion]   canonical representatives, or the fusion table
- catalog T k             certificates and Aut(Δ)-orbits of every coset
- aut T [k]               Aut(Δ), its kernel on Q/kQ_L, short-root comparison
- verify ...              thm-key, minnorm, faithful, symdelta, hamming,
                          lengths, reduce, roots, lattice

Exit codes: 0 all checks passed, 1 a check or certificate failed,
2 usage error, 3 a search or enumeration cap was exceeded.
"""

import argparse
import sys
from dataclasses import replace
from pathlib import Path
from typing import Callable, Dict, Optional, Sequence, Tuple

from loguru import logger
from typing_extensions import TypeAlias

from autgrp import automorphism_group, compare_short_aut, kernel
from certifier import CertificateTag, min_weight_report, verify_thm_key
from config_manager import ConfigManager, RunSettings
from exceptions import (
    CapExceededError,
    ConfigurationError,
    ParacertError,
    UsageError,
    ValidationError,
)
from logging_config import setup_logging
from metrics import MetricsCollector
from quotient import INCOMPLETE_BANNER, build_coset_space
from rootsys import RootSystemType, build_root_system, root_stats
from storage import FORMATS, Report, ReportStorage, emit_report, fraction_text
from sweeps import (
    VerificationReport,
    build_catalog,
    verify_faithful,
    verify_hamming,
    verify_lattice,
    verify_lengths,
    verify_reduce,
    verify_roots,
    verify_symdelta,
)
from validation import parse_type

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_CAP = 3

FUSION_TABLE_LIMIT = 64

VERIFY_CHECKS = ("thm-key", "minnorm", "faithful", "symdelta", "hamming", "lengths", "reduce", "roots", "lattice")

Outcome: TypeAlias = Tuple[Report, bool]


def _meta(t: Optional[RootSystemType], k: Optional[int] = None, tval: Optional[int] = None) -> Dict:
    return {"type": t.name if t else None, "rank": t.rank if t else None, "k": k, "t": tval}


def _require_k(args: argparse.Namespace) -> int:
    if args.k is None:
        raise UsageError(f"'{args.command}' needs a level k")
    if args.k < 1:
        raise UsageError(f"level k must be >= 1, got {args.k}")
    return args.k


def cmd_roots(args, settings: RunSettings, metrics) -> Outcome:
    t = parse_type(args.type)
    rs = build_root_system(t)
    stats = root_stats(rs)
    simple = set(rs.simple_indices)
    rows = [
        {"index": i, "root": [str(c) for c in v.coords], "norm": str(v.norm()), "simple": i in simple}
        for i, v in enumerate(rs.roots)
    ]
    tallies = {"roots": stats.count, "long": len(rs.long_roots)}
    if not rs.is_simply_laced:
        tallies["short"] = len(rs.short_roots)
    checks = {"lacing": stats.lacing, "highest_root": str(stats.highest_root),
              "cartan_matrix": [list(r) for r in rs.cartan_matrix]}
    return Report("roots", _meta(t), rows, tallies, checks=checks), True


def cmd_cosets(args, settings: RunSettings, metrics) -> Outcome:
    t = parse_type(args.type)
    k = _require_k(args)
    space = build_coset_space(t, k)
    banners = [INCOMPLETE_BANNER] if space.incomplete else []
    if args.fusion:
        if len(space) > FUSION_TABLE_LIMIT:
            raise UsageError(f"fusion tables are printed for at most {FUSION_TABLE_LIMIT} cosets, {space!r} has {len(space)}")
        columns = ["coset"] + [str(b.id) for b in space]
        rows = [{"coset": a.id, **{str(b.id): space.add(a, b).id for b in space}} for a in space]
        return Report("cosets", _meta(t, k), rows, {"cosets": len(space)}, banners, columns=columns), True
    root_ids = set(space.root_cosets())
    rows = [
        {
            "coset_id": a.id,
            "rep": [str(c) for c in a.rep.coords],
            "weight_class": fraction_text(space.weight_classes[a.id]),
            "order": space.order(a),
            "roots": len(space.roots_in_coset(a)) if a.id in root_ids else 0,
        }
        for a in space
    ]
    tallies = {"cosets": len(space), "root_cosets": len(root_ids)}
    return Report("cosets", _meta(t, k), rows, tallies, banners), True


def cmd_catalog(args, settings: RunSettings, metrics) -> Outcome:
    t = parse_type(args.type)
    k = _require_k(args)
    catalog = build_catalog(t, k, args.t or 1, settings, metrics)
    checks = {"simple_currents": len(catalog.rows), "orbits": catalog.orbits,
              "weight_classes": catalog.weight_classes}
    report = Report("catalog", _meta(t, k, catalog.t), [r.to_dict() for r in catalog.rows],
                    catalog.tallies, list(catalog.banners), checks)
    return report, catalog.passed


def cmd_aut(args, settings: RunSettings, metrics) -> Outcome:
    t = parse_type(args.type)
    rs = build_root_system(t)
    group = automorphism_group(rs, settings.group_cap)
    checks: Dict = {"generators": len(group.generators), "order": group.order, "enumerated": group.enumerated}
    if not rs.is_simply_laced:
        comparison = compare_short_aut(rs, settings.group_cap)
        checks.update(short_type=comparison.short_type, short_order=comparison.short_order,
                      isomorphic=comparison.isomorphic, index=comparison.index)
    if args.k is not None:
        space = build_coset_space(t, _require_k(args))
        checks["kernel_order"] = len(kernel(space, group))
    return Report("aut", _meta(t, args.k), checks=checks), True


def _verification(command: str, t: Optional[RootSystemType], k: Optional[int], result: VerificationReport) -> Outcome:
    rows = [{"failure": message} for message in result.failures]
    checks = dict(result.details, checks_run=result.checks_run, passed=result.passed)
    tallies = {"checks": result.checks_run, "failures": len(result.failures)}
    return Report(command, _meta(t, k), rows, tallies, checks=checks), result.passed


def _verify_thm_key(t: RootSystemType, k: int, args, settings: RunSettings, metrics) -> Outcome:
    reports = verify_thm_key(t, k, settings, metrics)
    if args.t is not None:
        reports = [r for r in reports if r.t == args.t]
        if not reports:
            raise UsageError(f"t={args.t} does not apply to {t.name}")
    tallies = {tag.value: sum(r.tallies[tag.value] for r in reports) for tag in CertificateTag}
    tallies["excluded"] = tallies[CertificateTag.EXCLUDED_MODZ.value] + tallies[CertificateTag.EXCLUDED_BOUND.value]
    rows = [
        {"t": r.t, "passed": r.passed, "iff_holds": r.iff_holds,
         "root_cosets": len(r.expected_root_cosets), **r.tallies}
        for r in reports
    ]
    banners = [INCOMPLETE_BANNER] if any(r.incomplete for r in reports) else []
    report = Report("verify thm-key", _meta(t, k, args.t), rows, tallies, banners)
    return report, all(r.passed for r in reports)


def _verify_minnorm(t: RootSystemType, k: int, args, settings: RunSettings, metrics) -> Outcome:
    result = min_weight_report(t, k, settings, metrics)
    rows = [{"coset_id": w.coset_id, "value": str(w.value), "exact": w.exact} for w in result.weights]
    checks = {"minimum": str(result.minimum), "expected": str(result.expected),
              "attained_at": list(result.attained_at), "long_root_cosets": list(result.long_root_cosets),
              "counterexamples": list(result.counterexamples)}
    tallies = {"cosets": len(result.weights), "attained": len(result.attained_at)}
    return Report("verify minnorm", _meta(t, k), rows, tallies, checks=checks), result.passed


def cmd_verify(args, settings: RunSettings, metrics) -> Outcome:
    check = args.check
    command = f"verify {check}"
    if check == "hamming":
        return _verification(command, None, None, verify_hamming())
    if args.type is None:
        raise UsageError(f"'{command}' needs a root system type")
    t = parse_type(args.type)
    if check == "roots":
        return _verification(command, t, None, verify_roots(t))
    k = _require_k(args)
    if check == "thm-key":
        return _verify_thm_key(t, k, args, settings, metrics)
    if check == "minnorm":
        return _verify_minnorm(t, k, args, settings, metrics)
    sweeps: Dict[str, Callable[[], VerificationReport]] = {
        "lattice": lambda: verify_lattice(t, k),
        "lengths": lambda: verify_lengths(t, k, settings, metrics),
        "reduce": lambda: verify_reduce(t, k, settings, metrics),
        "faithful": lambda: verify_faithful(t, k, settings),
        "symdelta": lambda: verify_symdelta(t, k, settings, metrics),
    }
    return _verification(command, t, k, sweeps[check]())


COMMANDS = {
    "roots": cmd_roots,
    "cosets": cmd_cosets,
    "catalog": cmd_catalog,
    "aut": cmd_aut,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Print the JSON report instead of a table")
    common.add_argument("--format", choices=FORMATS, default=None, help="Output format (default: table)")
    common.add_argument("--out", type=Path, default=None, help="Also write the report to this path")
    common.add_argument("--bfs-cap", type=int, default=None, help="Largest length searched (default: 4·k·rank)")
    common.add_argument("--group-cap", type=int, default=None, help="Largest group enumerated (default: 2000000)")
    common.add_argument("--threads", type=int, default=None, help="Worker threads (default: available cores)")
    common.add_argument("--seed", type=int, default=None, help="Seed for sampled group elements")
    common.add_argument("-t", dest="t", type=int, default=None, help="1 for long roots, r for short roots")
    common.add_argument("--config", type=Path, default=None, help="Configuration file")
    common.add_argument("--progress", action="store_true", help="Show progress bars")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Warnings and errors only")

    parser = argparse.ArgumentParser(prog="paracert", description="Parafermion simple-current certifier")
    sub = parser.add_subparsers(dest="command", required=True)

    roots = sub.add_parser("roots", parents=[common], help="Roots of a root system")
    roots.add_argument("type", help="Root system type, e.g. E8")

    cosets = sub.add_parser("cosets", parents=[common], help="Cosets of Q/kQ_L")
    cosets.add_argument("type")
    cosets.add_argument("k", type=int)
    cosets.add_argument("--fusion", action="store_true", help="Print the fusion (addition) table")

    catalog = sub.add_parser("catalog", parents=[common], help="Certificates and orbits of every coset")
    catalog.add_argument("type")
    catalog.add_argument("k", type=int)

    aut = sub.add_parser("aut", parents=[common], help="Automorphism group of Δ")
    aut.add_argument("type")
    aut.add_argument("k", type=int, nargs="?", default=None)

    verify = sub.add_parser("verify", parents=[common], help="Run a verification sweep")
    verify.add_argument("check", choices=VERIFY_CHECKS)
    verify.add_argument("type", nargs="?", default=None)
    verify.add_argument("k", type=int, nargs="?", default=None)
    return parser


def resolve_settings(args: argparse.Namespace, manager: ConfigManager) -> RunSettings:
    type_name = getattr(args, "type", None)
    settings = RunSettings.from_config(
        manager,
        type_name=parse_type(type_name).name if type_name else None,
        bfs_cap=args.bfs_cap,
        group_cap=args.group_cap,
        threads=args.threads,
        seed=args.seed,
    )
    if args.progress:
        settings = replace(settings, progress=True)
    return settings


def _write_outputs(args, report: Report, manager: ConfigManager) -> None:
    stdout_format = "json" if args.json else (args.format or "table")
    sys.stdout.buffer.write(emit_report(report, stdout_format))
    sys.stdout.flush()
    if args.out is not None:
        out_format = args.format if args.format not in (None, "table") else manager.get_reports_config().get("default_format", "json")
        ReportStorage(manager.get_reports_config().get("directory", ".")).store(emit_report(report, out_format), args.out)


def run(args: argparse.Namespace) -> int:
    """
    Execute one parsed command.

    Returns:
        int: Exit code
    """
    try:
        manager = ConfigManager(args.config)
        settings = resolve_settings(args, manager)
    except (ConfigurationError, UsageError) as e:
        logger.error(str(e))
        return EXIT_USAGE

    metrics_config = manager.get_metrics_config()
    metrics = MetricsCollector(metrics_config.get("directory")) if metrics_config.get("enabled") else None
    label = args.command if args.command != "verify" else f"verify {args.check}"

    try:
        if metrics is not None:
            with metrics.time_sweep(label):
                report, passed = COMMANDS[args.command](args, settings, metrics)
        else:
            report, passed = COMMANDS[args.command](args, settings, metrics)
        _write_outputs(args, report, manager)
    except (UsageError, ValidationError) as e:
        logger.error(str(e))
        return EXIT_USAGE
    except CapExceededError as e:
        logger.error(f"cap exceeded: {e}")
        return EXIT_CAP
    except ParacertError as e:
        logger.error(str(e))
        return EXIT_FAILURE
    finally:
        if metrics is not None:
            metrics.save_metrics()

    if passed:
        logger.success(f"{label} completed")
        return EXIT_OK
    logger.error(f"{label} failed")
    return EXIT_FAILURE


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point: parse arguments, configure logging and run."""
    parser = build_parser()
    args = parser.parse_args(argv)
    level = "DEBUG" if args.verbose else ("WARNING" if args.quiet else None)
    try:
        setup_logging(args.config, level)
    except ConfigurationError as e:
        print(f"paracert: {e}", file=sys.stderr)
        return EXIT_USAGE
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
