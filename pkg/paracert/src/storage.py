"""
Report Rendering and Storage Module for paracert

Turns the results of a command into a report and renders it as a UTF-8
table for people, or as JSON or CSV for machines. Rendering is
deterministic: rows are ordered by coset id (or by the order the sweep
produced them), keys are sorted and no timestamps are embedded, so the
same command with the same seed produces byte-identical output.

Key Features:
- Report and CatalogRow records
- Table and CSV rendering through pandas
- JSON rendering validated against REPORT_SCHEMA
- Directory management and error handling for written reports

Technologies:
- pandas for tabular rendering
- Python Pathlib for file and directory management
- Loguru for logging
"""

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import pandas as pd
from loguru import logger

from exceptions import StorageError, UsageError
from validation import validate_report

TOOL_VERSION = "1.0.0"
FORMATS = ("table", "json", "csv")


def fraction_text(q: Optional[Fraction]) -> Optional[str]:
    """'2/3' style text for a rational, None passed through."""
    return None if q is None else str(Fraction(q))


@dataclass(frozen=True)
class CatalogRow:
    """
    One simple current of a catalog.

    Attributes:
        coset_id: Canonical coset id
        rep: Coordinates of the canonical representative
        weight_class: (-|β|²/2k) mod 1
        tag: Certificate tag for the catalog's t
        rho: Exact weight for Trivial and RootFound cosets
        orbit_id: Aut(Δ)-orbit label, 0 for the zero coset
    """

    coset_id: int
    rep: Sequence[str]
    weight_class: str
    tag: str
    rho: Optional[str]
    orbit_id: Optional[int]

    def to_dict(self) -> Dict[str, Any]:
        row = asdict(self)
        row["rep"] = list(self.rep)
        return row


@dataclass
class Report:
    """
    Everything a command emits.

    Attributes:
        command: Command name, e.g. 'catalog' or 'verify lengths'
        meta: type, rank, k and t (each may be None)
        rows: Table rows as plain dictionaries
        tallies: Counts, e.g. per certificate tag
        banners: Lines printed above the table
        checks: Summary values of verification sweeps
        columns: Column order for rows; inferred from the first row if empty
    """

    command: str
    meta: Dict[str, Any] = field(default_factory=dict)
    rows: List[Dict[str, Any]] = field(default_factory=list)
    tallies: Dict[str, int] = field(default_factory=dict)
    banners: List[str] = field(default_factory=list)
    checks: Dict[str, Any] = field(default_factory=dict)
    columns: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        meta = {"type": None, "rank": None, "k": None, "t": None}
        meta.update(self.meta)
        meta.update(tool_version=TOOL_VERSION, command=self.command)
        return {
            "meta": meta,
            "rows": [dict(r) for r in self.rows],
            "tallies": dict(self.tallies),
            "banners": list(self.banners),
            "checks": _plain(self.checks),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Report":
        meta = dict(data["meta"])
        command = meta.pop("command")
        meta.pop("tool_version", None)
        return cls(
            command=command,
            meta=meta,
            rows=list(data.get("rows", [])),
            tallies=dict(data.get("tallies", {})),
            banners=list(data.get("banners", [])),
            checks=dict(data.get("checks", {})),
        )

    def frame(self) -> pd.DataFrame:
        columns = self.columns or (list(self.rows[0]) if self.rows else [])
        rows = [{c: _cell(r.get(c)) for c in columns} for r in self.rows]
        return pd.DataFrame(rows, columns=columns)


def _plain(value: Any) -> Any:
    """JSON-safe copy: Fractions become text, tuples become lists."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def _cell(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return " ".join(str(v) for v in value)
    return value


def _render_table(report: Report) -> str:
    lines = list(report.banners)
    meta = report.to_dict()["meta"]
    lines.append(" ".join(f"{k}={meta[k]}" for k in ("command", "type", "k", "t") if meta[k] is not None))
    frame = report.frame()
    if not frame.empty:
        lines.append(frame.to_string(index=False))
    if report.tallies:
        lines.append("tallies: " + ", ".join(f"{k}={v}" for k, v in sorted(report.tallies.items())))
    for key, value in sorted(report.checks.items()):
        lines.append(f"{key}: {_plain(value)}")
    return "\n".join(lines) + "\n"


def emit_report(report: Report, fmt: str = "table") -> bytes:
    """
    Render a report.

    Args:
        report (Report): The report
        fmt (str): 'table', 'json' or 'csv'

    Returns:
        bytes: UTF-8 output

    Raises:
        UsageError: For an unknown format
        ValidationError: If the JSON form does not match REPORT_SCHEMA
    """
    if fmt == "table":
        return _render_table(report).encode("utf-8")
    if fmt == "json":
        data = report.to_dict()
        validate_report(data)
        return (json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt == "csv":
        return report.frame().to_csv(index=False, lineterminator="\n").encode("utf-8")
    raise UsageError(f"unknown report format {fmt!r}; expected one of {FORMATS}")


class ReportStorage:
    """
    Writes rendered reports under a base directory.

    Attributes:
        base_dir (Path): Directory relative paths are resolved against

    Raises:
        StorageError: For directory creation or file writing failures
    """

    def __init__(self, base_dir: Union[str, Path] = "."):
        self.base_dir = Path(base_dir)
        self._ensure_directory_exists(self.base_dir)

    def _ensure_directory_exists(self, directory: Path) -> None:
        try:
            directory.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            logger.error(f"Failed to create directory {directory}: {str(e)}")
            raise StorageError(f"Failed to create directory {directory}") from e

    def resolve(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        return path if path.is_absolute() else self.base_dir / path

    def store(self, data: bytes, path: Union[str, Path]) -> Path:
        """
        Write rendered bytes, creating parent directories.

        Returns:
            Path: Where the report was written
        """
        target = self.resolve(path)
        self._ensure_directory_exists(target.parent)
        try:
            target.write_bytes(data)
        except OSError as e:
            logger.error(f"Failed to write report {target}: {str(e)}")
            raise StorageError(f"Failed to write report {target}") from e
        logger.info(f"Stored report at {target}")
        return target


def load_report(path: Union[str, Path]) -> Report:
    """
    Read a JSON report back.

    Raises:
        StorageError: If the file cannot be read or is not JSON
        ValidationError: If it does not match REPORT_SCHEMA
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        logger.error(f"Failed to load report {path}: {str(e)}")
        raise StorageError(f"Failed to load report {path}") from e
    validate_report(data)
    return Report.from_dict(data)
