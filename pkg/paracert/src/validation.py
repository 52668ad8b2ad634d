"""Validation module for paracert reports and inputs.

This module checks machine reports against a JSON schema before they are
written or after they are read back, and parses root system type names
given on the command line.

Key Features:
- JSON Schema-based report validation
- Root system type name parsing with range checks
- Logging of rejected reports
"""
import re
from typing import Any, Dict, Tuple

from jsonschema import validate
from jsonschema.exceptions import ValidationError as SchemaError
from loguru import logger

from exceptions import UsageError, ValidationError
from rootsys import RootSystemType

TYPE_NAME_PATTERN = re.compile(r"^\s*([A-Ga-g])\s*_?\s*(\d+)\s*$")

_NULLABLE_INT = {"type": ["integer", "null"]}

# JSON Schema for reports emitted by the CLI
REPORT_SCHEMA = {
    "type": "object",
    "required": ["meta", "rows", "tallies"],
    "properties": {
        "meta": {
            "type": "object",
            "required": ["type", "rank", "k", "t", "tool_version", "command"],
            "properties": {
                "type": {"type": ["string", "null"]},
                "rank": _NULLABLE_INT,
                "k": _NULLABLE_INT,
                "t": _NULLABLE_INT,
                "tool_version": {"type": "string", "minLength": 1},
                "command": {"type": "string", "minLength": 1},
            },
        },
        "rows": {"type": "array", "items": {"type": "object"}},
        "tallies": {"type": "object", "additionalProperties": {"type": "integer", "minimum": 0}},
        "banners": {"type": "array", "items": {"type": "string"}},
        "checks": {"type": "object"},
    },
}

# Catalog rows, when present, must carry these fields
CATALOG_ROW_SCHEMA = {
    "type": "object",
    "required": ["coset_id", "rep", "weight_class", "tag", "rho", "orbit_id"],
    "properties": {
        "coset_id": {"type": "integer", "minimum": 0},
        "rep": {"type": "array", "items": {"type": "string"}},
        "weight_class": {"type": "string"},
        "tag": {"type": "string"},
        "rho": {"type": ["string", "null"]},
        "orbit_id": {"type": ["integer", "null"]},
    },
}


def validate_report(report: Dict[str, Any]) -> None:
    """
    Validate a report against REPORT_SCHEMA.

    Catalog reports also have each row checked against CATALOG_ROW_SCHEMA.

    Args:
        report (Dict[str, Any]): The report as plain JSON data

    Raises:
        ValidationError: If the report does not match the schema
    """
    try:
        validate(instance=report, schema=REPORT_SCHEMA)
        if report["meta"]["command"] == "catalog":
            for row in report["rows"]:
                validate(instance=row, schema=CATALOG_ROW_SCHEMA)
    except SchemaError as e:
        logger.error(f"Report validation failed: {e.message}")
        raise ValidationError(f"Invalid report format: {e.message}") from e


def validate_type_name(text: str) -> Tuple[str, int]:
    """
    Parse a root system type name such as 'E8', 'b3' or 'D_5'.

    Returns:
        Tuple[str, int]: Family letter (upper case) and rank

    Raises:
        UsageError: If the text is not the name of an irreducible type
    """
    match = TYPE_NAME_PATTERN.match(text or "")
    if not match:
        raise UsageError(f"cannot parse root system type {text!r}")
    t = RootSystemType(match.group(1).upper(), int(match.group(2)))
    return t.family, t.rank


def parse_type(text: str) -> RootSystemType:
    """validate_type_name, returning the type itself."""
    return RootSystemType(*validate_type_name(text))
