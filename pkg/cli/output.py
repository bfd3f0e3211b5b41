"""
Table formatting, CSV/JSON writers and run manifests
"""

import csv
import io
import json
import logging
import os
import sys
from datetime import datetime, timezone
from typing import Dict, List, Literal, Optional

from dotenv import dotenv_values
from pydantic import BaseModel, Field

from errors import DomainError
from schemas import RunManifest
from settings import TOOL_VERSION, get_settings

logger = logging.getLogger(__name__)


class OutputOptions(BaseModel):
    format: Literal["csv", "json"] = "csv"
    decimals: int = Field(default=9, ge=0, le=17)
    full_precision: bool = False
    units: Literal["dimensionless", "physical"] = "dimensionless"
    output: Optional[str] = None


class ResultTable(BaseModel):
    """Rows of one command's output plus what goes into its manifest"""

    columns: List[str]
    rows: List[List[object]] = []
    parameters: Dict[str, object] = {}
    basis_size: Optional[int] = None
    failure: Optional[str] = None
    exit_code: int = 0


# Option resolution: flags > config file > settings

def load_config(path: Optional[str]) -> Dict[str, str]:
    if not path:
        return {}
    if not os.path.exists(path):
        raise DomainError(f"config file {path} not found")
    return {k.lower().replace("-", "_"): v for k, v in dotenv_values(path).items() if v is not None}


def pick(args, config: Dict[str, str], name: str, default=None, cast=str):
    value = getattr(args, name, None)
    if value is not None:
        return value
    if name.lower() in config:
        return cast(config[name.lower()])
    return default


def _as_bool(text: str) -> bool:
    return text.strip().lower() in ("1", "true", "yes", "on")


def resolve_options(args, config: Dict[str, str]) -> OutputOptions:
    settings = get_settings()
    return OutputOptions(
        format=pick(args, config, "format", settings.output_format),
        decimals=pick(args, config, "decimals", settings.decimals, int),
        full_precision=bool(pick(args, config, "full_precision", False, _as_bool)),
        units=pick(args, config, "units", settings.units),
        output=pick(args, config, "output", None),
    )


def parse_list(text, cast=float) -> list:
    """Comma-separated values; an empty string gives an empty list"""
    if text is None:
        return []
    if isinstance(text, (list, tuple)):
        return [cast(v) for v in text]
    try:
        return [cast(part) for part in str(text).split(",") if part.strip()]
    except ValueError as exc:
        raise DomainError(f"cannot parse list {text!r}: {exc}")


# Formatting

def format_value(value, options: OutputOptions) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if options.full_precision:
            return repr(value)
        text = f"{value:.{options.decimals}f}"
        if text.startswith("-") and float(text) == 0:
            text = text[1:]
        return text
    return str(value)


def _json_value(value, options: OutputOptions):
    if isinstance(value, float):
        return value if options.full_precision else float(format_value(value, options))
    return value


def render(table: ResultTable, options: OutputOptions) -> str:
    if options.format == "json":
        rows = [
            {col: _json_value(_native(v), options) for col, v in zip(table.columns, row)}
            for row in table.rows
        ]
        return json.dumps({"columns": table.columns, "rows": rows}, indent=2) + "\n"
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([format_value(_native(v), options) for v in row])
    return buffer.getvalue()


def _native(value):
    # numpy scalars to plain Python numbers
    if hasattr(value, "item") and not isinstance(value, (str, bytes)):
        return value.item()
    return value


# Manifests

def manifest_timestamp() -> str:
    epoch = os.getenv("SOURCE_DATE_EPOCH")
    if epoch:
        moment = datetime.fromtimestamp(int(epoch), tz=timezone.utc)
    else:
        moment = datetime.now(tz=timezone.utc)
    return moment.replace(microsecond=0).isoformat()


def build_manifest(command: str, table: ResultTable, options: OutputOptions) -> RunManifest:
    parameters = {k: _native(v) for k, v in table.parameters.items()}
    parameters.update(format=options.format, units=options.units, full_precision=options.full_precision)
    return RunManifest(
        command=command,
        parameters=parameters,
        basis_size=table.basis_size,
        tool_version=TOOL_VERSION,
        timestamp=manifest_timestamp(),
    )


def emit(command: str, table: ResultTable, options: OutputOptions, stream=None) -> RunManifest:
    """Write the table and its manifest; stdout tables send the manifest to stderr"""
    manifest = build_manifest(command, table, options)
    text = render(table, options)
    manifest_json = manifest.model_dump_json(indent=2) + "\n"
    if options.output:
        with open(options.output, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
        with open(options.output + ".manifest.json", "w", encoding="utf-8") as fh:
            fh.write(manifest_json)
        print(f"✅ wrote {options.output} ({len(table.rows)} rows)", file=sys.stderr)
    else:
        (stream or sys.stdout).write(text)
        sys.stderr.write(manifest_json)
    return manifest
