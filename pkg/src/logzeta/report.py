"""Deterministic report assembly shared by the CLI commands.

Reports carry the command echo, a content digest of the input, the
structured result and the verdict (when the command has one).  Identical
inputs and tool version produce identical bytes; rationals print in lowest
terms.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any

REPORT_VERSION = 1
TOOL_VERSION = "0.1.0"


def digest_bytes(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def digest_file(path: str) -> str:
    with open(path, "rb") as fh:
        return digest_bytes(fh.read())


def jsonable(value: Any) -> Any:
    """Recursively coerce report values into JSON-friendly data."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


def make_report(
    command: str,
    arguments: dict,
    result: Any,
    verdict: bool | None = None,
    input_digest: str | None = None,
) -> dict:
    report = {
        "report_version": REPORT_VERSION,
        "tool_version": TOOL_VERSION,
        "command": command,
        "arguments": jsonable(arguments),
        "result": jsonable(result),
    }
    if input_digest is not None:
        report["input_digest"] = input_digest
    if verdict is not None:
        report["verdict"] = verdict
    return report


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _text_lines(value: Any, prefix: str, out: list[str]) -> None:
    if isinstance(value, dict):
        for key in value:
            _text_lines(value[key], f"{prefix}{key}.", out)
    elif isinstance(value, list):
        if not value:
            out.append(f"{prefix[:-1]}: []")
        for i, item in enumerate(value):
            _text_lines(item, f"{prefix}{i}.", out)
    else:
        out.append(f"{prefix[:-1]}: {value}")


def render_text(report: dict, quiet: bool = False) -> str:
    lines: list[str] = []
    if not quiet:
        lines.append(f"logzeta {report['command']} (report v{REPORT_VERSION})")
        if "input_digest" in report:
            lines.append(f"input: {report['input_digest']}")
    _text_lines(report.get("result"), "", lines)
    if "verdict" in report:
        lines.append(f"verdict: {str(report['verdict']).lower()}")
    return "\n".join(lines) + "\n"
