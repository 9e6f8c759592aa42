"""CSV and JSON writers shared by every subcommand.

CSV files open with '#' metadata lines (tool version, command, the full
configuration as one JSON object, then command specific entries) followed
by a header row. Floats are written in their shortest round-trip form, so
identical runs give identical bytes.
"""
import json
import logging
import math
import sys

import pandas as pd

from ptfloquet import __version__
from ptfloquet.config import RunSettings

log = logging.getLogger(__name__)


def clean_value(value):
    # JSON has no NaN or infinity
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def metadata_lines(command: str, settings: RunSettings, extra: list[tuple[str, str]] = ()) -> list[str]:
    lines = [
        f"# tool: ptfloquet {__version__}",
        f"# command: {command}",
        f"# config: {json.dumps(settings.echo(), sort_keys=True)}",
    ]
    lines.extend(f"# {key}: {value}" for key, value in extra)
    return lines


def unsigned_zeros(frame: pd.DataFrame) -> pd.DataFrame:
    # -0.0 + 0.0 is 0.0; NaN stays NaN
    frame = frame.copy()
    for name in frame.select_dtypes("float").columns:
        frame[name] = frame[name] + 0.0
    return frame


def render(frame: pd.DataFrame, command: str, settings: RunSettings, extra: list[tuple[str, str]] = ()) -> str:
    frame = unsigned_zeros(frame)
    if settings.format == "json":
        payload = {
            "tool": "ptfloquet",
            "version": __version__,
            "command": command,
            "config": settings.echo(),
            "metadata": [[key, value] for key, value in extra],
            "columns": {name: [clean_value(v) for v in frame[name].tolist()] for name in frame.columns},
        }
        return json.dumps(payload, indent=2) + "\n"
    header = "\n".join(metadata_lines(command, settings, extra)) + "\n"
    return header + frame.to_csv(index=False, lineterminator="\n")


def write_text(text: str, settings: RunSettings) -> None:
    if settings.out is None:
        sys.stdout.write(text)
        return
    settings.out.parent.mkdir(parents=True, exist_ok=True)
    settings.out.write_text(text, encoding="utf-8")
    log.info("wrote %s", settings.out)


def write_frame(frame: pd.DataFrame, command: str, settings: RunSettings, extra: list[tuple[str, str]] = ()) -> None:
    write_text(render(frame, command, settings, extra), settings)
