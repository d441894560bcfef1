"""Run manifests and diffable CSV/JSON artifact writers.

Every output file embeds its manifest: CSV files as '#'-prefixed header
lines, JSON files as a "manifest" object.  The CSV body (everything after
the manifest lines) is a pure function of the command line and seed, so
reruns are byte-identical below the header.
"""

import datetime
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Dict, Iterable, Optional

TOOL_VERSION = "0.1.0"


@dataclass(frozen=True)
class RunManifest:
    command: str
    params: Dict[str, object]
    seed: Optional[int]
    tool_version: str = TOOL_VERSION
    timestamp: str = field(default_factory=lambda: datetime.datetime.now(
        datetime.timezone.utc).replace(microsecond=0).isoformat())


def manifest_lines(man: RunManifest):
    params = " ".join(f"{k}={v}" for k, v in sorted(man.params.items()))
    return [
        f"# command={man.command}",
        f"# params={params}",
        f"# seed={man.seed}",
        f"# tool_version={man.tool_version}",
        f"# timestamp={man.timestamp}",
    ]


def write_csv(path, man: RunManifest, header: Iterable[str], rows: Iterable[Iterable],
              extra: Optional[Iterable[str]] = None) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = manifest_lines(man)
    if extra:
        lines.extend(extra)
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_values_csv(path, man: RunManifest, values) -> None:
    """One entropy value per line at 17 significant digits."""
    write_csv(path, man, ["value"], ([v] for v in values))


def write_json(path, man: RunManifest, payload: dict) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    doc = {"manifest": asdict(man), **payload}
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _fmt(v) -> str:
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)
