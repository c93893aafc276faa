"""Workspace persistence: user-defined umbrae in a small JSON file.

Format::

    {"version": 1, "umbrae": {"name": {"moments": ["1", "1/2", ...]}}}

Moments are rational strings indexed by power.  Unknown fields anywhere in
the document are preserved across read/modify/write cycles, and writes are
atomic (write to a temp file in the same directory, then rename).
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .rationals import format_rational, parse_rational
from .umbra import Umbra

WORKSPACE_VERSION = 1


def empty_workspace() -> dict:
    return {"version": WORKSPACE_VERSION, "umbrae": {}}


def load_raw(path: str | Path) -> dict:
    """The raw JSON document; a missing file reads as an empty workspace."""
    p = Path(path)
    if not p.exists():
        return empty_workspace()
    with open(p, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("workspace root must be a JSON object")
    version = data.get("version", WORKSPACE_VERSION)
    if version != WORKSPACE_VERSION:
        raise ValueError(f"unsupported workspace version {version!r}")
    data.setdefault("version", WORKSPACE_VERSION)
    data.setdefault("umbrae", {})
    return data


def umbrae_from_raw(data: dict) -> dict[str, Umbra]:
    out: dict[str, Umbra] = {}
    for name, entry in data.get("umbrae", {}).items():
        moments = [parse_rational(m) for m in entry["moments"]]
        out[name] = Umbra(moments, name=name)
    return out


def load_umbrae(path: str | Path) -> dict[str, Umbra]:
    return umbrae_from_raw(load_raw(path))


def set_umbra(data: dict, name: str, umbra: Umbra) -> None:
    """Insert or replace one definition, keeping any extra entry fields."""
    entry = dict(data.setdefault("umbrae", {}).get(name, {}))
    entry["moments"] = [format_rational(m) for m in umbra.moments]
    data["umbrae"][name] = entry


def save_raw(path: str | Path, data: dict) -> None:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{p.name}.", dir=p.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(data, fh, indent=2, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, p)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
