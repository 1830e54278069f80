"""Deterministic report serialization: sorted-key JSON, atomic writes."""
from __future__ import annotations

import json
import os
import tempfile

SCHEMA_VERSION = "1"


def render_json(obj: dict) -> str:
    return json.dumps(obj, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def write_text_atomic(path, text: str) -> None:
    """Write via a temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_report(path, kind: str, body: dict) -> None:
    payload = {"schema_version": SCHEMA_VERSION, "kind": kind}
    payload.update(body)
    write_text_atomic(path, render_json(payload))
