"""Append-only JSON-lines catalog of verified family instances."""

from __future__ import annotations

import datetime as _dt
import fcntl
import json
import threading
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .families import instance_from_report

_write_lock = threading.Lock()


def dumps(obj):
    """Canonical JSON: sorted keys, no insignificant whitespace."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def make_record(report, timestamp=True):
    record = {"version": __version__, "field": report["field"], "report": report}
    if timestamp:
        record["timestamp"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    return record


@dataclass
class QueryResult:
    records: list = field(default_factory=list)
    errors: list = field(default_factory=list)  # (line number, message)


class Catalog:
    def __init__(self, path):
        self.path = Path(path)

    def append(self, report, timestamp=True):
        record = make_record(report, timestamp)
        line = dumps(record) + "\n"
        with _write_lock, open(self.path, "a", encoding="utf-8") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX)
            try:
                fh.write(line)
                fh.flush()
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)
        return record

    def read(self):
        out = QueryResult()
        if not self.path.exists():
            return out
        with open(self.path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    rec = json.loads(line)
                    if not isinstance(rec, dict) or "report" not in rec:
                        raise ValueError("record has no report")
                except ValueError as exc:
                    out.errors.append((lineno, str(exc)))
                    continue
                out.records.append(rec)
        return out

    def query(self, family=None, field=None, where=None):
        """Filter by family id, field spec and exact parameter values."""
        res = self.read()
        keep = []
        for rec in res.records:
            rep = rec["report"]
            if family is not None and rep.get("family") != family:
                continue
            if field is not None and rec.get("field") != field:
                continue
            params = rep.get("params", {})
            if where and any(params.get(k) != v for k, v in where.items()):
                continue
            keep.append(rec)
        res.records = keep
        return res


def replay(record):
    """Re-run the construction a record describes; returns (same, new report)."""
    report = record["report"]
    fresh = instance_from_report(report).to_report()
    return dumps(fresh) == dumps(report), fresh
