"""Append-only JSON-lines cache of computed values."""

from __future__ import annotations

import json
import logging
import os
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Sequence

from .exactmath import parse_fraction

log = logging.getLogger(__name__)

CACHE_ENV = "HURWITZ_CACHE_DIR"
CACHE_FILE = "results.jsonl"


@dataclass(frozen=True)
class ResultRecord:
    kind: str
    g: int
    x: tuple[int, ...]
    lam: tuple[int, ...] | None
    lambda_ordered: bool
    variant: str
    connected: bool
    value: str
    engine: str
    timing: float
    p: int | None = None
    q: int | None = None

    def __post_init__(self):
        parse_fraction(self.value)  # must round-trip
        object.__setattr__(self, "x", tuple(self.x))
        if self.lam is not None:
            object.__setattr__(self, "lam", tuple(self.lam))

    def key(self) -> str:
        return cache_key(self.kind, self.g, self.x, self.lam, self.lambda_ordered, self.variant, self.connected, self.engine, self.p, self.q)

    def to_json(self) -> dict:
        d = asdict(self)
        d["x"] = list(self.x)
        d["lambda"] = None if self.lam is None else list(self.lam)
        del d["lam"]
        if self.p is None:
            del d["p"], d["q"]
        return d

    @classmethod
    def from_json(cls, d: dict) -> "ResultRecord":
        return cls(
            kind=d["kind"],
            g=int(d["g"]),
            x=tuple(d["x"]),
            lam=None if d.get("lambda") is None else tuple(d["lambda"]),
            lambda_ordered=bool(d["lambda_ordered"]),
            variant=d["variant"],
            connected=bool(d["connected"]),
            value=d["value"],
            engine=d["engine"],
            timing=float(d["timing"]),
            p=d.get("p"),
            q=d.get("q"),
        )


def cache_key(kind, g, x: Sequence[int], lam, lambda_ordered, variant, connected, engine, p=None, q=None) -> str:
    """Profile sorted into x+ descending then x- descending; lambda order kept only if it matters."""
    plus = sorted((e for e in x if e > 0), reverse=True)
    minus = sorted((e for e in x if e < 0))
    if lam is not None and not lambda_ordered:
        lam = sorted(lam, reverse=True)
    payload = {
        "kind": kind,
        "g": g,
        "x": plus + minus,
        "lambda": None if lam is None else list(lam),
        "ordered": bool(lambda_ordered),
        "variant": variant,
        "connected": bool(connected),
        "engine": engine,
        "p": p,
        "q": q,
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


class ResultCache:
    """Exact-match cache keyed by :func:`cache_key`; ``directory=None`` disables it."""

    def __init__(self, directory: str | os.PathLike | None):
        self.directory = Path(directory) if directory else None
        self._records: dict[str, ResultRecord] | None = None

    @classmethod
    def from_env(cls, directory=None) -> "ResultCache":
        return cls(directory or os.environ.get(CACHE_ENV) or None)

    @property
    def enabled(self) -> bool:
        return self.directory is not None

    @property
    def path(self) -> Path | None:
        return None if self.directory is None else self.directory / CACHE_FILE

    def _load(self) -> dict[str, ResultRecord]:
        if self._records is not None:
            return self._records
        self._records = {}
        if self.path is None or not self.path.exists():
            return self._records
        try:
            lines = self.path.read_text().splitlines()
        except OSError as exc:
            log.warning("cannot read cache %s: %s", self.path, exc)
            return self._records
        for lineno, line in enumerate(lines, 1):
            if not line.strip():
                continue
            try:
                rec = ResultRecord.from_json(json.loads(line))
            except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
                log.warning("skipping corrupt cache line %d in %s: %s", lineno, self.path, exc)
                continue
            self._records[rec.key()] = rec
        return self._records

    def lookup(self, key: str) -> ResultRecord | None:
        if not self.enabled:
            return None
        return self._load().get(key)

    def store(self, record: ResultRecord) -> bool:
        """Append a record; returns False (after a warning) when the directory is unusable."""
        if not self.enabled:
            return False
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a") as fh:
                fh.write(json.dumps(record.to_json(), sort_keys=True) + "\n")
        except OSError as exc:
            log.warning("cache directory %s is not writable, continuing uncached: %s", self.directory, exc)
            return False
        self._load()[record.key()] = record
        return True
