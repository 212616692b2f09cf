"""Append-only cache of census counts.

One record per line: ``key<TAB>value<TAB>engine_version`` where key is the JSON
list [k, D, rho_num, rho_den, r_min, r_max] and value is the JSON object
{"n1": .., "n2": .., "n3": ..}.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from .cockspinch import CountResult, SearchParams

ENGINE_VERSION = "cpforge-census-2"


def default_cache_dir() -> Path:
    env = os.environ.get("CPFORGE_CACHE")
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "cpforge"


def params_key(p: SearchParams) -> tuple[int, ...]:
    return (p.k, p.D, p.rho_num, p.rho_den, p.r_min, p.r_max)


@dataclass(frozen=True)
class CacheRecord:
    key: tuple[int, ...]
    value: CountResult
    engine_version: str = ENGINE_VERSION

    def to_line(self) -> str:
        value = {"n1": self.value.n1, "n2": self.value.n2, "n3": self.value.n3}
        return f"{json.dumps(list(self.key))}\t{json.dumps(value)}\t{self.engine_version}\n"

    @classmethod
    def from_line(cls, line: str) -> "CacheRecord":
        key, value, version = line.rstrip("\n").split("\t")
        v = json.loads(value)
        return cls(tuple(json.loads(key)), CountResult(v["n1"], v["n2"], v["n3"]), version)


class CountCache:
    def __init__(self, directory: str | Path | None = None):
        self.path = Path(directory or default_cache_dir()) / "counts.tsv"
        self._records: dict[tuple[int, ...], CountResult] | None = None

    def _load(self) -> dict[tuple[int, ...], CountResult]:
        if self._records is None:
            self._records = {}
            if self.path.exists():
                for line in self.path.read_text().splitlines():
                    if not line.strip():
                        continue
                    try:
                        rec = CacheRecord.from_line(line)
                    except (ValueError, KeyError):
                        continue  # tolerate a truncated trailing line
                    if rec.engine_version == ENGINE_VERSION:
                        self._records[rec.key] = rec.value
        return self._records

    def get(self, p: SearchParams) -> CountResult | None:
        return self._load().get(params_key(p))

    def put(self, p: SearchParams, value: CountResult) -> None:
        records = self._load()
        key = params_key(p)
        if records.get(key) == value:
            return
        records[key] = value
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a") as fh:
            fh.write(CacheRecord(key, value).to_line())
