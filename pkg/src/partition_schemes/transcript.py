"""Append-only message log (bulletin board) persisted as JSON lines."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterator


@dataclass(frozen=True)
class Record:
    seq: int
    role: str
    kind: str
    payload: dict

    def to_json(self) -> str:
        return json.dumps(
            {"seq": self.seq, "role": self.role, "kind": self.kind, "payload": self.payload},
            sort_keys=True,
            separators=(",", ":"),
        )


@dataclass
class Transcript:
    records: list[Record] = field(default_factory=list)

    def append(self, role: str, kind: str, **payload: Any) -> Record:
        record = Record(len(self.records), role, kind, payload)
        self.records.append(record)
        return record

    def __iter__(self) -> Iterator[Record]:
        return iter(self.records)

    def __len__(self):
        return len(self.records)

    def of_kind(self, kind: str, **match) -> list[Record]:
        return [
            rec
            for rec in self.records
            if rec.kind == kind and all(rec.payload.get(k) == v for k, v in match.items())
        ]

    def one(self, kind: str, **match) -> Record:
        found = self.of_kind(kind, **match)
        if len(found) != 1:
            raise LookupError(f"expected one {kind!r} record matching {match}, found {len(found)}")
        return found[0]

    def to_jsonl(self) -> str:
        return "".join(rec.to_json() + "\n" for rec in self.records)

    @classmethod
    def from_jsonl(cls, text: str) -> "Transcript":
        records = []
        for line in text.splitlines():
            if not line.strip():
                continue
            obj = json.loads(line)
            records.append(Record(obj["seq"], obj["role"], obj["kind"], obj["payload"]))
        return cls(records)

    def write(self, path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_jsonl())
        return path

    @classmethod
    def read(cls, path) -> "Transcript":
        return cls.from_jsonl(Path(path).read_text())
