"""The linearized-corpus wire format.

One JSON object per line with fields ``id``, ``words`` and ``tokens``
(the latter two space-joined).  This mirrors the file contract of the
treeseq toolkit; the bridge never interprets the tokens themselves.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, TextIO


class ContractError(ValueError):
    """A corpus file violates the id/words/tokens line contract."""


@dataclass(frozen=True)
class Record:
    id: str
    words: str | None = None
    tokens: str | None = None


def read_records(path: str, need_words: bool = True,
                 need_tokens: bool = False) -> list[Record]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ContractError("%s:%d: %s" % (path, lineno, exc)) from exc
            if not isinstance(obj, dict) or "id" not in obj:
                raise ContractError("%s:%d: record needs an id" % (path, lineno))
            rec = Record(id=str(obj["id"]), words=obj.get("words"),
                         tokens=obj.get("tokens"))
            if need_words and not rec.words:
                raise ContractError(
                    "%s:%d: record %s has no words" % (path, lineno, rec.id))
            if need_tokens and not rec.tokens:
                raise ContractError(
                    "%s:%d: record %s has no tokens" % (path, lineno, rec.id))
            records.append(rec)
    return records


def write_records(records: Iterable[Record], out: TextIO) -> None:
    for rec in records:
        obj = {"id": rec.id}
        if rec.words is not None:
            obj["words"] = rec.words
        if rec.tokens is not None:
            obj["tokens"] = rec.tokens
        out.write(json.dumps(obj, ensure_ascii=False))
        out.write("\n")
