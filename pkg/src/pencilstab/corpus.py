"""The shipped pencil corpus and its loader.

A corpus directory holds JSON files of the form
``{"version": 1, "suite": name, "pencils": [{"name", "degree", "f", "g", "expect"}]}``.
``expect`` names the verdict (and optionally the criterion) the suite checks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .pencil import Pencil

SUITES = ("multiplicity", "one-sss", "two-sss", "lct", "misc")


@dataclass(frozen=True)
class CorpusEntry:
    suite: str
    name: str
    degree: int
    f: str
    g: str
    expect: dict

    def pencil(self) -> Pencil:
        return Pencil.from_strings(self.f, self.g, self.degree)

    def to_json(self) -> dict:
        return {"name": self.name, "degree": self.degree, "f": self.f, "g": self.g, "expect": self.expect}


class CorpusError(ValueError):
    pass


def default_corpus_dir() -> Path:
    return Path(str(resources.files("pencilstab").joinpath("data/corpus")))


def load_corpus(path: str | Path | None = None) -> list[CorpusEntry]:
    """Entries from every *.json file of the directory, in file-name then listed order."""
    root = Path(path) if path is not None else default_corpus_dir()
    if not root.is_dir():
        raise CorpusError(f"corpus directory {root} does not exist")
    out = []
    for fp in sorted(root.glob("*.json")):
        data = json.loads(fp.read_text())
        if "pencils" not in data:
            continue
        suite = data["suite"]
        if suite not in SUITES:
            raise CorpusError(f"{fp.name}: unknown suite {suite!r}")
        for row in data["pencils"]:
            out.append(CorpusEntry(suite, row["name"], int(row["degree"]), row["f"], row["g"], dict(row.get("expect", {}))))
    if not out:
        raise CorpusError(f"corpus directory {root} holds no pencils")
    return out


def by_suite(entries: list[CorpusEntry], suite: str) -> list[CorpusEntry]:
    return [e for e in entries if e.suite == suite]
