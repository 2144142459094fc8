"""Loader for the system corpus and its hand-derived metadata lines.

``#! point a, b | mu`` records a rational solution with multiplicity mu;
``#! real: N`` records the number of distinct real solutions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from eigenpoly.cli import SystemFile, parse_system
from eigenpoly.quotient import QuotientAlgebra

CORPUS = Path(__file__).resolve().parent.parent / "corpus"
_POINT = re.compile(r"#!\s*point\s+(.*)\|\s*(\d+)\s*$")
_REAL = re.compile(r"#!\s*real:\s*(\d+)\s*$")


@dataclass(frozen=True)
class Entry:
    name: str
    path: Path
    system: SystemFile
    points: tuple[tuple[tuple[Fraction, ...], int], ...] | None
    real_count: int | None


def _read(path: Path) -> Entry:
    text = path.read_text(encoding="utf-8")
    points, real = [], None
    for line in text.splitlines():
        if m := _POINT.match(line.strip()):
            coords = tuple(Fraction(c.strip()) for c in m.group(1).split(","))
            points.append((coords, int(m.group(2))))
        elif m := _REAL.match(line.strip()):
            real = int(m.group(1))
    return Entry(path.stem, path, parse_system(text, str(path)), tuple(points) or None, real)


@lru_cache(maxsize=None)
def entries() -> tuple[Entry, ...]:
    return tuple(_read(p) for p in sorted(CORPUS.glob("*.txt")))


def rational_entries() -> tuple[Entry, ...]:
    return tuple(e for e in entries() if e.points is not None)


def irrational_entries() -> tuple[Entry, ...]:
    return tuple(e for e in entries() if e.points is None)


@lru_cache(maxsize=None)
def algebra(name: str) -> QuotientAlgebra:
    e = next(e for e in entries() if e.name == name)
    return QuotientAlgebra.from_generators(e.system.polynomials)
