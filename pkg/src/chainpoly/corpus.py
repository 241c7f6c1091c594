"""Bundled example posets P1..P5 and named grid posets."""
from __future__ import annotations

import re
from importlib import resources

from .poset import Poset, grid
from .textio import parse_poset

NAMES = ("p1", "p2", "p3", "p4", "p5")

_GRID = re.compile(r"^(?:grid)?(\d+)x(\d+)$")


def load(name: str) -> Poset:
    """Load ``p1``..``p5`` or a grid spec such as ``3x3`` / ``grid4x4``."""
    key = name.lower().removesuffix(".poset")
    if key in NAMES:
        text = resources.files("chainpoly.data").joinpath(f"{key}.poset").read_text(encoding="utf-8")
        return parse_poset(text)
    m = _GRID.match(key)
    if m:
        return grid(int(m.group(1)), int(m.group(2)))
    raise KeyError(f"no bundled poset named {name!r}")


def parse_grid(spec: str) -> tuple[int, int]:
    m = _GRID.match(spec.lower())
    if not m:
        raise ValueError(f"bad grid spec {spec!r}, expected e.g. 4x4")
    return int(m.group(1)), int(m.group(2))
