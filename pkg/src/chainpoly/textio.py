"""Line-oriented text formats for posets, chain families and weights.

Poset file::

    # comment
    p 7
    c 1 3
    c 1 4

Chain family file: one chain per line, elements comma-separated ascending.
Weights file: ``<element> <numerator>/<denominator>`` per line (a bare
integer or decimal is also accepted).
"""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .errors import ParseError
from .poset import ChainFamily, Poset, build_poset


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_poset(text: str) -> Poset:
    size = None
    covers = []
    for lineno, line in _lines(text):
        parts = line.split()
        try:
            if parts[0] == "p" and len(parts) == 2:
                if size is not None:
                    raise ParseError(f"line {lineno}: duplicate header")
                size = int(parts[1])
            elif parts[0] == "c" and len(parts) == 3:
                covers.append((int(parts[1]), int(parts[2])))
            else:
                raise ParseError(f"line {lineno}: unrecognized record {line!r}")
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if size is None:
        raise ParseError("missing 'p <int>' header")
    return build_poset(size, covers)


def format_poset(P: Poset) -> str:
    lines = [f"p {P.size}"]
    lines += [f"c {x} {y}" for x, y in sorted(P.covers)]
    return "\n".join(lines) + "\n"


def read_poset(path: str | Path) -> Poset:
    return parse_poset(Path(path).read_text(encoding="utf-8"))


def parse_family(P: Poset, text: str) -> ChainFamily:
    chains = []
    for lineno, line in _lines(text):
        try:
            chains.append([int(t) for t in line.split(",")])
        except ValueError:
            raise ParseError(f"line {lineno}: bad chain {line!r}") from None
    return P.family(chains)


def format_family(F: ChainFamily) -> str:
    return "".join(",".join(map(str, c)) + "\n" for c in F)


def parse_weights(text: str) -> dict[int, Fraction]:
    weights: dict[int, Fraction] = {}
    for lineno, line in _lines(text):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected '<element> <value>'")
        try:
            weights[int(parts[0])] = Fraction(parts[1])
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"line {lineno}: bad weight {line!r}") from None
    return weights


def format_weights(weights: dict[int, Fraction]) -> str:
    return "".join(f"{x} {fraction_str(v)}\n" for x, v in sorted(weights.items()))


def fraction_str(q: Fraction) -> str:
    """Exact rendering: ``"3/2"``, or ``"2"`` for integers."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
