"""Finite posets on the labels 1..p, their maximal chains, and composites.

A :class:`Poset` stores its Hasse diagram (the cover relation) together with
bitmask reachability tables, so order queries are O(1).  Chains are plain
tuples of labels listed bottom to top; a :class:`ChainFamily` is a sorted,
duplicate-free tuple of such chains.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import cached_property

from .errors import CycleError, LabelError, NotMaximalChainError, ParseError

Chain = tuple[int, ...]

NEG_INF = float("-inf")
POS_INF = float("inf")

INTERVAL_KINDS = ("open", "closed", "down_closed", "up_closed")


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """An immutable finite poset on ``{1, ..., size}``.

    Use :func:`build_poset` rather than calling the constructor directly; it
    validates labels, rejects cycles and transitively reduces the input.
    """

    def __init__(self, size: int, covers: frozenset[tuple[int, int]],
                 above: tuple[int, ...], below: tuple[int, ...],
                 labels: tuple | None = None):
        self.size = size
        self.covers = covers
        self.labels = labels
        self._above = above
        self._below = below
        up: list[list[int]] = [[] for _ in range(size + 1)]
        down: list[list[int]] = [[] for _ in range(size + 1)]
        for x, y in sorted(covers):
            up[x].append(y)
            down[y].append(x)
        self._up = tuple(tuple(u) for u in up)
        self._down = tuple(tuple(d) for d in down)

    # -- basic order queries -------------------------------------------------

    @property
    def elements(self) -> range:
        return range(1, self.size + 1)

    def lt(self, x: int, y: int) -> bool:
        return bool(self._above[x] >> y & 1)

    def leq(self, x: int, y: int) -> bool:
        return x == y or self.lt(x, y)

    def comparable(self, x: int, y: int) -> bool:
        return x == y or self.lt(x, y) or self.lt(y, x)

    def is_cover(self, x: int, y: int) -> bool:
        return (x, y) in self.covers

    def upper_covers(self, x: int) -> tuple[int, ...]:
        """Elements covering ``x``, ascending."""
        return self._up[x]

    def lower_covers(self, x: int) -> tuple[int, ...]:
        """Elements covered by ``x``, ascending."""
        return self._down[x]

    def above_mask(self, x: int) -> int:
        return self._above[x]

    def below_mask(self, x: int) -> int:
        return self._below[x]

    @cached_property
    def minimal_elements(self) -> tuple[int, ...]:
        return tuple(x for x in self.elements if not self._down[x])

    @cached_property
    def maximal_elements(self) -> tuple[int, ...]:
        return tuple(x for x in self.elements if not self._up[x])

    @cached_property
    def topological_order(self) -> tuple[int, ...]:
        return tuple(sorted(self.elements, key=lambda x: (self._below[x].bit_count(), x)))

    def lt_pairs(self) -> frozenset[tuple[int, int]]:
        """The full strict order as a set of pairs ``(x, y)`` with ``x < y``."""
        return frozenset((x, y) for x in self.elements for y in _bits(self._above[x]))

    def interval(self, kind: str, x=NEG_INF, y=POS_INF, within: Iterable[int] | None = None) -> frozenset[int]:
        return interval(self, kind, x, y, within)

    # -- chains --------------------------------------------------------------

    def is_chain(self, elements: Iterable[int]) -> bool:
        elems = list(elements)
        return all(self.comparable(a, b) for i, a in enumerate(elems) for b in elems[i + 1:])

    def sort_chain(self, elements: Iterable[int]) -> Chain:
        """Order a set of pairwise comparable elements bottom to top."""
        elems = set(elements)
        for x in elems:
            if not 1 <= x <= self.size:
                raise LabelError(f"element {x} is not in 1..{self.size}")
        return tuple(sorted(elems, key=lambda z: (self._below[z].bit_count(), z)))

    def is_maximal_chain(self, chain: Iterable[int]) -> bool:
        c = self.sort_chain(chain)
        if not c or c[0] not in self.minimal_elements or c[-1] not in self.maximal_elements:
            return False
        return all(self.is_cover(a, b) for a, b in zip(c, c[1:]))

    def chain(self, elements: Iterable[int] | str) -> Chain:
        """Validate and canonicalize one maximal chain.

        Accepts an iterable of labels or a string such as ``"1368"`` or
        ``"1,3,6,8"``.
        """
        if isinstance(elements, str):
            elements = parse_chain(elements)
        c = self.sort_chain(elements)
        if not self.is_maximal_chain(c):
            raise NotMaximalChainError(f"{format_chain(c)} is not a maximal chain")
        return c

    def family(self, chains: Iterable[Iterable[int] | str] | str) -> ChainFamily:
        """Build a validated :class:`ChainFamily` of this poset.

        A single string is split on ``;``, e.g. ``"125;1368;478"``.
        """
        if isinstance(chains, str):
            chains = [s for s in chains.split(";") if s.strip()]
        return ChainFamily.of(self.chain(c) for c in chains)

    @cached_property
    def _chain_list(self) -> tuple[Chain, ...]:
        out: list[Chain] = []
        path: list[int] = []

        def walk(x: int) -> None:
            path.append(x)
            if not self._up[x]:
                out.append(tuple(path))
            for y in self._up[x]:
                walk(y)
            path.pop()

        for m in self.minimal_elements:
            walk(m)
        return tuple(sorted(out))

    def maximal_chains(self) -> ChainFamily:
        return ChainFamily(self._chain_list)

    def incidence(self, elements: Iterable[int]) -> tuple[int, ...]:
        """0/1 incidence vector ``e_Q`` of an element set, coordinates 1..p."""
        q = set(elements)
        return tuple(1 if x in q else 0 for x in self.elements)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.size == other.size and self.covers == other.covers

    def __hash__(self) -> int:
        return hash((self.size, self.covers))

    def __repr__(self) -> str:
        return f"Poset(size={self.size}, covers={sorted(self.covers)})"


@dataclass(frozen=True)
class ChainFamily:
    """Duplicate-free set of maximal chains kept in lexicographic order."""

    chains: tuple[Chain, ...] = ()

    @classmethod
    def of(cls, chains: Iterable[Iterable[int]]) -> ChainFamily:
        return cls(tuple(sorted({tuple(c) for c in chains})))

    def __iter__(self) -> Iterator[Chain]:
        return iter(self.chains)

    def __len__(self) -> int:
        return len(self.chains)

    def __contains__(self, chain: object) -> bool:
        return chain in self._set

    def __bool__(self) -> bool:
        return bool(self.chains)

    @cached_property
    def _set(self) -> frozenset[Chain]:
        return frozenset(self.chains)

    def as_set(self) -> frozenset[Chain]:
        return self._set

    def __or__(self, other: Iterable[Chain]) -> ChainFamily:
        return ChainFamily.of([*self.chains, *other])

    def __le__(self, other: ChainFamily) -> bool:
        return self._set <= other._set

    def __lt__(self, other: ChainFamily) -> bool:
        return self._set < other._set

    def difference(self, other: Iterable[Chain]) -> ChainFamily:
        drop = set(other)
        return ChainFamily(tuple(c for c in self.chains if c not in drop))

    def through(self, *elements: int) -> ChainFamily:
        """The sub-family of chains containing every given element."""
        return ChainFamily(tuple(c for c in self.chains if all(x in c for x in elements)))

    def __str__(self) -> str:
        return "{" + ", ".join(format_chain(c) for c in self.chains) + "}"


# -- construction -------------------------------------------------------------

def build_poset(p: int, covers: Iterable[tuple[int, int]], labels: tuple | None = None) -> Poset:
    """Build a poset on ``1..p`` from any acyclic relation.

    Redundant pairs are dropped by transitive reduction.  Raises
    :class:`CycleError` on a directed cycle and :class:`LabelError` when a
    label falls outside ``1..p``.
    """
    if p < 1:
        raise LabelError("a poset needs at least one element")
    succ: list[set[int]] = [set() for _ in range(p + 1)]
    for x, y in covers:
        for z in (x, y):
            if not (isinstance(z, int) and 1 <= z <= p):
                raise LabelError(f"label {z!r} is not in 1..{p}")
        if x == y:
            raise CycleError(f"self-loop on {x}")
        succ[x].add(y)

    indeg = [0] * (p + 1)
    for x in range(1, p + 1):
        for y in succ[x]:
            indeg[y] += 1
    order: list[int] = []
    ready = [x for x in range(1, p + 1) if indeg[x] == 0]
    while ready:
        x = ready.pop()
        order.append(x)
        for y in succ[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                ready.append(y)
    if len(order) != p:
        raise CycleError("cover relation contains a directed cycle")

    above = [0] * (p + 1)
    for x in reversed(order):
        m = 0
        for y in succ[x]:
            m |= (1 << y) | above[y]
        above[x] = m
    below = [0] * (p + 1)
    for x in range(1, p + 1):
        for y in _bits(above[x]):
            below[y] |= 1 << x

    reduced = set()
    for x in range(1, p + 1):
        via = 0
        for z in succ[x]:
            via |= above[z]
        for y in succ[x]:
            if not via >> y & 1:
                reduced.add((x, y))
    return Poset(p, frozenset(reduced), tuple(above), tuple(below), labels)


def interval(P: Poset, kind: str, x=NEG_INF, y=POS_INF, within: Iterable[int] | None = None) -> frozenset[int]:
    """Interval of ``P`` between ``x`` and ``y``.

    ``kind`` is one of ``open`` (x, y), ``closed`` [x, y], ``down_closed``
    (x, y] and ``up_closed`` [x, y).  Either bound may be the sentinel
    :data:`NEG_INF` / :data:`POS_INF`, so ``down_closed`` with ``x=NEG_INF`` is
    the down-set of ``y``.  ``within`` intersects the result with a subset.
    """
    if kind not in INTERVAL_KINDS:
        raise ValueError(f"unknown interval kind {kind!r}")
    low_closed = kind in ("closed", "up_closed")
    high_closed = kind in ("closed", "down_closed")
    out = set()
    for z in P.elements:
        if x != NEG_INF and not (P.leq(x, z) if low_closed else P.lt(x, z)):
            continue
        if y != POS_INF and not (P.leq(z, y) if high_closed else P.lt(z, y)):
            continue
        out.add(z)
    if within is not None:
        out &= set(within)
    return frozenset(out)


def chain_poset(n: int) -> Poset:
    """The n-element chain 1 < 2 < ... < n."""
    return build_poset(n, [(i, i + 1) for i in range(1, n)])


def antichain(n: int) -> Poset:
    return build_poset(n, [])


def compose(kind: str, P1: Poset, P2: Poset) -> tuple[Poset, dict]:
    """Disjoint union, ordinal sum or direct product of two posets.

    Returns the composite and the relabeling map.  For the two sums the map
    sends ``(1, x)`` to ``x`` and ``(2, y)`` to ``p1 + y``; for the product it
    sends ``(x, y)`` to ``(x - 1) * p2 + y``.
    """
    p1, p2 = P1.size, P2.size
    if kind in ("disjoint_union", "ordinal_sum"):
        relabel = {(1, x): x for x in P1.elements}
        relabel.update({(2, y): p1 + y for y in P2.elements})
        covers = [(x, y) for x, y in P1.covers]
        covers += [(p1 + x, p1 + y) for x, y in P2.covers]
        if kind == "ordinal_sum":
            covers += [(x, p1 + y) for x in P1.maximal_elements for y in P2.minimal_elements]
        return build_poset(p1 + p2, covers), relabel
    if kind == "direct_product":
        relabel = {(x, y): (x - 1) * p2 + y for x in P1.elements for y in P2.elements}
        covers = [(relabel[a, y], relabel[b, y]) for a, b in P1.covers for y in P2.elements]
        covers += [(relabel[x, a], relabel[x, b]) for x in P1.elements for a, b in P2.covers]
        return build_poset(p1 * p2, covers), relabel
    raise ValueError(f"unknown composition {kind!r}")


def grid(m: int, n: int) -> Poset:
    """The product of an m-chain and an n-chain, labeled row-major."""
    return compose("direct_product", chain_poset(m), chain_poset(n))[0]


# -- chain text ----------------------------------------------------------------

def format_chain(chain: Iterable[int]) -> str:
    """Render as ``1356`` when every label is a single digit, else ``1,3,5,6``."""
    c = list(chain)
    if all(1 <= x <= 9 for x in c):
        return "".join(map(str, c))
    return ",".join(map(str, c))


def parse_chain(text: str) -> list[int]:
    text = text.strip()
    try:
        if "," in text:
            return [int(t) for t in text.split(",") if t.strip()]
        if text.isdigit():
            return [int(ch) for ch in text]
    except ValueError:
        pass
    raise ParseError(f"cannot parse chain {text!r}")
