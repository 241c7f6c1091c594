"""Faces of the maximal chain polytope, decided combinatorially.

``conv(F)`` is a face exactly when ``F`` has no incomplete crown or star; it
is moreover a simplex exactly when ``F`` has no crown or star at all.  The
closure of a family repeatedly adds every swapped chain until all of its
structures are complete, which yields the smallest face containing it.
"""
from __future__ import annotations

from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, permutations

from . import crowns
from .crowns import Verdict, classify_structure, find_crowns, find_stars
from .errors import CapExceededError, EqualChainsError, NotApplicableError, NotClosedError, NotNestedError
from .geometry import family_dim
from .poset import Chain, ChainFamily, Poset, grid

DEFAULT_MAX_CHAINS = 20


class FaceTag(str, Enum):
    SIMPLEX = "SimplexFace"
    NON_SIMPLEX = "NonSimplexFace"
    NOT_FACE = "NotFace"


@dataclass(frozen=True)
class FaceClass:
    tag: FaceTag
    dim: int | None = None

    def to_json(self) -> dict:
        out: dict = {"tag": self.tag.value}
        if self.dim is not None:
            out["dim"] = self.dim
        return out


def face_class(P: Poset, F: ChainFamily, max_rho: int | None = None) -> FaceClass:
    if not F:
        raise ValueError("family must be nonempty")
    verdict = classify_structure(P, F, max_rho).verdict
    if verdict is Verdict.NO_STRUCTURE:
        return FaceClass(FaceTag.SIMPLEX, len(F) - 1)
    if verdict is Verdict.COMPLETE:
        return FaceClass(FaceTag.NON_SIMPLEX, family_dim(P, F))
    return FaceClass(FaceTag.NOT_FACE)


# -- closure ------------------------------------------------------------------------

def star_step(P: Poset, F: ChainFamily, max_rho: int | None = None) -> ChainFamily:
    """``F`` together with every crown swap and every star swap of ``F``."""
    if not F:
        return F
    extra = crowns.crown_swap_set(P, F, max_rho) | crowns.star_swap_set(P, F)
    return F | extra


def closure_trace(P: Poset, F: ChainFamily, max_rho: int | None = None) -> list[ChainFamily]:
    """``[F, F*, F**, ...]`` up to the first fixpoint, each step strictly larger."""
    steps = [F]
    while True:
        nxt = star_step(P, steps[-1], max_rho)
        if len(nxt) == len(steps[-1]):
            return steps
        if not steps[-1] < nxt:
            raise AssertionError("closure step did not grow monotonically")
        steps.append(nxt)


def closure(P: Poset, F: ChainFamily, max_rho: int | None = None) -> ChainFamily:
    return closure_trace(P, F, max_rho)[-1]


def is_closed(P: Poset, F: ChainFamily) -> bool:
    return not F or len(star_step(P, F)) == len(F)


# -- edges and rectangles --------------------------------------------------------------

def _pair(P: Poset, C1, C2) -> tuple[Chain, Chain]:
    c1, c2 = P.chain(C1), P.chain(C2)
    if c1 == c2:
        raise EqualChainsError("the two chains coincide")
    return c1, c2


def is_edge(P: Poset, C1, C2) -> bool:
    """Whether ``conv(C1, C2)`` is an edge of the polytope."""
    c1, c2 = _pair(P, C1, C2)
    return not crowns.diamond_poset(P, c1, c2)[1]


def rectangle_completion(P: Poset, C1, C2) -> tuple[Chain, Chain]:
    """The two chains completing a non-edge ``{C1, C2}`` to a rectangle.

    Uses the first 2-crown of the pair when there is one, otherwise the first
    star crossing at its lowest shared element.
    """
    c1, c2 = _pair(P, C1, C2)
    F = ChainFamily.of([c1, c2])
    found = find_crowns(P, F, max_rho=2)
    if found:
        a, b = found[0].alphas, found[0].betas
        if a[0] not in c1 or b[0] not in c1:
            a, b = a[::-1], b[::-1]
        d1 = crowns.prefix(c1, a[0]) + crowns.suffix(c2, b[1])
        d2 = crowns.prefix(c2, a[1]) + crowns.suffix(c1, b[0])
    else:
        stars = find_stars(P, F)
        if not stars:
            raise NotApplicableError("the pair spans an edge")
        g = min(g for _, _, g in stars[0].witness_pairs)
        d1 = crowns.star_swap(c1, c2, g)
        d2 = crowns.star_swap(c2, c1, g)
    vecs = [P.incidence(c) for c in (c1, c2, d1, d2)]
    if [x + y for x, y in zip(vecs[0], vecs[1])] != [x + y for x, y in zip(vecs[2], vecs[3])]:
        raise AssertionError("rectangle completion broke the vertex-sum identity")
    return d1, d2


def is_rectangle(vectors: Iterable) -> bool:
    """Four distinct 0/1 points form a rectangle: v4 = v2 + v3, v2 . v3 = 0 after relabeling."""
    vs = [tuple(v) for v in vectors]
    if len(vs) != 4 or len(set(vs)) != 4:
        return False
    for base in range(4):
        rest = [v for k, v in enumerate(vs) if k != base]
        for s2, s3, s4 in permutations(rest):
            v2 = [a - b for a, b in zip(s2, vs[base])]
            v3 = [a - b for a, b in zip(s3, vs[base])]
            v4 = [a - b for a, b in zip(s4, vs[base])]
            if all(x + y == z for x, y, z in zip(v2, v3, v4)) and sum(x * y for x, y in zip(v2, v3)) == 0:
                return True
    return False


# -- whole-polytope data ---------------------------------------------------------------

def polytope_dim(P: Poset) -> int:
    return family_dim(P, P.maximal_chains())


@dataclass(frozen=True)
class FaceLattice:
    faces: tuple[ChainFamily, ...]
    dims: tuple[int, ...]
    covers: tuple[tuple[int, int], ...]

    def f_vector(self) -> tuple[int, ...]:
        top = max(self.dims)
        counts = Counter(d for d in self.dims if d >= 0)
        return tuple(counts[d] for d in range(top + 1))

    def to_json(self) -> dict:
        from .poset import format_chain

        return {
            "faces": [{"chains": [format_chain(c) for c in f], "dim": d} for f, d in zip(self.faces, self.dims)],
            "covers": [list(pair) for pair in self.covers],
        }

    def to_dot(self) -> str:
        from .poset import format_chain

        lines = ["digraph face_lattice {", "  rankdir=BT;"]
        for i, (f, d) in enumerate(zip(self.faces, self.dims)):
            label = "∅" if not f else "\\n".join(format_chain(c) for c in f)
            lines.append(f'  f{i} [label="{label}", dim={d}];')
        lines += [f"  f{i} -> f{j};" for i, j in self.covers]
        lines.append("}")
        return "\n".join(lines) + "\n"


def _check_cap(P: Poset, cap: int | None) -> ChainFamily:
    everything = P.maximal_chains()
    if cap is not None and len(everything) > cap:
        raise CapExceededError(len(everything), cap)
    return everything


def _closed_masks_next_closure(P: Poset, chains: tuple[Chain, ...]) -> list[int]:
    n = len(chains)

    def close(mask: int) -> int:
        if not mask:
            return 0
        fam = ChainFamily(tuple(chains[i] for i in range(n) if mask >> i & 1))
        got = closure(P, fam).as_set()
        return sum(1 << i for i, c in enumerate(chains) if c in got)

    out = [0]
    A = 0
    full = (1 << n) - 1
    while A != full:
        for i in reversed(range(n)):
            bit = 1 << i
            if A & bit:
                A &= ~bit
                continue
            B = close(A | bit)
            low = bit - 1
            if B & low == A & low:
                A = B
                break
        out.append(A)
    return out


def _closed_masks_brute(P: Poset, chains: tuple[Chain, ...]) -> list[int]:
    n = len(chains)
    out = [0]
    for mask in range(1, 1 << n):
        fam = ChainFamily(tuple(chains[i] for i in range(n) if mask >> i & 1))
        if classify_structure(P, fam).verdict is not Verdict.INCOMPLETE:
            out.append(mask)
    return out


def face_lattice(P: Poset, max_chains: int | None = DEFAULT_MAX_CHAINS, method: str = "closure") -> FaceLattice:
    """Every closed family (including the empty one) with dims and covers.

    ``method="brute"`` tests all subsets directly instead of generating
    closed families; meant for cross-validation on tiny posets.
    """
    chains = _check_cap(P, max_chains).chains
    if method == "closure":
        masks = _closed_masks_next_closure(P, chains)
    elif method == "brute":
        masks = _closed_masks_brute(P, chains)
    else:
        raise ValueError(f"unknown method {method!r}")
    masks.sort(key=lambda m: (m.bit_count(), [chains[i] for i in range(len(chains)) if m >> i & 1]))
    faces = tuple(ChainFamily(tuple(chains[i] for i in range(len(chains)) if m >> i & 1)) for m in masks)
    dims = tuple(family_dim(P, f) for f in faces)

    covers = []
    for i, lo in enumerate(masks):
        ups = [j for j, hi in enumerate(masks) if hi != lo and hi & lo == lo]
        for j in ups:
            hi = masks[j]
            if not any(masks[k] != hi and masks[k] & hi == masks[k] for k in ups if k != j):
                covers.append((i, j))
    return FaceLattice(faces, dims, tuple(sorted(covers)))


def f_vector(P: Poset, max_chains: int | None = DEFAULT_MAX_CHAINS) -> tuple[int, ...]:
    return face_lattice(P, max_chains).f_vector()


def is_covering_in_K(P: Poset, F1: ChainFamily, F2: ChainFamily) -> bool:
    """Whether ``F1 < F2`` is a covering pair of closed families.

    Any closed family strictly between would contain the closure of
    ``F1 + {D}`` for some ``D`` in ``F2 - F1``, so checking that every such
    closure is all of ``F2`` is both sufficient and necessary.
    """
    for F in (F1, F2):
        if not is_closed(P, F):
            raise NotClosedError(f"{F} is not closed")
    if not F1 < F2:
        raise NotNestedError(f"{F1} is not strictly inside {F2}")
    return all(closure(P, F1 | [d]) == F2 for d in F2.difference(F1))


# -- the grid flag -------------------------------------------------------------------

@dataclass(frozen=True)
class GridFlag:
    m: int
    n: int
    indices: tuple[tuple[int, int], ...]
    supports: tuple[frozenset[tuple[int, int]], ...]
    stages: tuple[ChainFamily, ...]
    coverings: tuple[bool, ...]

    @property
    def families(self) -> tuple[ChainFamily, ...]:
        """The full flag, starting from the empty family."""
        return (ChainFamily(),) + self.stages

    @property
    def valid(self) -> bool:
        return all(self.coverings)

    @property
    def length(self) -> int:
        return len(self.families)


def grid_label(n: int, s: int, t: int) -> int:
    return (s - 1) * n + t


def grid_support(m: int, n: int, x: int, y: int) -> frozenset[tuple[int, int]]:
    """The element set S^(x, y) of the grid, as (s, t) index pairs."""
    base = {(s, t) for s in range(1, m + 1) for t in range(1, n + 1) if t == 1 or s == m}
    if (x, y) == (m, 1):
        return frozenset(base)
    d = y - x
    return frozenset(base | {
        (s, t) for s in range(1, m + 1) for t in range(1, n + 1)
        if t - s < d or (t - s == d and t <= y)
    })


def grid_successor(m: int, n: int, x: int, y: int) -> tuple[int, int]:
    if (x, y) == (m, 1):
        return (m - 1, 2)
    if x == m - 1 or y == n:
        return (x - y + 1, 2) if x > y else (1, y - x + 2)
    return (x + 1, y + 1)


def grid_flag(m: int, n: int, verify: bool = True) -> GridFlag:
    """The explicit maximal chain of closed families on the m x n grid.

    Starts at the single chain along the bottom-left border and walks the
    diagonals to the full family; ``verify`` checks every step is a covering.
    """
    if m < 1 or n < 1:
        raise ValueError("grid sides must be positive")
    P = grid(m, n)
    everything = P.maximal_chains()
    if m == 1 or n == 1:
        idx = [(m, 1)]
    else:
        idx = [(m, 1)]
        while idx[-1] != (1, n):
            idx.append(grid_successor(m, n, *idx[-1]))
    supports = [grid_support(m, n, x, y) for x, y in idx]
    stages = []
    for S in supports:
        labels = {grid_label(n, s, t) for s, t in S}
        stages.append(ChainFamily(tuple(c for c in everything if labels.issuperset(c))))
    coverings = []
    if verify:
        prev = ChainFamily()
        for fam in stages:
            coverings.append(is_covering_in_K(P, prev, fam))
            prev = fam
    return GridFlag(m, n, tuple(idx), tuple(supports), tuple(stages), tuple(coverings))


def brute_closed_subsets(P: Poset) -> list[ChainFamily]:
    """All nonempty families without an incomplete structure, by enumeration."""
    chains = P.maximal_chains().chains
    out = []
    for k in range(1, len(chains) + 1):
        for combo in combinations(chains, k):
            F = ChainFamily(combo)
            if classify_structure(P, F).verdict is not Verdict.INCOMPLETE:
                out.append(F)
    return out
