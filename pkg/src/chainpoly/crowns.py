"""Guided crowns and guided stars of a chain family.

A guided rho-crown is an alternating cycle of covers
``a1 < b1 > a2 < b2 > ... < b_rho > a1`` with distinct a's and distinct b's,
where every rising cover ``a_i < b_i`` is realized inside some chain of the
family.  A guided star is a pair of realized intervals ``(a1, b1)`` and
``(a2, b2)`` with incomparable bottoms and incomparable tops that cross at a
shared element gamma.  Each structure is *complete* when every chain obtained
by swapping prefixes and suffixes at the crossing points is already in the
family.
"""
from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

from .errors import EqualChainsError, WitnessError
from .poset import Chain, ChainFamily, Poset, build_poset, format_chain


class Verdict(str, Enum):
    NO_STRUCTURE = "NoStructure"
    COMPLETE = "CompleteStructure"
    INCOMPLETE = "IncompleteStructure"


@dataclass(frozen=True)
class GuidedCrown:
    alphas: tuple[int, ...]
    betas: tuple[int, ...]
    witnesses: tuple[Chain, ...] = field(default=(), compare=False)

    @property
    def rho(self) -> int:
        return len(self.alphas)

    @property
    def sequence(self) -> tuple[int, ...]:
        return tuple(x for pair in zip(self.alphas, self.betas) for x in pair)

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.sequence)) + ")"


@dataclass(frozen=True)
class GuidedStar:
    alpha1: int
    beta1: int
    alpha2: int
    beta2: int
    # (C1, C2, gamma) with gamma strictly inside both realized intervals
    witness_pairs: tuple[tuple[Chain, Chain, int], ...] = field(default=(), compare=False)

    @property
    def sequence(self) -> tuple[int, int, int, int]:
        return (self.alpha1, self.beta1, self.alpha2, self.beta2)

    @property
    def gammas(self) -> tuple[int, ...]:
        return tuple(sorted({g for _, _, g in self.witness_pairs}))

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.sequence)) + ")"


class Completeness(NamedTuple):
    complete: bool
    missing: tuple[Chain, ...]


@dataclass(frozen=True)
class StructureReport:
    verdict: Verdict
    crowns: tuple[tuple[GuidedCrown, Completeness], ...]
    stars: tuple[tuple[GuidedStar, Completeness], ...]

    @property
    def incomplete(self) -> bool:
        return self.verdict is Verdict.INCOMPLETE


# -- chain surgery --------------------------------------------------------------

def prefix(chain: Chain, x: int) -> Chain:
    """``(-inf, x]`` along the chain."""
    return chain[: chain.index(x) + 1]


def suffix(chain: Chain, x: int) -> Chain:
    """``[x, inf)`` along the chain."""
    return chain[chain.index(x):]


def open_suffix(chain: Chain, x: int) -> Chain:
    """``(x, inf)`` along the chain."""
    return chain[chain.index(x) + 1:]


def crown_swap(c_i: Chain, alpha_i: int, c_prev: Chain, beta_prev: int) -> Chain:
    return prefix(c_i, alpha_i) + suffix(c_prev, beta_prev)


def star_swap(lower: Chain, upper: Chain, gamma: int) -> Chain:
    return prefix(lower, gamma) + open_suffix(upper, gamma)


def _guided_edges(F: Iterable[Chain]) -> dict[tuple[int, int], list[Chain]]:
    edges: dict[tuple[int, int], list[Chain]] = defaultdict(list)
    for c in F:
        for a, b in zip(c, c[1:]):
            edges[a, b].append(c)
    return edges


# -- crowns -----------------------------------------------------------------------

def _crown_cycles(P: Poset, guided: dict[tuple[int, int], list[Chain]], max_rho: int):
    """Yield (alphas, betas) for every crown, rotated to start at its least alpha."""
    rising: dict[int, list[int]] = defaultdict(list)
    for a, b in sorted(guided):
        rising[a].append(b)

    for start in sorted(rising):
        alphas = [start]
        betas: list[int] = []
        used_a = {start}
        used_b: set[int] = set()

        def extend(a: int):
            for b in rising[a]:
                if b in used_b:
                    continue
                betas.append(b)
                used_b.add(b)
                if len(alphas) >= 2 and P.is_cover(start, b):
                    yield tuple(alphas), tuple(betas)
                if len(alphas) < max_rho:
                    for a2 in P.lower_covers(b):
                        if a2 > start and a2 not in used_a and a2 in rising:
                            alphas.append(a2)
                            used_a.add(a2)
                            yield from extend(a2)
                            used_a.discard(a2)
                            alphas.pop()
                used_b.discard(b)
                betas.pop()

        yield from extend(start)


def find_crowns(P: Poset, F: ChainFamily, max_rho: int | None = None) -> list[GuidedCrown]:
    """All guided crowns of ``F`` with rho <= max_rho, up to rotation.

    Reflections are kept as distinct crowns.  ``max_rho`` defaults to ``p``.
    """
    max_rho = P.size if max_rho is None else max_rho
    guided = _guided_edges(F)
    out = [
        GuidedCrown(alphas, betas, tuple(guided[a, b][0] for a, b in zip(alphas, betas)))
        for alphas, betas in _crown_cycles(P, guided, max_rho)
    ]
    out.sort(key=lambda w: (w.rho, w.sequence))
    return out


def _crown_choices(F: ChainFamily, crown: GuidedCrown) -> list[list[Chain]]:
    choices = [F.through(a, b).chains for a, b in zip(crown.alphas, crown.betas)]
    if not all(choices):
        raise WitnessError(f"crown {crown} has an unrealized rising cover in the family")
    return [list(c) for c in choices]


def _validate_crown(P: Poset, crown: GuidedCrown) -> None:
    a, b = crown.alphas, crown.betas
    rho = len(a)
    if rho < 2 or len(b) != rho or len(set(a)) != rho or len(set(b)) != rho:
        raise WitnessError(f"{crown} is not a crown")
    for i in range(rho):
        if not (P.is_cover(a[i], b[i]) and P.is_cover(a[i], b[i - 1])):
            raise WitnessError(f"{crown} is not a crown")


# -- stars ------------------------------------------------------------------------

def find_stars(P: Poset, F: ChainFamily) -> list[GuidedStar]:
    """All guided stars of ``F`` up to swapping the two halves.

    Orientation is canonical: ``(alpha1, beta1) <= (alpha2, beta2)``.  Each
    star carries every witness triple ``(C1, C2, gamma)``.
    """
    found: dict[tuple[int, int, int, int], set] = defaultdict(set)
    chains = F.chains
    for c1 in chains:
        s1 = set(c1)
        for c2 in chains:
            if c1 >= c2:
                continue
            s2 = set(c2)
            pos1 = {x: i for i, x in enumerate(c1)}
            pos2 = {x: i for i, x in enumerate(c2)}
            for g in c1:
                if g not in s2:
                    continue
                lows1 = [x for x in c1[: pos1[g]] if x not in s2]
                lows2 = [x for x in c2[: pos2[g]] if x not in s1]
                highs1 = [x for x in c1[pos1[g] + 1:] if x not in s2]
                highs2 = [x for x in c2[pos2[g] + 1:] if x not in s1]
                a_pairs = [(a1, a2) for a1 in lows1 for a2 in lows2 if not P.comparable(a1, a2)]
                if not a_pairs:
                    continue
                b_pairs = [(b1, b2) for b1 in highs1 for b2 in highs2 if not P.comparable(b1, b2)]
                for a1, a2 in a_pairs:
                    for b1, b2 in b_pairs:
                        if (a1, b1) <= (a2, b2):
                            found[a1, b1, a2, b2].add((c1, c2, g))
                        else:
                            found[a2, b2, a1, b1].add((c2, c1, g))
    return [GuidedStar(*key, witness_pairs=tuple(sorted(found[key]))) for key in sorted(found)]


def _validate_star_witness(P: Poset, star: GuidedStar, c1: Chain, c2: Chain, g: int) -> bool:
    a1, b1, a2, b2 = star.sequence
    return (a1 in c1 and b1 in c1 and a2 in c2 and b2 in c2 and g in c1 and g in c2
            and P.lt(a1, g) and P.lt(g, b1) and P.lt(a2, g) and P.lt(g, b2))


def _star_witnesses(P: Poset, F: ChainFamily, star: GuidedStar) -> list[tuple[Chain, Chain, int]]:
    a1, b1, a2, b2 = star.sequence
    if P.comparable(a1, a2) or P.comparable(b1, b2) or not P.lt(a1, b1) or not P.lt(a2, b2):
        raise WitnessError(f"{star} is not a star")
    for c1, c2, g in star.witness_pairs:
        if c1 not in F or c2 not in F or not _validate_star_witness(P, star, c1, c2, g):
            raise WitnessError(f"witness ({c1}, {c2}, {g}) is not valid for {star} in this family")
    out = []
    for c1 in F.through(a1, b1):
        for c2 in F.through(a2, b2):
            for g in c1:
                if g in c2 and P.lt(a1, g) and P.lt(g, b1) and P.lt(a2, g) and P.lt(g, b2):
                    out.append((c1, c2, g))
    return out


# -- completeness and classification --------------------------------------------------

def check_complete(P: Poset, F: ChainFamily, s: GuidedCrown | GuidedStar) -> Completeness:
    """Whether every swap of ``s`` over every admissible witness lies in ``F``."""
    missing: set[Chain] = set()
    if isinstance(s, GuidedCrown):
        _validate_crown(P, s)
        for w in s.witnesses:
            if w not in F:
                raise WitnessError(f"witness {w} of {s} is not in the family")
        choices = _crown_choices(F, s)
        for i in range(s.rho):
            for c_i in choices[i]:
                for c_prev in choices[i - 1]:
                    d = crown_swap(c_i, s.alphas[i], c_prev, s.betas[i - 1])
                    if d not in F:
                        missing.add(d)
    else:
        triples = _star_witnesses(P, F, s)
        if not triples:
            raise WitnessError(f"{s} has no witness in the family")
        for c1, c2, g in triples:
            for d in (star_swap(c1, c2, g), star_swap(c2, c1, g)):
                if d not in F:
                    missing.add(d)
    return Completeness(not missing, tuple(sorted(missing)))


def classify_structure(P: Poset, F: ChainFamily, max_rho: int | None = None) -> StructureReport:
    crowns = tuple((w, check_complete(P, F, w)) for w in find_crowns(P, F, max_rho))
    stars = tuple((x, check_complete(P, F, x)) for x in find_stars(P, F))
    if not crowns and not stars:
        verdict = Verdict.NO_STRUCTURE
    elif all(c.complete for _, c in crowns + stars):
        verdict = Verdict.COMPLETE
    else:
        verdict = Verdict.INCOMPLETE
    return StructureReport(verdict, crowns, stars)


# -- swaps ------------------------------------------------------------------------

def swap_chains(P: Poset, F: ChainFamily, s: GuidedCrown | GuidedStar,
                choices: Sequence) -> list[Chain]:
    """Chains produced by one witness selection.

    For a crown, ``choices`` lists one chain per rising cover ``a_i < b_i``;
    the result holds every ``(-inf, a_i]_{C_i} + [b_{i-1}, inf)_{C_{i-1}}``.
    For a star, ``choices`` is ``(C1, C2, gamma)`` and both crossings are
    returned.
    """
    if isinstance(s, GuidedCrown):
        _validate_crown(P, s)
        picked = [tuple(c) for c in choices]
        if len(picked) != s.rho:
            raise WitnessError(f"need {s.rho} chains, got {len(picked)}")
        for c, a, b in zip(picked, s.alphas, s.betas):
            if c not in F or a not in c or b not in c:
                raise WitnessError(f"{c} does not realize {a} < {b} in the family")
        out = []
        for i in range(s.rho):
            d = crown_swap(picked[i], s.alphas[i], picked[i - 1], s.betas[i - 1])
            if d not in out:
                out.append(d)
        if all(d in picked for d in out):
            raise AssertionError(f"every swap of {s} reproduces a chosen chain")
        return out

    if len(choices) != 3:
        raise WitnessError("a star selection is (C1, C2, gamma)")
    c1, c2, g = tuple(choices[0]), tuple(choices[1]), choices[2]
    if c1 not in F or c2 not in F or not _validate_star_witness(P, s, c1, c2, g):
        raise WitnessError(f"({c1}, {c2}, {g}) is not a witness of {s}")
    return [star_swap(c1, c2, g), star_swap(c2, c1, g)]


def crown_swap_set(P: Poset, F: ChainFamily, max_rho: int | None = None) -> set[Chain]:
    """Union of every crown swap over every crown and witness selection."""
    guided = _guided_edges(F)
    max_rho = P.size if max_rho is None else max_rho
    seen_steps: set[tuple[int, int, int, int]] = set()
    out: set[Chain] = set()
    for alphas, betas in _crown_cycles(P, guided, max_rho):
        for i in range(len(alphas)):
            step = (alphas[i - 1], betas[i - 1], alphas[i], betas[i])
            if step in seen_steps:
                continue
            seen_steps.add(step)
            for c_i in guided[alphas[i], betas[i]]:
                for c_prev in guided[alphas[i - 1], betas[i - 1]]:
                    out.add(crown_swap(c_i, alphas[i], c_prev, betas[i - 1]))
    return out


def star_swap_set(P: Poset, F: ChainFamily) -> set[Chain]:
    """Union of every star swap over every star and witness triple.

    A pair of chains crossing at a shared element gamma carries some star
    there exactly when the two chains differ both below and above gamma: the
    topmost differing elements below gamma are always incomparable, and
    likewise the lowest differing ones above it.
    """
    out: set[Chain] = set()
    chains = F.chains
    for i, c1 in enumerate(chains):
        pos1 = {x: k for k, x in enumerate(c1)}
        for c2 in chains[i + 1:]:
            for k2, g in enumerate(c2):
                k1 = pos1.get(g)
                if k1 is None:
                    continue
                if c1[:k1] != c2[:k2] and c1[k1 + 1:] != c2[k2 + 1:]:
                    out.add(c1[: k1 + 1] + c2[k2 + 1:])
                    out.add(c2[: k2 + 1] + c1[k1 + 1:])
    return out


def star_guides(F: ChainFamily) -> list[tuple[Chain, Chain]]:
    """Pairs ``(C1, C2)`` where ``C1 \\ C2`` is not a contiguous run of ``C1``."""
    out = []
    for c1 in F:
        for c2 in F:
            if c1 == c2:
                continue
            s2 = set(c2)
            idx = [k for k, x in enumerate(c1) if x not in s2]
            if idx and idx[-1] - idx[0] + 1 != len(idx):
                out.append((c1, c2))
    return out


# -- diamond poset ------------------------------------------------------------------

def diamond_poset(P: Poset, C1: Chain, C2: Chain) -> tuple[Poset, bool]:
    """The symmetric difference of two maximal chains as a poset of its own.

    ``x < y`` there when a covering sequence of ``P`` inside ``C1 | C2`` joins
    them.  Elements are relabeled ``1..k`` in ascending original order; the
    original labels are kept on ``poset.labels``.  The flag reports whether
    ``{C1 \\ C2, C2 \\ C1}`` has a 2-crown in the new poset.
    """
    C1, C2 = tuple(C1), tuple(C2)
    if set(C1) == set(C2):
        raise EqualChainsError("the two chains coincide")
    union = set(C1) | set(C2)
    sym = sorted(union - (set(C1) & set(C2)))
    reach: dict[int, set[int]] = {}
    for x in sorted(union, key=lambda z: -P.below_mask(z).bit_count()):
        r: set[int] = set()
        for y in P.upper_covers(x):
            if y in union:
                r.add(y)
                r |= reach[y]
        reach[x] = r
    new = {x: i + 1 for i, x in enumerate(sym)}
    pairs = [(new[x], new[y]) for x in sym for y in sym if y in reach[x]]
    D = build_poset(len(sym), pairs, labels=tuple(sym))
    halves = ChainFamily.of([
        D.sort_chain(new[x] for x in C1 if x in new),
        D.sort_chain(new[x] for x in C2 if x in new),
    ])
    return D, bool(find_crowns(D, halves, max_rho=2))


def report_to_json(report: StructureReport) -> dict:
    return {
        "verdict": report.verdict.value,
        "crowns": [
            {"rho": w.rho, "alphas": list(w.alphas), "betas": list(w.betas),
             "complete": c.complete, "missing": [format_chain(m) for m in c.missing]}
            for w, c in report.crowns
        ],
        "stars": [
            {"a1": x.alpha1, "b1": x.beta1, "a2": x.alpha2, "b2": x.beta2,
             "gammas": list(x.gammas), "complete": c.complete,
             "missing": [format_chain(m) for m in c.missing]}
            for x, c in report.stars
        ],
    }
