"""Exact geometry of chain incidence vectors.

Everything here is the independent ground truth for the combinatorial
verdicts in :mod:`chainpoly.crowns` and :mod:`chainpoly.faces`: affine rank by
exact elimination, and face decisions by exact linear programming over
weight functions ``f`` on the elements.
"""
from __future__ import annotations

from collections.abc import Iterable, Sequence
from fractions import Fraction

from .errors import DimensionMismatchError
from .lp import LinearProgram, Status, lp_solve
from .poset import Chain, ChainFamily, Poset

Vector = tuple[Fraction, ...]


def incidence_vector(P: Poset, elements: Iterable[int]) -> Vector:
    """``e_Q`` as a vector of exact rationals."""
    return tuple(Fraction(v) for v in P.incidence(elements))


def barycenter(P: Poset, chains: Iterable[Chain]) -> Vector:
    vecs = [incidence_vector(P, c) for c in chains]
    if not vecs:
        raise ValueError("barycenter of an empty family")
    k = len(vecs)
    return tuple(sum(col, Fraction(0)) / k for col in zip(*vecs))


def _check_dims(points: Sequence[Sequence]) -> int:
    dims = {len(v) for v in points}
    if len(dims) > 1:
        raise DimensionMismatchError(f"ragged input: lengths {sorted(dims)}")
    return dims.pop() if dims else 0


def rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix by Gaussian elimination."""
    M = [[Fraction(v) for v in r] for r in rows]
    r = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        pr = M[r]
        for i in range(r + 1, len(M)):
            f = M[i][c]
            if f:
                f /= pr[c]
                M[i] = [a - f * b for a, b in zip(M[i], pr)]
        r += 1
        if r == len(M):
            break
    return r


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull of a nonempty point list."""
    if not points:
        raise ValueError("affine rank of an empty point set")
    _check_dims(points)
    base = points[0]
    return rank([[a - b for a, b in zip(v, base)] for v in points[1:]])


def family_dim(P: Poset, F: Iterable[Chain]) -> int:
    """Dimension of ``conv(F)``; -1 for the empty family."""
    vecs = [P.incidence(c) for c in F]
    return affine_rank(vecs) if vecs else -1


def member_of_hull(point: Sequence, points: Sequence[Sequence]) -> bool:
    """Exact test of ``point`` in the convex hull of ``points``."""
    d = _check_dims([point, *points])
    k = len(points)
    if k == 0:
        return False
    lp = LinearProgram(k, nonneg=set(range(k)))
    for coord in range(d):
        lp.add([v[coord] for v in points], "==", point[coord])
    lp.add([1] * k, "==", 1)
    return lp_solve(lp).status is Status.OPTIMAL


def _chain_row(P: Poset, chain: Chain, minus: Chain | None = None) -> list[int]:
    row = [0] * P.size
    for x in chain:
        row[x - 1] += 1
    if minus is not None:
        for x in minus:
            row[x - 1] -= 1
    return row


def face_oracle(P: Poset, F: ChainFamily, sparse: bool = False) -> dict[int, Fraction] | None:
    """Weights cutting out exactly ``F`` among the maximal chains, if any.

    Returns ``f`` with ``f(C)`` equal across ``F`` and ``f(C) >= f(D) + 1``
    for every other maximal chain ``D``, or ``None`` when ``conv(F)`` is not
    a face.  ``sparse`` additionally minimizes the L1 norm of ``f``.
    """
    if not F:
        raise ValueError("family must be nonempty")
    everything = P.maximal_chains()
    if len(F) == len(everything):
        return {x: Fraction(0) for x in P.elements}
    p = P.size
    n = 2 * p if sparse else p
    lp = LinearProgram(n, sense="min")
    pad = [0] * (n - p)
    ref = F.chains[0]
    for c in F.chains[1:]:
        lp.add(_chain_row(P, c, ref) + pad, "==", 0)
    for d in everything:
        if d not in F:
            lp.add(_chain_row(P, d, ref) + pad, "<=", -1)
    if sparse:
        lp.nonneg = set(range(p, 2 * p))
        for j in range(p):
            hi = [0] * n
            hi[p + j], hi[j] = 1, -1
            lo = [0] * n
            lo[p + j], lo[j] = 1, 1
            lp.add(hi, ">=", 0)
            lp.add(lo, ">=", 0)
        lp.objective = [0] * p + [1] * p
    res = lp_solve(lp)
    if res.status is not Status.OPTIMAL:
        return None
    return {x: res.x[x - 1] for x in P.elements}


def is_face(P: Poset, F: ChainFamily) -> bool:
    return face_oracle(P, F) is not None


def minimal_face_oracle(P: Poset, F: ChainFamily) -> ChainFamily:
    """Chains of the smallest face containing ``conv(F)``, by one LP per chain.

    ``D`` belongs iff every weight function maximized on all of ``F`` also
    maximizes at ``D``, i.e. ``max f(C1) - f(D)`` over that cone is 0.
    """
    if not F:
        raise ValueError("family must be nonempty")
    everything = P.maximal_chains()
    ref = F.chains[0]
    inside = list(F.chains)
    for d in everything:
        if d in F:
            continue
        lp = LinearProgram(P.size, sense="max")
        for c in F.chains[1:]:
            lp.add(_chain_row(P, c, ref), "==", 0)
        for other in everything:
            if other != ref:
                lp.add(_chain_row(P, other, ref), "<=", 0)
        gap = _chain_row(P, ref, d)
        lp.add(gap, "<=", 1)
        lp.objective = gap
        res = lp_solve(lp)
        if res.status is Status.OPTIMAL and res.value == 0:
            inside.append(d)
    return ChainFamily.of(inside)


def chain_value(weights: dict[int, Fraction], chain: Iterable[int]) -> Fraction:
    return sum((Fraction(weights[x]) for x in chain), Fraction(0))
