"""Acceptance criteria, each checked exactly (rational arithmetic, zero tolerance).

Every criterion is split into named sub-checks; a criterion passes only when
all of its sub-checks pass.  ``conftest.py`` prints one PASS/FAIL line per
criterion at the end of the run, and running this file directly prints the
same table.
"""
from __future__ import annotations

import random
import sys
import time
from fractions import Fraction
from itertools import product
from math import comb

import pytest

from chainpoly import corpus
from chainpoly.crowns import (Verdict, classify_structure, diamond_poset, find_crowns, find_stars,
                              swap_chains)
from chainpoly.faces import (FaceTag, closure, closure_trace, face_class, face_lattice, grid_flag,
                             is_covering_in_K, is_rectangle, polytope_dim)
from chainpoly.geometry import (barycenter, chain_value, face_oracle, family_dim, incidence_vector,
                                member_of_hull, minimal_face_oracle)
from chainpoly.poset import ChainFamily, compose, grid
from chainpoly.schedule import eft
from oracles import all_families, random_family, random_poset

RESULTS: dict[int, list[tuple[str, bool, str]]] = {}
THIRD, FIFTH = Fraction(1, 3), Fraction(1, 5)


def fam(P, text):
    return P.family(text)


# -- 1: grid dimension -----------------------------------------------------------

def c1_grid_dims():
    start = time.perf_counter()
    bad = []
    for m, n in [(2, 2), (2, 3), (3, 3), (3, 4), (4, 4)]:
        G = grid(m, n)
        if polytope_dim(G) != (m - 1) * (n - 1):
            bad.append(f"dim {m}x{n}")
        if len(G.maximal_chains()) != comb(m + n - 2, m - 1):
            bad.append(f"count {m}x{n}")
    for m, n in [(3, 4), (4, 4)]:
        flag = grid_flag(m, n)
        if not flag.valid or flag.stages[-1] != grid(m, n).maximal_chains():
            bad.append(f"flag {m}x{n}")
    elapsed = time.perf_counter() - start
    if elapsed >= 10:
        bad.append(f"runtime {elapsed:.1f}s")
    return not bad, f"{elapsed:.2f}s " + (", ".join(bad) or "all dims, counts and flags exact")


# -- 2: the square and its pyramid on P4 ---------------------------------------------

def c2_p4_vertices_and_dim():
    P4 = corpus.load("p4")
    return len(P4.maximal_chains()) == 6 and polytope_dim(P4) == 4, "6 vertices, dim 4"


def c2_square_face():
    P4 = corpus.load("p4")
    F = fam(P4, "12579;12589;13579;13589")
    fc = face_class(P4, F)
    rect = is_rectangle(P4.incidence(c) for c in F)
    return (fc.tag is FaceTag.NON_SIMPLEX and fc.dim == 2 and rect), f"{fc.tag.value} dim={fc.dim} rectangle={rect}"


def c2_pyramid():
    P4 = corpus.load("p4")
    fc = face_class(P4, fam(P4, "12479;12579;12589;13579;13589"))
    return fc.tag is FaceTag.NON_SIMPLEX and fc.dim == 3, f"{fc.tag.value} dim={fc.dim}"


# -- 3: the two triangles on P2 ------------------------------------------------------

def c3_triangles():
    P2 = corpus.load("p2")
    want = tuple(THIRD * v for v in (2, 1, 1, 1, 1, 1, 1, 2))
    ok = True
    for text in ("125;1368;478", "1278;135;468"):
        F = fam(P2, text)
        ok &= face_class(P2, F).tag is FaceTag.NOT_FACE and face_oracle(P2, F) is None
        ok &= barycenter(P2, F) == want
    return ok, "both NotFace, both barycenters (1/3)(2,1,1,1,1,1,1,2)"


# -- 4: the two-step closure on P5 ---------------------------------------------------

def c4_closure_trace():
    P5 = corpus.load("p5")
    trace = closure_trace(P5, fam(P5, "14;25;26;34"))
    first = ["14", "15", "24", "25", "26", "34"]
    shown = [" ".join(map(lambda c: "".join(map(str, c)), s)) for s in trace[1:]]
    ok = (len(trace) == 3 and trace[1] == fam(P5, ";".join(first))
          and trace[2] == P5.maximal_chains())
    return ok, f"{len(trace) - 1} strict step(s): " + " | ".join(shown)


# -- 5: P3 ------------------------------------------------------------------------

def c5_dim():
    return polytope_dim(corpus.load("p3")) == 6, "dim 6"


def c5_closure_literal():
    P3 = corpus.load("p3")
    got = closure(P3, fam(P3, "146;257;38"))
    want = fam(P3, "146;257;38;246;357;148;256;17")
    return got == want, f"closure has {len(got)} chains: {got}"


def c5_covering_chain():
    P3 = corpus.load("p3")
    steps = [ChainFamily()] + [fam(P3, s) for s in (
        "146", "146;148", "146;148;17", "146;148;17;246;248", "146;148;17;246;248;256",
        "146;148;17;246;248;256;257")] + [P3.maximal_chains()]
    ok = all(is_covering_in_K(P3, a, b) for a, b in zip(steps, steps[1:]))
    return ok, f"{len(steps) - 1} consecutive coverings"


def c5_simplex_barycenter():
    P3 = corpus.load("p3")
    want = tuple(FIFTH * v for v in (2, 2, 1, 2, 2, 2, 2, 1))
    return barycenter(P3, fam(P3, "246;357;148;256;17")) == want, "(1/5)(2,2,1,2,2,2,2,1)"


def c5_barycenters_coincide():
    P3 = corpus.load("p3")
    a = barycenter(P3, fam(P3, "246;357;148;256;17"))
    b = barycenter(P3, fam(P3, "146;257;38"))
    return a == b, f"triangle barycenter is {'(' + ','.join(map(str, b)) + ')'}"


def c5_point_in_triangle():
    P3 = corpus.load("p3")
    point = tuple(FIFTH * v for v in (2, 2, 1, 2, 2, 2, 2, 1))
    verts = [incidence_vector(P3, c) for c in fam(P3, "146;257;38")]
    return member_of_hull(point, verts), "(1/5)(2,2,1,2,2,2,2,1) lies in conv(146,257,38)"


# -- 6: verdicts of the structure examples ---------------------------------------------

def c6_p1():
    P1 = corpus.load("p1")
    F = fam(P1, "1356;1357;2456;2457")
    rep = classify_structure(P1, F)
    crowns = [w.sequence for w, _ in rep.crowns]
    ok = rep.verdict is Verdict.INCOMPLETE and crowns == [(1, 3, 2, 4)]
    ok &= all(c.complete for _, c in rep.stars)
    return ok, f"IncompleteStructure via {crowns}"


def c6_p1_eight_stars():
    P1 = corpus.load("p1")
    stars = find_stars(P1, fam(P1, "1356;1357;2456;2457"))
    listed = {(a1, b1, a2, b2) for a1 in (1, 3) for a2 in (2, 4) for b1, b2 in ((6, 7), (7, 6))}
    got = {s.sequence for s in stars}
    return got == listed, f"{len(got)} stars found: {sorted(got)}"


def c6_p2():
    P2 = corpus.load("p2")
    rep = classify_structure(P2, fam(P2, "125;1368;468;478"))
    seqs = [w.sequence for w, c in rep.crowns if not c.complete]
    ok = rep.verdict is Verdict.INCOMPLETE and (2, 5, 3, 6, 4, 7) in seqs
    ok &= classify_structure(P2, fam(P2, "1278;135;1368;478")).verdict is Verdict.NO_STRUCTURE
    return ok, "3-crown (2,5,3,6,4,7) incomplete; primed family NoStructure"


def c6_p3():
    P3 = corpus.load("p3")
    rep = classify_structure(P3, fam(P3, "146;257;38"))
    seqs = [w.sequence for w, _ in rep.crowns]
    ok = rep.verdict is Verdict.INCOMPLETE and seqs == [(1, 4, 2, 5, 3, 8, 4, 6, 5, 7)] and not rep.stars
    return ok, f"unique crown {seqs}"


# -- 7: oracle equivalence --------------------------------------------------------------

def c7_oracle_equivalence():
    start = time.perf_counter()
    checked = bad = 0
    for name in ("p1", "p2", "p3", "p4", "p5", "3x3"):
        P = corpus.load(name)
        for F in all_families(P):
            checked += 1
            verdict = classify_structure(P, F).verdict
            feasible = face_oracle(P, F) is not None
            simplex_rank = family_dim(P, F) == len(F) - 1
            if (verdict is not Verdict.INCOMPLETE) != feasible:
                bad += 1
            elif feasible and (verdict is Verdict.NO_STRUCTURE) != simplex_rank:
                bad += 1
    elapsed = time.perf_counter() - start
    return bad == 0 and elapsed < 300, f"{checked} families, {bad} disagreements, {elapsed:.1f}s"


# -- 8: property suites -----------------------------------------------------------------

def c8_closure_laws():
    rng = random.Random(20260)
    bad = 0
    for _ in range(200):
        P = random_poset(rng, rng.randint(1, 8))
        F = random_family(rng, P)
        G = closure(P, F)
        H = closure(P, F | [rng.choice(P.maximal_chains().chains)])
        if not (F <= G and closure(P, G) == G and G <= H):
            bad += 1
    return bad == 0, f"200 instances, {bad} violations"


def c8_closure_is_minimal_face():
    rng = random.Random(31337)
    bad = 0
    for _ in range(500):
        P = random_poset(rng, rng.randint(1, 8))
        F = random_family(rng, P)
        if closure(P, F) != minimal_face_oracle(P, F):
            bad += 1
    return bad == 0, f"500 instances, {bad} mismatches"


def _sample_posets():
    rng = random.Random(4242)
    out = [corpus.load(n) for n in ("p1", "p2", "p3", "p4", "p5", "3x3")]
    out += [random_poset(rng, rng.randint(2, 8)) for _ in range(40)]
    return out


def c8_swap_property():
    crowns_seen = bad = 0
    rng = random.Random(99)
    for P in _sample_posets():
        fams = list(all_families(P)) if len(P.maximal_chains()) <= 8 else [random_family(rng, P) for _ in range(200)]
        for F in fams:
            for w in find_crowns(P, F):
                crowns_seen += 1
                options = [F.through(a, b).chains for a, b in zip(w.alphas, w.betas)]
                for pick in product(*options):
                    try:
                        out = swap_chains(P, F, w, pick)
                    except AssertionError:
                        bad += 1
                        continue
                    if all(d in pick for d in out):
                        bad += 1
    return bad == 0 and crowns_seen > 0, f"{crowns_seen} crown occurrences, {bad} violations"


def c8_pair_equivalence():
    pairs = bad = 0
    for P in _sample_posets():
        chains = P.maximal_chains().chains
        for i, c1 in enumerate(chains):
            for c2 in chains[i + 1:]:
                pairs += 1
                pair = ChainFamily.of([c1, c2])
                has = bool(find_crowns(P, pair, max_rho=2)) or bool(find_stars(P, pair))
                if has != diamond_poset(P, c1, c2)[1]:
                    bad += 1
    return bad == 0, f"{pairs} chain pairs, {bad} mismatches"


def c8_vertex_membership():
    checked = bad = 0
    for name in ("p1", "p2", "p3", "p4", "p5", "3x3"):
        P = corpus.load(name)
        chains = P.maximal_chains()
        for F in face_lattice(P).faces:
            if not F:
                continue
            verts = [incidence_vector(P, c) for c in F]
            for S in chains:
                checked += 1
                if member_of_hull(incidence_vector(P, S), verts) != (S in F):
                    bad += 1
    return bad == 0, f"{checked} (S, F) pairs, {bad} mismatches"


def c8_composite_dims():
    rng = random.Random(5150)
    bad = 0
    for _ in range(50):
        A = random_poset(rng, rng.randint(1, 4))
        B = random_poset(rng, rng.randint(1, 4))
        da, db = polytope_dim(A), polytope_dim(B)
        if polytope_dim(compose("ordinal_sum", A, B)[0]) != da + db:
            bad += 1
        if polytope_dim(compose("disjoint_union", A, B)[0]) != da + db + 1:
            bad += 1
    return bad == 0, f"50 composed pairs, {bad} violations"


def c8_scheduler_dp():
    rng = random.Random(8080)
    posets = _sample_posets()
    bad = 0
    for k in range(200):
        P = posets[k % len(posets)]
        f = {x: Fraction(rng.randint(-20, 20), rng.randint(1, 6)) for x in P.elements}
        if eft(P, f) != max(chain_value(f, c) for c in P.maximal_chains()):
            bad += 1
    return bad == 0, f"200 weight vectors, {bad} mismatches"


CRITERIA = {
    1: [c1_grid_dims],
    2: [c2_p4_vertices_and_dim, c2_square_face, c2_pyramid],
    3: [c3_triangles],
    4: [c4_closure_trace],
    5: [c5_dim, c5_closure_literal, c5_covering_chain, c5_simplex_barycenter, c5_barycenters_coincide,
        c5_point_in_triangle],
    6: [c6_p1, c6_p1_eight_stars, c6_p2, c6_p3],
    7: [c7_oracle_equivalence],
    8: [c8_closure_laws, c8_closure_is_minimal_face, c8_swap_property, c8_pair_equivalence,
        c8_vertex_membership, c8_composite_dims, c8_scheduler_dp],
}

CASES = [(n, check) for n, checks in CRITERIA.items() for check in checks]


def _record(n, check):
    ok, detail = check()
    RESULTS.setdefault(n, []).append((check.__name__, bool(ok), detail))
    print(f"criterion {n} {check.__name__}: {'PASS' if ok else 'FAIL'} ({detail})")
    return ok, detail


@pytest.mark.parametrize("n,check", CASES, ids=[f"c{n}-{c.__name__}" for n, c in CASES])
def test_criterion(n, check):
    ok, detail = _record(n, check)
    assert ok, detail


def summary_lines() -> list[str]:
    lines = []
    for n in sorted(RESULTS):
        checks = RESULTS[n]
        status = "PASS" if all(ok for _, ok, _ in checks) else "FAIL"
        failed = [name for name, ok, _ in checks if not ok]
        extra = f" (failing: {', '.join(failed)})" if failed else f" ({len(checks)} sub-checks)"
        lines.append(f"ACCEPTANCE criterion {n}: {status}{extra}")
    return lines


if __name__ == "__main__":
    for n, check in CASES:
        _record(n, check)
    print("\n".join(summary_lines()))
    sys.exit(0 if all(ok for v in RESULTS.values() for _, ok, _ in v) else 1)
