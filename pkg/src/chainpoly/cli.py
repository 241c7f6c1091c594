"""Command-line frontend: ``chainpoly <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from itertools import combinations
from pathlib import Path

from . import corpus
from .crowns import Verdict, classify_structure, report_to_json
from .errors import CapExceededError, ChainPolyError
from .faces import (DEFAULT_MAX_CHAINS, closure_trace, face_class, face_lattice,
                    grid_flag, polytope_dim)
from .geometry import family_dim, face_oracle
from .poset import ChainFamily, Poset, format_chain, grid
from .schedule import critical_chains
from .textio import fraction_str, parse_family, parse_weights, read_poset

EXIT_DISAGREE, EXIT_PARSE, EXIT_CAP = 1, 2, 3


class UsageError(Exception):
    pass


def load_poset(spec: str) -> Poset:
    path = Path(spec)
    if path.is_file():
        return read_poset(path)
    try:
        return corpus.load(spec)
    except KeyError:
        raise UsageError(f"{spec!r} is neither a poset file nor a bundled name") from None


def load_family(P: Poset, args) -> ChainFamily:
    if args.family_file:
        return parse_family(P, Path(args.family_file).read_text(encoding="utf-8"))
    if args.family:
        return P.family(args.family)
    raise UsageError("a family is required (--family or --family-file)")


def _fam(F) -> list[str]:
    return [format_chain(c) for c in F]


def _emit(args, payload, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


# -- subcommands ---------------------------------------------------------------------

def cmd_chains(args) -> int:
    P = load_poset(args.poset)
    chains = P.maximal_chains()
    _emit(args, {"chains": _fam(chains)}, "\n".join(_fam(chains)))
    return 0


def cmd_structure(args) -> int:
    P = load_poset(args.poset)
    report = classify_structure(P, load_family(P, args), args.max_rho)
    payload = report_to_json(report)
    lines = [f"verdict: {report.verdict.value}"]
    for w, c in report.crowns:
        lines.append(f"crown {w} rho={w.rho} " + ("complete" if c.complete else "missing " + " ".join(_fam(c.missing))))
    for x, c in report.stars:
        lines.append(f"star {x} gamma={','.join(map(str, x.gammas))} "
                     + ("complete" if c.complete else "missing " + " ".join(_fam(c.missing))))
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_face(args) -> int:
    P = load_poset(args.poset)
    fc = face_class(P, load_family(P, args), args.max_rho)
    text = fc.tag.value if fc.dim is None else f"{fc.tag.value} dim={fc.dim}"
    _emit(args, fc.to_json(), text)
    return 0


def cmd_closure(args) -> int:
    P = load_poset(args.poset)
    steps = closure_trace(P, load_family(P, args), args.max_rho)
    if not args.trace:
        steps = steps[-1:]
    payload = {"steps": [_fam(s) for s in steps]} if args.trace else {"closure": _fam(steps[-1])}
    _emit(args, payload, "\n".join(" ".join(_fam(s)) for s in steps))
    return 0


def cmd_lattice(args) -> int:
    P = load_poset(args.poset)
    lat = face_lattice(P, args.max_chains)
    if args.dot:
        sys.stdout.write(lat.to_dot())
        return 0
    lines = [f"{i}: dim={d} {{{', '.join(_fam(f))}}}" for i, (f, d) in enumerate(zip(lat.faces, lat.dims))]
    lines.append("f-vector: " + " ".join(map(str, lat.f_vector())))
    _emit(args, lat.to_json(), "\n".join(lines))
    return 0


def cmd_dim(args) -> int:
    if args.grid:
        P = grid(*corpus.parse_grid(args.grid))
    elif args.poset:
        P = load_poset(args.poset)
    else:
        raise UsageError("dim needs --poset or --grid")
    d = polytope_dim(P)
    _emit(args, {"dim": d}, str(d))
    return 0


def cmd_grid(args) -> int:
    m, n = corpus.parse_grid(args.size)
    flag = grid_flag(m, n)
    payload = {
        "m": m, "n": n, "valid": flag.valid,
        "stages": [{"index": list(ix), "chains": _fam(f), "covering": cov}
                   for ix, f, cov in zip(flag.indices, flag.stages, flag.coverings)],
    }
    lines = [f"({x},{y}) {'ok' if cov else 'NOT-COVERING'} {' '.join(_fam(f))}"
             for (x, y), f, cov in zip(flag.indices, flag.stages, flag.coverings)]
    lines.append(f"length {flag.length}, valid {flag.valid}")
    _emit(args, payload, "\n".join(lines))
    return 0 if flag.valid else EXIT_DISAGREE


def cmd_schedule(args) -> int:
    P = load_poset(args.poset)
    weights = parse_weights(Path(args.weights).read_text(encoding="utf-8"))
    rep = critical_chains(P, weights)
    lines = [f"eft {fraction_str(rep.eft)}", "critical " + " ".join(_fam(rep.critical))]
    lines += [f"{format_chain(c)} {fraction_str(v)}" for c, v in rep.totals]
    _emit(args, rep.to_json(), "\n".join(lines))
    return 0


def _agree(P: Poset, F: ChainFamily) -> tuple[bool, str]:
    verdict = classify_structure(P, F).verdict
    feasible = face_oracle(P, F) is not None
    simplex = family_dim(P, F) == len(F) - 1
    ok = (verdict is not Verdict.INCOMPLETE) == feasible and (verdict is Verdict.NO_STRUCTURE) == (feasible and simplex)
    return ok, verdict.value


def cmd_oracle_check(args) -> int:
    P = load_poset(args.poset)
    if args.family or args.family_file:
        families = [load_family(P, args)]
    else:
        chains = P.maximal_chains().chains
        if len(chains) > args.max_chains:
            raise CapExceededError(len(chains), args.max_chains)
        families = [ChainFamily(c) for k in range(1, len(chains) + 1) for c in combinations(chains, k)]
    bad = []
    for F in families:
        ok, verdict = _agree(P, F)
        if not ok:
            bad.append({"family": _fam(F), "verdict": verdict})
    payload = {"checked": len(families), "disagreements": bad}
    lines = [f"checked {len(families)} families, {len(bad)} disagreements"]
    lines += [f"DISAGREE {' '.join(b['family'])} ({b['verdict']})" for b in bad]
    _emit(args, payload, "\n".join(lines))
    return EXIT_DISAGREE if bad else 0


# -- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chainpoly", description="Faces of maximal chain polytopes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, poset=True, family=False, help=None):
        p = sub.add_parser(name, help=help)
        if poset:
            p.add_argument("--poset", required=poset == "required", help="poset file or bundled name (p1..p5, 3x3)")
        if family:
            p.add_argument("--family", help="';'-separated chains, e.g. '125;1368;478'")
            p.add_argument("--family-file", help="file with one comma-separated chain per line")
            p.add_argument("--max-rho", type=int, default=None, help="longest crown to search for")
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.set_defaults(func=func)
        return p

    add("chains", cmd_chains, poset="required", help="list maximal chains")
    add("structure", cmd_structure, poset="required", family=True, help="crown/star report")
    add("face", cmd_face, poset="required", family=True, help="face trichotomy")
    add("closure", cmd_closure, poset="required", family=True, help="smallest closed superfamily").add_argument(
        "--trace", action="store_true", help="show every intermediate step")
    lat = add("lattice", cmd_lattice, poset="required", help="all faces with covers")
    lat.add_argument("--max-chains", type=int, default=DEFAULT_MAX_CHAINS)
    lat.add_argument("--dot", action="store_true", help="emit a Graphviz Hasse diagram")
    add("dim", cmd_dim, poset=True, help="polytope dimension").add_argument("--grid", help="grid size, e.g. 4x4")
    g = add("grid", cmd_grid, poset=False, help="covering flag of a grid")
    g.add_argument("size", help="grid size, e.g. 3x3")
    s = add("schedule", cmd_schedule, poset="required", help="earliest finishing time and critical chains")
    s.add_argument("--weights", required=True, help="file of '<element> <num>/<den>' lines")
    oc = add("oracle-check", cmd_oracle_check, poset="required", family=True,
             help="compare the combinatorial verdict with the LP oracle")
    oc.add_argument("--max-chains", type=int, default=12, help="cap for the all-subsets sweep")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ChainPolyError, UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
