"""Exact two-phase simplex over ``fractions.Fraction`` with Bland's rule.

Small dense tableaux only; every pivot is exact, so feasibility and
optimality verdicts carry no rounding error.
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

OPS = ("<=", ">=", "==")


class Status(str, Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


@dataclass
class LinearProgram:
    """``sense`` objective·x subject to rows ``a·x op b``.

    Variables are free unless listed in ``nonneg``.
    """

    n_vars: int
    objective: list = field(default_factory=list)
    sense: str = "max"
    rows: list[tuple[list, str, object]] = field(default_factory=list)
    nonneg: set[int] = field(default_factory=set)

    def add(self, coeffs: Sequence, op: str, rhs) -> None:
        if op not in OPS:
            raise ValueError(f"unknown constraint operator {op!r}")
        if len(coeffs) != self.n_vars:
            raise ValueError(f"row has {len(coeffs)} coefficients, expected {self.n_vars}")
        self.rows.append(([Fraction(c) for c in coeffs], op, Fraction(rhs)))


@dataclass(frozen=True)
class LPResult:
    status: Status
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None


def _pivot(T: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    row = T[r]
    piv = row[c]
    if piv != 1:
        row[:] = [v / piv for v in row]
    for i, other in enumerate(T):
        if i != r:
            f = other[c]
            if f:
                other[:] = [a - f * b for a, b in zip(other, row)]
    basis[r] = c


def _run(T: list[list[Fraction]], basis: list[int], allowed: int) -> bool:
    """Minimize the last row of ``T`` in place; False when unbounded.

    Only the first ``allowed`` columns may enter the basis.  Column ``-1`` is
    the right-hand side; the objective row stores reduced costs.
    """
    obj = T[-1]
    m = len(T) - 1
    while True:
        enter = next((j for j in range(allowed) if obj[j] < 0), None)
        if enter is None:
            return True
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                key = (T[i][-1] / a, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return False
        _pivot(T, basis, best[1], enter)


def lp_solve(lp: LinearProgram) -> LPResult:
    # column layout: split free variables, then slacks, then artificials
    cols: list[tuple[int, int]] = []
    for j in range(lp.n_vars):
        cols.append((j, 1))
        if j not in lp.nonneg:
            cols.append((j, -1))
    n_struct = len(cols)

    rows = []
    for coeffs, op, rhs in lp.rows:
        if rhs < 0:
            coeffs, rhs = [-c for c in coeffs], -rhs
            op = {"<=": ">=", ">=": "<=", "==": "=="}[op]
        rows.append(([coeffs[j] * s for j, s in cols], op, rhs))

    n_slack = sum(op != "==" for _, op, _ in rows)
    n_art = sum(op != "<=" for _, op, _ in rows)
    width = n_struct + n_slack + n_art
    T: list[list[Fraction]] = []
    basis: list[int] = []
    s_col, a_col = n_struct, n_struct + n_slack
    artificials = []
    for coeffs, op, rhs in rows:
        row = coeffs + [Fraction(0)] * (n_slack + n_art) + [rhs]
        if op == "<=":
            row[s_col] = Fraction(1)
            basis.append(s_col)
            s_col += 1
        else:
            if op == ">=":
                row[s_col] = Fraction(-1)
                s_col += 1
            row[a_col] = Fraction(1)
            basis.append(a_col)
            artificials.append(a_col)
            a_col += 1
        T.append(row)

    # phase I: minimize the sum of artificials
    phase1 = [Fraction(0)] * (width + 1)
    for i, b in enumerate(basis):
        if b >= n_struct + n_slack:
            phase1 = [p - v for p, v in zip(phase1, T[i])]
    for a in artificials:
        phase1[a] = Fraction(0)
    T.append(phase1)
    _run(T, basis, n_struct + n_slack)
    if T[-1][-1] != 0:
        return LPResult(Status.INFEASIBLE)
    T.pop()

    # drive leftover artificials out of the basis; drop redundant rows
    first_art = n_struct + n_slack
    i = 0
    while i < len(T):
        if basis[i] >= first_art:
            c = next((j for j in range(first_art) if T[i][j] != 0), None)
            if c is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, basis, i, c)
        i += 1
    for row in T:
        del row[first_art:-1]

    sign = -1 if lp.sense == "max" else 1
    cost = [Fraction(0)] * (first_art + 1)
    for k, (j, s) in enumerate(cols):
        if j < len(lp.objective):
            cost[k] = sign * s * Fraction(lp.objective[j])
    for i, b in enumerate(basis):
        if cost[b]:
            f = cost[b]
            cost = [c - f * v for c, v in zip(cost, T[i])]
    T.append(cost)
    if not _run(T, basis, first_art):
        return LPResult(Status.UNBOUNDED)

    values = [Fraction(0)] * first_art
    for i, b in enumerate(basis):
        values[b] = T[i][-1]
    x = [Fraction(0)] * lp.n_vars
    for k, (j, s) in enumerate(cols):
        x[j] += s * values[k]
    obj = sum((Fraction(c) * v for c, v in zip(lp.objective, x)), Fraction(0))
    return LPResult(Status.OPTIMAL, obj, tuple(x))


def check_solution(lp: LinearProgram, x: Sequence[Fraction]) -> bool:
    """Exact feasibility test of a candidate point."""
    for j in lp.nonneg:
        if x[j] < 0:
            return False
    for coeffs, op, rhs in lp.rows:
        lhs = sum((c * v for c, v in zip(coeffs, x)), Fraction(0))
        if (op == "<=" and lhs > rhs) or (op == ">=" and lhs < rhs) or (op == "==" and lhs != rhs):
            return False
    return True
