"""Exact linear algebra over Q.

Rows are kept as sparse ``{column: int}`` dictionaries: every input row is
scaled to integers once, and elimination proceeds by integer
cross-multiplication with content removal, so no fractions appear until
the final back-substitution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Mapping, Sequence


@dataclass
class LinearSolution:
    """Outcome of :func:`solve_rational_linear_system`.

    ``solution`` is None for an inconsistent system; otherwise it is a
    particular solution (free variables set to 0). ``kernel`` is a basis of
    the null space, empty iff the solution is unique.
    """

    solution: list[Fraction] | None
    kernel: list[list[Fraction]] = field(default_factory=list)
    rank: int = 0

    @property
    def consistent(self) -> bool:
        return self.solution is not None

    @property
    def unique(self) -> bool:
        return self.solution is not None and not self.kernel

    @property
    def status(self) -> str:
        if self.solution is None:
            return "none"
        return "unique" if not self.kernel else "underdetermined"

    @property
    def witness(self) -> list[Fraction] | None:
        return self.kernel[0] if self.kernel else None


def _integer_row(row: Mapping[int, object]) -> dict[int, int]:
    fr = {c: Fraction(v) for c, v in row.items() if v != 0}
    if not fr:
        return {}
    den = 1
    for v in fr.values():
        den = lcm(den, v.denominator)
    out = {c: int(v * den) for c, v in fr.items()}
    return _primitive(out)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def _rref(rows: list[dict[int, int]], ncols: int):
    """Reduced row echelon form over the first ``ncols`` columns.

    Column ``ncols`` (if present) is the augmented right-hand side and is
    never chosen as a pivot. Returns (pivot rows keyed by pivot column,
    leftover rows without pivots).
    """
    live = [r for r in rows if r]
    col_rows: dict[int, set[int]] = {}
    for idx, r in enumerate(live):
        for c in r:
            col_rows.setdefault(c, set()).add(idx)
    pivots: dict[int, int] = {}  # column -> row index
    used: set[int] = set()
    for col in range(ncols):
        cands = [i for i in col_rows.get(col, ()) if i not in used and live[i].get(col)]
        if not cands:
            continue
        p = min(cands, key=lambda i: (len(live[i]), i))
        used.add(p)
        pivots[col] = p
        prow = live[p]
        pv = prow[col]
        for i in list(col_rows.get(col, ())):
            if i == p:
                continue
            r = live[i]
            a = r.get(col)
            if not a:
                continue
            g = gcd(pv, a)
            mp, ma = pv // g, a // g
            new = {c: v * mp for c, v in r.items()}
            for c, v in prow.items():
                s = new.get(c, 0) - ma * v
                if s:
                    new[c] = s
                else:
                    new.pop(c, None)
            new = _primitive(new)
            for c in r:
                if c not in new:
                    col_rows[c].discard(i)
            for c in new:
                if c not in r:
                    col_rows.setdefault(c, set()).add(i)
            live[i] = new
    pivot_rows = {col: live[i] for col, i in pivots.items()}
    rest = [live[i] for i in range(len(live)) if i not in used and live[i]]
    return pivot_rows, rest


def solve_sparse(rows: Sequence[Mapping[int, object]], rhs: Sequence[object] | None,
                 ncols: int) -> LinearSolution:
    """Solve ``A x = b`` with A given as sparse rows ``{column: value}``."""
    aug = []
    for k, r in enumerate(rows):
        row = dict(r)
        if rhs is not None and rhs[k] != 0:
            row[ncols] = rhs[k]
        aug.append(_integer_row(row))
    pivot_rows, rest = _rref(aug, ncols)
    if any(ncols in r for r in rest):
        return LinearSolution(None, [], len(pivot_rows))
    sol = [Fraction(0)] * ncols
    for col, r in pivot_rows.items():
        sol[col] = Fraction(r.get(ncols, 0), r[col])
    free = [c for c in range(ncols) if c not in pivot_rows]
    kernel = []
    if free:
        # column -> pivot columns whose rows mention it
        touching: dict[int, list[int]] = {}
        for pc, r in pivot_rows.items():
            for c in r:
                if c != pc and c != ncols:
                    touching.setdefault(c, []).append(pc)
        for f in free:
            vec = [Fraction(0)] * ncols
            vec[f] = Fraction(1)
            for pc in touching.get(f, ()):
                r = pivot_rows[pc]
                vec[pc] = Fraction(-r[f], r[pc])
            kernel.append(vec)
    return LinearSolution(sol, kernel, len(pivot_rows))


def solve_rational_linear_system(A: Sequence[Sequence[object]],
                                 b: Sequence[object]) -> LinearSolution:
    """Dense front end: ``A`` is a list of rows of rationals."""
    ncols = len(A[0]) if A else 0
    if len(b) != len(A):
        raise ValueError("dimension mismatch between A and b")
    rows = [{c: v for c, v in enumerate(row) if v != 0} for row in A]
    if any(len(row) != ncols for row in A):
        raise ValueError("ragged matrix")
    return solve_sparse(rows, list(b), ncols)


def rank(A: Sequence[Sequence[object]]) -> int:
    if not A:
        return 0
    ncols = len(A[0])
    rows = [_integer_row({c: v for c, v in enumerate(row) if v != 0}) for row in A]
    pivot_rows, _ = _rref(rows, ncols)
    return len(pivot_rows)


def determinant(A: Sequence[Sequence[object]]) -> Fraction:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return Fraction(1)
    den = 1
    for row in A:
        for v in row:
            den = lcm(den, Fraction(v).denominator)
    M = [[int(Fraction(v) * den) for v in row] for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return Fraction(sign * M[n - 1][n - 1], den ** n)
