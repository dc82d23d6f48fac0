"""Undetermined-coefficient solves: unknown scalars times known polynomials."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .linalg import LinearSolution, solve_sparse
from .polynomial import Polynomial


def solve_polynomial_identities(columns: Sequence[Sequence[Polynomial]],
                                constant: Sequence[Polynomial]) -> LinearSolution:
    """Find scalars t with  sum_u t_u * columns[u][e] + constant[e] == 0  for every e.

    ``columns[u]`` lists the contribution of unknown ``u`` to each identity
    ``e``; each identity is split into one linear equation per monomial.
    """
    rows: dict[tuple, dict[int, Fraction]] = {}
    for u, col in enumerate(columns):
        for e, p in enumerate(col):
            for m, c in p.terms.items():
                rows.setdefault((e, m), {})[u] = c
    rhs_map: dict[tuple, Fraction] = {}
    for e, p in enumerate(constant):
        for m, c in p.terms.items():
            rows.setdefault((e, m), {})
            rhs_map[(e, m)] = -c
    keys = list(rows)
    return solve_sparse([rows[k] for k in keys], [rhs_map.get(k, 0) for k in keys],
                        len(columns))
