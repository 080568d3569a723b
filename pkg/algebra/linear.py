# algebra/linear.py
"""
Exact linear algebra over the rationals.

Rows are sparse dictionaries from column index to Fraction. Only nonzero
entries are stored. All the bounded-degree solvers in the package reduce to
the two entry points here: `rank` and `solve`.
"""

from __future__ import annotations
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)

Row = Dict[int, Fraction]


def _eliminate(rows: List[Row], rhs: List[Fraction]) -> Tuple[List[Row], List[Fraction], List[int]]:
    """
    Reduce rows to reduced row echelon form in place order.

    Returns the nonzero reduced rows, their right-hand sides and pivot columns.
    Rows that reduce to zero are kept out of the result; their right-hand side
    is returned as a row with an empty dictionary when it is nonzero, which
    marks the system inconsistent.
    """
    pivots: List[int] = []
    reduced: List[Row] = []
    values: List[Fraction] = []
    inconsistent: Optional[Fraction] = None
    for row, b in zip(rows, rhs):
        row = {k: Fraction(v) for k, v in row.items() if v}
        b = Fraction(b)
        for prow, pb, pcol in zip(reduced, values, pivots):
            factor = row.get(pcol)
            if factor:
                for k, v in prow.items():
                    s = row.get(k, 0) - factor * v
                    if s:
                        row[k] = s
                    else:
                        row.pop(k, None)
                b -= factor * pb
        if not row:
            if b and inconsistent is None:
                inconsistent = b
            continue
        pcol = min(row)
        lead = row[pcol]
        row = {k: v / lead for k, v in row.items()}
        b = b / lead
        # keep earlier rows reduced against the new pivot
        for idx, prow in enumerate(reduced):
            factor = prow.get(pcol)
            if factor:
                for k, v in row.items():
                    s = prow.get(k, 0) - factor * v
                    if s:
                        prow[k] = s
                    else:
                        prow.pop(k, None)
                values[idx] -= factor * b
        reduced.append(row)
        values.append(b)
        pivots.append(pcol)
    if inconsistent is not None:
        reduced.append({})
        values.append(inconsistent)
        pivots.append(-1)
    return reduced, values, pivots


def rank(rows: Sequence[Row]) -> int:
    """Rank of the matrix whose rows are given."""
    reduced, _, pivots = _eliminate(list(rows), [Fraction(0)] * len(rows))
    return sum(1 for p in pivots if p >= 0)


def solve(rows: Sequence[Row], rhs: Sequence[Fraction]) -> Optional[Dict[int, Fraction]]:
    """
    Solve rows · x = rhs exactly.

    Free variables are set to zero. Returns None when the system is
    inconsistent; the returned dictionary omits variables equal to zero.
    """
    reduced, values, pivots = _eliminate(list(rows), list(rhs))
    if pivots and pivots[-1] == -1:
        return None
    solution: Dict[int, Fraction] = {}
    for row, b, pcol in zip(reduced, values, pivots):
        if b:
            solution[pcol] = b
    logger.debug("solved %d equations, rank %d", len(rows), len(pivots))
    return solution


def nullity(rows: Sequence[Row], ncols: int) -> int:
    return ncols - rank(rows)
