"""Exhaustive penalty-ratio oracle for small substitution plans."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import TooManyVariables
from .quadratize import CubicTerm, SubstitutionPlan

ORACLE_MAX_VARS = 30
CHUNK_BITS = 20


def _bit_columns(lo: int, hi: int, width: int) -> np.ndarray:
    rows = np.arange(lo, hi, dtype=np.int64)
    shifts = np.arange(width - 1, -1, -1, dtype=np.int64)
    return ((rows[:, None] >> shifts) & 1).astype(np.int64)


def penalty_lower_bound_oracle(plan: SubstitutionPlan, cubics: Iterable[CubicTerm] | None = None) -> Fraction:
    """Maximum over all binary x, y of

        sum a_ijk (x_i x_j x_k - y_ij x_k) / sum (x_i x_j - 2 x_i y_ij - 2 x_j y_ij + 3 y_ij)

    restricted to a positive denominator; 0 when no assignment gives a
    positive ratio. Every original variable in a cubic term and every
    auxiliary is enumerated, so the cost is 2**(#vars).
    """
    cubics = list(plan.assignment) if cubics is None else list(cubics)
    if not cubics or not plan.selected_pairs:
        return Fraction(0)
    pair_of = {t.variables: p for t, p in plan.assignment.items()}
    xs = sorted({v for t in cubics for v in t.variables} | {v for p in plan.selected_pairs for v in p})
    ys = list(plan.selected_pairs)
    width = len(xs) + len(ys)
    if width > ORACLE_MAX_VARS:
        raise TooManyVariables(f"oracle needs {width} variables, limit is {ORACLE_MAX_VARS}")
    col = {v: c for c, v in enumerate(xs)}
    ycol = {p: len(xs) + a for a, p in enumerate(ys)}

    best: Fraction | None = None
    total = 1 << width
    step = 1 << min(width, CHUNK_BITS)
    for lo in range(0, total, step):
        bits = _bit_columns(lo, min(total, lo + step), width)
        num = np.zeros(bits.shape[0], dtype=np.int64)
        den = np.zeros(bits.shape[0], dtype=np.int64)
        for t in cubics:
            i, j = pair_of[t.variables]
            (k,) = set(t.variables) - {i, j}
            xk = bits[:, col[k]]
            num += t.coefficient * (bits[:, col[i]] * bits[:, col[j]] * xk - bits[:, ycol[(i, j)]] * xk)
        for (i, j) in ys:
            xi, xj, y = bits[:, col[i]], bits[:, col[j]], bits[:, ycol[(i, j)]]
            den += xi * xj - 2 * xi * y - 2 * xj * y + 3 * y
        mask = den > 0
        if not mask.any():
            continue
        for d in np.unique(den[mask]):
            cand = Fraction(int(num[den == d].max()), int(d))
            if best is None or cand > best:
                best = cand
    if best is None or best < 0:
        return Fraction(0)
    return best
