"""Cubic-to-quadratic reduction with a minimal set of auxiliary variables.

The pipeline is: collect the cubic terms, pre-select pairs that dominate by
frequency in every term they appear in, cover whatever is left with an exact
minimum pair cover, assign each term to one selected pair, then substitute
``x_i x_j -> y_ij`` and add one Rosenberg penalty block per selected pair.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .cover import Pair, Triple, pairs_of, solve_min_cover
from .errors import DegreeTooHigh, PlanMismatch, UncoveredTerm
from .poly import Polynomial

INT64_MAX = np.iinfo(np.int64).max


@dataclass(frozen=True, order=True)
class CubicTerm:
    variables: Triple
    coefficient: int

    def __post_init__(self):
        i, j, k = self.variables
        if not i < j < k:
            raise ValueError(f"cubic term variables must be strictly increasing: {self.variables}")
        if self.coefficient == 0:
            raise ValueError("cubic term coefficient must be nonzero")

    @property
    def pairs(self) -> tuple[Pair, Pair, Pair]:
        return pairs_of(self.variables)


@dataclass(frozen=True)
class SubstitutionPlan:
    num_vars: int
    selected_pairs: tuple[Pair, ...]
    assignment: Mapping[CubicTerm, Pair]
    aux_index: Mapping[Pair, int]
    forced_pairs: frozenset = frozenset()
    residual_cover_size: int = 0

    @property
    def num_aux(self) -> int:
        return len(self.selected_pairs)

    def terms_for(self, pair: Pair) -> list[CubicTerm]:
        return sorted(t for t, p in self.assignment.items() if p == pair)


@dataclass(frozen=True)
class QuboModel:
    """Upper-triangular integer QUBO; the objective is ``offset + x^T Q x`` (maximized)."""

    q: np.ndarray
    offset: int = 0
    penalty_m: int = 1
    var_names: tuple[str, ...] = ()
    num_original: int | None = None
    aux_pairs: tuple[Pair, ...] = ()
    provenance: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        q = np.asarray(self.q, dtype=np.int64)
        if q.ndim != 2 or q.shape[0] != q.shape[1]:
            raise ValueError(f"Q must be square, got shape {q.shape}")
        if np.any(np.tril(q, -1)):
            raise ValueError("Q must be upper triangular")
        object.__setattr__(self, "q", q)
        n = q.shape[0]
        if not self.var_names:
            object.__setattr__(self, "var_names", tuple(f"x{i + 1}" for i in range(n)))
        if self.num_original is None:
            object.__setattr__(self, "num_original", n - len(self.aux_pairs))
        if len(self.var_names) != n:
            raise ValueError("var_names length must equal Q size")

    @property
    def size(self) -> int:
        return self.q.shape[0]

    def value(self, bits) -> int:
        x = np.asarray(bits, dtype=np.int64)
        return int(x @ self.q @ x) + self.offset

    def nodes(self) -> int:
        """Variables carrying any nonzero coefficient."""
        nz = (self.q != 0)
        return int(np.count_nonzero(nz.any(axis=0) | nz.any(axis=1)))

    def edges(self) -> int:
        return int(np.count_nonzero(np.triu(self.q, 1)))

    def penalty_clean(self, bits) -> bool:
        n = self.num_original
        for a, (i, j) in enumerate(self.aux_pairs):
            if bits[n + a] != (bits[i - 1] & bits[j - 1]):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, QuboModel):
            return NotImplemented
        return (np.array_equal(self.q, other.q) and self.offset == other.offset
                and self.penalty_m == other.penalty_m and self.var_names == other.var_names
                and self.num_original == other.num_original and self.aux_pairs == other.aux_pairs
                and dict(self.provenance) == dict(other.provenance))

    __hash__ = None


def rosenberg_penalty(xi: int, xj: int, y: int) -> int:
    """``x_i x_j - 2 x_i y - 2 x_j y + 3 y``; zero exactly when y == x_i x_j."""
    return xi * xj - 2 * xi * y - 2 * xj * y + 3 * y


def extract_cubic_terms(poly: Polynomial) -> list[CubicTerm]:
    if poly.degree > 3:
        raise DegreeTooHigh(f"polynomial has degree {poly.degree}; only cubic input is supported")
    return [CubicTerm(m, c) for m, c in poly.items() if len(m) == 3]


def _triples(cubics: Iterable) -> list[Triple]:
    return [tuple(getattr(t, "variables", t)) for t in cubics]


def pair_frequencies(cubics: Iterable) -> Counter:
    """How many cubic terms contain each pair (coefficients are ignored)."""
    return Counter(p for t in _triples(cubics) for p in pairs_of(t))


def _dominant_pairs(triples: list[Triple]) -> set[Pair]:
    freq = Counter(p for t in triples for p in pairs_of(t))
    failed: set[Pair] = set()
    for t in triples:
        ps = pairs_of(t)
        for p in ps:
            if any(freq[p] <= freq[q] for q in ps if q != p):
                failed.add(p)
    return set(freq) - failed


def dominance_filter(cubics: Iterable) -> tuple[set[Pair], list]:
    """Split cubic terms into forced pairs and a residual for the cover search.

    A pair is forced when its frequency strictly exceeds both sibling pairs in
    every term containing it. Terms hit by a forced pair leave the residual,
    frequencies are recomputed, and the test repeats until nothing changes.
    """
    residual = list(cubics)
    forced: set[Pair] = set()
    while residual:
        new = _dominant_pairs(_triples(residual))
        if not new:
            break
        forced |= new
        residual = [t for t in residual
                    if not any(p in new for p in pairs_of(tuple(getattr(t, "variables", t))))]
    return forced, residual


def assign_terms(cubics: Iterable[CubicTerm], selected: Iterable[Pair], num_vars: int | None = None,
                 *, forced: Iterable[Pair] = (), residual_cover_size: int = 0) -> SubstitutionPlan:
    """Give every cubic term exactly one selected pair it contains.

    Ties go to the pair with the highest global frequency, then the
    lexicographically smallest. Selected pairs that end up with no term are
    dropped; auxiliaries are numbered from ``num_vars + 1`` in pair order.
    """
    cubics = list(cubics)
    selected = set(selected)
    if num_vars is None:
        num_vars = max((t.variables[2] for t in cubics), default=0)
    freq = pair_frequencies(cubics)
    assignment: dict[CubicTerm, Pair] = {}
    for term in cubics:
        options = [p for p in term.pairs if p in selected]
        if not options:
            raise UncoveredTerm(f"no selected pair covers cubic term {term.variables}")
        assignment[term] = min(options, key=lambda p: (-freq[p], p))
    used = sorted(set(assignment.values()))
    aux_index = {p: num_vars + 1 + a for a, p in enumerate(used)}
    return SubstitutionPlan(
        num_vars=num_vars,
        selected_pairs=tuple(used),
        assignment=assignment,
        aux_index=aux_index,
        forced_pairs=frozenset(p for p in forced if p in aux_index),
        residual_cover_size=residual_cover_size,
    )


def plan_substitution(poly: Polynomial, num_vars: int | None = None) -> SubstitutionPlan:
    """Cubic extraction, dominance filter, exact cover and assignment in one call."""
    cubics = extract_cubic_terms(poly)
    if num_vars is None:
        num_vars = max(poly.variables, default=0)
    forced, residual = dominance_filter(cubics)
    cover = solve_min_cover(residual, forced)
    return assign_terms(cubics, forced | cover, num_vars,
                        forced=forced, residual_cover_size=len(residual))


def penalty_lower_bound(plan: SubstitutionPlan) -> int:
    """Largest absolute per-pair coefficient sum, floored at 1."""
    sums: dict[Pair, int] = {}
    for term, pair in plan.assignment.items():
        sums[pair] = sums.get(pair, 0) + term.coefficient
    return max([1] + [max(s, -s) for s in sums.values()])


def quadratize(poly: Polynomial, plan: SubstitutionPlan, m: int,
               provenance: Mapping[str, str] | None = None) -> QuboModel:
    """Substitute assigned pairs and add one penalty block ``-M * p(x_i, x_j, y_ij)`` per pair."""
    if m < 1:
        raise ValueError("penalty coefficient M must be >= 1")
    if poly.degree > 3:
        raise DegreeTooHigh(f"polynomial has degree {poly.degree}")
    n = plan.num_vars
    if poly.variables and max(poly.variables) > n:
        raise PlanMismatch(f"polynomial uses x{max(poly.variables)} but plan has {n} variables")
    pair_of = {t.variables: p for t, p in plan.assignment.items()}
    size = n + len(plan.selected_pairs)
    # python ints first so oversized coefficients are caught, not wrapped
    acc: dict[tuple[int, int], int] = {}

    def add(a: int, b: int, c: int):
        key = (min(a, b) - 1, max(a, b) - 1)
        acc[key] = acc.get(key, 0) + c

    offset = 0
    for mono, coef in poly.items():
        if len(mono) == 0:
            offset += coef
        elif len(mono) == 1:
            add(mono[0], mono[0], coef)
        elif len(mono) == 2:
            add(mono[0], mono[1], coef)
        else:
            pair = pair_of.get(mono)
            if pair is None:
                raise PlanMismatch(f"cubic term {mono} has no assigned pair")
            (k,) = set(mono) - set(pair)
            add(plan.aux_index[pair], k, coef)
    for (i, j) in plan.selected_pairs:
        y = plan.aux_index[(i, j)]
        add(i, j, -m)
        add(i, y, 2 * m)
        add(j, y, 2 * m)
        add(y, y, -3 * m)

    q = np.zeros((size, size), dtype=np.int64)
    for (a, b), c in acc.items():
        if abs(c) > INT64_MAX:
            raise OverflowError(f"coefficient {c} does not fit in a 64-bit QUBO entry")
        q[a, b] = c
    names = [f"x{i}" for i in range(1, n + 1)] + [f"y{i}_{j}" for (i, j) in plan.selected_pairs]
    return QuboModel(q=q, offset=offset, penalty_m=m, var_names=tuple(names), num_original=n,
                     aux_pairs=tuple(plan.selected_pairs), provenance=dict(provenance or {}))
