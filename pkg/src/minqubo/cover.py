"""Exact minimum pair cover of cubic terms by branch and bound."""

from __future__ import annotations

import math
from collections import Counter
from typing import Iterable

Pair = tuple[int, int]
Triple = tuple[int, int, int]


def pairs_of(triple: Triple) -> tuple[Pair, Pair, Pair]:
    i, j, k = triple
    return (i, j), (i, k), (j, k)


def _components(triples: list[Triple], key=pairs_of) -> list[list[Triple]]:
    """Group triples that are linked through shared pairs (as given by ``key``)."""
    parent = list(range(len(triples)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    owner: dict[Pair, int] = {}
    for idx, t in enumerate(triples):
        for p in key(t):
            if p in owner:
                ra, rb = find(owner[p]), find(idx)
                if ra != rb:
                    parent[rb] = ra
            else:
                owner[p] = idx
    groups: dict[int, list[Triple]] = {}
    for idx, t in enumerate(triples):
        groups.setdefault(find(idx), []).append(t)
    return list(groups.values())


Options = dict[Triple, tuple[Pair, ...]]


def _frequencies(sub: Options) -> Counter:
    return Counter(p for opts in sub.values() for p in opts)


def _packing_bound(sub: Options) -> int:
    """Size of a greedy set of terms whose allowed pairs are pairwise disjoint.

    Each such term needs its own cover pair, so this is a valid lower bound.
    """
    used: set[Pair] = set()
    count = 0
    for t in sorted(sub):
        if not any(p in used for p in sub[t]):
            used.update(sub[t])
            count += 1
    return count


def _lower_bound(sub: Options, freq: Counter) -> int:
    """Fractional bound: a pair covering f terms pays 1/f of its cost to each.

    This dominates the plain bound ceil(terms / max frequency).
    """
    if not sub:
        return 0
    fractional = sum(1.0 / max(freq[p] for p in opts) for opts in sub.values())
    return max(math.ceil(fractional - 1e-9), _packing_bound(sub))


def _greedy(sub: Options) -> list[Pair]:
    left = dict(sub)
    chosen: list[Pair] = []
    while left:
        freq = _frequencies(left)
        best = min(freq, key=lambda p: (-freq[p], p))
        chosen.append(best)
        left = {t: o for t, o in left.items() if best not in o}
    return chosen


def _option_components(sub: Options) -> list[Options]:
    groups = _components(sorted(sub), key=lambda t: sub[t])
    return [{t: sub[t] for t in g} for g in groups]


def _reduce(sub: Options) -> tuple[Options, list[Pair]] | None:
    """Apply forced choices until none remain; None when some term has no option."""
    chosen: list[Pair] = []
    while sub:
        if any(not opts for opts in sub.values()):
            return None
        freq = _frequencies(sub)
        pick = None
        for t in sorted(sub):
            opts = sub[t]
            if len(opts) == 1:
                pick = opts[0]
                break
            if all(freq[p] == 1 for p in opts):
                pick = min(opts)
                break
        if pick is not None:
            chosen.append(pick)
            sub = {t: o for t, o in sub.items() if pick not in o}
            continue
        # Two distinct terms share at most one pair, so a pair that covers a
        # single term is dominated by any other option of that term.
        lonely = {p for p, f in freq.items() if f == 1}
        if not lonely:
            break
        sub = {t: tuple(p for p in o if p not in lonely) for t, o in sub.items()}
    return sub, chosen


def _exact(sub: Options, limit: int) -> list[Pair] | None:
    """Optimal cover of ``sub`` if one with fewer than ``limit`` pairs exists."""
    reduced = _reduce(sub)
    if reduced is None:
        return None
    sub, chosen = reduced
    budget = limit - len(chosen)
    if not sub:
        return chosen if budget > 0 else None
    comps = _option_components(sub)
    if len(comps) > 1:
        bounds = [_lower_bound(c, _frequencies(c)) for c in comps]
        if sum(bounds) >= budget:
            return None
        for idx, comp in enumerate(comps):
            part = _exact(comp, budget - sum(bounds[idx + 1:]))
            if part is None:
                return None
            chosen.extend(part)
            budget -= len(part)
        return chosen
    freq = _frequencies(sub)
    if _lower_bound(sub, freq) >= budget:
        return None
    best = None
    incumbent = _greedy(sub)
    if len(incumbent) < budget:
        best, budget = incumbent, len(incumbent)
    # branch on the term with fewest options; sibling branches forbid earlier options
    term = min(sub, key=lambda t: (len(sub[t]), max(freq[p] for p in sub[t]), t))
    forbidden: set[Pair] = set()
    for p in sorted(sub[term], key=lambda p: (-freq[p], p)):
        rest = {t: tuple(q for q in o if q not in forbidden)
                for t, o in sub.items() if p not in o}
        found = _exact(rest, budget - 1)
        if found is not None:
            best = [p] + found
            budget = len(best)
        forbidden.add(p)
    return None if best is None else chosen + best


def solve_min_cover(residual: Iterable, forced: Iterable[Pair] = ()) -> set[Pair]:
    """Minimum set of pairs hitting every residual cubic term.

    ``residual`` holds triples or objects with a ``variables`` triple. The
    forced pairs are not part of the search; callers take the union.
    """
    triples = sorted({tuple(getattr(t, "variables", t)) for t in residual})
    forced = set(forced)
    for t in triples:
        if any(p in forced for p in pairs_of(t)):
            raise ValueError(f"residual term {t} already contains a forced pair")
    result: set[Pair] = set()
    for comp in _components(triples):
        if len(comp) == 1:
            result.add(pairs_of(comp[0])[0])
            continue
        sub = {t: pairs_of(t) for t in comp}
        best = _exact(sub, len(_greedy(sub)) + 1)
        result.update(best)
    return result

