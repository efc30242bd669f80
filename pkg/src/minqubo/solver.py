"""Exact and heuristic maximization of QUBO models."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, replace

import numpy as np

from .cnf import CnfInstance, count_satisfied
from .errors import ProvenanceMismatch, TooLarge
from .quadratize import QuboModel

BRUTE_FORCE_MAX = 30
TENURE_RANGE = (10, 30)
ELITE_SIZE = 8
RESTART_FACTOR = 10


@dataclass(frozen=True)
class Solution:
    bits: tuple[int, ...]
    raw_value: int
    total_value: int

    @classmethod
    def of(cls, model: QuboModel, bits) -> "Solution":
        bits = tuple(int(b) for b in bits)
        raw = model.value(bits) - model.offset
        return cls(bits, raw, raw + model.offset)


@dataclass(frozen=True)
class SolveReport:
    best: Solution
    decoded_satisfied: int | None
    penalty_clean: bool
    elapsed: float
    seed: int
    iterations: int

    def to_dict(self) -> dict:
        d = asdict(self)
        d["best"]["bits"] = "".join(map(str, self.best.bits))
        return d


def _all_bits(width: int) -> np.ndarray:
    idx = np.arange(1 << width, dtype=np.int64)
    shifts = np.arange(width - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] >> shifts) & 1


def brute_force(model: QuboModel) -> Solution:
    """Global maximum by full enumeration; ties go to the lexicographically smallest bits.

    Variables are split into a leading and trailing half so each chunk is a
    single matrix product instead of per-assignment work.
    """
    n = model.size
    if n > BRUTE_FORCE_MAX:
        raise TooLarge(f"brute force limited to {BRUTE_FORCE_MAX} variables, model has {n}")
    if n == 0:
        return Solution((), 0, model.offset)
    q = model.q
    h = n // 2
    l = n - h
    qh, ql, cross = q[:h, :h], q[h:, h:], q[:h, h:]
    xl = _all_bits(l)
    vl = np.einsum("ri,ij,rj->r", xl, ql, xl)
    xl_t = xl.T.copy()

    best_val = None
    best_idx = 0
    block = max(1, (1 << 22) >> l)
    for lo in range(0, 1 << h, block):
        hi = min(1 << h, lo + block)
        rows = np.arange(lo, hi, dtype=np.int64)
        xh = (rows[:, None] >> np.arange(h - 1, -1, -1, dtype=np.int64)) & 1
        vh = np.einsum("ri,ij,rj->r", xh, qh, xh)
        vals = vh[:, None] + vl[None, :] + (xh @ cross) @ xl_t
        flat = int(np.argmax(vals))
        v = int(vals.flat[flat])
        if best_val is None or v > best_val:
            best_val = v
            r, c = divmod(flat, 1 << l)
            best_idx = ((lo + r) << l) | c
    bits = tuple((best_idx >> (n - 1 - i)) & 1 for i in range(n))
    return Solution(bits, best_val, best_val + model.offset)


class FlipState:
    """Current assignment with cached flip gains, updated in O(size) per flip."""

    def __init__(self, model: QuboModel, bits):
        q = model.q
        self.diag = np.diag(q).copy()
        off = np.triu(q, 1)
        self.w = off + off.T
        self.x = np.array(bits, dtype=np.int64)
        self.field = self.w @ self.x
        self.value = int(self.x @ q @ self.x)

    def gains(self) -> np.ndarray:
        return (1 - 2 * self.x) * (self.diag + self.field)

    def gain(self, k: int) -> int:
        return int((1 - 2 * self.x[k]) * (self.diag[k] + self.field[k]))

    def flip(self, k: int):
        self.value += self.gain(k)
        step = 1 - 2 * self.x[k]
        self.x[k] ^= 1
        self.field += step * self.w[k]


def _add_elite(elite: list, bits: np.ndarray, value: int, size: int = ELITE_SIZE):
    key = bits.tobytes()
    if any(k == key for _, k, _ in elite):
        return
    elite.append((value, key, bits.copy()))
    elite.sort(key=lambda e: -e[0])
    del elite[size:]


def _path_relink(model: QuboModel, start: np.ndarray, guide: np.ndarray, rng) -> np.ndarray:
    """Walk from ``start`` to ``guide`` taking the best differing flip; return the best point passed."""
    state = FlipState(model, start)
    diff = list(np.flatnonzero(start != guide))
    best_bits, best_val = None, None
    while len(diff) > 1:
        g = state.gains()[diff]
        top = np.flatnonzero(g == g.max())
        pick = int(top[rng.integers(len(top))]) if len(top) > 1 else int(top[0])
        state.flip(diff.pop(pick))
        if best_val is None or state.value > best_val:
            best_bits, best_val = state.x.copy(), state.value
    return best_bits if best_bits is not None else start.copy()


def tabu_search(model: QuboModel, seed: int = 0, time_limit: float | None = None,
                target: int | None = None, max_iters: int | None = None) -> SolveReport:
    """One-flip tabu search with restarts seeded by path relinking over an elite pool.

    Stops at ``max_iters`` iterations, ``time_limit`` seconds, or as soon as
    the total value reaches ``target``, whichever comes first. With only an
    iteration budget the result is fully determined by ``seed``.
    """
    if time_limit is None and max_iters is None:
        raise ValueError("give a time_limit, max_iters, or both")
    if time_limit is not None and time_limit <= 0:
        raise ValueError("time_limit must be positive")
    start_time = time.perf_counter()
    n = model.size
    rng = np.random.default_rng(seed)
    if n == 0:
        return SolveReport(Solution((), 0, model.offset), None, True,
                           time.perf_counter() - start_time, seed, 0)

    target_raw = None if target is None else target - model.offset
    state = FlipState(model, rng.integers(0, 2, n))
    best_bits, best_val = state.x.copy(), state.value
    phase_bits, phase_val = best_bits.copy(), best_val
    elite: list = []
    tabu_until = np.zeros(n, dtype=np.int64)
    restart_after = RESTART_FACTOR * n
    stall = 0
    it = 0
    floor = np.iinfo(np.int64).min

    while True:
        if target_raw is not None and best_val >= target_raw:
            break
        if max_iters is not None and it >= max_iters:
            break
        if time_limit is not None and time.perf_counter() - start_time >= time_limit:
            break
        it += 1
        g = state.gains()
        allowed = (tabu_until <= it) | (state.value + g > best_val)
        if allowed.any():
            cand = np.where(allowed, g, floor)
            top = np.flatnonzero(cand == cand.max())
        else:
            top = np.flatnonzero(tabu_until == tabu_until.min())
        k = int(top[rng.integers(len(top))]) if len(top) > 1 else int(top[0])
        state.flip(k)
        tabu_until[k] = it + rng.integers(TENURE_RANGE[0], TENURE_RANGE[1] + 1)

        if state.value > phase_val:
            phase_bits, phase_val = state.x.copy(), state.value
        if state.value > best_val:
            best_bits, best_val = state.x.copy(), state.value
            stall = 0
        else:
            stall += 1

        if stall >= restart_after:
            _add_elite(elite, phase_bits, phase_val)
            if len(elite) >= 2:
                a, b = rng.choice(len(elite), size=2, replace=False)
                start = _path_relink(model, elite[a][2], elite[b][2], rng)
            else:
                start = best_bits.copy()
                flips = rng.choice(n, size=max(1, n // 4), replace=False)
                start[flips] ^= 1
            state = FlipState(model, start)
            phase_bits, phase_val = state.x.copy(), state.value
            if state.value > best_val:
                best_bits, best_val = state.x.copy(), state.value
            tabu_until[:] = 0
            stall = 0

    best = Solution.of(model, best_bits)
    return SolveReport(best, None, model.penalty_clean(best.bits),
                       time.perf_counter() - start_time, seed, it)


def decode(solution: Solution, instance: CnfInstance, model: QuboModel) -> int:
    """Satisfied-clause count of the solution projected onto x_1..x_n."""
    fp = model.provenance.get("fingerprint")
    if fp is None:
        raise ProvenanceMismatch("model carries no instance fingerprint")
    if fp != instance.fingerprint() or model.num_original != instance.num_vars:
        raise ProvenanceMismatch(
            f"model was built from {model.provenance.get('source', '?')}, not {instance.source_name}")
    return count_satisfied(instance, solution.bits[:instance.num_vars])


def with_decoded(report: SolveReport, instance: CnfInstance, model: QuboModel) -> SolveReport:
    return replace(report, decoded_satisfied=decode(report.best, instance, model))
