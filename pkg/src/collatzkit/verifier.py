"""Bulk convergence verification over integer ranges.

The sweep rests on a dense memo table over a prefix [1, cache_len):
for every entry that resolves within budget the table holds the exact
total stopping time and orbit peak, with -1 marking the rest. Each x
in the range then only walks until its orbit drops below cache_len and
the table finishes the job exactly.

The walk is vectorized in int64 over fixed-size chunks. Lanes whose
next step could leave int64 are evacuated to an exact big-integer
scalar path, so correctness never depends on 64 bits being enough.
Worker processes sweep disjoint chunks against read-only copies of the
table; partial results are merged in range order, which makes reports
independent of chunk size and worker count.

An optional cutoff (assume_verified_below) certifies a trajectory as
soon as it drops strictly below already-verified territory. Record
statistics still come only from exactly resolved trajectories, so the
cutoff changes what is certified, never what is measured.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .cycles import ClosedLoop, find_cycle
from .dynamics import DEFAULT_STEP_BUDGET, MapVariant

DENSE_CACHE_ENTRIES = 1 << 20

# 3x+1 on a value above this would leave int64.
_VALUE_LIMIT = (2**63 - 2) // 3
# Ranges starting beyond this skip the vector path entirely.
_RANGE_LIMIT = 2**62
_I64_MAX = int(np.iinfo(np.int64).max)

_TRIVIAL_LOOP = (1, 4, 2, 1)

# Per-x classification inside a chunk. VERIFIED means exactly resolved
# (steps and peak known); ASSUMED means certified only by the cutoff.
_VERIFIED = 0
_UNRESOLVED = 1
_ASSUMED = 2
_PENDING = 255


class ConfigError(ValueError):
    """A VerifyConfig field is out of range; the message names it."""


@dataclass(frozen=True)
class VerifyConfig:
    range_lo: int
    range_hi: int
    step_budget: int = DEFAULT_STEP_BUDGET
    assume_verified_below: int = 1
    chunk_size: int = 1 << 16
    worker_count: int | None = None
    dense_cache_entries: int = DENSE_CACHE_ENTRIES
    skip_evens: bool = False

    def validated(self) -> "VerifyConfig":
        if not isinstance(self.range_lo, int) or self.range_lo < 1:
            raise ConfigError(f"range_lo must be a positive integer, got {self.range_lo!r}")
        if not isinstance(self.range_hi, int) or self.range_hi < self.range_lo:
            raise ConfigError(f"range_hi must be an integer >= range_lo, got {self.range_hi!r}")
        if not isinstance(self.step_budget, int) or self.step_budget < 1:
            raise ConfigError(f"step_budget must be a positive integer, got {self.step_budget!r}")
        if not isinstance(self.assume_verified_below, int) or self.assume_verified_below < 1:
            raise ConfigError(
                f"assume_verified_below must be a positive integer, got {self.assume_verified_below!r}"
            )
        if self.assume_verified_below > self.range_lo:
            raise ConfigError(
                "assume_verified_below may only reference already-certified territory: "
                f"{self.assume_verified_below} > range_lo {self.range_lo}"
            )
        if not isinstance(self.chunk_size, int) or self.chunk_size < 1:
            raise ConfigError(f"chunk_size must be a positive integer, got {self.chunk_size!r}")
        if self.worker_count is not None and (
            not isinstance(self.worker_count, int) or self.worker_count < 1
        ):
            raise ConfigError(f"worker_count must be a positive integer, got {self.worker_count!r}")
        if not isinstance(self.dense_cache_entries, int) or self.dense_cache_entries < 2:
            raise ConfigError(
                f"dense_cache_entries must be an integer >= 2, got {self.dense_cache_entries!r}"
            )
        return self

    @property
    def resolved_worker_count(self) -> int:
        if self.worker_count is not None:
            return self.worker_count
        return os.cpu_count() or 1


@dataclass(frozen=True)
class RecordStat:
    value: int
    argmax: int


@dataclass(frozen=True)
class VerifyReport:
    """Aggregate result of one or more merged range sweeps.

    segments lists the exact disjoint subranges covered, ascending and
    coalesced, so counts stay exact even when merged ranges leave gaps;
    range spans from the first segment's lo to the last segment's hi.
    wall_time is in seconds; to_json reports it in milliseconds.
    """

    segments: tuple[tuple[int, int], ...]
    verified_count: int
    unresolved: tuple[int, ...]
    cycles_found: tuple[ClosedLoop, ...]
    max_total_stopping_time: RecordStat | None
    max_excursion: RecordStat | None
    wall_time: float
    throughput: float

    @classmethod
    def empty(cls) -> "VerifyReport":
        return cls((), 0, (), (), None, None, 0.0, 0.0)

    @property
    def range(self) -> tuple[int, int] | None:
        if not self.segments:
            return None
        return (self.segments[0][0], self.segments[-1][1])

    @property
    def covered_count(self) -> int:
        return sum(hi - lo + 1 for lo, hi in self.segments)

    def payload(self) -> dict:
        """Semantic content, excluding timing. Two sweeps of the same
        range agree on this no matter how the work was split."""
        return {
            "segments": [list(s) for s in self.segments],
            "verified_count": self.verified_count,
            "unresolved": list(self.unresolved),
            "cycles_found": [list(c.values) for c in self.cycles_found],
            "max_total_stopping_time": _stat_dict(self.max_total_stopping_time),
            "max_excursion": _stat_dict(self.max_excursion),
        }

    def to_json(self) -> str:
        data = {
            "range": list(self.range) if self.range else None,
            "verified_count": self.verified_count,
            "unresolved": list(self.unresolved),
            "cycles_found": [list(c.values) for c in self.cycles_found],
            "max_total_stopping_time": _stat_dict(self.max_total_stopping_time),
            "max_excursion": _stat_dict(self.max_excursion),
            "wall_time": self.wall_time * 1000.0,
            "throughput": self.throughput,
        }
        return json.dumps(data, separators=(",", ":"))

    def to_csv(self) -> str:
        lines = ["statistic,value,argmax"]
        for name, stat in (
            ("max_total_stopping_time", self.max_total_stopping_time),
            ("max_excursion", self.max_excursion),
        ):
            if stat is None:
                lines.append(f"{name},,")
            else:
                lines.append(f"{name},{stat.value},{stat.argmax}")
        return "\n".join(lines) + "\n"


def _stat_dict(stat: RecordStat | None) -> dict | None:
    if stat is None:
        return None
    return {"value": stat.value, "argmax": stat.argmax}


def _best(candidates: Iterable[tuple[int, int]]) -> tuple[int, int] | None:
    """Largest value wins; ties go to the smaller argmax."""
    best = None
    for value, argmax in candidates:
        if best is None or value > best[0] or (value == best[0] and argmax < best[1]):
            best = (value, argmax)
    return best


@dataclass
class _ChunkStats:
    lo: int
    hi: int
    verified: int = 0
    unresolved: list[int] = field(default_factory=list)
    max_steps: tuple[int, int] | None = None
    max_peak: tuple[int, int] | None = None


# ---------------------------------------------------------------------------
# Dense memo table


def _scalar_glide(c: int, v0: int, s: int, p: int, budget: int) -> tuple[int, int, int]:
    """Continue a glide with exact integers until it drops below v0.
    Returns (landing, steps, peak), landing -1 if the budget ran out."""
    while c >= v0:
        if s >= budget:
            return -1, s, p
        c = c // 2 if c % 2 == 0 else 3 * c + 1
        s += 1
        if c > p:
            p = c
    return c, s, p


def _build_cache(cache_len: int, step_budget: int):
    """Exact (total steps to 1, orbit peak) for every x in [1, cache_len).

    Phase one walks all entries in vectorized lockstep until each drops
    strictly below its own start, recording the glide's landing, length
    and peak. Phase two contracts glide chains by pointer doubling, so
    the whole table costs O(n log n) array operations. Entries that
    exhaust the budget keep the sentinel -1.
    """
    steps = np.full(cache_len, -1, dtype=np.int64)
    peak = np.zeros(cache_len, dtype=np.int64)
    if cache_len > 1:
        steps[1] = 0
        peak[1] = 1
    if cache_len <= 2:
        return steps, peak

    drop_to = np.full(cache_len, -1, dtype=np.int64)
    glide_steps = np.zeros(cache_len, dtype=np.int64)
    glide_peak = np.zeros(cache_len, dtype=np.int64)
    drop_to[1] = 1
    glide_peak[1] = 1

    idx = np.arange(2, cache_len, dtype=np.int64)
    cur = idx.copy()
    pk = idx.copy()
    big: dict[int, tuple[int, int, int]] = {}
    rounds = 0
    while idx.size and rounds < step_budget:
        odd = (cur & 1).astype(bool)
        risky = odd & (cur > _VALUE_LIMIT)
        if risky.any():
            for j in np.nonzero(risky)[0]:
                v0 = int(idx[j])
                big[v0] = _scalar_glide(int(cur[j]), v0, rounds, int(pk[j]), step_budget)
            keep = ~risky
            idx, cur, pk = idx[keep], cur[keep], pk[keep]
            if not idx.size:
                break
            odd = (cur & 1).astype(bool)
        # 3*cur+1 wraps harmlessly on large even lanes; where() discards it.
        cur = np.where(odd, 3 * cur + 1, cur >> 1)
        rounds += 1
        np.maximum(pk, cur, out=pk)
        done = cur < idx
        if done.any():
            d = idx[done]
            drop_to[d] = cur[done]
            glide_steps[d] = rounds
            glide_peak[d] = pk[done]
            keep = ~done
            idx, cur, pk = idx[keep], cur[keep], pk[keep]

    if big:
        if any(p > _I64_MAX for (_c, _s, p) in big.values()):
            glide_peak = glide_peak.astype(object)
        for v0, (landing, s, p) in big.items():
            drop_to[v0] = landing
            glide_steps[v0] = s
            glide_peak[v0] = p

    # Pointer doubling: (glide_steps, glide_peak) always describe the
    # path from v to drop_to[v]; each pass composes every live chain
    # with its target's chain simultaneously. Gathers happen before
    # scatters, so a pass is a true parallel jump.
    t = drop_to
    ts = glide_steps
    tp = glide_peak
    while True:
        live = t > 1
        if not live.any():
            break
        lv = np.nonzero(live)[0]
        tv = t[lv]
        nt = t[tv]
        add_s = ts[tv]
        add_p = tp[tv]
        ts[lv] = ts[lv] + add_s
        tp[lv] = np.maximum(tp[lv], add_p)
        t[lv] = np.where(nt == -1, -1, nt)

    ok = t == 1
    steps = np.where(ok, ts, np.int64(-1))
    peak = np.where(ok, tp, 0 if tp.dtype == object else np.int64(0))
    steps[0] = -1
    if cache_len > 1:
        steps[1] = 0
        peak[1] = 1
    return steps, peak


_cache_slot: tuple | None = None


def _cache_for(cache_len: int, step_budget: int):
    """Single-slot memo so repeated sweeps and forked workers reuse the
    table instead of rebuilding it."""
    global _cache_slot
    key = (cache_len, step_budget)
    if _cache_slot is None or _cache_slot[0] != key:
        _cache_slot = (key, _build_cache(cache_len, step_budget))
    return _cache_slot[1]


# ---------------------------------------------------------------------------
# Chunk sweeps


def _scalar_finish(c, r, p, budget, cutoff, crossed, cache_steps, cache_peak):
    """Finish one trajectory with exact integers from state (value c,
    steps so far r, peak p). Returns (status, steps or -1, peak)."""
    cache_len = len(cache_steps)
    while True:
        if c < cache_len:
            cs = int(cache_steps[c])
            if cs >= 0:
                return _VERIFIED, r + cs, max(p, int(cache_peak[c]))
            return (_ASSUMED if crossed or c < cutoff else _UNRESOLVED), -1, p
        if r >= budget:
            return (_ASSUMED if crossed else _UNRESOLVED), -1, p
        c = c // 2 if c % 2 == 0 else 3 * c + 1
        r += 1
        if c > p:
            p = c
        if c < cutoff:
            crossed = True


def _reduce_scalar(results, lo, hi):
    """Fold per-x (status, steps, peak) into _ChunkStats, x ascending."""
    st = _ChunkStats(lo, hi)
    steps_cands = []
    peak_cands = []
    for x, (status, steps, peak) in results:
        if status == _UNRESOLVED:
            st.unresolved.append(x)
            continue
        st.verified += 1
        if status == _VERIFIED:
            steps_cands.append((steps, x))
            peak_cands.append((peak, x))
    st.max_steps = _best(steps_cands)
    st.max_peak = _best(peak_cands)
    return st


def _sweep_chunk_scalar(lo, hi, budget, cutoff, skip_evens, cache_steps, cache_peak):
    results = []
    by_x = {}
    for x in range(lo, hi + 1):
        if skip_evens and x % 2 == 0 and x // 2 >= lo and x >= len(cache_steps):
            status, steps, peak = by_x[x // 2]
            out = (status, steps + 1 if steps >= 0 else -1, max(x, peak))
        else:
            out = _scalar_finish(x, 0, x, budget, cutoff, False, cache_steps, cache_peak)
        by_x[x] = out
        results.append((x, out))
    return _reduce_scalar(results, lo, hi)


def _sweep_chunk(lo, hi, budget, cutoff, skip_evens, cache_steps, cache_peak):
    """Classify every x in [lo, hi] against the memo table."""
    if hi > _RANGE_LIMIT or cache_peak.dtype == object:
        return _sweep_chunk_scalar(lo, hi, budget, cutoff, skip_evens, cache_steps, cache_peak)

    cache_len = len(cache_steps)
    n = hi - lo + 1
    x = np.arange(lo, hi + 1, dtype=np.int64)
    status = np.full(n, _PENDING, dtype=np.uint8)
    steps_arr = np.full(n, -1, dtype=np.int64)
    peak_arr = np.zeros(n, dtype=np.int64)
    big_peaks: dict[int, int] = {}  # chunk offset -> exact peak beyond int64

    low = x < cache_len
    if low.any():
        xv = x[low]
        cs = cache_steps[xv]
        ok = cs >= 0
        status[low] = np.where(ok, _VERIFIED, _UNRESOLVED).astype(np.uint8)
        steps_arr[low] = cs
        peak_arr[low] = np.where(ok, cache_peak[xv], 0)

    lanes = np.nonzero(~low)[0]
    deferred = np.empty(0, dtype=np.intp)
    if skip_evens and lanes.size:
        lx = x[lanes]
        defer = ((lx & 1) == 0) & ((lx >> 1) >= lo)
        deferred = lanes[defer]
        lanes = lanes[~defer]

    if lanes.size:
        offs = lanes
        cur = x[offs].copy()
        pk = cur.copy()
        crossed = np.zeros(offs.size, dtype=bool)
        track_cross = cutoff > 1
        r = 0
        while offs.size:
            if r >= budget:
                status[offs] = np.where(crossed, _ASSUMED, _UNRESOLVED).astype(np.uint8)
                break
            odd = (cur & 1).astype(bool)
            risky = odd & (cur > _VALUE_LIMIT)
            if risky.any():
                for j in np.nonzero(risky)[0]:
                    off = int(offs[j])
                    s, steps, peak = _scalar_finish(
                        int(cur[j]), r, int(pk[j]), budget, cutoff,
                        bool(crossed[j]), cache_steps, cache_peak,
                    )
                    status[off] = s
                    if s == _VERIFIED:
                        steps_arr[off] = steps
                        if peak > _I64_MAX:
                            big_peaks[off] = peak
                            peak_arr[off] = _I64_MAX
                        else:
                            peak_arr[off] = peak
                keep = ~risky
                offs, cur, pk, crossed = offs[keep], cur[keep], pk[keep], crossed[keep]
                if not offs.size:
                    break
                odd = (cur & 1).astype(bool)
            # 3*cur+1 wraps harmlessly on large even lanes; where() discards it.
            cur = np.where(odd, 3 * cur + 1, cur >> 1)
            r += 1
            np.maximum(pk, cur, out=pk)
            if track_cross:
                crossed |= cur < cutoff
            done = cur < cache_len
            if done.any():
                doffs = offs[done]
                landing = cur[done]
                cs = cache_steps[landing]
                ok = cs >= 0
                fallback = np.where(crossed[done], _ASSUMED, _UNRESOLVED)
                status[doffs] = np.where(ok, _VERIFIED, fallback).astype(np.uint8)
                steps_arr[doffs] = np.where(ok, r + cs, -1)
                peak_arr[doffs] = np.where(ok, np.maximum(pk[done], cache_peak[landing]), 0)
                keep = ~done
                offs, cur, pk, crossed = offs[keep], cur[keep], pk[keep], crossed[keep]

    # Deferred evens inherit from their half, one halving per pass.
    rem = deferred
    while rem.size:
        src = ((x[rem] >> 1) - lo).astype(np.intp)
        ready = status[src] != _PENDING
        cur_offs = rem[ready]
        s = src[ready]
        st = status[s]
        ok = st == _VERIFIED
        status[cur_offs] = st
        steps_arr[cur_offs] = np.where(ok, steps_arr[s] + 1, -1)
        peak_arr[cur_offs] = np.where(ok, np.maximum(x[cur_offs], peak_arr[s]), 0)
        for o, so in zip(cur_offs[ok], s[ok]):
            if int(so) in big_peaks:
                big_peaks[int(o)] = max(int(x[o]), big_peaks[int(so)])
        rem = rem[~ready]

    stats = _ChunkStats(int(lo), int(hi))
    certified = (status == _VERIFIED) | (status == _ASSUMED)
    stats.verified = int(np.count_nonzero(certified))
    stats.unresolved = [int(v) for v in x[status == _UNRESOLVED]]

    exact = status == _VERIFIED
    if exact.any():
        masked = np.where(exact, steps_arr, -1)
        j = int(np.argmax(masked))
        if masked[j] >= 0:
            stats.max_steps = (int(masked[j]), int(x[j]))
        # Saturated entries carry their exact value in big_peaks.
        masked = np.where(exact & (peak_arr != _I64_MAX), peak_arr, -1)
        j = int(np.argmax(masked))
        cands = [] if masked[j] < 0 else [(int(masked[j]), int(x[j]))]
        cands.extend((v, int(x[off])) for off, v in big_peaks.items())
        stats.max_peak = _best(cands)
    return stats


# ---------------------------------------------------------------------------
# Drivers


def _worker_init(cache_len: int, step_budget: int):
    _cache_for(cache_len, step_budget)


def _worker_sweep(args):
    lo, hi, budget, cutoff, skip_evens, cache_len = args
    cache_steps, cache_peak = _cache_for(cache_len, budget)
    return _sweep_chunk(lo, hi, budget, cutoff, skip_evens, cache_steps, cache_peak)


def verify_range(config: VerifyConfig) -> VerifyReport:
    """Classify every x in [range_lo, range_hi] and aggregate statistics.

    Certification means the trajectory reached 1 or dropped strictly
    below assume_verified_below. Record statistics are taken only over
    trajectories resolved exactly, so they are identical regardless of
    chunking, worker count, or the even-skip shortcut.
    """
    cfg = config.validated()
    t0 = time.perf_counter()
    cache_len = max(2, min(cfg.dense_cache_entries, cfg.range_hi + 1))
    cache_steps, cache_peak = _cache_for(cache_len, cfg.step_budget)

    chunks = [
        (lo, min(lo + cfg.chunk_size - 1, cfg.range_hi))
        for lo in range(cfg.range_lo, cfg.range_hi + 1, cfg.chunk_size)
    ]
    workers = min(cfg.resolved_worker_count, len(chunks))
    if workers <= 1:
        parts = [
            _sweep_chunk(
                lo, hi, cfg.step_budget, cfg.assume_verified_below,
                cfg.skip_evens, cache_steps, cache_peak,
            )
            for lo, hi in chunks
        ]
    else:
        jobs = [
            (lo, hi, cfg.step_budget, cfg.assume_verified_below, cfg.skip_evens, cache_len)
            for lo, hi in chunks
        ]
        with ProcessPoolExecutor(
            max_workers=workers,
            initializer=_worker_init,
            initargs=(cache_len, cfg.step_budget),
        ) as pool:
            parts = list(pool.map(_worker_sweep, jobs))

    verified = sum(p.verified for p in parts)
    unresolved: list[int] = []
    for p in parts:
        unresolved.extend(p.unresolved)
    max_steps = _best(p.max_steps for p in parts if p.max_steps is not None)
    max_peak = _best(p.max_peak for p in parts if p.max_peak is not None)

    loops: list[ClosedLoop] = []
    seen = set()
    for u in unresolved:
        loop = find_cycle(u, MapVariant.STANDARD, cfg.step_budget)
        if loop is not None and loop.values != _TRIVIAL_LOOP and loop.values not in seen:
            seen.add(loop.values)
            loops.append(loop)
    loops.sort(key=lambda c: (c.period, c.values))

    wall = time.perf_counter() - t0
    covered = cfg.range_hi - cfg.range_lo + 1
    return VerifyReport(
        segments=((cfg.range_lo, cfg.range_hi),),
        verified_count=verified,
        unresolved=tuple(unresolved),
        cycles_found=tuple(loops),
        max_total_stopping_time=RecordStat(*max_steps) if max_steps else None,
        max_excursion=RecordStat(*max_peak) if max_peak else None,
        wall_time=wall,
        throughput=covered / wall if wall > 0 else float(covered),
    )


def merge_reports(a: VerifyReport, b: VerifyReport) -> VerifyReport:
    """Combine reports over disjoint ranges; adjacent segments coalesce.

    The merge is associative and commutative on every field except the
    timing pair, where wall times add and throughput is recomputed.
    """
    segs = sorted(a.segments + b.segments)
    for (lo1, hi1), (lo2, hi2) in zip(segs, segs[1:]):
        if lo2 <= hi1:
            raise ValueError(f"overlapping ranges: [{lo1}, {hi1}] and [{lo2}, {hi2}]")
    coalesced: list[tuple[int, int]] = []
    for lo, hi in segs:
        if coalesced and lo == coalesced[-1][1] + 1:
            coalesced[-1] = (coalesced[-1][0], hi)
        else:
            coalesced.append((lo, hi))

    seen = set()
    loops = []
    for loop in a.cycles_found + b.cycles_found:
        if loop.values not in seen:
            seen.add(loop.values)
            loops.append(loop)
    loops.sort(key=lambda c: (c.period, c.values))

    stats = []
    for x, y in ((a.max_total_stopping_time, b.max_total_stopping_time),
                 (a.max_excursion, b.max_excursion)):
        cands = [(s.value, s.argmax) for s in (x, y) if s is not None]
        best = _best(cands)
        stats.append(RecordStat(*best) if best else None)

    wall = a.wall_time + b.wall_time
    covered = sum(hi - lo + 1 for lo, hi in coalesced)
    return VerifyReport(
        segments=tuple(coalesced),
        verified_count=a.verified_count + b.verified_count,
        unresolved=tuple(sorted(a.unresolved + b.unresolved)),
        cycles_found=tuple(loops),
        max_total_stopping_time=stats[0],
        max_excursion=stats[1],
        wall_time=wall,
        throughput=covered / wall if wall > 0 else float(covered),
    )
