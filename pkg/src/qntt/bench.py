"""Wall-clock timing of the multipliers; CSV output for external plotting."""

from __future__ import annotations

import csv
import math
import random
import time
from dataclasses import astuple, dataclass, fields
from statistics import fmean

from .fft import NttPlan, crt_mul, fft_mul, make_plan
from .partial_ntt import generalized_fft_mul
from .poly import karatsuba, reduce_mod_xn_minus_a, schoolbook_mul_mod

CSV_HEADER = ("algo", "m", "n", "d", "trials", "mean_ns", "p50_ns", "p95_ns")


@dataclass(frozen=True)
class BenchRecord:
    algo: str
    m: int
    n: int
    d: int
    trials: int
    mean_ns: int
    p50_ns: int
    p95_ns: int


def percentile(samples, q: float) -> int:
    """Nearest-rank percentile, so a single sample is every percentile."""
    ordered = sorted(samples)
    rank = max(1, math.ceil(q / 100 * len(ordered)))
    return ordered[rank - 1]


def multiplier(algo: str, plan: NttPlan):
    """A two-argument product function for the named algorithm."""
    m, n, a = plan.m.m, plan.n, plan.a
    if algo == "schoolbook":
        return lambda g, h: schoolbook_mul_mod(g, h, n, a, m)
    if algo == "karatsuba":
        return lambda g, h: reduce_mod_xn_minus_a(karatsuba(g, h, m), n, a, m)
    if algo == "fft":
        return lambda g, h: fft_mul(g, h, plan)
    if algo == "partial":
        return lambda g, h: generalized_fft_mul(g, h, plan)
    if algo == "crt":
        return lambda g, h: crt_mul(g, h, plan)
    raise ValueError(f"unknown algorithm {algo!r}")


def time_algorithm(algo: str, plan: NttPlan, trials: int, rng=None) -> BenchRecord:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = rng if isinstance(rng, random.Random) else random.Random(rng or 0)
    mul = multiplier(algo, plan)
    m, n = plan.m.m, plan.n
    samples = []
    for _ in range(trials):
        g = [rng.randrange(m) for _ in range(n)]
        h = [rng.randrange(m) for _ in range(n)]
        start = time.perf_counter_ns()
        mul(g, h)
        samples.append(time.perf_counter_ns() - start)
    return BenchRecord(
        algo,
        m,
        n,
        plan.d,
        trials,
        round(fmean(samples)),
        percentile(samples, 50),
        percentile(samples, 95),
    )


def run(modulus, a: int, sizes, algos, trials: int, d: int | None = None, seed=0):
    """Records for every (size, algorithm) pair in that order.

    ``d=None`` means a full split at each size. Plans are built before any
    timing, so an unsupported size fails early.
    """
    plans = [make_plan(modulus, n, a, n if d is None else min(d, n), seed) for n in sizes]
    rng = random.Random(seed)
    return [time_algorithm(algo, plan, trials, rng) for plan in plans for algo in algos]


def write_csv(records, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in records:
        writer.writerow(astuple(rec))


def read_csv(fh) -> list[BenchRecord]:
    reader = csv.DictReader(fh)
    if tuple(reader.fieldnames or ()) != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    types = {f.name: (str if f.name == "algo" else int) for f in fields(BenchRecord)}
    return [BenchRecord(**{k: types[k](v) for k, v in row.items()}) for row in reader]


def growth_ratios(records, algo: str) -> list[float]:
    """mean_ns ratio between consecutive sizes for one algorithm."""
    means = [r.mean_ns for r in sorted((r for r in records if r.algo == algo), key=lambda r: r.n)]
    return [b / a for a, b in zip(means, means[1:])]
