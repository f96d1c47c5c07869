"""Monte Carlo network simulator: the ground-truth estimator for every metric.

Each snapshot places the typical user at the origin and draws the K nearest
BSs of a homogeneous PPP exactly (arrival times of a unit-rate Poisson
process in x = lambda pi r^2).  Interference from BSs beyond the K-th is
replaced by its mean, which is finite because beta > 2.

Snapshots are generated in fixed-size chunks; chunk ``i`` draws from
``SeedSequence([seed, i])``.  The result therefore does not depend on how
many worker threads process the chunks.
"""
from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .analytic._common import DegenerateConditionError
from .analytic.communication import ser_of_sinr
from .analytic.joint import CoverageQuery
from .model import BeamPattern, NetworkParams, QamOrder

CHUNK = 4096
K_NEAREST = 500
Z95 = 1.959963984540054


@dataclass(frozen=True)
class SnapshotMetrics:
    l_participating: int
    crlb_bound: float  # m^2, N_L when unlocalizable
    sinr: float
    rate: float  # bit/s/Hz
    ser: float
    crlb_exact: float | None = None


@dataclass(frozen=True)
class EstimateWithCI:
    value: float
    half_width: float
    n_samples: int

    def __post_init__(self):
        if self.half_width < 0 or self.n_samples < 1:
            raise ValueError("need half_width >= 0 and n_samples >= 1")

    def agrees_with(self, other: float, floor: float = 0.02) -> bool:
        return abs(self.value - other) <= max(floor, 3.0 * self.half_width)


@dataclass
class SnapshotBatch:
    """Column-wise snapshot metrics for many trials."""

    l_participating: np.ndarray
    crlb_bound: np.ndarray
    sinr: np.ndarray
    rate: np.ndarray
    ser: np.ndarray
    participation_sinr: np.ndarray  # (n, L_P) fading-free SINR of the l-th BS
    crlb_exact: np.ndarray | None = None

    def __len__(self):
        return len(self.sinr)

    def __getitem__(self, i) -> SnapshotMetrics:
        ex = None if self.crlb_exact is None or np.isnan(self.crlb_exact[i]) \
            else float(self.crlb_exact[i])
        return SnapshotMetrics(int(self.l_participating[i]), float(self.crlb_bound[i]),
                               float(self.sinr[i]), float(self.rate[i]), float(self.ser[i]), ex)

    @classmethod
    def concat(cls, parts: list["SnapshotBatch"]) -> "SnapshotBatch":
        ex = None if parts[0].crlb_exact is None else np.concatenate([p.crlb_exact for p in parts])
        return cls(*(np.concatenate([getattr(p, f) for p in parts]) for f in
                     ("l_participating", "crlb_bound", "sinr", "rate", "ser",
                      "participation_sinr")), crlb_exact=ex)


def _threads(threads: int | None) -> int:
    if threads is not None:
        return max(1, int(threads))
    env = os.environ.get("ISAC_THREADS")
    if env:
        return max(1, int(env))
    return min(8, os.cpu_count() or 1)


def _tail_mean(x_k, params: NetworkParams):
    """Mean of sum r^-beta over BSs beyond x_k = lambda pi r_k^2."""
    lam_pi = params.lambda_bs * math.pi
    r_k2 = x_k / lam_pi
    return 2.0 * math.pi * params.lambda_bs * r_k2 ** (1.0 - params.beta / 2.0) / (params.beta - 2.0)


def _draw_channel(rng: np.random.Generator, m: int, k: int, beam: BeamPattern):
    """Rayleigh power fades |alpha|^2 ~ Exp(1) and main-lobe indicators (prob c1)."""
    fading = rng.exponential(size=(m, k))
    main = rng.random(size=(m, k)) < beam.c1
    return fading, main


def _chunk(params: NetworkParams, beam: BeamPattern, qam: QamOrder, m: int,
           rng: np.random.Generator, k: int, exact: bool) -> SnapshotBatch:
    beta, lp = params.beta, params.l_p
    lam_pi = params.lambda_bs * math.pi
    x = np.cumsum(rng.exponential(size=(m, k)), axis=1)
    r = np.sqrt(x / lam_pi)
    theta = rng.uniform(-math.pi, math.pi, size=(m, lp))
    fading, main = _draw_channel(rng, m, k, beam)

    path = r ** -beta
    tail = _tail_mean(x[:, -1], params)

    # participation: fading-free, interference only from BSs beyond the l-th
    beyond = np.cumsum(path[:, ::-1], axis=1)[:, ::-1]  # beyond[l] = sum_{j >= l} path_j
    interf = beyond[:, 1:lp + 1] + tail[:, None]
    psinr = params.p_t * path[:, :lp] / (params.p_t * interf + params.n0)
    ok = psinr >= params.gamma
    # L = largest l <= L_P passing the threshold
    last = np.where(ok.any(axis=1), lp - np.argmax(ok[:, ::-1], axis=1), 0)
    L = np.where(last >= 3, last, 0)

    inv2 = r[:, :lp] ** -2.0
    use = np.arange(lp)[None, :] < L[:, None]
    s_inv2 = np.sum(np.where(use, inv2, 0.0), axis=1)
    with np.errstate(divide="ignore"):
        bound = np.where(L >= 3, 4.0 * params.crlb_scale / s_inv2, params.n_l_cap)

    crlb_ex = None
    if exact:
        w = np.where(use, inv2, 0.0)
        sin2 = np.sin(theta[:, :, None] - theta[:, None, :]) ** 2
        denom = np.einsum("nl,nlm,nm->n", w, sin2, w)
        with np.errstate(divide="ignore", invalid="ignore"):
            crlb_ex = np.where(L >= 3, params.crlb_scale * 2.0 * s_inv2 / denom, np.nan)

    # communication: serving beam aligned (M1), interferers j >= 2 random lobe
    gains = np.where(main, beam.m1, beam.m2)
    sig = params.p_t * fading[:, 0] * beam.m1 * path[:, 0]
    i_agg = params.p_t * (np.sum(fading[:, 1:] * gains[:, 1:] * path[:, 1:], axis=1)
                          + beam.mean_gain * tail)
    sinr = sig / (i_agg + params.sigma_n2)
    return SnapshotBatch(L, bound, sinr, np.log2(1.0 + sinr), np.asarray(ser_of_sinr(sinr, qam)),
                         psinr, crlb_ex)


def simulate_batch(params: NetworkParams, beam: BeamPattern, qam: QamOrder | None = None,
                   n_trials: int = 10_000, seed: int = 0, *, exact_crlb: bool = False,
                   threads: int | None = None, k_nearest: int = K_NEAREST) -> SnapshotBatch:
    """Simulate ``n_trials`` i.i.d. snapshots."""
    if n_trials < 1:
        raise ValueError("n_trials must be >= 1")
    if k_nearest <= params.l_p + 1:
        raise ValueError("k_nearest must exceed l_p + 1")
    qam = qam or QamOrder(16)
    sizes = [min(CHUNK, n_trials - s) for s in range(0, n_trials, CHUNK)]

    def job(i):
        rng = np.random.default_rng(np.random.SeedSequence([int(seed), i]))
        return _chunk(params, beam, qam, sizes[i], rng, k_nearest, exact_crlb)

    workers = min(_threads(threads), len(sizes))
    if workers == 1:
        parts = [job(i) for i in range(len(sizes))]
    else:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(job, range(len(sizes))))
    return SnapshotBatch.concat(parts)


def simulate_snapshot(params: NetworkParams, beam: BeamPattern, qam: QamOrder | None = None,
                      seed: int = 0, exact_crlb: bool = False) -> SnapshotMetrics:
    return simulate_batch(params, beam, qam, 1, seed, exact_crlb=exact_crlb, threads=1)[0]


def sample_interference(r1: float, params: NetworkParams, beam: BeamPattern, n: int,
                        rng: np.random.Generator, k: int = 2000) -> np.ndarray:
    """Aggregate interference at the origin from BSs beyond ``r1`` (fading, random lobes)."""
    lam_pi = params.lambda_bs * math.pi
    x = lam_pi * r1 * r1 + np.cumsum(rng.exponential(size=(n, k)), axis=1)
    path = (x / lam_pi) ** (-params.beta / 2.0)
    g = np.where(rng.random((n, k)) < beam.c1, beam.m1, beam.m2)
    i_agg = np.sum(rng.exponential(size=(n, k)) * g * path, axis=1)
    return params.p_t * (i_agg + beam.mean_gain * _tail_mean(x[:, -1], params))


# ---------------------------------------------------------------------------
# estimators
# ---------------------------------------------------------------------------
def _proportion(hits: np.ndarray) -> EstimateWithCI:
    n = int(hits.size)
    if n == 0:
        raise DegenerateConditionError("conditioning event never occurred")
    p = float(hits.mean())
    return EstimateWithCI(p, Z95 * math.sqrt(p * (1.0 - p) / n), n)


def _mean(x: np.ndarray) -> EstimateWithCI:
    n = int(x.size)
    if n == 0:
        raise DegenerateConditionError("conditioning event never occurred")
    sd = float(x.std(ddof=1)) if n > 1 else 0.0
    return EstimateWithCI(float(x.mean()), Z95 * sd / math.sqrt(n), n)


def _events(query: CoverageQuery, batch: SnapshotBatch):
    pos = batch.crlb_bound <= query.eps1 if query.eps1 is not None else None
    if query.uses_ser:
        com = batch.ser <= query.eps3
    elif query.eps2 is not None:
        com = batch.sinr >= query.eps2
    else:
        com = None
    return pos, com


def coverage_from_batch(query: CoverageQuery, batch: SnapshotBatch) -> EstimateWithCI:
    pos, com = _events(query, batch)
    m = query.metric
    if m == "positioning":
        return _proportion(pos)
    if m.startswith("communication"):
        return _proportion(com)
    if m.startswith("joint"):
        return _proportion(pos & com)
    if m in ("cond_p_given_s", "cond_p_given_c"):
        return _proportion(pos[com])
    return _proportion(com[pos])


def estimate_coverage(query: CoverageQuery, params: NetworkParams, beam: BeamPattern,
                      n_trials: int, seed: int, *, batch: SnapshotBatch | None = None,
                      threads: int | None = None) -> EstimateWithCI:
    """Empirical frequency of the query event.  Pass ``batch`` to reuse snapshots."""
    if n_trials < 100:
        raise ValueError("n_trials must be >= 100")
    if batch is None:
        batch = simulate_batch(params, beam, query.qam, n_trials, seed, threads=threads)
    return coverage_from_batch(query, batch)


def ergodic_from_batch(metric: str, batch: SnapshotBatch, *, eps1=None, eps2=None, eps3=None,
                       localizable_only: bool = False, power: float = 1.0) -> EstimateWithCI:
    loc = batch.l_participating >= 3
    crlb = batch.crlb_bound ** power
    if metric == "crlb":
        return _mean(crlb[loc] if localizable_only else crlb)
    if metric == "rate":
        return _mean(batch.rate)
    if metric == "ser":
        return _mean(batch.ser)
    if metric in ("crlb_given_sinr", "crlb_given_ser"):
        cond = batch.sinr >= eps2 if metric == "crlb_given_sinr" else batch.ser <= eps3
        if localizable_only:
            cond = cond & loc
        return _mean(crlb[cond])
    if metric == "rate_given_crlb":
        return _mean(batch.rate[batch.crlb_bound <= eps1])
    if metric == "ser_given_crlb":
        return _mean(batch.ser[batch.crlb_bound <= eps1])
    raise ValueError(f"unknown ergodic metric {metric!r}")


def estimate_ergodic(metric: str, params: NetworkParams, beam: BeamPattern, n_trials: int,
                     seed: int, *, qam: QamOrder | None = None, batch: SnapshotBatch | None = None,
                     threads: int | None = None, **kw) -> EstimateWithCI:
    """Sample mean of the metric (not via the tail integral)."""
    if n_trials < 100:
        raise ValueError("n_trials must be >= 100")
    if batch is None:
        batch = simulate_batch(params, beam, qam, n_trials, seed, threads=threads)
    return ergodic_from_batch(metric, batch, **kw)


def write_snapshots_csv(batch: SnapshotBatch, path) -> None:
    """Per-snapshot dump: trial, L, crlb_bound, sinr, rate, ser."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["trial", "L", "crlb_bound", "sinr", "rate", "ser"])
        for i in range(len(batch)):
            w.writerow([i, int(batch.l_participating[i]), repr(float(batch.crlb_bound[i])),
                        repr(float(batch.sinr[i])), repr(float(batch.rate[i])),
                        repr(float(batch.ser[i]))])
