"""Seeded Monte Carlo engine for sample-quantile trajectories and experiments.

Reproducibility contract: every draw comes from the counter-based SplitMix64
stream in :mod:`.rng` via inverse-CDF sampling, and per-replication seeds are
a stateless mix of (master_seed, rep_index).  Identical configuration and
seeds therefore give byte-identical trajectories, reports and files, on any
platform, regardless of worker scheduling.
"""

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .berry_esseen import BEParams, bernoulli_moments, phi_of_k
from .distributions import DiscreteDistribution
from .empirical import EmpiricalSample
from .errors import EmptyWindow, ParameterOutOfRange, ProbabilityOutOfRange
from .rng import MASK64, derive_seed, uniform_matrix, uniforms

__all__ = [
    "SimConfig",
    "Trajectory",
    "SwitchStats",
    "BlockSchedule",
    "derive_seed",
    "sample_stream",
    "run_trajectory",
    "run_trajectory_streaming",
    "switch_stats",
    "sandwich_check",
    "gap_interior_hits",
    "block_schedule",
    "deviation_experiment",
    "block_event_experiment",
    "run_replicated",
    "trajectory_csv_bytes",
    "write_trajectory_csv",
    "report_to_json_bytes",
]

#: n_max at or below which the default record stride stays 1.
DENSE_RECORD_LIMIT = 10_000

_CHUNK = 1 << 15


@dataclass(frozen=True)
class SimConfig:
    """One trajectory experiment: distribution, level, length, seeding."""

    distribution: DiscreteDistribution
    p: float
    n_max: int
    master_seed: int
    record_stride: int | None = None
    replications: int = 1

    def __post_init__(self):
        if not 0.0 < self.p < 1.0:
            raise ProbabilityOutOfRange(f"p must be in (0, 1), got {self.p!r}")
        if self.n_max < 1:
            raise ParameterOutOfRange(f"n_max must be >= 1, got {self.n_max!r}")
        if self.replications < 1:
            raise ParameterOutOfRange(
                f"replications must be >= 1, got {self.replications!r}"
            )
        if not 0 <= self.master_seed <= MASK64:
            raise ParameterOutOfRange("master_seed must be an unsigned 64-bit integer")
        if self.record_stride is None:
            stride = 1 if self.n_max <= DENSE_RECORD_LIMIT else 10
            object.__setattr__(self, "record_stride", stride)
        elif self.record_stride < 1:
            raise ParameterOutOfRange(
                f"record_stride must be >= 1, got {self.record_stride!r}"
            )


class Trajectory:
    """Recorded (n, left sample quantile, right sample quantile) sequence."""

    __slots__ = ("ns", "lq", "rq", "seed")

    def __init__(self, ns: np.ndarray, lq: np.ndarray, rq: np.ndarray, seed: int):
        self.ns = ns
        self.lq = lq
        self.rq = rq
        self.seed = seed

    def __len__(self) -> int:
        return len(self.ns)

    def records(self) -> list[tuple[int, float, float]]:
        return [
            (int(n), float(a), float(b))
            for n, a, b in zip(self.ns, self.lq, self.rq)
        ]

    def __repr__(self) -> str:
        return f"Trajectory(records={len(self)}, seed={self.seed})"


@dataclass(frozen=True)
class SwitchStats:
    """Oscillation summary of the recorded left-quantile sequence."""

    switch_count: int
    visits: dict
    running_min: float
    running_max: float


@dataclass(frozen=True)
class BlockSchedule:
    """Non-overlapping deviation windows n_k < m_k < n_{k+1} < ...

    ``indices`` is the raw generated sequence (n_1, m_1, n_2, m_2, ...)
    truncated before the first index that would exceed the cap; ``entries``
    holds the complete (n_k, m_k) pairs.
    """

    entries: tuple[tuple[int, int], ...]
    indices: tuple[int, ...]
    alpha: float
    k_max: int


# ---------------------------------------------------------------------------
# Sampling


def _draw_indices(d: DiscreteDistribution, seed: int, n: int, start: int = 0):
    # inverse-CDF sampling: the left quantile of d at a uniform level
    u = uniforms(seed, n, start)
    return np.searchsorted(d.cum_array, u, side="left")


def sample_stream(d: DiscreteDistribution, seed: int, n: int) -> np.ndarray:
    """n i.i.d. draws from d for this seed, as an array of atom values.

    Deterministic in (d, seed, n); prefixes agree, so growing n extends the
    same sequence.
    """
    if n < 1:
        raise ParameterOutOfRange(f"n must be >= 1, got {n!r}")
    return d.values_array[_draw_indices(d, seed, n)]


def _record_points(n_max: int, stride: int) -> np.ndarray:
    ns = np.arange(stride, n_max + 1, stride, dtype=np.int64)
    if len(ns) == 0 or ns[-1] != n_max:
        ns = np.append(ns, np.int64(n_max))
    return ns


def run_trajectory(cfg: SimConfig, rep_index: int) -> Trajectory:
    """Stream cfg.n_max draws and record both sample quantiles along the way.

    Records are taken every ``record_stride`` draws and at n_max.  The
    computation is chunked and vectorized but matches
    :func:`run_trajectory_streaming` record for record; total work is
    O(n_max * atoms) either way.
    """
    seed = derive_seed(cfg.master_seed, rep_index)
    d = cfg.distribution
    values = d.values_array
    atoms = np.arange(len(values), dtype=np.int64)
    p = cfg.p

    rec_ns = _record_points(cfg.n_max, cfg.record_stride)
    lq_out = np.empty(len(rec_ns), dtype=np.float64)
    rq_out = np.empty(len(rec_ns), dtype=np.float64)

    carry = np.zeros(len(values), dtype=np.int64)
    for lo in range(0, cfg.n_max, _CHUNK):
        hi = min(lo + _CHUNK, cfg.n_max)
        idx = _draw_indices(d, seed, hi - lo, start=lo)
        # cumulative per-level counts C_j(n) = #{draws <= atom_j} for each
        # step of the chunk; the empirical CDF at atom_j is C_j(n)/n
        counts = (idx[:, None] <= atoms[None, :]).cumsum(axis=0, dtype=np.int64)
        counts += carry[None, :]
        carry = counts[-1].copy()

        r0 = int(np.searchsorted(rec_ns, lo, side="right"))
        r1 = int(np.searchsorted(rec_ns, hi, side="right"))
        if r0 == r1:
            continue
        sel = rec_ns[r0:r1]
        ecdf = counts[sel - lo - 1] / sel[:, None]
        lq_out[r0:r1] = values[(ecdf >= p).argmax(axis=1)]
        rq_out[r0:r1] = values[(ecdf > p).argmax(axis=1)]

    return Trajectory(ns=rec_ns, lq=lq_out, rq=rq_out, seed=seed)


def run_trajectory_streaming(cfg: SimConfig, rep_index: int) -> Trajectory:
    """Reference trajectory runner: one EmpiricalSample, one draw at a time.

    Produces exactly the same records as :func:`run_trajectory`; use it when
    auditing the vectorized path or when memory must stay at O(atoms).
    """
    seed = derive_seed(cfg.master_seed, rep_index)
    sample = EmpiricalSample.from_distribution(cfg.distribution)
    rec_ns = _record_points(cfg.n_max, cfg.record_stride)
    lq_out = np.empty(len(rec_ns), dtype=np.float64)
    rq_out = np.empty(len(rec_ns), dtype=np.float64)

    draws = sample_stream(cfg.distribution, seed, cfg.n_max)
    rpos = 0
    for i, x in enumerate(draws, start=1):
        sample.insert(float(x))
        if rpos < len(rec_ns) and rec_ns[rpos] == i:
            lq_out[rpos] = sample.left_quantile(cfg.p)
            rq_out[rpos] = sample.right_quantile(cfg.p)
            rpos += 1
    return Trajectory(ns=rec_ns, lq=lq_out, rq=rq_out, seed=seed)


# ---------------------------------------------------------------------------
# Trajectory analyses


def _window(traj: Trajectory, burn_in: int) -> np.ndarray:
    if len(traj) == 0:
        raise EmptyWindow("trajectory holds no records")
    mask = traj.ns >= burn_in
    if not mask.any():
        raise EmptyWindow(f"no records at or beyond burn_in={burn_in}")
    return mask


def switch_stats(traj: Trajectory, burn_in: int = 0) -> SwitchStats:
    """Oscillation statistics of the recorded left quantile for n >= burn_in.

    ``switch_count`` counts consecutive recorded indices whose left quantile
    differs; ``visits`` maps each recorded value to its occurrence count;
    the running extremes estimate the limiting oscillation band.
    """
    mask = _window(traj, burn_in)
    w = traj.lq[mask]
    vals, cnts = np.unique(w, return_counts=True)
    return SwitchStats(
        switch_count=int(np.count_nonzero(w[1:] != w[:-1])),
        visits={float(v): int(c) for v, c in zip(vals, cnts)},
        running_min=float(w.min()),
        running_max=float(w.max()),
    )


def sandwich_check(
    traj: Trajectory,
    d: DiscreteDistribution,
    p: float,
    epsilon: float,
    burn_in: int = 0,
) -> bool:
    """True iff every record past burn_in sits in the two-sided sandwich
    (lq - epsilon, lq] union [rq, rq + epsilon) around the quantile pair."""
    if not epsilon > 0.0:
        raise ParameterOutOfRange(f"epsilon must be positive, got {epsilon!r}")
    pair = d.quantile_pair(p)
    mask = _window(traj, burn_in)

    def inside(vals: np.ndarray) -> bool:
        low = (vals > pair.left - epsilon) & (vals <= pair.left)
        high = (vals >= pair.right) & (vals < pair.right + epsilon)
        return bool(np.all(low | high))

    return inside(traj.lq[mask]) and inside(traj.rq[mask])


def gap_interior_hits(traj: Trajectory, d: DiscreteDistribution, p: float) -> int:
    """Number of recorded quantile values strictly inside the gap
    (left_quantile, right_quantile) over ALL records.  Always 0 for a
    correctly sampled trajectory: the open gap carries no probability."""
    pair = d.quantile_pair(p)
    inside_l = (traj.lq > pair.left) & (traj.lq < pair.right)
    inside_r = (traj.rq > pair.left) & (traj.rq < pair.right)
    return int(np.count_nonzero(inside_l) + np.count_nonzero(inside_r))


# ---------------------------------------------------------------------------
# Deviation-block experiments


def block_schedule(
    params: BEParams, alpha: float, k_max: int, n_cap: int
) -> BlockSchedule:
    """Deviation-window schedule n_1=1, m_k = n_k + phi(n_k),
    n_{k+1} = m_k + phi(m_k), truncated before any index above n_cap.

    phi grows quadratically in its argument, so only the first window or two
    are reachable at desk scale; the cap makes the truncation explicit.
    """
    if k_max < 1:
        raise ParameterOutOfRange(f"k_max must be >= 1, got {k_max!r}")
    if n_cap < 1:
        raise ParameterOutOfRange(f"n_cap must be >= 1, got {n_cap!r}")
    indices = [1]
    entries: list[tuple[int, int]] = []
    n_k = 1
    for _ in range(k_max):
        m_k = n_k + phi_of_k(params, n_k, alpha).phi
        if m_k > n_cap:
            break
        indices.append(m_k)
        entries.append((n_k, m_k))
        if len(entries) == k_max:
            break
        n_next = m_k + phi_of_k(params, m_k, alpha).phi
        if n_next > n_cap:
            break
        indices.append(n_next)
        n_k = n_next
    return BlockSchedule(
        entries=tuple(entries), indices=tuple(indices), alpha=alpha, k_max=k_max
    )


def _bernoulli_block_sums(
    q: float, block_len: int, reps: int, master_seed: int
) -> np.ndarray:
    """Sum of each replication's Bernoulli(q) block, one derived seed per rep."""
    zero_mass = 1.0 - q  # inverse-CDF threshold: draw is 1 iff u > 1 - q
    sums = np.empty(reps, dtype=np.int64)
    rows = max(1, (4 << 20) // max(block_len, 1))  # bound matrix memory
    for r0 in range(0, reps, rows):
        r1 = min(r0 + rows, reps)
        seeds = np.array(
            [derive_seed(master_seed, r) for r in range(r0, r1)], dtype=np.uint64
        )
        u = uniform_matrix(seeds, block_len)
        sums[r0:r1] = (u > zero_mass).sum(axis=1)
    return sums


def deviation_experiment(
    q: float, k: int, alpha: float, reps: int, master_seed: int
) -> tuple[float, float]:
    """Empirical frequencies of the +/-k deviations of a Bernoulli(q) block sum.

    Each replication draws an independent block of length phi(k) and tests
    the two one-sided events {S - phi*q < -k} and {S - phi*q > k}; the
    construction guarantees each true probability exceeds 1/2 - alpha.

    Returns
    -------
    (freq_low, freq_high) : tuple of float
        Empirical frequencies over ``reps`` replications.
    """
    if not 0.0 < q < 1.0:
        raise ParameterOutOfRange(f"q must be in (0, 1), got {q!r}")
    if reps < 1:
        raise ParameterOutOfRange(f"reps must be >= 1, got {reps!r}")
    phi = phi_of_k(bernoulli_moments(q), k, alpha).phi
    sums = _bernoulli_block_sums(q, phi, reps, master_seed)
    centered = sums - phi * q
    freq_low = float(np.count_nonzero(centered < -k)) / reps
    freq_high = float(np.count_nonzero(centered > k)) / reps
    return freq_low, freq_high


def block_event_experiment(
    q: float, alpha: float, reps: int, master_seed: int
) -> float:
    """Empirical frequency of the first paired deviation event C_1 = D_1 & E_1.

    D_1: the block of length phi(n_1) after n_1 = 1 undershoots its mean by
    more than n_1.  E_1: the following block of length phi(m_1) overshoots
    by more than m_1 = 1 + phi(1).  The two blocks are disjoint, so the
    events are independent and the true probability exceeds 1/16.

    The first block is drawn Bernoulli by Bernoulli.  The second block is
    tens of millions of draws long, so its sum is drawn in one step through
    the inverse CDF of its exact Binomial(phi(m_1), q) distribution, using
    the next uniform of the same per-replication stream.
    """
    if not 0.0 < q < 1.0:
        raise ParameterOutOfRange(f"q must be in (0, 1), got {q!r}")
    if reps < 1:
        raise ParameterOutOfRange(f"reps must be >= 1, got {reps!r}")
    from scipy.stats import binom

    params = bernoulli_moments(q)
    phi_a = phi_of_k(params, 1, alpha).phi
    m1 = 1 + phi_a
    phi_b = phi_of_k(params, m1, alpha).phi

    d_sums = _bernoulli_block_sums(q, phi_a, reps, master_seed)
    seeds = np.array(
        [derive_seed(master_seed, r) for r in range(reps)], dtype=np.uint64
    )
    u_next = uniform_matrix(seeds, 1, start=phi_a)[:, 0]
    e_sums = binom.ppf(u_next, phi_b, q)

    d_hit = (d_sums - phi_a * q) < -1.0
    e_hit = (e_sums - phi_b * q) > m1
    return float(np.count_nonzero(d_hit & e_hit)) / reps


# ---------------------------------------------------------------------------
# Replicated runs


ANALYSES = ("convergence", "switch_stats", "sandwich_check")


def _worker_count() -> int:
    raw = os.environ.get("QL_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n >= 1:
        return n
    return os.cpu_count() or 1


def run_replicated(
    cfg: SimConfig,
    analysis: str,
    *,
    burn_in: int = 0,
    epsilon: float | None = None,
    min_switches: int = 10,
    on_trajectory=None,
) -> dict:
    """Run cfg.replications trajectories and aggregate one analysis.

    Replications use derived seeds and may execute on several worker threads
    (capped by the QL_THREADS environment variable); per-replication results
    are keyed by index, so the report is identical however the work is
    scheduled.  ``on_trajectory(rep_index, trajectory)``, when given, is
    invoked once per replication (used by the CLI to write trajectory CSVs).

    Analyses
    --------
    convergence
        Pass iff the final recorded left and right quantiles both equal the
        distribution's left quantile at p, exactly.
    switch_stats
        Oscillation summary past ``burn_in``; pass iff the left quantile
        switched values at least ``min_switches`` times.
    sandwich_check
        Pass iff every record past ``burn_in`` sits in the epsilon-sandwich;
        also reports exact interior-gap hits over all records.
    """
    if analysis not in ANALYSES:
        raise ParameterOutOfRange(f"analysis must be one of {ANALYSES}, got {analysis!r}")
    if analysis == "sandwich_check" and (epsilon is None or epsilon <= 0.0):
        raise ParameterOutOfRange("sandwich_check requires a positive epsilon")

    d = cfg.distribution
    target = d.left_quantile(cfg.p)

    def one(rep: int) -> dict:
        traj = run_trajectory(cfg, rep)
        if on_trajectory is not None:
            on_trajectory(rep, traj)
        row: dict = {"rep": rep, "seed": traj.seed}
        if analysis == "convergence":
            row["final_n"] = int(traj.ns[-1])
            row["final_lq"] = float(traj.lq[-1])
            row["final_rq"] = float(traj.rq[-1])
            row["pass"] = row["final_lq"] == row["final_rq"] == target
        elif analysis == "switch_stats":
            st = switch_stats(traj, burn_in)
            row["switch_count"] = st.switch_count
            row["running_min"] = st.running_min
            row["running_max"] = st.running_max
            row["visits"] = {repr(v): c for v, c in sorted(st.visits.items())}
            row["pass"] = st.switch_count >= min_switches
        else:
            ok = sandwich_check(traj, d, cfg.p, epsilon, burn_in)
            row["interior_gap_hits"] = gap_interior_hits(traj, d, cfg.p)
            row["pass"] = ok and row["interior_gap_hits"] == 0
        return row

    workers = min(_worker_count(), cfg.replications)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(one, range(cfg.replications)))
    else:
        rows = [one(rep) for rep in range(cfg.replications)]

    passes = sum(1 for r in rows if r["pass"])
    report = {
        "config": _config_dict(cfg),
        "analysis": {
            "name": analysis,
            "burn_in": burn_in,
            "epsilon": epsilon,
            "min_switches": min_switches if analysis == "switch_stats" else None,
            "target_left_quantile": target,
        },
        "replications": rows,
        "aggregate": {
            "pass_count": passes,
            "fail_count": cfg.replications - passes,
            "total": cfg.replications,
        },
    }
    return report


def _config_dict(cfg: SimConfig) -> dict:
    return {
        "distribution": {
            "atoms": [{"x": v, "p": q} for v, q in cfg.distribution.as_pairs()]
        },
        "p": cfg.p,
        "n_max": cfg.n_max,
        "master_seed": cfg.master_seed,
        "record_stride": cfg.record_stride,
        "replications": cfg.replications,
    }


# ---------------------------------------------------------------------------
# Serialization


def trajectory_csv_bytes(traj: Trajectory) -> bytes:
    """CSV encoding of the records: header ``n,lq,rq``, one row per record."""
    lines = ["n,lq,rq"]
    lines.extend(
        f"{int(n)},{float(a)!r},{float(b)!r}"
        for n, a, b in zip(traj.ns, traj.lq, traj.rq)
    )
    return ("\n".join(lines) + "\n").encode("ascii")


def write_trajectory_csv(traj: Trajectory, path) -> None:
    """Write records as CSV with header ``n,lq,rq`` (one row per record)."""
    with open(path, "wb") as fh:
        fh.write(trajectory_csv_bytes(traj))


def report_to_json_bytes(report: dict) -> bytes:
    """Canonical JSON encoding of a report: sorted keys, 2-space indent."""
    return (json.dumps(report, sort_keys=True, indent=2) + "\n").encode("utf-8")
