"""The covering game: exact expected-duration oracles and Monte Carlo runs.

The game fixes measures p_1..p_n < 1 and repeatedly draws points; it ends on
the first round after which every set i has been missed at least once.  Under
independence the round count is T = max_i G_i where G_i is the number of
draws up to and including the first miss of set i, a geometric variable with
P(G_i > k) = p_i^k.

Two exact oracles cross-check each other:

* ``paper_T_series``            sum_{k>=1} (1 - prod_i (1 - p_i^k)),
* ``paper_T_inclusion_exclusion``  the same quantity expanded over nonempty
  index subsets as sum (-1)^(|s|-1) (1/(1-p_s) - 1).

Both equal E[T] - 1 (the k = 0 term of E[T] = sum_{k>=0} P(T > k) is always
1 and is not part of the series); ``expected_rounds`` adds it back and is
what simulations measure.

Reproducibility: trials are processed in fixed blocks of 4096, each block
drawing from a Philox stream keyed by (seed, block index).  Any partition of
blocks across workers reproduces the serial result bit for bit, because block
statistics are reduced in block order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.random import Generator, Philox

from . import binom_sums
from .dist_core import EdgeDistribution, moment_sequence
from .errors import Divergence, TooManySets
from .moment_zeta import SumResult, moment_zeta as _moment_zeta_sum

__all__ = [
    "GameParams",
    "SimulationReport",
    "win_prob_by",
    "paper_T_series",
    "paper_T_inclusion_exclusion",
    "expected_rounds",
    "simulate_game",
    "run_trials",
    "zeta_expectation_mc",
    "TRIAL_BLOCK",
]

TRIAL_BLOCK = 4096
_SUBSET_LIMIT = 20
# a single max-term carrying >=10% of the sample total marks a heavy tail
_HEAVY_TAIL_SHARE = 0.10


@dataclass(frozen=True)
class GameParams:
    """Measures p_i of the covered sets; every p_i must be < 1."""

    p: tuple[float, ...]

    def __init__(self, p: Sequence[float]) -> None:
        vals = tuple(float(v) for v in p)
        for v in vals:
            if not (0.0 <= v < 1.0):
                raise ValueError(f"each p_i must lie in [0, 1), got {v}")
        object.__setattr__(self, "p", vals)

    @property
    def n(self) -> int:
        return len(self.p)


@dataclass(frozen=True)
class SimulationReport:
    """Summary statistics of a Monte Carlo run (stderr = sqrt(variance/trials))."""

    mode: str
    n: int
    trials: int
    seed: int
    mean: float
    variance: float
    stderr: float
    target: float | None = None
    target_kind: str | None = None
    heavy_tail: bool = False

    def to_json_dict(self) -> dict:
        return {
            "mode": self.mode,
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "mean": self.mean,
            "variance": self.variance,
            "stderr": self.stderr,
            "target": self.target,
            "target_kind": self.target_kind,
            "heavy_tail": self.heavy_tail,
        }


def win_prob_by(k: int, params: GameParams) -> float:
    """P(game over after k rounds) = prod_i (1 - p_i^k); 0 at k = 0 when n >= 1."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if params.n == 0:
        return 1.0
    if k == 0:
        return 0.0
    p = np.asarray(params.p, dtype=np.float64)
    return float(np.prod(1.0 - p ** float(k)))


def paper_T_series(params: GameParams, tol: float = 1e-12) -> SumResult:
    """sum_{k>=1} (1 - prod_i (1 - p_i^k)) with a geometric tail certificate.

    The tail past K is at most sum_i p_i^(K+1)/(1 - p_i) by the union bound.
    """
    if params.n == 0:
        return SumResult(value=0.0, tail_bound=0.0, terms_used=0, method="series")
    p = np.asarray(params.p, dtype=np.float64)
    live = p > 0.0
    logs = np.log(p[live])
    one_minus = 1.0 - p[live]
    total = 0.0
    k = 0
    bound = math.inf
    while True:
        k += 1
        # 1 - prod(1 - p_i^k), assembled in logs to keep tiny terms honest
        pk_log = k * logs
        total += -float(np.expm1(np.sum(np.log1p(-np.exp(pk_log)))))
        bound = float(np.sum(np.exp((k + 1) * logs) / one_minus))
        if bound <= tol or k >= 10_000_000:
            break
    return SumResult(value=total, tail_bound=bound, terms_used=k, method="series")


def paper_T_inclusion_exclusion(params: GameParams) -> float:
    """Exact subset expansion sum_{s nonempty} (-1)^(|s|-1) (1/(1-p_s) - 1).

    Enumerates all 2^n - 1 nonempty subsets; n is capped at 20.
    """
    n = params.n
    if n > _SUBSET_LIMIT:
        raise TooManySets(f"subset enumeration needs n <= {_SUBSET_LIMIT}, got {n}")
    if n == 0:
        return 0.0
    # products over subsets by doubling: prods[s] = prod_{i in s} p_i
    prods = np.ones(1, dtype=np.float64)
    sizes = np.zeros(1, dtype=np.int64)
    for pi in params.p:
        prods = np.concatenate([prods, prods * pi])
        sizes = np.concatenate([sizes, sizes + 1])
    terms = prods[1:] / (1.0 - prods[1:])  # 1/(1-p_s) - 1
    signs = np.where(sizes[1:] % 2 == 1, 1.0, -1.0)
    return float(np.sum(signs * terms))


def expected_rounds(params: GameParams, tol: float = 1e-12) -> float:
    """E[T] = 1 + paper_T_series: the k = 0 round of P(T > k) is certain."""
    return 1.0 + paper_T_series(params, tol=tol).value


def simulate_game(params: GameParams, rng: np.random.Generator) -> int:
    """One play: T = max_i ceil(log U_i / log p_i), with G_i = 1 when p_i = 0."""
    if params.n == 0:
        return 1
    p = np.asarray(params.p, dtype=np.float64)
    u = 1.0 - rng.random(params.n)  # in (0, 1]
    with np.errstate(divide="ignore"):
        g = np.ceil(np.log(u) / np.log(p))
    g = np.where(p == 0.0, 1.0, np.maximum(g, 1.0))
    return int(np.max(g))


def _block_rng(seed: int, index: int) -> Generator:
    return Generator(Philox(key=[seed & 0xFFFFFFFFFFFFFFFF, index]))


def _games_fixed(params: GameParams, m: int, rng: Generator) -> np.ndarray:
    p = np.asarray(params.p, dtype=np.float64)
    u = 1.0 - rng.random((m, params.n))
    with np.errstate(divide="ignore"):
        g = np.ceil(np.log(u) / np.log(p)[None, :])
    g = np.where(p[None, :] == 0.0, 1.0, np.maximum(g, 1.0))
    return g.max(axis=1)


def _games_random_p(dist: EdgeDistribution, n: int, m: int, rng: Generator) -> np.ndarray:
    p = np.asarray(dist.ppf(rng.random((m, n))), dtype=np.float64)
    while True:
        bad = p >= 1.0
        if not np.any(bad):
            break
        p[bad] = dist.ppf(rng.random(int(np.count_nonzero(bad))))
    u = 1.0 - rng.random((m, n))
    with np.errstate(divide="ignore"):
        g = np.ceil(np.log(u) / np.log(p))
    g = np.where(p == 0.0, 1.0, np.maximum(g, 1.0))
    return g.max(axis=1)


def _reduce_blocks(block_stats: Sequence[tuple[float, float, float]], trials: int):
    total = 0.0
    total_sq = 0.0
    top = 0.0
    for s, sq, mx in block_stats:
        total += s
        total_sq += sq
        top = max(top, mx)
    mean = total / trials
    variance = max(total_sq - trials * mean * mean, 0.0) / max(trials - 1, 1)
    stderr = math.sqrt(variance / trials)
    heavy = trials >= 100 and top >= _HEAVY_TAIL_SHARE * total
    return mean, variance, stderr, heavy


def _draw_block(task: dict) -> tuple[float, float, float]:
    """One block of trials; module-level so worker pools can pickle it."""
    rng = _block_rng(task["seed"], task["index"])
    kind = task["kind"]
    m = task["m"]
    if kind == "fixed":
        out = _games_fixed(task["params"], m, rng)
    elif kind == "random":
        out = _games_random_p(task["dist"], task["n"], m, rng)
    elif kind == "zeta":
        x = np.asarray(task["dist"].ppf(rng.random((m, task["n"]))), dtype=np.float64)
        out = 1.0 / (1.0 - np.prod(x, axis=1))
    else:  # pragma: no cover
        raise ValueError(f"unknown block kind {kind!r}")
    return (float(out.sum()), float((out * out).sum()), float(out.max()))


def _sim_blocks(base: dict, trials: int, seed: int, workers: int = 1):
    """Run trials in fixed blocks; block stats reduce in index order, so any
    worker count reproduces the serial result exactly."""
    tasks = [
        dict(base, seed=seed, index=b0 // TRIAL_BLOCK, m=min(TRIAL_BLOCK, trials - b0))
        for b0 in range(0, trials, TRIAL_BLOCK)
    ]
    if workers > 1 and len(tasks) > 1:
        from concurrent.futures import ProcessPoolExecutor

        chunk = max(1, len(tasks) // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            stats = list(pool.map(_draw_block, tasks, chunksize=chunk))
    else:
        stats = [_draw_block(t) for t in tasks]
    return _reduce_blocks(stats, trials)


def run_trials(
    mode: str,
    source: GameParams | EdgeDistribution,
    trials: int,
    seed: int,
    n: int | None = None,
    workers: int = 1,
) -> SimulationReport:
    """Aggregate simulate_game over many trials, deterministically in seed.

    mode="fixed-p": ``source`` is a GameParams played every trial; the target
    is the exact expected_rounds.  mode="random-p": each trial draws fresh
    p_1..p_n from ``source`` (p = 1.0 draws are rejected and resampled); the
    target is 1 - A(n; 1) over the distribution's moment sequence when that
    sum converges, otherwise the report is flagged divergent.  Any worker
    count reproduces the single-worker report.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if mode == "fixed-p":
        if not isinstance(source, GameParams):
            raise TypeError("fixed-p mode needs GameParams")
        params = source
        mean, variance, stderr, heavy = _sim_blocks(
            {"kind": "fixed", "params": params}, trials, seed, workers
        )
        target = expected_rounds(params, tol=1e-10)
        return SimulationReport(
            mode="fixed-p", n=params.n, trials=trials, seed=seed, mean=mean,
            variance=variance, stderr=stderr, target=target,
            target_kind="expected-rounds", heavy_tail=heavy,
        )
    if mode == "random-p":
        if not isinstance(source, EdgeDistribution):
            raise TypeError("random-p mode needs an EdgeDistribution")
        if n is None or n < 1:
            raise ValueError("random-p mode needs the number of sets n >= 1")
        mean, variance, stderr, heavy = _sim_blocks(
            {"kind": "random", "dist": source, "n": int(n)}, trials, seed, workers
        )
        ms = moment_sequence(source)
        if ms.tail is not None and ms.tail.alpha > 1.0:
            target = 1.0 - binom_sums.alt_sum_stable(ms, n, kmin=1, tol=1e-4).value
            target_kind = "one-minus-alt-sum"
        else:
            target = None
            target_kind = "divergent"
        return SimulationReport(
            mode="random-p", n=n, trials=trials, seed=seed, mean=mean,
            variance=variance, stderr=stderr, target=target,
            target_kind=target_kind, heavy_tail=heavy,
        )
    raise ValueError(f"mode must be 'fixed-p' or 'random-p', got {mode!r}")


def zeta_expectation_mc(
    dist: EdgeDistribution, n: int, trials: int, seed: int, workers: int = 1
) -> SimulationReport:
    """Monte Carlo mean of 1/(1 - x_1 ... x_n) over independent draws from dist.

    The mean estimates 1 + Z(n) = sum_{j>=0} m_j^n (the j = 0 term is the
    unit mass).  When Z(n) diverges the report carries target_kind
    "divergent" instead of a comparison value.  Below n = 3 the uniform case
    has infinite variance, so the stderr is indicative only; the heavy-tail
    flag reports when a single draw dominates the sample.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"need integer n >= 1, got {n!r}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    n = int(n)
    mean, variance, stderr, heavy = _sim_blocks(
        {"kind": "zeta", "dist": dist, "n": n}, trials, seed, workers
    )
    ms = moment_sequence(dist)
    try:
        target = 1.0 + _moment_zeta_sum(ms, float(n), tol=1e-10).value
        target_kind = "one-plus-moment-zeta"
    except Divergence:
        target = None
        target_kind = "divergent"
    return SimulationReport(
        mode="zeta-mc", n=n, trials=trials, seed=seed, mean=mean,
        variance=variance, stderr=stderr, target=target,
        target_kind=target_kind, heavy_tail=heavy,
    )
