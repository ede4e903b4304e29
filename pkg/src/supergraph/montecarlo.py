"""Monte Carlo experiments over G(N, K, p) with theory comparisons.

Per-trial RNG streams derive from (master seed, trial index), so trials can
run on any number of worker threads with identical results; aggregation
order is fixed by trial index. ``SUPERGRAPH_THREADS`` caps the worker count
(default: machine parallelism).
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels, rng, theory
from .config import SizeConfiguration, empirical_profile
from .graph import connected_components
from .sampler import ModelParams, resolve_p, sample_direct

EXPERIMENTS = ("connectivity", "giant", "degree")

TAIL_LUMP = 1e-9  # distribution truncation: smallest k with theory tail below this


@dataclass(frozen=True)
class ExperimentPlan:
    """What to run: configuration, parameterization, trial count, seed."""

    config: SizeConfiguration
    regime: str
    c: float
    trials: int
    seed: int
    experiment: str

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    def params(self) -> ModelParams:
        return resolve_p(self.regime, self.c, self.config)


@dataclass(frozen=True)
class ExperimentReport:
    """Estimates with uncertainty, theory values, and per-trial records.

    estimates maps name -> (value, standard error); the error is None for
    derived scalars such as total-variation distances that carry no
    per-trial variance. distributions hold pmfs over integer support, with
    mass beyond the truncation point lumped into the final key.
    """

    experiment: str
    estimates: dict[str, tuple[float, float | None]]
    theory: dict[str, float]
    distributions: dict[str, dict[int, float]] = field(default_factory=dict)
    trial_stats: dict[str, np.ndarray] = field(default_factory=dict)
    meta: dict[str, object] = field(default_factory=dict)


def total_variation(pmf_a: dict[int, float], pmf_b: dict[int, float]) -> float:
    """(1/2) sum_k |a_k - b_k| over the union of supports."""
    for name, pmf in (("first", pmf_a), ("second", pmf_b)):
        total = math.fsum(pmf.values())
        if any(v < 0 for v in pmf.values()):
            raise ValueError(f"{name} pmf has negative mass")
        if total > 1.0 + 1e-9:
            raise ValueError(f"{name} pmf sums to {total}, above 1")
    support = set(pmf_a) | set(pmf_b)
    return 0.5 * math.fsum(abs(pmf_a.get(k, 0.0) - pmf_b.get(k, 0.0)) for k in support)


def _worker_count(trials: int) -> int:
    env = os.environ.get("SUPERGRAPH_THREADS")
    workers = int(env) if env else (os.cpu_count() or 1)
    return max(1, min(workers, trials))


def _run_trials(plan: ExperimentPlan, params: ModelParams, collect_degrees: bool):
    """Sample and analyze all trials; returns per-trial arrays (+ degree hists)."""
    kernels.warmup()  # compile once before threads fan out
    cfg = plan.config

    def one(t: int):
        graph = sample_direct(cfg, params, rng.stream_root(plan.seed, t))
        summary = connected_components(graph)
        sizes = summary.sizes_desc
        hist = None
        if collect_degrees:
            degrees = np.bincount(graph.edges.ravel(), minlength=graph.num_super)
            hist = np.bincount(degrees)
        l2 = int(sizes[1]) if sizes.shape[0] > 1 else 0
        return sizes.shape[0] == 1, summary.isolated_count, int(sizes[0]), l2, hist

    workers = _worker_count(plan.trials)
    if workers == 1:
        results = [one(t) for t in range(plan.trials)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, range(plan.trials)))

    connected = np.array([r[0] for r in results], dtype=np.int8)
    isolated = np.array([r[1] for r in results], dtype=np.int64)
    l1 = np.array([r[2] for r in results], dtype=np.int64)
    l2 = np.array([r[3] for r in results], dtype=np.int64)
    hists = [r[4] for r in results] if collect_degrees else None
    return connected, isolated, l1, l2, hists


def _mean_se(values: np.ndarray) -> tuple[float, float | None]:
    mean = float(values.mean())
    if values.shape[0] < 2:
        return mean, None
    return mean, float(values.std(ddof=1) / math.sqrt(values.shape[0]))


def _binomial_se(p_hat: float, trials: int) -> float:
    return math.sqrt(max(p_hat * (1.0 - p_hat), 0.0) / trials)


def _variance_se(values: np.ndarray) -> tuple[float, float | None]:
    t = values.shape[0]
    if t < 2:
        return 0.0, None
    s2 = float(values.var(ddof=1))
    centered = values - values.mean()
    m4 = float((centered ** 4).mean())
    var_of_s2 = max(m4 - s2 * s2 * (t - 3) / (t - 1), 0.0) / t
    return s2, math.sqrt(var_of_s2)


def _check_isolated_estimator(plan, params, isolated: np.ndarray) -> None:
    """Abort when the isolated-count mean drifts beyond 4 standard errors."""
    t = isolated.shape[0]
    if t < 500:
        return
    expected = theory.expected_isolated(plan.config, params.p)
    x_bar = float(isolated.mean())
    se = float(isolated.std(ddof=1)) / math.sqrt(t)
    # sqrt(E/T) floors the error scale when the sample happens to be constant
    guard = 4.0 * max(se, math.sqrt(max(expected, 0.0) / t))
    if abs(x_bar - expected) > guard:
        raise RuntimeError(
            "isolated-count estimator failed its sanity check: "
            f"mean={x_bar:.6g} expected={expected:.6g} guard={guard:.3g} "
            f"(config N={plan.config.num_super}, p={params.p:.6g}, trials={t}, "
            f"seed={plan.seed})")


def _poisson_lumped(lam: float, tail_below: float = TAIL_LUMP) -> dict[int, float]:
    """Poisson(lam) pmf truncated at tail < tail_below, remainder in the last key."""
    pmf: dict[int, float] = {}
    head = 0.0
    k = 0
    while 1.0 - head >= tail_below:
        value = theory.poisson_pmf(lam, k)
        pmf[k] = value
        head += value
        k += 1
    pmf[k] = max(1.0 - head, 0.0)
    return pmf


def _lump_samples(values: np.ndarray, cutoff: int, weight: float) -> dict[int, float]:
    """Empirical pmf of integer samples with values >= cutoff lumped at cutoff."""
    clipped = np.minimum(values, cutoff)
    counts = np.bincount(clipped, minlength=cutoff + 1)
    return {int(k): float(c) * weight for k, c in enumerate(counts)}


def _meta(plan: ExperimentPlan, params: ModelParams, wall: float) -> dict[str, object]:
    return {
        "experiment": plan.experiment,
        "N": plan.config.num_super,
        "n": plan.config.num_vertices,
        "regime": plan.regime,
        "c": plan.c,
        "p": params.p,
        "trials": plan.trials,
        "seed": plan.seed,
        "wall_time": wall,
    }


def run_connectivity_experiment(plan: ExperimentPlan) -> ExperimentReport:
    """Estimate P(connected) and the isolated-count law near the threshold.

    Compares P_hat(connected) against the limit exp(-exp(-c)) (u = 1 clause)
    and the empirical distribution of the isolated count X against
    Poisson(E[X]) with the exact finite-N mean.
    """
    start = time.perf_counter()
    params = plan.params()
    cfg = plan.config
    n_super = cfg.num_super
    connected, isolated, l1, l2, _ = _run_trials(plan, params, collect_degrees=False)
    _check_isolated_estimator(plan, params, isolated)

    # equivalent connectivity-regime constant for the resolved p
    c_conn = params.p * n_super - math.log(n_super)
    profile = empirical_profile(cfg)
    expected = theory.expected_isolated(cfg, params.p)

    poisson_ref = _poisson_lumped(expected)
    cutoff = max(poisson_ref)
    empirical = _lump_samples(isolated, cutoff, 1.0 / plan.trials)
    tv = total_variation(empirical, poisson_ref)

    p_hat = float(connected.mean())
    estimates = {
        "p_connected": (p_hat, _binomial_se(p_hat, plan.trials)),
        "isolated_mean": _mean_se(isolated.astype(np.float64)),
        "isolated_variance": _variance_se(isolated.astype(np.float64)),
        "tv_isolated_poisson": (tv, None),
    }
    theory_block = {
        "p_connected_limit": theory.limit_connectivity_probability(
            theory.ConnectivityRegime.fixed(c_conn), profile.u),
        "isolated_mean_limit": math.exp(-c_conn),
        "expected_isolated": expected,
        "variance_isolated": theory.variance_isolated(cfg, params.p),
        "c_connectivity": c_conn,
    }
    distributions = {"isolated_empirical": empirical, "isolated_poisson": poisson_ref}
    trial_stats = {"connected": connected, "isolated": isolated, "L1": l1, "L2": l2}
    return ExperimentReport(
        experiment="connectivity", estimates=estimates, theory=theory_block,
        distributions=distributions, trial_stats=trial_stats,
        meta=_meta(plan, params, time.perf_counter() - start))


def run_giant_experiment(plan: ExperimentPlan) -> ExperimentReport:
    """Estimate L1/N, L2/N at p = c/n against the fixed-point fraction rho."""
    start = time.perf_counter()
    params = plan.params()
    cfg = plan.config
    n_super = cfg.num_super
    connected, isolated, l1, l2, _ = _run_trials(plan, params, collect_degrees=False)
    _check_isolated_estimator(plan, params, isolated)

    profile = empirical_profile(cfg)
    c_sparse = params.p * cfg.num_vertices
    solution = theory.solve_giant_fraction(profile, c_sparse)

    estimates = {
        "l1_fraction": _mean_se(l1 / n_super),
        "l2_fraction": _mean_se(l2 / n_super),
    }
    theory_block = {
        "rho": solution.rho,
        "c_star": theory.critical_threshold(profile),
        "c_sparse": c_sparse,
        "s2": profile.s2,
    }
    trial_stats = {"connected": connected, "isolated": isolated, "L1": l1, "L2": l2}
    return ExperimentReport(
        experiment="giant", estimates=estimates, theory=theory_block,
        trial_stats=trial_stats, meta=_meta(plan, params, time.perf_counter() - start))


def run_degree_experiment(plan: ExperimentPlan) -> ExperimentReport:
    """Estimate the degree law Z_k/N at p = c/n against the mixed Poisson."""
    start = time.perf_counter()
    params = plan.params()
    cfg = plan.config
    n_super = cfg.num_super
    connected, isolated, l1, l2, hists = _run_trials(plan, params, collect_degrees=True)
    _check_isolated_estimator(plan, params, isolated)

    profile = empirical_profile(cfg)
    c_sparse = params.p * cfg.num_vertices
    cutoff = theory.degree_pmf_cutoff(profile, c_sparse, TAIL_LUMP)

    # average Z_k/N over trials, lumping degrees >= cutoff
    totals = np.zeros(cutoff + 1, dtype=np.float64)
    for hist in hists:
        if hist.shape[0] > cutoff + 1:
            head = hist[:cutoff + 1].astype(np.float64)
            head[cutoff] += hist[cutoff + 1:].sum()
        else:
            head = np.zeros(cutoff + 1)
            head[:hist.shape[0]] = hist
        totals += head
    weight = 1.0 / (plan.trials * n_super)
    empirical = {k: float(v) * weight for k, v in enumerate(totals)}

    pmf_theory = {k: theory.mixed_poisson_pmf(profile, c_sparse, k) for k in range(cutoff)}
    pmf_theory[cutoff] = theory.mixed_poisson_tail(profile, c_sparse, cutoff)
    tv = total_variation(empirical, pmf_theory)

    tail_emp, tail_th = {}, {}
    running = 0.0
    for k in range(cutoff, -1, -1):
        running += empirical[k]
        tail_emp[k] = min(running, 1.0)
    tail_emp = dict(sorted(tail_emp.items()))
    for k in range(cutoff + 1):
        tail_th[k] = theory.mixed_poisson_tail(profile, c_sparse, k)

    estimates = {"tv_degree": (tv, None)}
    theory_block = {
        "mean_degree": c_sparse * profile.u,
        "c_sparse": c_sparse,
        "k_max": float(cutoff),
    }
    distributions = {
        "degree_hist": empirical,
        "degree_theory": pmf_theory,
        "degree_tail_empirical": tail_emp,
        "degree_tail_theory": tail_th,
    }
    trial_stats = {"connected": connected, "isolated": isolated, "L1": l1, "L2": l2}
    return ExperimentReport(
        experiment="degree", estimates=estimates, theory=theory_block,
        distributions=distributions, trial_stats=trial_stats,
        meta=_meta(plan, params, time.perf_counter() - start))


def run_experiment(plan: ExperimentPlan) -> ExperimentReport:
    """Dispatch a plan to its experiment runner."""
    runner = {
        "connectivity": run_connectivity_experiment,
        "giant": run_giant_experiment,
        "degree": run_degree_experiment,
    }[plan.experiment]
    return runner(plan)
