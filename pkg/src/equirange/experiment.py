"""Ensembles of runs, per-checkpoint averages, and the R and R/N fits."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .errors import InvalidParameterError
from .fit import DEFAULT_FIT_MIN_N, PowerLawFit, fit_power_law
from .sources import ALGORITHM_ID, RngSpec, coprime_residues, prime_last_digits, simulate_uniform
from .tally import (
    DEFAULT_N_MIN,
    DEFAULT_POINTS_PER_DECADE,
    OutcomeTally,
    Trajectory,
    checkpoint_schedule,
)

SOURCES = ("coin", "categorical", "prime-last-digit")
FIT_MODES = ("mean-then-fit", "fit-then-mean")


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything needed to replay an experiment bit for bit.

    Build one with :meth:`coin`, :meth:`categorical` or :meth:`primes`
    rather than by hand. ``k``, ``limit`` and ``base`` only matter for the
    sources that use them; ``seed`` is ignored for primes.
    """

    source: str
    n_max: int
    num_runs: int = 1
    k: int = 2
    limit: int | None = None
    base: int = 10
    seed: int = 0
    algorithm_id: str = ALGORITHM_ID
    points_per_decade: int = DEFAULT_POINTS_PER_DECADE
    n_min: int = DEFAULT_N_MIN
    fit_min_n: int = DEFAULT_FIT_MIN_N
    fit_mode: str = "mean-then-fit"
    weighted: bool = False

    def __post_init__(self):
        if self.source not in SOURCES:
            raise InvalidParameterError(f"unknown source {self.source!r}")
        if self.fit_mode not in FIT_MODES:
            raise InvalidParameterError(f"unknown fit mode {self.fit_mode!r}")
        for name in ("n_max", "num_runs", "points_per_decade", "n_min", "fit_min_n"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                raise InvalidParameterError(f"{name} must be a positive integer, got {v!r}")
        if self.source == "coin" and self.k != 2:
            raise InvalidParameterError("a coin has exactly 2 outcomes")
        if self.source == "categorical" and self.k < 2:
            raise InvalidParameterError("categorical source needs k >= 2")
        if self.source == "prime-last-digit":
            if self.num_runs != 1:
                raise InvalidParameterError("the prime digit sequence is deterministic; use num_runs=1")
            if self.limit is None or self.limit < 2:
                raise InvalidParameterError("prime source needs limit >= 2")
            if self.k != len(coprime_residues(self.base)):
                raise InvalidParameterError("k must equal the number of residues coprime to base")
        RngSpec(self.algorithm_id, self.seed, 0)  # validates seed and generator id

    @classmethod
    def coin(cls, n_max: int = 10_000, num_runs: int = 5, seed: int = 0, **kw) -> "ExperimentConfig":
        return cls(source="coin", n_max=n_max, num_runs=num_runs, k=2, seed=seed, **kw)

    @classmethod
    def categorical(cls, k: int, n_max: int, num_runs: int = 5, seed: int = 0,
                    **kw) -> "ExperimentConfig":
        return cls(source="categorical", n_max=n_max, num_runs=num_runs, k=k, seed=seed, **kw)

    @classmethod
    def primes(cls, limit: int = 100_000, base: int = 10, n_max: int | None = None,
               **kw) -> "ExperimentConfig":
        """Prime digit config; ``n_max`` defaults to every digit up to ``limit``."""
        if n_max is None:
            n_max = len(prime_last_digits(limit, base))
        return cls(source="prime-last-digit", n_max=n_max, num_runs=1, limit=limit,
                   base=base, k=len(coprime_residues(base)), **kw)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        return cls(**d)


@dataclass(frozen=True)
class SummaryRow:
    n: int
    mean_range: float
    se_range: float
    mean_rel_range: float
    se_rel_range: float


@dataclass
class EnsembleSummary:
    checkpoints: list[SummaryRow]
    num_runs: int

    @property
    def ns(self) -> list[int]:
        return [row.n for row in self.checkpoints]

    def at(self, n: int) -> SummaryRow:
        for row in self.checkpoints:
            if row.n == n:
                return row
        raise KeyError(n)


@dataclass
class ReproductionReport:
    config: ExperimentConfig
    summary: EnsembleSummary
    alpha_fit: PowerLawFit
    beta_fit: PowerLawFit
    trajectories: list[Trajectory] = field(default_factory=list)


def _outcome_stream(config: ExperimentConfig, run_index: int) -> np.ndarray:
    if config.source == "prime-last-digit":
        return prime_last_digits(config.limit, config.base).outcomes()[:config.n_max]
    spec = RngSpec(config.algorithm_id, config.seed, run_index)
    return simulate_uniform(spec, config.k, config.n_max)


def run_single(config: ExperimentConfig, run_index: int = 0) -> Trajectory:
    """Feed one run's outcome stream through a tally, snapshotting on schedule.

    Simulated runs use substream ``run_index`` of ``config.seed``. A prime
    stream that runs out before ``n_max`` ends early with ``truncated`` set.
    """
    if not 0 <= run_index < config.num_runs:
        raise InvalidParameterError(f"run_index {run_index} outside [0, {config.num_runs})")
    outcomes = _outcome_stream(config, run_index)
    available = len(outcomes)
    if available == 0:
        raise InvalidParameterError("source produced no outcomes")
    schedule = checkpoint_schedule(available, config.points_per_decade,
                                   min(config.n_min, available))

    tally = OutcomeTally(config.k)
    checkpoints = []
    done = 0
    for n in schedule:
        tally.record_many(outcomes[done:n])
        done = n
        checkpoints.append(tally.snapshot())

    tag = config.source
    return Trajectory(run_id=run_index, source_tag=tag, checkpoints=checkpoints,
                      truncated=available < config.n_max)


def summarize(trajectories: list[Trajectory]) -> EnsembleSummary:
    """Mean and standard error of R across runs at each shared checkpoint.

    The relative columns are the R columns divided by ``n``, which is the
    same as averaging R/N run by run.
    """
    if not trajectories:
        raise InvalidParameterError("nothing to summarize")
    ns = trajectories[0].ns
    if any(t.ns != ns for t in trajectories):
        raise InvalidParameterError("runs do not share a checkpoint schedule")
    ranges = np.array([[c.range for c in t.checkpoints] for t in trajectories], dtype=float)
    runs = len(trajectories)
    mean = ranges.mean(axis=0)
    if runs > 1:
        se = ranges.std(axis=0, ddof=1) / math.sqrt(runs)
    else:
        se = np.zeros_like(mean)
    rows = [SummaryRow(n=n, mean_range=float(m), se_range=float(s),
                       mean_rel_range=float(m) / n, se_rel_range=float(s) / n)
            for n, m, s in zip(ns, mean, se)]
    return EnsembleSummary(checkpoints=rows, num_runs=runs)


def _log_weights(values, ses):
    # inverse variance of log10(y) by the delta method
    return [(y * math.log(10) / s) ** 2 for y, s in zip(values, ses)]


def _fit_pair(summary: EnsembleSummary, config: ExperimentConfig) -> tuple[PowerLawFit, PowerLawFit]:
    rows = summary.checkpoints
    if config.weighted:
        # zero spread (one run, or R == 0 everywhere) carries no weight information
        rows = [r for r in rows if r.se_range > 0]
        wa = _log_weights([r.mean_range for r in rows], [r.se_range for r in rows])
        wb = _log_weights([r.mean_rel_range for r in rows], [r.se_rel_range for r in rows])
    else:
        wa = wb = None
    alpha = fit_power_law([(r.n, r.mean_range) for r in rows], config.fit_min_n, wa)
    beta = fit_power_law([(r.n, r.mean_rel_range) for r in rows], config.fit_min_n, wb)
    return alpha, beta


def _average_fits(fits: list[PowerLawFit]) -> PowerLawFit:
    runs = len(fits)
    exps = np.array([f.exponent for f in fits])
    se = float(exps.std(ddof=1) / math.sqrt(runs)) if runs > 1 else fits[0].exponent_se
    return PowerLawFit(
        exponent=float(exps.mean()),
        log_amplitude=float(np.mean([f.log_amplitude for f in fits])),
        exponent_se=se,
        r_squared=float(np.mean([f.r_squared for f in fits])),
        n_points=min(f.n_points for f in fits),
        dropped_points=max(f.dropped_points for f in fits),
        fit_window_min_n=fits[0].fit_window_min_n,
    )


def run_ensemble(config: ExperimentConfig) -> ReproductionReport:
    """Run every trajectory, average across runs, and fit both power laws.

    With ``fit_mode="mean-then-fit"`` (default) the fits use the averaged R
    and R/N. With ``"fit-then-mean"`` each run is fitted on its own and the
    reported exponent is the mean over runs, with the cross-run standard
    error as ``exponent_se``.
    """
    trajectories = [run_single(config, i) for i in range(config.num_runs)]
    summary = summarize(trajectories)
    if config.fit_mode == "mean-then-fit":
        alpha, beta = _fit_pair(summary, config)
    else:
        per_run = [_fit_pair(summarize([t]), replace(config, weighted=False))
                   for t in trajectories]
        alpha = _average_fits([a for a, _ in per_run])
        beta = _average_fits([b for _, b in per_run])
    return ReproductionReport(config=config, summary=summary, alpha_fit=alpha,
                              beta_fit=beta, trajectories=trajectories)


def theoretical_coin_range(n: int) -> float:
    """Large-n expectation of |heads - tails| after n fair tosses, sqrt(2n/pi).

    Asymptotic only: at n = 1 the true expectation is 1, not 0.798.
    """
    if n < 1:
        raise InvalidParameterError(f"n must be positive, got {n}")
    return math.sqrt(2 * n / math.pi)
