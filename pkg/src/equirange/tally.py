"""Streaming outcome counts and the range statistics R and R/N.

A tally holds integer counts only. Relative frequencies and the relative
range are derived from those integers each time a snapshot is taken, so no
floating point error builds up over long streams.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import (
    EmptyTallyError,
    InvalidArityError,
    InvalidOutcomeError,
    InvalidParameterError,
    InvalidRangeError,
)

SOURCE_TAGS = ("coin", "categorical", "prime-last-digit")

DEFAULT_POINTS_PER_DECADE = 20
DEFAULT_N_MIN = 10


@dataclass(frozen=True)
class CheckpointRecord:
    """Immutable state of a tally after ``n`` trials."""

    n: int
    counts: tuple[int, ...]
    rel_freqs: tuple[float, ...]
    range: int
    rel_range: float

    @property
    def k(self) -> int:
        return len(self.counts)


class OutcomeTally:
    """Cumulative per-outcome counts for a single stream of trials.

    A tally has one writer. ``record`` and ``record_many`` return the tally
    itself so calls can be chained.
    """

    def __init__(self, k: int):
        if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 2:
            raise InvalidArityError(f"need at least 2 outcomes, got {k!r}")
        self._counts = np.zeros(int(k), dtype=np.int64)
        self._total = 0

    @property
    def num_outcomes(self) -> int:
        return len(self._counts)

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self._counts)

    @property
    def total(self) -> int:
        return self._total

    def record(self, outcome: int) -> "OutcomeTally":
        if isinstance(outcome, bool) or not isinstance(outcome, (int, np.integer)):
            raise InvalidOutcomeError(f"outcome must be an integer index, got {outcome!r}")
        if not 0 <= outcome < len(self._counts):
            raise InvalidOutcomeError(
                f"outcome {outcome} outside [0, {len(self._counts)})")
        self._counts[outcome] += 1
        self._total += 1
        return self

    def record_many(self, outcomes: Iterable[int] | np.ndarray) -> "OutcomeTally":
        """Record a batch of outcomes; equivalent to calling ``record`` on each.

        The batch is validated before anything is counted, so a bad symbol
        leaves the tally untouched.
        """
        arr = np.asarray(outcomes)
        if arr.size == 0:
            return self
        if arr.ndim != 1 or not np.issubdtype(arr.dtype, np.integer):
            raise InvalidOutcomeError("outcomes must be a 1-d sequence of integers")
        k = len(self._counts)
        lo, hi = arr.min(), arr.max()
        if lo < 0 or hi >= k:
            bad = lo if lo < 0 else hi
            raise InvalidOutcomeError(f"outcome {bad} outside [0, {k})")
        self._counts += np.bincount(arr.astype(np.int64, copy=False), minlength=k)
        self._total += int(arr.size)
        return self

    def _require_trials(self) -> None:
        if self._total == 0:
            raise EmptyTallyError("tally has no trials yet")

    def range(self) -> int:
        """Largest count minus smallest count."""
        self._require_trials()
        return int(self._counts.max() - self._counts.min())

    def rel_range(self) -> float:
        """``range() / total``, i.e. f_max - f_min."""
        return self.range() / self._total

    def snapshot(self) -> CheckpointRecord:
        self._require_trials()
        n = self._total
        counts = self.counts
        r = max(counts) - min(counts)
        return CheckpointRecord(
            n=n,
            counts=counts,
            rel_freqs=tuple(c / n for c in counts),
            range=r,
            rel_range=r / n,
        )

    def __repr__(self) -> str:
        return f"OutcomeTally(counts={list(self.counts)}, total={self._total})"


@dataclass
class Trajectory:
    """Checkpoint records of one experiment run, in increasing ``n``.

    ``truncated`` is set when the source ran dry before the requested number
    of trials; the last checkpoint then carries the true final count.
    """

    run_id: int
    source_tag: str
    checkpoints: list[CheckpointRecord] = field(default_factory=list)
    truncated: bool = False

    def __post_init__(self):
        if self.source_tag not in SOURCE_TAGS:
            raise InvalidParameterError(f"unknown source tag {self.source_tag!r}")
        ns = [c.n for c in self.checkpoints]
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise InvalidParameterError("checkpoint n values must strictly increase")
        if len({c.k for c in self.checkpoints}) > 1:
            raise InvalidParameterError("checkpoints disagree on the number of outcomes")

    @property
    def ns(self) -> list[int]:
        return [c.n for c in self.checkpoints]

    @property
    def final(self) -> CheckpointRecord:
        return self.checkpoints[-1]


def checkpoint_schedule(n_max: int, points_per_decade: int = DEFAULT_POINTS_PER_DECADE,
                        n_min: int = DEFAULT_N_MIN) -> list[int]:
    """Log-uniform trial counts from ``n_min`` to ``n_max`` inclusive.

    Point ``m`` is ``round(n_min * 10**(m / points_per_decade))``; values that
    collide after rounding are merged and ``n_max`` is always the last entry.

    >>> checkpoint_schedule(1000, 2, 10)
    [10, 32, 100, 316, 1000]
    """
    for name, v in (("n_max", n_max), ("points_per_decade", points_per_decade),
                    ("n_min", n_min)):
        if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or v < 1:
            raise InvalidParameterError(f"{name} must be a positive integer, got {v!r}")
    if n_max < n_min:
        raise InvalidRangeError(f"n_max={n_max} is below n_min={n_min}")

    start = math.log10(n_min)
    stop = math.log10(n_max)
    out = set()
    m = 0
    while True:
        e = start + m / points_per_decade
        if e > stop + 1e-12:
            break
        v = math.floor(10.0 ** e + 0.5)
        if v <= n_max:
            out.add(v)
        m += 1
    out.add(int(n_max))
    return sorted(out)

